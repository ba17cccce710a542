use super::hp::HighPrecisionValue as Hp;
use super::jet::Jet;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Root {
    pub x: Hp,
    pub residual: Hp,
}

/// Newton safeguarded by a bracket with a verified sign change; `f` returns
/// the value and derivative.
pub fn bracketed_newton(f: impl Fn(&Hp) -> Result<(Hp, Hp)>, lo: Hp, hi: Hp, what: &str) -> Result<Root> {
    let digits = lo.digits().max(hi.digits());
    let tol = Hp::tolerance(digits);
    let (flo, _) = f(&lo)?;
    let (fhi, _) = f(&hi)?;
    if flo.is_zero() {
        return Ok(Root { x: lo, residual: flo });
    }
    if fhi.is_zero() {
        return Ok(Root { x: hi, residual: fhi });
    }
    if flo.is_negative() == fhi.is_negative() {
        return Err(Error::NoConvergence(format!("{what}: no sign change on [{lo:.12}, {hi:.12}]")));
    }
    let lo_neg = flo.is_negative();
    let (mut lo, mut hi) = (lo, hi);
    let half = Hp::from_f64(0.5, digits);
    let width_tol = Hp::ten_pow_neg(digits, digits);
    let mut x = (&lo + &hi) * &half;
    for _ in 0..1000 {
        let (fx, dfx) = f(&x)?;
        if fx.abs() <= tol {
            // one more Newton step costs little and usually lands at full precision
            if !dfx.is_zero() {
                let xn = &x - &fx / &dfx;
                if xn > lo && xn < hi {
                    let (fn_, _) = f(&xn)?;
                    if fn_.abs() <= fx.abs() {
                        return Ok(Root { x: xn, residual: fn_.abs() });
                    }
                }
            }
            return Ok(Root { x, residual: fx.abs() });
        }
        if fx.is_negative() == lo_neg {
            lo = x.clone();
        } else {
            hi = x.clone();
        }
        if (&hi - &lo).abs() <= &width_tol * &(Hp::one(digits) + x.abs()) {
            break;
        }
        let newton = if dfx.is_zero() { None } else { Some(&x - &fx / &dfx) };
        x = match newton {
            Some(xn) if xn > lo && xn < hi => xn,
            _ => (&lo + &hi) * &half,
        };
    }
    let (fx, _) = f(&x)?;
    if fx.abs() <= tol {
        return Ok(Root { x, residual: fx.abs() });
    }
    Err(Error::NoConvergence(format!("{what}: residual {:.3} above tolerance", fx.abs())))
}

/// Unsafeguarded Newton for equations where convexity makes the iteration
/// monotone from the seed; `g` works on length-one jets.
pub fn monotone_newton(
    g: impl Fn(&Jet) -> Result<(Jet, Jet)>,
    seed: Hp,
    max_iter: usize,
    what: &str,
) -> Result<Hp> {
    let digits = seed.digits();
    let tol = Hp::tolerance(digits);
    let step_tol = Hp::ten_pow_neg(digits.saturating_sub(5), digits);
    let mut y = seed;
    for _ in 0..max_iter {
        let (v, dv) = g(&Jet::constant(y.clone(), 1))?;
        let (v, dv) = (v.value().clone(), dv.value().clone());
        if dv.is_zero() {
            return Err(Error::NoConvergence(format!("{what}: zero derivative")));
        }
        let step = &v / &dv;
        y = &y - &step;
        if !y.is_finite() {
            return Err(Error::NoConvergence(format!("{what}: iterate diverged")));
        }
        if step.abs() <= &step_tol * &(Hp::one(digits) + y.abs()) {
            let (r, _) = g(&Jet::constant(y.clone(), 1))?;
            if r.value().abs() <= tol {
                return Ok(y);
            }
        }
    }
    Err(Error::NoConvergence(format!("{what}: no convergence in {max_iter} iterations")))
}

/// Lift a converged scalar root of `g(x, y) = 0` to the full jet of `y` along
/// the jet `x`; `g` returns the value and the partial derivative in `y`.
pub fn lift_root(x: &Jet, root: Hp, g: impl Fn(&Jet, &Jet) -> Result<(Jet, Jet)>) -> Result<Jet> {
    let mut y = Jet::constant(root, x.len());
    let mut correct = 1;
    while correct < x.len() {
        let (v, dv) = g(x, &y)?;
        y = y.sub(&v.div(&dv)?);
        correct *= 2;
    }
    Ok(y)
}
