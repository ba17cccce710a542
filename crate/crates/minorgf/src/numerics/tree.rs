//! Limiting share of underlying-tree vertices in tree-substitution classes.

use super::hp::{check_digits, HighPrecisionValue as Hp};
use super::solve::bracketed_newton;
use crate::series::TruncatedEGF;
use crate::{Error, Result};

/// A real function that can be evaluated at high precision, with an optional
/// radius of convergence.
pub trait RealFunction {
    fn eval(&self, x: &Hp) -> Result<Hp>;
    fn radius(&self) -> Option<f64> {
        None
    }
}

/// Truncated series are treated as the polynomials they are.
impl RealFunction for TruncatedEGF {
    fn eval(&self, x: &Hp) -> Result<Hp> {
        let d = x.digits();
        Ok(self.coeffs().iter().rev().fold(Hp::zero(d), |acc, c| acc * x + Hp::from_rational(c, d)))
    }
}

/// A closure with a declared radius.
pub struct Analytic<F> {
    pub f: F,
    pub radius: Option<f64>,
}

impl<F: Fn(&Hp) -> Result<Hp>> RealFunction for Analytic<F> {
    fn eval(&self, x: &Hp) -> Result<Hp> {
        (self.f)(x)
    }
    fn radius(&self) -> Option<f64> {
        self.radius
    }
}

#[derive(Clone, Debug)]
pub struct TreeFraction {
    /// Solution of `f(rho, 1) = 1/e`.
    pub rho: Hp,
    /// `f_s(rho, 1) / (rho f_x(rho, 1))`.
    pub fraction: Hp,
    pub residual: Hp,
}

/// `f(x, s) = s x D I e^{s x D (L - I)}`.
fn f_xs(d: &dyn RealFunction, i: &dyn RealFunction, l: &dyn RealFunction, x: &Hp, s: &Hp) -> Result<Hp> {
    let (dv, iv, lv) = (d.eval(x)?, i.eval(x)?, l.eval(x)?);
    let sxd = s * x * &dv;
    Ok(&sxd * &iv * (&sxd * (lv - &iv)).exp())
}

/// Expected fraction of tree vertices among all vertices of a large random
/// member of the tree-substitution class built from `D`, `I` and `L`.
pub fn tree_fraction(
    d: &dyn RealFunction,
    i: &dyn RealFunction,
    l: &dyn RealFunction,
    digits: usize,
) -> Result<TreeFraction> {
    check_digits(digits)?;
    let ie = Hp::from_int(-1, digits).exp();
    let one = Hp::one(digits);
    let h = Hp::ten_pow_neg(digits / 4, digits);
    let two_h = h.scale(2);
    let f1 = |x: &Hp| f_xs(d, i, l, x, &one);
    let fx = |x: &Hp| -> Result<Hp> { Ok((f1(&(x + &h))? - f1(&(x - &h))?) / &two_h) };
    let limit = [d.radius(), i.radius(), l.radius()].into_iter().flatten().fold(f64::INFINITY, f64::min);
    // walk out until f(x, 1) passes 1/e inside the common domain
    let probes: Vec<f64> = if limit.is_finite() {
        (1..=60).map(|k| limit * (1.0 - 0.5f64.powi(k))).collect()
    } else {
        (0..=30).map(|k| 1e-3 * 2f64.powi(k)).collect()
    };
    let mut lo = Hp::zero(digits);
    let mut hi = None;
    for p in probes {
        let xh = Hp::from_f64(p, digits);
        if f1(&xh)? > ie {
            hi = Some(xh);
            break;
        }
        lo = xh;
    }
    let hi = hi.ok_or_else(|| {
        Error::Precondition("f(x, 1) does not reach 1/e inside the component domain; the class is not supercritical".into())
    })?;
    let r = bracketed_newton(|x| Ok((f1(x)? - &ie, fx(x)?)), lo, hi, "f(x, 1) = 1/e")?;
    let rho = r.x;
    let di = d.eval(&rho)? * i.eval(&rho)? * &rho;
    if di >= one {
        return Err(Error::Precondition(format!("rho D(rho) I(rho) = {di:.12} is not below 1")));
    }
    let fs = (f_xs(d, i, l, &rho, &(&one + &h))? - f_xs(d, i, l, &rho, &(&one - &h))?) / &two_h;
    let fraction = fs / (&rho * fx(&rho)?);
    Ok(TreeFraction { rho, fraction, residual: r.residual })
}
