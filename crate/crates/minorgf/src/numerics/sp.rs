//! Numeric evaluation of the series-parallel network system, the colour
//! cascade and the rooted series-parallel inverse.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::ToPrimitive;

use super::hp::{check_digits, HighPrecisionValue as Hp};
use super::jet::Jet;
use super::solve::{bracketed_newton, lift_root, monotone_newton};
use super::{GrowthResult, Method};
use crate::series::{ahat, cascade_step, shape_census, sp_networks, ShapeGF, MAX_CASCADE};
use crate::{Error, Result};

/// Terms of the exact series used to seed Newton iterations.
const SEED_ORDER: usize = 30;

type CacheKey = (&'static str, usize, usize);

thread_local! {
    static CACHE: RefCell<HashMap<CacheKey, Vec<Hp>>> = RefCell::new(HashMap::new());
}

fn cached(key: (&'static str, usize, usize), f: impl FnOnce() -> Result<Vec<Hp>>) -> Result<Vec<Hp>> {
    if let Some(v) = CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return Ok(v);
    }
    let v = f()?;
    CACHE.with(|c| c.borrow_mut().insert(key, v.clone()));
    Ok(v)
}

fn d_seed_coeffs() -> &'static [f64] {
    static C: OnceLock<Vec<f64>> = OnceLock::new();
    C.get_or_init(|| {
        let d = sp_networks(SEED_ORDER).expect("network series").d;
        d.coeffs().iter().map(|c| c.to_f64().unwrap_or(0.0)).collect()
    })
}

fn partial_sum(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn census(k: usize) -> &'static [(ShapeGF, usize)] {
    static C: [OnceLock<Vec<(ShapeGF, usize)>>; 7] = [const { OnceLock::new() }; 7];
    C[k].get_or_init(|| shape_census(k).expect("shape census").into_iter().collect())
}

fn ln2(digits: usize) -> Hp {
    Hp::from_int(2, digits).ln().expect("ln 2")
}

pub fn inv_e(digits: usize) -> Hp {
    Hp::from_int(-1, digits).exp()
}

/// `t0` with the dominant singularity of `D` and the value there.
#[derive(Clone, Debug)]
pub struct T0 {
    pub t0: Hp,
    pub rho_d: Hp,
    pub d_at_rho: Hp,
    pub residual: Hp,
}

/// Solves `(1-t^2)^-1 exp(-t^2/(1+t)) = 2` on `(0, 1)`.
pub fn solve_t0(digits: usize) -> Result<T0> {
    check_digits(digits)?;
    let v = cached(("t0", 0, digits), || {
        let one = Hp::one(digits);
        let l2 = ln2(digits);
        let h = |t: &Hp| -> Result<(Hp, Hp)> {
            let t = Jet::variable(t.clone(), 2);
            let t2 = t.mul(&t);
            let one_j = Jet::constant(one.clone(), 2);
            let v = one_j.sub(&t2).ln()?.neg().sub(&t2.div(&t.add_scalar(&one))?).add_scalar(&-&l2);
            Ok((v.value().clone(), v.coeff(1)))
        };
        let r = bracketed_newton(h, Hp::zero(digits), Hp::parse("0.999999", digits)?, "t0")?;
        let t = r.x;
        let t3 = t.powi(3);
        let rho = (&one + &t) * (&t - &one).powi(2) / t3;
        let dr = t.powi(2) / (&one - t.powi(2));
        Ok(vec![t, rho, dr, r.residual])
    })?;
    Ok(T0 { t0: v[0].clone(), rho_d: v[1].clone(), d_at_rho: v[2].clone(), residual: v[3].clone() })
}

pub fn rho_d(digits: usize) -> Result<Hp> {
    Ok(solve_t0(digits)?.rho_d)
}

/// `x D^2/(1+xD) - ln((1+D)/2)` and its `D`-derivative.
fn d_equation(x: &Jet, d: &Jet) -> Result<(Jet, Jet)> {
    let digits = x.digits();
    let one = Hp::one(digits);
    let xd = x.mul(d);
    let one_xd = xd.add_scalar(&one);
    let g = xd.mul(d).div(&one_xd)?.sub(&d.add_scalar(&one).ln()?).add_scalar(&ln2(digits));
    let gd = xd.mul(&xd.add_scalar(&Hp::from_int(2, digits))).div(&one_xd.mul(&one_xd))?.sub(&d.add_scalar(&one).recip()?);
    Ok((g, gd))
}

/// `D` along a jet in `x`, on the branch through `D(0) = 1`.
pub fn d_jet(x: &Jet) -> Result<Jet> {
    let digits = x.digits();
    let x0 = x.value().clone();
    let t0 = solve_t0(digits)?;
    if x.len() == 1 && (&x0 - &t0.rho_d).abs() <= Hp::tolerance(digits) {
        return Ok(Jet::constant(t0.d_at_rho, 1));
    }
    if x0.is_negative() || x0 >= t0.rho_d {
        return Err(Error::OutOfRange(format!("D is evaluated on [0, rho_D], derivatives below rho_D; got x = {x0:.12}")));
    }
    if x0.is_zero() && x.len() == 1 {
        return Ok(Jet::constant(Hp::one(digits), 1));
    }
    // partial sums lie below D and the equation is convex in D, so Newton
    // from the seed increases monotonically to the right branch
    let seed = Hp::from_f64(partial_sum(d_seed_coeffs(), x0.to_f64()).max(1.0), digits).min(&t0.d_at_rho);
    let x0j = Jet::constant(x0, 1);
    let d0 = monotone_newton(|d| d_equation(&x0j, d), seed, 400, "D(x)")?;
    lift_root(x, d0, d_equation)
}

pub fn eval_d(x: &Hp) -> Result<Hp> {
    Ok(d_jet(&Jet::constant(x.clone(), 1))?.value().clone())
}

/// `y - u e^y` and its `y`-derivative.
fn r_equation(u: &Jet, y: &Jet) -> Result<(Jet, Jet)> {
    let uey = u.mul(&y.exp());
    Ok((y.sub(&uey), uey.neg().add_scalar(&Hp::one(u.digits()))))
}

/// The tree function `R = u e^R` along a jet in `u`.
pub fn r_jet(u: &Jet) -> Result<Jet> {
    let digits = u.digits();
    let u0 = u.value().clone();
    let ie = inv_e(digits);
    let tol = Hp::tolerance(digits);
    if u0.is_negative() || u0 > &ie + &tol {
        return Err(Error::OutOfRange(format!("R is evaluated on [0, 1/e], got u = {u0:.12}")));
    }
    if (&u0 - &ie).abs() <= tol {
        if u.len() > 1 {
            return Err(Error::Precondition("derivatives of R diverge at 1/e".into()));
        }
        return Ok(Jet::constant(Hp::one(digits), 1));
    }
    let uf = u0.to_f64();
    let mut seed = 0.0;
    let mut term = 1.0;
    for n in 1..=SEED_ORDER {
        // n^(n-1) u^n / n!
        term = if n == 1 { uf } else { term * uf * (n as f64 / (n - 1) as f64).powi(n as i32 - 2) };
        seed += term;
    }
    let seed = Hp::from_f64(seed.clamp(0.0, 1.0), digits);
    let u0j = Jet::constant(u0, 1);
    let y0 = monotone_newton(|y| r_equation(&u0j, y), seed, 4000, "R(u)")?;
    lift_root(u, y0, r_equation)
}

pub fn eval_r(u: &Hp) -> Result<Hp> {
    Ok(r_jet(&Jet::constant(u.clone(), 1))?.value().clone())
}

/// `B_k` along a jet in `x`, given the jet of `D`.
pub fn b_jet(k: usize, x: &Jet, d: &Jet) -> Result<Jet> {
    let digits = x.digits();
    let one = Hp::one(digits);
    match k {
        1 => x.mul(d).div(&x.mul(d).add_scalar(&one)),
        2..=6 => {
            let one_d = d.add_scalar(&one);
            let geo = x.mul(d).mul(d).neg().add_scalar(&one).recip()?;
            let mut acc = Jet::constant(Hp::zero(digits), x.len());
            for (s, mult) in census(k) {
                let t = x.powi(s.a).mul(&d.powi(s.e + s.f)).mul(&one_d.powi(s.g)).mul(&geo.powi(s.e));
                acc = acc.add(&t.scale_i(*mult as i64));
            }
            Ok(acc)
        }
        _ => Err(Error::OutOfRange(format!("B_k needs 1 <= k <= 6, got {k}"))),
    }
}

pub fn eval_b(k: usize, x: &Hp) -> Result<Hp> {
    let xj = Jet::constant(x.clone(), 1);
    Ok(b_jet(k, &xj, &d_jet(&xj)?)?.value().clone())
}

/// Cascade values at a point: `A_j`, `Â_j` for `j < l` (or `≤ l` when
/// complete) and the tree-function arguments `E_1..E_l`.
#[derive(Clone, Debug)]
pub struct CascadeJets {
    pub a: Vec<Jet>,
    pub ahat: Vec<Jet>,
    pub e: Vec<Jet>,
}

pub fn cascade_jets(l: usize, x: &Jet, complete: bool) -> Result<CascadeJets> {
    if !(1..=MAX_CASCADE).contains(&l) {
        return Err(Error::OutOfRange(format!("cascade depth must be in 1..={MAX_CASCADE}, got {l}")));
    }
    let d = d_jet(x)?;
    let b = (1..=l).map(|k| b_jet(k, x, &d)).collect::<Result<Vec<_>>>()?;
    let unit = Jet::constant(Hp::one(x.digits()), x.len());
    let mut out = CascadeJets { a: vec![], ahat: vec![], e: vec![] };
    for j in 1..=l {
        let step = cascade_step(&out.a, &out.ahat, &b[..j])?;
        out.e.push(step.e.clone());
        if j == l && !complete {
            break;
        }
        let aj = r_jet(&step.e)?.add(&step.q);
        out.a.push(aj);
        out.ahat.push(ahat(&out.a, &unit)?);
    }
    Ok(out)
}

/// The tree-function argument `E_l(x)`.
pub fn eval_e(l: usize, x: &Hp) -> Result<Hp> {
    Ok(cascade_jets(l, &Jet::constant(x.clone(), 1), false)?.e[l - 1].value().clone())
}

pub fn eval_a(j: usize, x: &Hp) -> Result<Hp> {
    Ok(cascade_jets(j, &Jet::constant(x.clone(), 1), true)?.a[j - 1].value().clone())
}

pub fn eval_ahat(j: usize, x: &Hp) -> Result<Hp> {
    Ok(cascade_jets(j, &Jet::constant(x.clone(), 1), true)?.ahat[j - 1].value().clone())
}

/// Dominant singularity of `A_[l]`: the first `x` with `E_l(x) = 1/e`.
pub fn rho_a(l: usize, digits: usize) -> Result<Hp> {
    Ok(rho_a_root(l, digits)?[0].clone())
}

/// `[rho, |E_l(rho) - 1/e|]`.
fn rho_a_root(l: usize, digits: usize) -> Result<Vec<Hp>> {
    check_digits(digits)?;
    if !(1..=MAX_CASCADE).contains(&l) {
        return Err(Error::OutOfRange(format!("rho_a needs 1 <= l <= {MAX_CASCADE}, got {l}")));
    }
    if l == 1 {
        let t = solve_t0(digits)?;
        return Ok(vec![t.rho_d, t.residual]);
    }
    cached(("rho_a", l, digits), || {
        let prev = rho_a(l - 1, digits)?;
        let ie = inv_e(digits);
        let f = |x: &Hp| -> Result<(Hp, Hp)> {
            let e = cascade_jets(l, &Jet::variable(x.clone(), 2), false)?.e.pop().expect("E_l");
            Ok((e.value() - &ie, e.coeff(1)))
        };
        let lo = &prev * &Hp::parse("1e-3", digits)?;
        let hi = &prev * &Hp::parse("0.99999999", digits)?;
        let r = bracketed_newton(f, lo, hi, &format!("E_{l}(x) = 1/e"))?;
        Ok(vec![r.x, r.residual])
    })
}

/// Biconnected series-parallel EGF along a jet:
/// `½ln(1+xD) - xD(x²D² + xD + 2 - 2x)/(4(1+xD))`.
pub fn b_bic_jet(x: &Jet) -> Result<Jet> {
    let digits = x.digits();
    let one = Hp::one(digits);
    let d = d_jet(x)?;
    let xd = x.mul(&d);
    let one_xd = xd.add_scalar(&one);
    let half = Hp::from_f64(0.5, digits);
    let inner = xd.mul(&xd).add(&xd).sub(&x.scale_i(2)).add_scalar(&Hp::from_int(2, digits));
    let frac = xd.mul(&inner).div(&one_xd.scale_i(4))?;
    Ok(one_xd.ln()?.scale(&half).sub(&frac))
}

/// `ψ_F(u) = u e^{-B'(u)}` expanded at `u` to `len` terms.
fn psi_jet_at(u: &Hp, len: usize) -> Result<Jet> {
    let bp = b_bic_jet(&Jet::variable(u.clone(), len + 1))?.derive();
    Ok(Jet::variable(u.clone(), len).mul(&bp.neg().exp()))
}

/// Critical point of `ψ_F`: `u0` with `u0 B''(u0) = 1` and `rho_F = ψ_F(u0)`.
#[derive(Clone, Debug)]
pub struct BranchPoint {
    pub u0: Hp,
    pub rho_f: Hp,
    pub residual: Hp,
}

pub fn branch_point_sp(digits: usize) -> Result<BranchPoint> {
    check_digits(digits)?;
    let v = cached(("u0", 0, digits), || {
        let rho = rho_d(digits)?;
        let f = |u: &Hp| -> Result<(Hp, Hp)> {
            let p = psi_jet_at(u, 3)?;
            Ok((p.coeff(1), p.coeff(2).scale(2)))
        };
        let lo = &rho * &Hp::from_f64(0.5, digits);
        let hi = &rho * &(Hp::one(digits) - Hp::ten_pow_neg(12, digits));
        let r = bracketed_newton(f, lo, hi, "psi_F'(u) = 0")?;
        let u0 = r.x;
        let b = b_bic_jet(&Jet::variable(u0.clone(), 3))?;
        let residual = (Hp::one(digits) - &u0 * &b.derivative_at(2)).abs();
        let rho_f = psi_jet_at(&u0, 1)?.value().clone();
        Ok(vec![u0, rho_f, residual])
    })?;
    Ok(BranchPoint { u0: v[0].clone(), rho_f: v[1].clone(), residual: v[2].clone() })
}

/// `ψ_F(u)` on `(0, u0]`, where it inverts the rooted series-parallel EGF.
pub fn psi_f_sp(u: &Hp) -> Result<Hp> {
    let digits = u.digits();
    let bp = branch_point_sp(digits)?;
    if !u.is_positive() || u > &(&bp.u0 + &Hp::tolerance(digits)) {
        return Err(Error::OutOfRange(format!("psi_F is the inverse only on (0, u0], got u = {u:.12}")));
    }
    Ok(psi_jet_at(u, 1)?.value().clone())
}

/// Growth constant of connected graphs with a redundant `K4`-blocker of
/// size `l`; `Ex((k+1)K4)` shares the constant of `l = 2k+1`.
pub fn gamma_rd_k4(l: usize, digits: usize) -> Result<GrowthResult> {
    if !(1..=MAX_CASCADE).contains(&l) {
        return Err(Error::OutOfRange(format!("gamma_rd_k4 needs 1 <= l <= {MAX_CASCADE}, got {l}")));
    }
    let bp = branch_point_sp(digits)?;
    let ra = rho_a_root(l, digits)?;
    if l == 1 || ra[0] >= bp.u0 {
        return Ok(GrowthResult::new(bp.rho_f, Method::CompositionCritical, bp.residual));
    }
    let rho = psi_f_sp(&ra[0])?;
    Ok(GrowthResult::new(rho, Method::TreeFunctionSingularity, ra[1].clone()))
}

/// Growth constant of `Ex((k+1) K4)` for `0 <= k <= 2`.
pub fn gamma_ex_k4(k: usize, digits: usize) -> Result<GrowthResult> {
    if k > (MAX_CASCADE - 1) / 2 {
        return Err(Error::OutOfRange(format!("Ex((k+1)K4) is supported for k <= {}, got {k}", (MAX_CASCADE - 1) / 2)));
    }
    gamma_rd_k4(2 * k + 1, digits)
}
