//! Closed forms for outerplanar networks and the redundant-blocker classes
//! built on them.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::hp::{check_digits, HighPrecisionValue as Hp};
use super::jet::Jet;
use super::solve::bracketed_newton;
use super::{GrowthResult, Method};
use crate::{Error, Result};

/// `3 - 2√2`, the singularity of the outerplanar network series.
pub fn rho_dtilde(digits: usize) -> Result<Hp> {
    check_digits(digits)?;
    Ok(Hp::from_int(3, digits) - Hp::from_int(2, digits).sqrt()?.scale(2))
}

/// `(1 + x - sqrt(x^2 - 6x + 1)) / (4x)` on `[0, 3 - 2√2]`.
pub fn eval_dtilde(x: &Hp) -> Result<Hp> {
    let digits = x.digits();
    let rho = rho_dtilde(digits)?;
    if x.is_negative() || x > &(&rho + &Hp::tolerance(digits)) {
        return Err(Error::OutOfRange(format!("D~ is evaluated on [0, 3-2√2], got x = {x:.12}")));
    }
    if x.is_zero() {
        return Ok(Hp::one(digits));
    }
    let mut disc = x * x - x.scale(6) + Hp::one(digits);
    // at the singularity rounding leaves a tiny residue that sqrt would amplify
    if disc <= Hp::tolerance(digits) {
        disc = Hp::zero(digits);
    }
    Ok((Hp::one(digits) + x - disc.sqrt()?) / x.scale(4))
}

/// `r_l = 2^-l (1 - 1/(2^l - 1))`, the root of `2^l x D~(x) = 1`.
pub fn outer_r(l: usize) -> Result<BigRational> {
    if !(2..=62).contains(&l) {
        return Err(Error::OutOfRange(format!("r_l needs l >= 2, got {l}")));
    }
    let p = BigInt::from(1u64 << l);
    let one = BigRational::from_integer(1.into());
    Ok((one.clone() - BigRational::new(1.into(), &p - 1)) / BigRational::from_integer(p))
}

fn psi_outer_jet(u: &Jet) -> Result<Jet> {
    let digits = u.digits();
    let one = Hp::one(digits);
    let disc = u.mul(u).sub(&u.scale_i(6)).add_scalar(&one);
    let arg = disc.sqrt()?.sub(&u.scale_i(5)).add_scalar(&-&one).scale(&Hp::from_f64(0.125, digits));
    Ok(u.mul(&arg.exp()))
}

/// Inverse of the rooted outerplanar EGF:
/// `u exp((sqrt(1 - 6u + u^2) - 5u - 1)/8)`.
pub fn psi_outer(u: &Hp) -> Result<Hp> {
    let rho = rho_dtilde(u.digits())?;
    if !u.is_positive() || u >= &rho {
        return Err(Error::OutOfRange(format!("psi is evaluated on (0, 3-2√2), got u = {u:.12}")));
    }
    Ok(psi_outer_jet(&Jet::constant(u.clone(), 1))?.value().clone())
}

/// `σ_l = ψ(r_l)`.
pub fn outer_sigma(l: usize, digits: usize) -> Result<Hp> {
    psi_outer(&Hp::from_rational(&outer_r(l)?, digits))
}

/// Growth constant of `rd_l {K23, K4}` for `2 <= l <= 11`.
pub fn gamma_outer_rd(l: usize, digits: usize) -> Result<GrowthResult> {
    check_digits(digits)?;
    if !(2..=11).contains(&l) {
        return Err(Error::OutOfRange(format!("outerplanar blockers need 2 <= l <= 11, got {l}")));
    }
    let r = Hp::from_rational(&outer_r(l)?, digits);
    let residual = (Hp::from_int(1 << l, digits) * &r * eval_dtilde(&r)? - Hp::one(digits)).abs();
    Ok(GrowthResult::new(psi_outer(&r)?, Method::ClosedForm, residual))
}

/// Smallest positive root of `3u^4 - 28u^3 + 70u^2 - 58u + 8`, where `ψ`
/// is critical.
pub fn outer_tau(digits: usize) -> Result<(Hp, Hp)> {
    check_digits(digits)?;
    let q = |u: &Hp| -> Result<(Hp, Hp)> {
        let c = [8i64, -58, 70, -28, 3];
        let mut v = Hp::zero(digits);
        let mut dv = Hp::zero(digits);
        for &k in c.iter().rev() {
            dv = &dv * u + &v;
            v = &v * u + Hp::from_int(k, digits);
        }
        Ok((v, dv))
    };
    // scan for the first sign change before refining
    let steps = 400;
    let top = rho_dtilde(digits)?.to_f64();
    let mut lo = Hp::zero(digits);
    for i in 1..=steps {
        let x = Hp::from_f64(top * i as f64 / steps as f64, digits);
        if q(&x)?.0.is_negative() {
            let r = bracketed_newton(q, lo, x, "outerplanar critical point")?;
            return Ok((r.x, r.residual));
        }
        lo = x;
    }
    Err(Error::NoConvergence("critical point of psi not bracketed".into()))
}

/// Growth constant of `Ex((k+1) {K23, K4})`: twice the outerplanar
/// constant for `k = 1`, and `1/σ_{2k+1}` for `2 <= k <= 5`.
pub fn gamma_outer_ex(k: usize, digits: usize) -> Result<GrowthResult> {
    match k {
        1 => {
            let (tau, residual) = outer_tau(digits)?;
            let rho = psi_outer(&tau)? * Hp::from_f64(0.5, digits);
            Ok(GrowthResult::new(rho, Method::BranchPoint, residual))
        }
        2..=5 => gamma_outer_rd(2 * k + 1, digits),
        _ => Err(Error::OutOfRange(format!("outerplanar disjoint classes need 1 <= k <= 5, got {k}"))),
    }
}
