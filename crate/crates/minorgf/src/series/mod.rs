//! Truncated power series over exact rationals (exponential generating
//! functions) and over rational polynomials (bivariate series).

mod cascade;
mod classes;
mod coeff;
mod format;
mod newton;

pub use cascade::{ahat, cascade_rhs, cascade_step, CascadeRing, CascadeStep};
pub use classes::*;
pub use format::{bivariate_text, counts_or_rationals, to_csv, to_json};
pub use coeff::{frac, rat, Coeff, Poly};
pub use newton::newton_implicit;

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Power series known exactly through `x^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    c: Vec<C>,
}

/// Exponential generating function: coefficient `n` is `|A_n| / n!`.
pub type TruncatedEGF = Series<BigRational>;
/// Series in `x` whose coefficients are polynomials in a second variable.
pub type BivariatePoly = Series<Poly>;

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

impl<C: Coeff> Series<C> {
    pub fn new(c: Vec<C>) -> Self {
        assert!(!c.is_empty(), "a series needs at least one coefficient");
        Series { c }
    }

    pub fn zero(order: usize) -> Self {
        Series { c: vec![C::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(v: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.c[0] = v;
        s
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.c[1] = C::one();
        }
        s
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.c[n]
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise precision by truncation");
        Series { c: self.c[..=order].to_vec() }
    }

    /// Pad with zero coefficients (used for Newton iterates whose tail is
    /// about to be recomputed).
    pub fn pad(&self, order: usize) -> Self {
        let mut c = self.c.clone();
        c.resize(order + 1, C::zero());
        c.truncate(order + 1);
        Series { c }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Series { c: self.c.iter().map(|x| x.scale(r)).collect() }
    }

    pub fn mul_coeff(&self, v: &C) -> Self {
        Series { c: self.c.iter().map(|x| x.mul(v)).collect() }
    }

    /// Multiply by `x^k`; the result is known through `order + k`.
    pub fn mul_x_pow(&self, k: usize) -> Self {
        let mut c = vec![C::zero(); k];
        c.extend(self.c.iter().cloned());
        Series { c }
    }

    /// Divide by `x^k`; the first `k` coefficients must vanish.
    pub fn div_x_pow(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.c[..k].iter().any(|x| !x.is_zero()) {
            return Err(Error::Series(format!("series not divisible by x^{k} at this order")));
        }
        Ok(Series { c: self.c[k..].to_vec() })
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series { c: (0..=n).map(|i| self.c[i].add(&o.c[i])).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series { c: (0..=n).map(|i| self.c[i].sub(&o.c[i])).collect() }
    }

    pub fn neg(&self) -> Self {
        Series { c: self.c.iter().map(|x| x.neg()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut c = vec![C::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        Series { c }
    }

    pub fn add_const(&self, v: &C) -> Self {
        let mut s = self.clone();
        s.c[0] = s.c[0].add(v);
        s
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.order());
        let mut b = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            k >>= 1;
        }
        r
    }

    /// Reciprocal; the constant term must be invertible in the coefficient ring.
    pub fn inverse(&self) -> Result<Self> {
        let g0 = self.c[0]
            .inv()
            .ok_or_else(|| Error::Series("constant term is not invertible".into()))?;
        let n = self.order();
        let mut g = vec![C::zero(); n + 1];
        g[0] = g0.clone();
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                if !self.c[j].is_zero() {
                    acc = acc.add(&self.c[j].mul(&g[k - j]));
                }
            }
            g[k] = acc.mul(&g0).neg();
        }
        Ok(Series { c: g })
    }

    /// Quotient; a common power of `x` is cancelled first, lowering the order.
    pub fn div(&self, o: &Self) -> Result<Self> {
        let v = o.valuation().ok_or_else(|| Error::Series("division by zero series".into()))?;
        let num = self.div_x_pow(v)?;
        let den = o.div_x_pow(v)?;
        Ok(num.mul(&den.inverse()?))
    }

    pub fn derive(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Series { c: (1..self.c.len()).map(|i| self.c[i].scale(&rat(i as i64))).collect() }
    }

    pub fn integrate(&self) -> Self {
        let mut c = vec![C::zero()];
        c.extend(self.c.iter().enumerate().map(|(i, x)| x.scale(&frac(1, i as i64 + 1))));
        Series { c }
    }

    /// `exp` of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.c[0].is_zero() {
            return Err(Error::Series("exp needs a zero constant term".into()));
        }
        let n = self.order();
        let mut g = vec![C::zero(); n + 1];
        g[0] = C::one();
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                if !self.c[j].is_zero() {
                    acc = acc.add(&self.c[j].mul(&g[k - j]).scale(&rat(j as i64)));
                }
            }
            g[k] = acc.scale(&frac(1, k as i64));
        }
        Ok(Series { c: g })
    }

    /// `log` of a series with constant term one.
    pub fn log(&self) -> Result<Self> {
        if !self.c[0].is_one() {
            return Err(Error::Series("log needs constant term 1".into()));
        }
        let n = self.order();
        let mut g = vec![C::zero(); n + 1];
        for k in 1..=n {
            let mut acc = self.c[k].scale(&rat(k as i64));
            for j in 1..k {
                if !g[j].is_zero() {
                    acc = acc.sub(&g[j].mul(&self.c[k - j]).scale(&rat(j as i64)));
                }
            }
            g[k] = acc.scale(&frac(1, k as i64));
        }
        Ok(Series { c: g })
    }

    /// Square root with constant term one, by Newton iteration `g <- (g + h/g)/2`.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.c[0].is_one() {
            return Err(Error::Series("sqrt needs constant term 1".into()));
        }
        let n = self.order();
        let half = frac(1, 2);
        let mut g = Self::one(0);
        let mut p = 0;
        while p < n {
            p = (2 * p + 1).min(n);
            let gp = g.pad(p);
            g = gp.add(&self.truncate(p).mul(&gp.inverse()?)).scale(&half);
        }
        Ok(g.pad(n))
    }

    /// Compose a rational series `outer` with `self` (zero constant term).
    pub fn compose_into(&self, outer: &TruncatedEGF) -> Result<Self> {
        if !self.c[0].is_zero() {
            return Err(Error::Series("inner series of a composition needs zero constant term".into()));
        }
        let n = self.order().min(outer.order());
        let inner = self.truncate(n);
        let mut r = Self::constant(C::scalar(&outer.c[n]), n);
        for k in (0..n).rev() {
            r = r.mul(&inner).add_const(&C::scalar(&outer.c[k]));
        }
        Ok(r)
    }
}

impl TruncatedEGF {
    pub fn from_rationals(c: Vec<BigRational>) -> Self {
        Self::new(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| rat(v)).collect())
    }

    /// `f(g(x))` with `g(0) = 0`.
    pub fn compose(&self, inner: &TruncatedEGF) -> Result<Self> {
        inner.compose_into(self)
    }

    /// Labelled counts `n! c_n`; errors if a count is not an integer.
    pub fn counts(&self) -> Result<Vec<BigInt>> {
        self.c
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let v = c * BigRational::from_integer(factorial(n));
                if v.is_integer() {
                    Ok(v.to_integer())
                } else {
                    Err(Error::Series(format!("coefficient {n} times n! is not an integer: {v}")))
                }
            })
            .collect()
    }

    /// Series with the given labelled counts.
    pub fn from_counts(counts: &[BigInt]) -> Self {
        Self::new(
            counts
                .iter()
                .enumerate()
                .map(|(n, a)| BigRational::new(a.clone(), factorial(n)))
                .collect(),
        )
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.c.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl BivariatePoly {
    /// Substitute a rational series for the second variable.
    pub fn substitute(&self, y: &TruncatedEGF) -> TruncatedEGF {
        let n = self.order().min(y.order());
        let mut out = TruncatedEGF::zero(n);
        for (k, p) in self.c.iter().enumerate().take(n + 1) {
            if p.is_zero() {
                continue;
            }
            let yk = y.truncate(n - k);
            let val = p
                .coeffs()
                .iter()
                .rev()
                .fold(TruncatedEGF::zero(n - k), |acc, a| acc.mul(&yk).add_const(a));
            out = out.add(&val.mul_x_pow(k).truncate(n));
        }
        out
    }

    /// Specialise the second variable to a number.
    pub fn eval_y(&self, y: &BigRational) -> TruncatedEGF {
        TruncatedEGF::new(self.c.iter().map(|p| p.eval(y)).collect())
    }

    /// A rational series viewed as constant in the second variable.
    pub fn lift(s: &TruncatedEGF) -> Self {
        Series::new(s.c.iter().map(Poly::scalar).collect())
    }

    /// Coefficient `[x^n y^d]`.
    pub fn coeff_xy(&self, n: usize, d: usize) -> BigRational {
        self.c[n].coeff(d)
    }
}

macro_rules! forward_ops {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr<&Series<C>> for &Series<C> {
            type Output = Series<C>;
            fn $m(self, o: &Series<C>) -> Series<C> {
                Series::$m(self, o)
            }
        }
    };
}
forward_ops!(Add, add);
forward_ops!(Sub, sub);
forward_ops!(Mul, mul);

impl<C: Coeff> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        Series::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> TruncatedEGF {
        TruncatedEGF::from_ints(v)
    }

    #[test]
    fn basic_arithmetic() {
        let a = s(&[1, 2, 3]);
        let b = s(&[0, 1, 0, 5]);
        assert_eq!((&a + &b).coeffs(), s(&[1, 3, 3]).coeffs());
        assert_eq!((&a * &b).coeffs(), s(&[0, 1, 2]).coeffs());
        assert_eq!(a.mul_x_pow(2).order(), 4);
        assert!(b.div_x_pow(2).is_err());
        assert_eq!(b.div_x_pow(1).unwrap(), s(&[1, 0, 5]));
    }

    #[test]
    fn exp_log_roundtrip() {
        let f = s(&[0, 1, -2, 7, 1, 0, 3]);
        assert_eq!(TruncatedEGF::zero(5).exp().unwrap(), TruncatedEGF::one(5));
        assert_eq!(f.exp().unwrap().log().unwrap(), f);
        let e = TruncatedEGF::x(6).exp().unwrap();
        for n in 0..=6 {
            assert_eq!(e.coeff(n), &BigRational::new(1.into(), factorial(n)));
        }
        assert!(s(&[1, 1]).exp().is_err());
        assert!(s(&[2, 1]).log().is_err());
    }

    #[test]
    fn inverse_and_division() {
        let f = s(&[1, -1, 0, 0, 0, 0]);
        assert_eq!(f.inverse().unwrap(), s(&[1, 1, 1, 1, 1, 1]));
        let x = TruncatedEGF::x(5);
        let q = x.div(&x.mul(&f)).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q, s(&[1, 1, 1, 1, 1]));
        assert!(x.inverse().is_err());
    }

    #[test]
    fn derive_integrate_compose() {
        let half_x2 = TruncatedEGF::new(vec![rat(0), rat(0), frac(1, 2), rat(0)]);
        assert_eq!(half_x2.derive(), s(&[0, 1, 0]));
        let f = s(&[3, 1, 4, 1, 5]);
        assert_eq!(f.derive().integrate().add_const(&rat(3)), f);
        assert_eq!(f.compose(&TruncatedEGF::x(4)).unwrap(), f);
        assert!(f.compose(&s(&[1, 1, 0, 0, 0])).is_err());
        // exp(x) composed with 2x
        let e = TruncatedEGF::x(4).exp().unwrap();
        let two_x = TruncatedEGF::x(4).scale(&rat(2));
        assert_eq!(e.compose(&two_x).unwrap(), two_x.exp().unwrap());
    }

    #[test]
    fn sqrt_squares_back() {
        let h = s(&[1, -6, 1, 0, 0, 0, 0, 0, 0]);
        let g = h.sqrt().unwrap();
        assert_eq!(&g * &g, h);
        assert!(s(&[4, 1]).sqrt().is_err());
    }

    #[test]
    fn counts_roundtrip() {
        let c: Vec<BigInt> = [1, 2, 8, 48].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(TruncatedEGF::from_counts(&c).counts().unwrap(), c);
        assert!(TruncatedEGF::new(vec![rat(0), rat(0), frac(1, 3)]).counts().is_err());
    }

    #[test]
    fn bivariate_substitution() {
        // (x y) substituted with y = 1 + x gives x + x^2
        let mut c = vec![Poly::zero(); 4];
        c[1] = Poly::y();
        let b = BivariatePoly::new(c);
        let y = s(&[1, 1, 0, 0]);
        assert_eq!(b.substitute(&y), s(&[0, 1, 1, 0]));
        assert_eq!(b.eval_y(&rat(3)), s(&[0, 3, 0, 0]));
    }
}
