//! Truncated Taylor expansions `Σ c_k h^k` at a real point, used to carry
//! derivatives through the same formulas that compute values.

use super::hp::HighPrecisionValue as Hp;
use crate::series::CascadeRing;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Jet {
    c: Vec<Hp>,
}

impl Jet {
    pub fn constant(v: Hp, len: usize) -> Self {
        let d = v.digits();
        let mut c = vec![Hp::zero(d); len.max(1)];
        c[0] = v;
        Jet { c }
    }

    /// `x0 + h`.
    pub fn variable(x0: Hp, len: usize) -> Self {
        let mut j = Jet::constant(x0, len);
        if len > 1 {
            j.c[1] = Hp::one(j.digits());
        }
        j
    }

    pub fn from_coeffs(c: Vec<Hp>) -> Self {
        assert!(!c.is_empty(), "a jet needs at least a value");
        Jet { c }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn digits(&self) -> usize {
        self.c[0].digits()
    }

    pub fn value(&self) -> &Hp {
        &self.c[0]
    }

    pub fn coeff(&self, k: usize) -> Hp {
        self.c.get(k).cloned().unwrap_or_else(|| Hp::zero(self.digits()))
    }

    /// `f^(k)(x0)`.
    pub fn derivative_at(&self, k: usize) -> Hp {
        let fact: i64 = (1..=k as i64).product();
        self.coeff(k).scale(fact)
    }

    /// Jet of `f'`, one order shorter.
    pub fn derive(&self) -> Jet {
        if self.len() == 1 {
            return Jet::constant(Hp::zero(self.digits()), 1);
        }
        Jet { c: (1..self.len()).map(|k| self.c[k].scale(k as i64)).collect() }
    }

    fn zip(&self, o: &Jet, f: impl Fn(&Hp, &Hp) -> Hp) -> Jet {
        let n = self.len().min(o.len());
        Jet { c: (0..n).map(|k| f(&self.c[k], &o.c[k])).collect() }
    }

    pub fn add(&self, o: &Jet) -> Jet {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        self.zip(o, |a, b| a - b)
    }

    pub fn neg(&self) -> Jet {
        Jet { c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn add_scalar(&self, s: &Hp) -> Jet {
        let mut j = self.clone();
        j.c[0] = &j.c[0] + s;
        j
    }

    pub fn scale(&self, s: &Hp) -> Jet {
        Jet { c: self.c.iter().map(|a| a * s).collect() }
    }

    pub fn scale_i(&self, k: i64) -> Jet {
        Jet { c: self.c.iter().map(|a| a.scale(k)).collect() }
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let n = self.len().min(o.len());
        let d = self.digits();
        let c = (0..n)
            .map(|k| (0..=k).fold(Hp::zero(d), |acc, i| acc + &self.c[i] * &o.c[k - i]))
            .collect();
        Jet { c }
    }

    pub fn recip(&self) -> Result<Jet> {
        if self.c[0].is_zero() {
            return Err(Error::Precondition("reciprocal of a jet with zero value".into()));
        }
        let inv0 = self.c[0].recip();
        let mut r = vec![inv0.clone()];
        for k in 1..self.len() {
            let s = (1..=k).fold(Hp::zero(self.digits()), |acc, i| acc + &self.c[i] * &r[k - i]);
            r.push(-(s * &inv0));
        }
        Ok(Jet { c: r })
    }

    pub fn div(&self, o: &Jet) -> Result<Jet> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn powi(&self, n: usize) -> Jet {
        let mut acc = Jet::constant(Hp::one(self.digits()), self.len());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn exp(&self) -> Jet {
        let mut g = vec![self.c[0].exp()];
        for k in 1..self.len() {
            let s = (1..=k).fold(Hp::zero(self.digits()), |acc, j| acc + (&self.c[j] * &g[k - j]).scale(j as i64));
            g.push(s / Hp::from_int(k as i64, self.digits()));
        }
        Jet { c: g }
    }

    pub fn ln(&self) -> Result<Jet> {
        let f0 = &self.c[0];
        let mut g = vec![f0.ln()?];
        for k in 1..self.len() {
            let s = (1..k).fold(Hp::zero(self.digits()), |acc, j| acc + (&g[j] * &self.c[k - j]).scale(j as i64));
            g.push((&self.c[k] - s / Hp::from_int(k as i64, self.digits())) / f0);
        }
        Ok(Jet { c: g })
    }

    pub fn sqrt(&self) -> Result<Jet> {
        if !self.c[0].is_positive() {
            return Err(Error::Precondition("square root jet needs a positive value".into()));
        }
        let r0 = self.c[0].sqrt()?;
        let two_r0 = r0.scale(2);
        let mut r = vec![r0];
        for k in 1..self.len() {
            let s = (1..k).fold(Hp::zero(self.digits()), |acc, i| acc + &r[i] * &r[k - i]);
            r.push((&self.c[k] - s) / &two_r0);
        }
        Ok(Jet { c: r })
    }

    pub fn max_abs(&self) -> Hp {
        self.c.iter().fold(Hp::zero(self.digits()), |m, a| m.max(&a.abs()))
    }
}

impl CascadeRing for Jet {
    fn add(&self, o: &Self) -> Self {
        Jet::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Jet::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Jet::mul(self, o)
    }
    fn scale_int(&self, k: i64) -> Self {
        self.scale_i(k)
    }
    fn exp(&self) -> Result<Self> {
        Ok(Jet::exp(self))
    }
    fn zero_like(&self) -> Self {
        Jet::constant(Hp::zero(self.digits()), self.len())
    }
    fn one_like(&self) -> Self {
        Jet::constant(Hp::one(self.digits()), self.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Hp, b: f64) -> bool {
        (a.to_f64() - b).abs() < 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn elementary_derivatives() {
        let x = Jet::variable(Hp::from_f64(0.5, 40), 4);
        let e = x.exp();
        assert!(close(&e.derivative_at(3), 0.5f64.exp()));
        let l = x.ln().unwrap();
        assert!(close(&l.derivative_at(1), 2.0));
        assert!(close(&l.derivative_at(2), -4.0));
        let s = x.sqrt().unwrap();
        assert!(close(&s.derivative_at(1), 0.5 / 0.5f64.sqrt()));
        let r = x.recip().unwrap();
        assert!(close(&r.derivative_at(2), 2.0 / 0.125));
        let p = x.powi(3).div(&x).unwrap();
        assert!(close(&p.derivative_at(1), 1.0));
        assert!(close(&x.powi(3).derive().value().clone(), 0.75));
    }
}
