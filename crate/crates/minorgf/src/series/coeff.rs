use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Coefficient ring of a truncated power series: exact rationals or
/// polynomials over them.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &BigRational) -> Self;
    fn scalar(r: &BigRational) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &BigRational) -> Self {
        self * r
    }
    fn scalar(r: &BigRational) -> Self {
        r.clone()
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Dense polynomial with rational coefficients, lowest degree first, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn monomial(c: BigRational, deg: usize) -> Self {
        let mut v = vec![<BigRational as Zero>::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    /// The polynomial `y`.
    pub fn y() -> Self {
        Self::monomial(rat(1), 1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn coeff(&self, d: usize) -> BigRational {
        self.0.get(d).cloned().unwrap_or_else(<BigRational as Zero>::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, y: &BigRational) -> BigRational {
        self.0.iter().rev().fold(<BigRational as Zero>::zero(), |acc, c| acc * y + c)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.0.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match d {
                0 => write!(f, "{a}")?,
                _ => {
                    if !One::is_one(&a) {
                        write!(f, "{a}*")?;
                    }
                    if d == 1 {
                        write!(f, "y")?
                    } else {
                        write!(f, "y^{d}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl Coeff for Poly {
    fn zero() -> Self {
        Poly(Vec::new())
    }
    fn one() -> Self {
        Poly(vec![rat(1)])
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
    fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly::zero();
        }
        let mut c = vec![<BigRational as Zero>::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
    fn neg(&self) -> Self {
        Poly(self.0.iter().map(|c| -c).collect())
    }
    fn scale(&self, r: &BigRational) -> Self {
        Poly::new(self.0.iter().map(|c| c * r).collect())
    }
    fn scalar(r: &BigRational) -> Self {
        Poly::new(vec![r.clone()])
    }
    fn inv(&self) -> Option<Self> {
        match self.0.as_slice() {
            [c] => Some(Poly(vec![c.recip()])),
            _ => None,
        }
    }
}
