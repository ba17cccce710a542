use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;
pub const DEFAULT_DIGITS: usize = 60;
pub const MIN_DIGITS: usize = 30;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_cc<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Binary precision carrying `digits` decimal digits plus guard bits.
fn bits_for(digits: usize) -> usize {
    let b = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64;
    b.div_ceil(64) * 64
}

pub fn check_digits(digits: usize) -> Result<()> {
    if digits < MIN_DIGITS {
        return Err(Error::OutOfRange(format!("precision must be at least {MIN_DIGITS} digits, got {digits}")));
    }
    Ok(())
}

/// Arbitrary-precision real with a working precision in decimal digits.
#[derive(Clone, Debug)]
pub struct HighPrecisionValue {
    v: BigFloat,
    digits: usize,
}

type Hp = HighPrecisionValue;

impl HighPrecisionValue {
    fn wrap(v: BigFloat, digits: usize) -> Self {
        Hp { v, digits }
    }

    fn p(&self) -> usize {
        bits_for(self.digits)
    }

    pub fn from_f64(x: f64, digits: usize) -> Self {
        Hp::wrap(BigFloat::from_f64(x, bits_for(digits)), digits)
    }

    pub fn from_int(n: i64, digits: usize) -> Self {
        Hp::wrap(BigFloat::from_i64(n, bits_for(digits)), digits)
    }

    pub fn zero(digits: usize) -> Self {
        Hp::from_int(0, digits)
    }

    pub fn one(digits: usize) -> Self {
        Hp::from_int(1, digits)
    }

    pub fn parse(s: &str, digits: usize) -> Result<Self> {
        let v = with_cc(|cc| BigFloat::parse(s.trim(), Radix::Dec, bits_for(digits), RM, cc));
        if v.is_nan() || v.is_inf() {
            return Err(Error::Precondition(format!("not a decimal number: {s:?}")));
        }
        Ok(Hp::wrap(v, digits))
    }

    pub fn from_bigint(n: &BigInt, digits: usize) -> Self {
        Hp::parse(&n.to_string(), digits).expect("integers parse")
    }

    pub fn from_rational(q: &BigRational, digits: usize) -> Self {
        Hp::from_bigint(q.numer(), digits) / Hp::from_bigint(q.denom(), digits)
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    pub fn with_digits(&self, digits: usize) -> Self {
        let mut v = self.v.clone();
        v.set_precision(bits_for(digits), RM).expect("precision change");
        Hp::wrap(v, digits)
    }

    /// `10^-k` at this precision.
    pub fn ten_pow_neg(k: usize, digits: usize) -> Self {
        Hp::parse(&format!("1e-{k}"), digits).expect("power of ten")
    }

    /// Tolerance for solver residuals: `10^-(digits-10)`.
    pub fn tolerance(digits: usize) -> Self {
        Hp::ten_pow_neg(digits.saturating_sub(10), digits)
    }

    fn digits2(&self, o: &Self) -> usize {
        self.digits.max(o.digits)
    }

    pub fn exp(&self) -> Self {
        let p = self.p();
        Hp::wrap(with_cc(|cc| self.v.exp(p, RM, cc)), self.digits)
    }

    pub fn ln(&self) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::Precondition(format!("logarithm of non-positive value {self}")));
        }
        let p = self.p();
        Ok(Hp::wrap(with_cc(|cc| self.v.ln(p, RM, cc)), self.digits))
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Precondition(format!("square root of negative value {self}")));
        }
        Ok(Hp::wrap(self.v.sqrt(self.p(), RM), self.digits))
    }

    pub fn powi(&self, n: usize) -> Self {
        Hp::wrap(self.v.powi(n, self.p(), RM), self.digits)
    }

    pub fn recip(&self) -> Self {
        Hp::wrap(self.v.reciprocal(self.p(), RM), self.digits)
    }

    pub fn abs(&self) -> Self {
        Hp::wrap(self.v.abs(), self.digits)
    }

    pub fn scale(&self, k: i64) -> Self {
        self * &Hp::from_int(k, self.digits)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.v.is_zero() && self.v.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        !self.v.is_zero() && self.v.is_negative()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn max(&self, o: &Self) -> Self {
        if self >= o { self.clone() } else { o.clone() }
    }

    pub fn min(&self, o: &Self) -> Self {
        if self <= o { self.clone() } else { o.clone() }
    }

    /// Raw decimal form `d.ddd…e±n` from the backend.
    fn raw(&self) -> String {
        with_cc(|cc| self.v.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into())
    }

    pub fn to_f64(&self) -> f64 {
        self.raw().parse().unwrap_or(f64::NAN)
    }

    /// Decimal rendering rounded to `sig` significant digits.
    pub fn to_string_sig(&self, sig: usize) -> String {
        let raw = self.raw();
        if !self.is_finite() {
            return raw;
        }
        if self.is_zero() {
            return "0".into();
        }
        let (mant, exp) = raw.split_once('e').unwrap_or((&raw, "0"));
        let mut exp: i64 = exp.parse().unwrap_or(0);
        let neg = mant.starts_with('-');
        let mut ds: Vec<u8> = mant.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
        let sig = sig.max(1);
        let round_up = ds.get(sig).is_some_and(|&d| d >= 5);
        ds.resize(sig, 0);
        if round_up {
            let mut i = sig;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.pop();
                    exp += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        while ds.len() > 1 && ds.last() == Some(&0) {
            ds.pop();
        }
        let digits: String = ds.iter().map(|d| char::from(b'0' + d)).collect();
        let sign = if neg { "-" } else { "" };
        if (-12..=24).contains(&exp) {
            let body = if exp < 0 {
                format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
            } else {
                let e = exp as usize;
                if digits.len() > e + 1 {
                    format!("{}.{}", &digits[..=e], &digits[e + 1..])
                } else {
                    format!("{}{}", digits, "0".repeat(e + 1 - digits.len()))
                }
            };
            format!("{sign}{body}")
        } else {
            let rest = if digits.len() > 1 { format!(".{}", &digits[1..]) } else { String::new() };
            format!("{sign}{}{rest}e{exp}", &digits[..1])
        }
    }
}

impl fmt::Display for HighPrecisionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(self.digits.saturating_sub(5).max(1));
        f.write_str(&self.to_string_sig(sig))
    }
}

impl PartialEq for HighPrecisionValue {
    fn eq(&self, o: &Self) -> bool {
        self.v.cmp(&o.v) == Some(0)
    }
}

impl PartialOrd for HighPrecisionValue {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.v.cmp(&o.v).map(|c| c.cmp(&0))
    }
}

impl serde::Serialize for HighPrecisionValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Hp> for &Hp {
            type Output = Hp;
            fn $m(self, o: &Hp) -> Hp {
                let d = self.digits2(o);
                Hp::wrap(self.v.$m(&o.v, bits_for(d), RM), d)
            }
        }
        impl $tr<Hp> for Hp {
            type Output = Hp;
            fn $m(self, o: Hp) -> Hp {
                (&self).$m(&o)
            }
        }
        impl $tr<&Hp> for Hp {
            type Output = Hp;
            fn $m(self, o: &Hp) -> Hp {
                (&self).$m(o)
            }
        }
        impl $tr<Hp> for &Hp {
            type Output = Hp;
            fn $m(self, o: Hp) -> Hp {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for &Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        let mut v = self.v.clone();
        v.inv_sign();
        Hp::wrap(v, self.digits)
    }
}

impl Neg for Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_and_rendering() {
        let third = Hp::one(40) / Hp::from_int(3, 40);
        assert_eq!(third.to_string_sig(5), "0.33333");
        let x = Hp::parse("9.99996", 40).unwrap();
        assert_eq!(x.to_string_sig(5), "10");
        assert_eq!(Hp::parse("-123456.7", 40).unwrap().to_string_sig(4), "-123500");
        assert_eq!(Hp::parse("1e-20", 40).unwrap().to_string_sig(3), "1e-20");
        assert_eq!(Hp::zero(40).to_string_sig(3), "0");
        assert!((Hp::from_int(2, 40).ln().unwrap().to_f64() - 2f64.ln()).abs() < 1e-15);
        assert!(Hp::parse("x", 40).is_err());
        assert!(Hp::from_int(-1, 40).sqrt().is_err());
    }
}
