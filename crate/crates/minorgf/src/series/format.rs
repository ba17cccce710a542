use std::fmt::Write;

use num_rational::BigRational;
use serde_json::{json, Value};

use super::{factorial, BivariatePoly, TruncatedEGF};

/// `c_n n!` as a string; non-integral values keep their fractional form.
pub fn counts_or_rationals(s: &TruncatedEGF) -> Vec<String> {
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| (c * BigRational::from_integer(factorial(n))).to_string())
        .collect()
}

/// JSON array of exact coefficients rendered as `"p/q"` strings.
pub fn to_json(s: &TruncatedEGF) -> Value {
    json!(s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

/// CSV with columns `n,numerator,denominator,count`.
pub fn to_csv(s: &TruncatedEGF) -> String {
    let mut out = String::from("n,numerator,denominator,count\n");
    for ((n, c), count) in s.coeffs().iter().enumerate().zip(counts_or_rationals(s)) {
        writeln!(out, "{n},{},{},{count}", c.numer(), c.denom()).unwrap();
    }
    out
}

/// One line per power of `x`: `n: polynomial`.
pub fn bivariate_text(s: &BivariatePoly) -> String {
    let mut out = String::new();
    for (n, p) in s.coeffs().iter().enumerate() {
        writeln!(out, "{n}: {p}").unwrap();
    }
    out
}
