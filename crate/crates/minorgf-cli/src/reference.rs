//! Published reference digits for the growth constants, used by
//! `gamma --check`. Values are truncated prints, so a result matches when
//! it is within the relative tolerance or the printed digits are a prefix.

use minorgf::numerics::HighPrecisionValue;

pub const TABLE_VERSION: u32 = 1;

pub struct Reference {
    pub target: &'static str,
    pub param: usize,
    pub printed: &'static str,
    pub rel_tol: f64,
}

const fn r(target: &'static str, param: usize, printed: &'static str, rel_tol: f64) -> Reference {
    Reference { target, param, printed, rel_tol }
}

pub const REFERENCES: &[Reference] = &[
    r("rd-k4", 1, "9.073311", 1e-4),
    r("rd-k4", 2, "12.677273", 1e-4),
    r("rd-k4", 3, "23.524122", 1e-4),
    r("rd-k4", 4, "45.5488", 1e-3),
    r("rd-k4", 5, "89.5511", 1e-3),
    r("ex-k4", 0, "9.073311", 1e-4),
    r("ex-k4", 1, "23.524122", 1e-4),
    r("ex-k4", 2, "89.5511", 1e-3),
    r("outer-rd", 3, "10.482", 1e-3),
    r("outer-rd", 5, "34.099", 1e-3),
    r("outer-rd", 7, "130.023", 1e-3),
    r("outer-ex", 1, "14.642", 1e-3),
    r("outer-ex", 2, "34.099", 1e-3),
    r("outer-ex", 3, "130.023", 1e-3),
    r("rho-sp", 0, "0.1280", 1e-4),
    r("rho-outer", 0, "0.171572875253809902396622551580603842860656249246103853646", 1e-30),
];

pub fn lookup(target: &str, param: usize) -> Option<&'static Reference> {
    REFERENCES.iter().find(|r| r.target == target && r.param == param)
}

/// Relative error and whether the value matches the printed digits.
pub fn compare(value: &HighPrecisionValue, reference: &Reference) -> (HighPrecisionValue, bool) {
    let d = value.digits();
    let p = HighPrecisionValue::parse(reference.printed, d).expect("reference parses");
    let rel = ((value - &p) / &p).abs();
    let decimals = reference.printed.split('.').nth(1).map_or(0, str::len);
    let ulp = HighPrecisionValue::ten_pow_neg(decimals, d);
    let prefix = value >= &p && value < &(&p + &ulp);
    let tol = HighPrecisionValue::parse(&format!("{:e}", reference.rel_tol), d).expect("tolerance parses");
    let ok = rel < tol || prefix;
    (rel, ok)
}
