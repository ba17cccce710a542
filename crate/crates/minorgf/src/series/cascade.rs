//! The colour cascade relating `A_j`, `Â_j` and `B_k`, written once over any
//! ring with `exp` so that exact series and high-precision numerics share it.
//!
//! With `A_j` depending only on the number of colours:
//!
//! ```text
//! Â_j = Σ_s C(j,s) (-1)^(j-s) 2^s exp(Σ_{i≤s} C(s,i) A_i)
//! A_j = Σ_{partitions π of [j]} B_|π| Π_{S∈π} Â_|S|
//! ```
//!
//! `A_j` enters the right-hand side only through the `s = j` term of `Â_j`,
//! which gives `A_j = R(E_j) + Q_j` with `E_j = 2^j B_1 exp(L_j + Q_j)`.

use crate::Result;

pub trait CascadeRing: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale_int(&self, k: i64) -> Self;
    fn exp(&self) -> Result<Self>;
    /// Additive identity shaped like `self`.
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
}

/// The pieces of the `A_j` equation that do not involve `A_j`.
#[derive(Clone, Debug)]
pub struct CascadeStep<T> {
    /// `L_j = Σ_{i<j} C(j,i) A_i`.
    pub l: T,
    /// Terms `s < j` of `Â_j`.
    pub hat_rest: T,
    /// Everything in `A_j` except `B_1 · 2^j exp(L_j + A_j)`.
    pub q: T,
    /// Argument of the tree function: `A_j = R(E_j) + Q_j`.
    pub e: T,
}

pub(crate) fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn fact(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Integer partitions of `n` into nonincreasing parts.
pub(crate) fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of set partitions of `[n]` with block sizes `parts`.
pub(crate) fn partition_multiplicity(parts: &[usize]) -> i64 {
    let n: usize = parts.iter().sum();
    let mut denom: i64 = parts.iter().map(|&p| fact(p)).product();
    let mut i = 0;
    while i < parts.len() {
        let j = (i..parts.len()).find(|&j| parts[j] != parts[i]).unwrap_or(parts.len());
        denom *= fact(j - i);
        i = j;
    }
    fact(n) / denom
}

/// `exp(Σ_{i≤s} C(s,i) A_i)` for `a = [A_1, .., A_s]` (`s = a.len()`).
fn lifted_exp<T: CascadeRing>(a: &[T], unit: &T) -> Result<T> {
    let s = a.len();
    let arg = a.iter().enumerate().fold(unit.zero_like(), |acc, (i, ai)| acc.add(&ai.scale_int(binom(s, i + 1))));
    arg.exp()
}

/// `Â_j` from `A_1..A_j`.
pub fn ahat<T: CascadeRing>(a: &[T], unit: &T) -> Result<T> {
    let j = a.len();
    let mut acc = unit.zero_like();
    for s in 0..=j {
        let sign = if (j - s).is_multiple_of(2) { 1 } else { -1 };
        let term = lifted_exp(&a[..s], unit)?.scale_int(sign * binom(j, s) * (1i64 << s));
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Split the `A_j` equation given `A_1..A_{j-1}`, `Â_1..Â_{j-1}` and
/// `B_1..B_j`, where `j = b.len()`.
pub fn cascade_step<T: CascadeRing>(a: &[T], hats: &[T], b: &[T]) -> Result<CascadeStep<T>> {
    let j = b.len();
    assert!(j >= 1 && a.len() == j - 1 && hats.len() == j - 1, "cascade_step needs consistent lengths");
    let unit = b[0].one_like();
    let l = a.iter().enumerate().fold(unit.zero_like(), |acc, (i, ai)| acc.add(&ai.scale_int(binom(j, i + 1))));
    let mut hat_rest = unit.zero_like();
    for s in 0..j {
        let sign = if (j - s).is_multiple_of(2) { 1 } else { -1 };
        hat_rest = hat_rest.add(&lifted_exp(&a[..s], &unit)?.scale_int(sign * binom(j, s) * (1i64 << s)));
    }
    let mut q = b[0].mul(&hat_rest);
    for parts in integer_partitions(j) {
        if parts.len() < 2 {
            continue;
        }
        let prod = parts.iter().fold(b[parts.len() - 1].clone(), |acc, &p| acc.mul(&hats[p - 1]));
        q = q.add(&prod.scale_int(partition_multiplicity(&parts)));
    }
    let e = b[0].mul(&l.add(&q).exp()?).scale_int(1i64 << j);
    Ok(CascadeStep { l, hat_rest, q, e })
}

/// Right-hand side of the `A_j` equation evaluated at a trial `A_j`.
pub fn cascade_rhs<T: CascadeRing>(step: &CascadeStep<T>, b1: &T, aj: &T, j: usize) -> Result<T> {
    let top = step.l.add(aj).exp()?.scale_int(1i64 << j);
    Ok(step.q.add(&b1.mul(&top)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_and_multiplicities() {
        assert_eq!(integer_partitions(4).len(), 5);
        // Bell numbers as sums of multiplicities
        let bell: Vec<i64> =
            (1..=6).map(|n| integer_partitions(n).iter().map(|p| partition_multiplicity(p)).sum()).collect();
        assert_eq!(bell, vec![1, 2, 5, 15, 52, 203]);
        assert_eq!(partition_multiplicity(&[2, 1]), 3);
        assert_eq!(binom(5, 2), 10);
    }
}
