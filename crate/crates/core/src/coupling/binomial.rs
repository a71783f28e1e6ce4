use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, binomial, from_usize, Rational};

pub(crate) fn check_probability(p: &Rational) -> Result<()> {
    if p.is_negative() || p > &Rational::one() {
        return Err(Error::InvalidParameter(format!("p = {p} outside [0, 1]")));
    }
    Ok(())
}

/// `Pr[Bin(n, p) = s]` for `s = 0..=n`.
pub fn binomial_pmf(n: usize, p: &Rational) -> Result<Vec<Rational>> {
    check_probability(p)?;
    let q = Rational::one() - p;
    let p_pow = powers(p, n);
    let q_pow = powers(&q, n);
    Ok((0..=n)
        .map(|s| Rational::from_integer(binomial(n, s)) * &p_pow[s] * &q_pow[n - s])
        .collect())
}

pub(crate) fn powers(base: &Rational, max: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = Rational::one();
    for _ in 0..=max {
        out.push(acc.clone());
        acc *= base;
    }
    out
}

/// Exact `Pr[|Bin(n, p) - np| > εn]`.
pub fn deviation_tail(n: usize, p: &Rational, eps: &Rational) -> Result<Rational> {
    let pmf = binomial_pmf(n, p)?;
    let center = from_usize(n) * p;
    let radius = eps * from_usize(n);
    Ok(pmf
        .iter()
        .enumerate()
        .filter(|(s, _)| (from_usize(*s) - &center).abs() > radius)
        .fold(Rational::zero(), |acc, (_, w)| acc + w))
}

/// `2 exp(-ε² n / (6 p (1-p)))`.
pub fn chernoff_bound(n: usize, p: &Rational, eps: &Rational) -> f64 {
    let p = rational::to_f64(p);
    let eps = rational::to_f64(eps);
    2.0 * (-eps * eps * n as f64 / (6.0 * p * (1.0 - p))).exp()
}
