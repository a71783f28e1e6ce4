//! Up, down and combined martingale differences along a maximal chain.
//!
//! For a chain `X(0) ⊂ ⋯ ⊂ X(n)` and a step `1 ≤ s ≤ n-1`,
//! `U(s) = f(X(s+1)) - f(X(s)) - E[f(X(s+1)) - f(X(s)) | X(s)]` and
//! `D(s) = f(X(s-1)) - f(X(s)) - E[f(X(s-1)) - f(X(s)) | X(s)]`. Both
//! conditional expectations are read off the coefficients: adding a uniform
//! outside coordinate changes `f` by `(1/(n-s)) Σ_{i∉x} ∂_i f(x)` on average,
//! removing an inside one by `-(1/s) Σ_{i∈x} ∂_i f(x)`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::coupling::ChainSample;
use crate::error::{Error, Result};
use crate::poly::MultilinearPoly;
use crate::rational::{binomial_u128, from_usize, Rational};
use crate::subsets::{combinations, popcount};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MartingaleTerms {
    pub s: usize,
    pub u: Rational,
    pub d: Rational,
    pub c: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Up,
    Down,
}

/// `Σ_{i∉x} ∂_i f(x)`: the terms with exactly one variable outside `x`.
fn outside_derivative_sum(f: &MultilinearPoly, x: u64) -> Rational {
    f.terms()
        .filter(|(m, _)| (m & !x).count_ones() == 1)
        .fold(Rational::zero(), |acc, (_, c)| acc + c)
}

/// `Σ_{i∈x} ∂_i f(x) = Σ_{S⊆x} |S| c_S`.
fn inside_derivative_sum(f: &MultilinearPoly, x: u64) -> Rational {
    f.terms()
        .filter(|(m, _)| m & !x == 0)
        .fold(Rational::zero(), |acc, (m, c)| {
            acc + c * from_usize(popcount(m))
        })
}

fn check_step(n: usize, from: u64, to: u64) -> Result<()> {
    let bad = (from & !to != 0) || (to & !from).count_ones() != 1 || to >> n != 0;
    if bad {
        return Err(Error::InvalidParameter(format!(
            "{to:#b} does not extend {from:#b} by one coordinate"
        )));
    }
    Ok(())
}

/// `U` for the step `x → next`, where `next = x ∪ {i}`.
pub fn up_increment(f: &MultilinearPoly, x: u64, next: u64) -> Result<Rational> {
    let n = f.n();
    check_step(n, x, next)?;
    let outside = from_usize(n - popcount(x));
    Ok(f.evaluate_mask(next) - f.evaluate_mask(x) - outside_derivative_sum(f, x) / outside)
}

/// `D` for the step `x → prev`, where `x = prev ∪ {i}`.
pub fn down_increment(f: &MultilinearPoly, x: u64, prev: u64) -> Result<Rational> {
    check_step(f.n(), prev, x)?;
    let s = from_usize(popcount(x));
    Ok(f.evaluate_mask(prev) - f.evaluate_mask(x) + inside_derivative_sum(f, x) / s)
}

fn check_chain(f: &MultilinearPoly, chain: &ChainSample) -> Result<()> {
    if chain.n() != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: chain.n(),
        });
    }
    Ok(())
}

fn check_inner_step(n: usize, s: usize) -> Result<()> {
    if s == 0 || s >= n {
        return Err(Error::InvalidParameter(format!(
            "step {s} outside 1..={}",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

/// `U(s)`, `D(s)` and `C(s) = (n-s) U(s) - s D(s)` along `chain`.
pub fn martingale_terms(
    f: &MultilinearPoly,
    chain: &ChainSample,
    s: usize,
) -> Result<MartingaleTerms> {
    check_chain(f, chain)?;
    let n = f.n();
    check_inner_step(n, s)?;
    if !f.is_harmonic() {
        return Err(Error::NotHarmonic);
    }
    let x = chain.set(s)?;
    let u = up_increment(f, x, chain.set(s + 1)?)?;
    let d = down_increment(f, x, chain.set(s - 1)?)?;
    let c = from_usize(n - s) * &u - from_usize(s) * &d;
    Ok(MartingaleTerms { s, u, d, c })
}

/// `(n-s) f(X(s+1)) - (n-2s) f(X(s)) - s f(X(s-1))`, which equals `C(s)` for
/// harmonic `f`.
pub fn c_identity_rhs(f: &MultilinearPoly, chain: &ChainSample, s: usize) -> Result<Rational> {
    check_chain(f, chain)?;
    let n = f.n();
    check_inner_step(n, s)?;
    let at = |k: usize| chain.set(k).map(|m| f.evaluate_mask(m));
    let (n_i, s_i) = (n as i64, s as i64);
    Ok(Rational::from_integer((n_i - s_i).into()) * at(s + 1)?
        - Rational::from_integer((n_i - 2 * s_i).into()) * at(s)?
        - from_usize(s) * at(s - 1)?)
}

/// `(Σ_{u=s}^{t} C(u), (n-t) f(X(t+1)) + (t+1) f(X(t)) - (n-s+1) f(X(s)) - s f(X(s-1)))`.
pub fn telescoping_sides(
    f: &MultilinearPoly,
    chain: &ChainSample,
    s: usize,
    t: usize,
) -> Result<(Rational, Rational)> {
    let n = f.n();
    check_inner_step(n, s)?;
    check_inner_step(n, t)?;
    if s > t {
        return Err(Error::InvalidParameter(format!("s = {s} exceeds t = {t}")));
    }
    let mut lhs = Rational::zero();
    for u in s..=t {
        lhs += martingale_terms(f, chain, u)?.c;
    }
    let at = |k: usize| chain.set(k).map(|m| f.evaluate_mask(m));
    let rhs = from_usize(n - t) * at(t + 1)? + from_usize(t + 1) * at(t)?
        - from_usize(n - s + 1) * at(s)?
        - from_usize(s) * at(s - 1)?;
    Ok((lhs, rhs))
}

/// Number of nested tuples `A_1 ⊆ ⋯ ⊆ A_r` with `|A_j| = levels[j]`.
fn nested_count(n: usize, levels: &[usize]) -> u128 {
    let mut prev = 0;
    let mut count: u128 = 1;
    for &l in levels {
        count = count.saturating_mul(binomial_u128(n - prev, l - prev));
        prev = l;
    }
    count
}

fn for_each_nested(n: usize, levels: &[usize], sets: &mut Vec<u64>, visit: &mut dyn FnMut(&[u64])) {
    let depth = sets.len();
    if depth == levels.len() {
        visit(sets);
        return;
    }
    let base = sets.last().copied().unwrap_or(0);
    let prev = if depth == 0 { 0 } else { levels[depth - 1] };
    let free: Vec<usize> = (0..n).filter(|i| base >> i & 1 == 0).collect();
    for pick in combinations(free.len(), levels[depth] - prev) {
        let add = crate::subsets::members(pick).fold(0u64, |acc, j| acc | 1 << free[j]);
        sets.push(base | add);
        for_each_nested(n, levels, sets, visit);
        sets.pop();
    }
}

/// `E[h(X(l_1), …, X(l_r))]` over a uniform maximal chain, by enumerating the
/// joint law of the chain at the given non-decreasing levels.
pub fn expect_partial_chain(
    n: usize,
    levels: &[usize],
    budget: u128,
    mut h: impl FnMut(&[u64]) -> Rational,
) -> Result<Rational> {
    if levels.windows(2).any(|w| w[0] > w[1]) || levels.iter().any(|&l| l > n) {
        return Err(Error::InvalidParameter(format!(
            "levels {levels:?} must be non-decreasing and at most {n}"
        )));
    }
    let needed = nested_count(n, levels);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut total = Rational::zero();
    for_each_nested(n, levels, &mut Vec::new(), &mut |sets| total += h(sets));
    Ok(total / Rational::from_integer(needed.into()))
}

/// `E[U(s) U(t)]` (or the same for `D`) by exact enumeration of the chain at
/// the four levels involved.
pub fn martingale_moment(
    f: &MultilinearPoly,
    s: usize,
    t: usize,
    step: Step,
    budget: u128,
) -> Result<Rational> {
    let n = f.n();
    let (s, t) = (s.min(t), s.max(t));
    let range_ok = match step {
        Step::Up => t < n,
        Step::Down => s >= 1 && t <= n,
    };
    if !range_ok {
        return Err(Error::InvalidParameter(format!(
            "steps {s}, {t} out of range for n = {n}"
        )));
    }
    let levels = match step {
        Step::Up => [s, s + 1, t, t + 1],
        Step::Down => [s - 1, s, t - 1, t],
    };
    let mut cache: HashMap<(u64, u64), Rational> = HashMap::new();
    let mut increment = |a: u64, b: u64| -> Rational {
        cache
            .entry((a, b))
            .or_insert_with(|| match step {
                Step::Up => up_increment(f, a, b).expect("nested step"),
                Step::Down => down_increment(f, b, a).expect("nested step"),
            })
            .clone()
    };
    if s == t {
        return expect_partial_chain(n, &levels[..2], budget, |sets| {
            let z = increment(sets[0], sets[1]);
            &z * &z
        });
    }
    expect_partial_chain(n, &levels, budget, |sets| {
        increment(sets[0], sets[1]) * increment(sets[2], sets[3])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::{sample_chain, worker_rng};
    use crate::measures::{norm_sq, ExchangeableMeasure};
    use crate::rational::{int, rat};

    fn harmonic_sample() -> MultilinearPoly {
        let a = MultilinearPoly::product_of_differences(6, &[(1, 2), (3, 4)]).unwrap();
        let b = MultilinearPoly::product_of_differences(6, &[(5, 1)]).unwrap();
        let c = MultilinearPoly::product_of_differences(6, &[(6, 3), (2, 5), (4, 1)]).unwrap();
        a.scale(&rat(3, 2))
            .add(&b.scale(&int(-2)))
            .unwrap()
            .add(&c)
            .unwrap()
            .add(&MultilinearPoly::constant(6, rat(1, 3)).unwrap())
            .unwrap()
    }

    #[test]
    fn two_variable_example() {
        let f = MultilinearPoly::product_of_differences(2, &[(1, 2)]).unwrap();
        let chain = ChainSample::from_order(vec![0, 1]).unwrap();
        let t = martingale_terms(&f, &chain, 1).unwrap();
        assert!(t.u.is_zero() && t.d.is_zero() && t.c.is_zero());
        assert!(c_identity_rhs(&f, &chain, 1).unwrap().is_zero());
    }

    #[test]
    fn constant_has_zero_terms() {
        let f = MultilinearPoly::constant(5, rat(7, 3)).unwrap();
        let chain = sample_chain(5, &mut worker_rng(0, 0)).unwrap();
        for s in 1..5 {
            let t = martingale_terms(&f, &chain, s).unwrap();
            assert!(t.u.is_zero() && t.d.is_zero() && t.c.is_zero());
        }
    }

    #[test]
    fn identities_on_sampled_chains() {
        let f = harmonic_sample();
        assert!(f.is_harmonic());
        let mut rng = worker_rng(11, 0);
        for _ in 0..200 {
            let chain = sample_chain(6, &mut rng).unwrap();
            for s in 1..6 {
                let t = martingale_terms(&f, &chain, s).unwrap();
                assert_eq!(t.c, c_identity_rhs(&f, &chain, s).unwrap());
                for u in s..6 {
                    let (lhs, rhs) = telescoping_sides(&f, &chain, s, u).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn non_harmonic_rejected() {
        let f = MultilinearPoly::var(3, 1).unwrap();
        let chain = ChainSample::from_order(vec![0, 1, 2]).unwrap();
        assert_eq!(martingale_terms(&f, &chain, 1), Err(Error::NotHarmonic));
    }

    #[test]
    fn partial_chain_marginals() {
        // E[|X(2) ∩ {0}|] = 2/5 at n = 5.
        let e = expect_partial_chain(5, &[2], 1000, |s| from_usize((s[0] & 1) as usize)).unwrap();
        assert_eq!(e, rat(2, 5));
        assert_eq!(nested_count(4, &[1, 2]), 12);
        let pairs = expect_partial_chain(4, &[1, 1, 3], 1000, |s| {
            assert_eq!(s[0], s[1]);
            assert_eq!(s[0] & s[2], s[0]);
            int(1)
        })
        .unwrap();
        assert_eq!(pairs, int(1));
    }

    #[test]
    fn orthogonality_and_second_moment() {
        let f = harmonic_sample();
        let n = 6;
        for s in 1..n {
            for t in s + 1..n {
                assert!(martingale_moment(&f, s, t, Step::Up, 1 << 20)
                    .unwrap()
                    .is_zero());
                assert!(martingale_moment(&f, s, t, Step::Down, 1 << 20)
                    .unwrap()
                    .is_zero());
            }
            let second = martingale_moment(&f, s, s, Step::Up, 1 << 20).unwrap();
            let nu = ExchangeableMeasure::slice_uniform(n, s).unwrap();
            let energy: Rational = (0..n)
                .map(|i| norm_sq(&f.partial_derivative(i), &nu).unwrap())
                .sum();
            assert!(second <= int(4) / from_usize(n - s) * energy);
        }
    }
}
