//! Exact value distributions on slices and cubes, and coupled second moments
//! along the chain.
//!
//! Variables that `f` treats symmetrically (swapping them leaves `f`
//! unchanged) are grouped into classes. The value of `f` then depends only on
//! how many ones fall into each class, so sums run over count vectors with
//! multinomial weights instead of over points.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coupling::binomial::{check_probability, powers};
use crate::coupling::{expect_partial_chain, run_workers, sample_chain, Pmf};
use crate::error::{Error, Result};
use crate::measures::DEFAULT_BUDGET;
use crate::poly::{Evaluator, MultilinearPoly};
use crate::rational::{binomial, binomial_u128, Rational};
use crate::subsets::combinations;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    Slice { k: usize },
    Cube { p: Rational },
}

/// Guard on nested-pair states in [`coupled_second_moment`].
pub const NESTED_PAIR_BUDGET: u128 = 10_000_000;

/// Partition of the variables (0-based) into classes on which `f` is
/// symmetric. Classes are listed by smallest member.
pub fn symmetry_classes(f: &MultilinearPoly) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for j in 0..f.n() {
        // Transpositions generate the symmetric group on a class, so testing
        // against one representative suffices.
        match classes.iter_mut().find(|c| &f.swap(c[0], j) == f) {
            Some(class) => class.push(j),
            None => classes.push(vec![j]),
        }
    }
    classes
}

/// Mask holding the first `counts[c]` members of each class.
fn representative(classes: &[Vec<usize>], counts: &[usize]) -> u64 {
    classes
        .iter()
        .zip(counts)
        .flat_map(|(class, &a)| class[..a].iter())
        .fold(0, |acc, &i| acc | 1 << i)
}

/// Number of count vectors `a` with `a_c ≤ sizes[c]` and `Σ a_c = total`
/// (any total when `None`).
fn count_vectors(sizes: &[usize], total: Option<usize>) -> u128 {
    match total {
        None => sizes
            .iter()
            .fold(1u128, |acc, &s| acc.saturating_mul(s as u128 + 1)),
        Some(k) => {
            let mut ways = vec![0u128; k + 1];
            ways[0] = 1;
            for &s in sizes {
                let mut next = vec![0u128; k + 1];
                for (j, &w) in ways.iter().enumerate() {
                    for a in 0..=s.min(k - j) {
                        next[j + a] = next[j + a].saturating_add(w);
                    }
                }
                ways = next;
            }
            ways[k]
        }
    }
}

fn for_each_count(sizes: &[usize], total: Option<usize>, visit: &mut dyn FnMut(&[usize])) {
    fn go(
        sizes: &[usize],
        rest: &[usize],
        left: Option<usize>,
        acc: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if acc.len() == sizes.len() {
            if left.is_none_or(|l| l == 0) {
                visit(acc);
            }
            return;
        }
        let s = sizes[acc.len()];
        let capacity: usize = rest[acc.len() + 1..].iter().sum();
        for a in 0..=s {
            if let Some(l) = left {
                if a > l {
                    break;
                }
                if l - a > capacity {
                    continue;
                }
            }
            acc.push(a);
            go(sizes, rest, left.map(|l| l - a), acc, visit);
            acc.pop();
        }
    }
    go(sizes, sizes, total, &mut Vec::new(), visit);
}

fn check_domain(n: usize, domain: &Domain) -> Result<()> {
    match domain {
        Domain::Slice { k } if *k > n => Err(Error::InvalidParameter(format!(
            "slice {k} exceeds n = {n}"
        ))),
        Domain::Cube { p } => check_probability(p),
        _ => Ok(()),
    }
}

/// Exact pmf of `f` under the uniform slice measure or the product measure.
pub fn exact_distribution(f: &MultilinearPoly, domain: &Domain) -> Result<Pmf<Rational>> {
    exact_distribution_with_budget(f, domain, DEFAULT_BUDGET)
}

pub fn exact_distribution_with_budget(
    f: &MultilinearPoly,
    domain: &Domain,
    budget: u128,
) -> Result<Pmf<Rational>> {
    let n = f.n();
    check_domain(n, domain)?;
    let classes = symmetry_classes(f);
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    let total = match domain {
        Domain::Slice { k } => Some(*k),
        Domain::Cube { .. } => None,
    };
    let needed = count_vectors(&sizes, total);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let eval = Evaluator::new(f);
    let (p_pow, q_pow) = match domain {
        Domain::Cube { p } => (powers(p, n), powers(&(Rational::one() - p), n)),
        Domain::Slice { .. } => (Vec::new(), Vec::new()),
    };
    let mut values: BTreeMap<Rational, BigInt> = BTreeMap::new();
    let mut cube_values: BTreeMap<Rational, Rational> = BTreeMap::new();
    for_each_count(&sizes, total, &mut |counts| {
        let mult: BigInt = sizes
            .iter()
            .zip(counts)
            .map(|(&s, &a)| binomial(s, a))
            .product();
        let value = eval.evaluate(representative(&classes, counts));
        match domain {
            Domain::Slice { .. } => *values.entry(value).or_insert_with(BigInt::zero) += mult,
            Domain::Cube { .. } => {
                let w: usize = counts.iter().sum();
                let weight = Rational::from_integer(mult) * &p_pow[w] * &q_pow[n - w];
                *cube_values.entry(value).or_insert_with(Rational::zero) += weight;
            }
        }
    });
    match domain {
        Domain::Slice { k } => {
            let size = binomial(n, *k);
            Pmf::from_weights(
                values
                    .into_iter()
                    .map(|(v, c)| (v, Rational::new(c, size.clone()))),
            )
        }
        Domain::Cube { .. } => Pmf::from_weights(cube_values),
    }
}

/// Pointwise enumeration over the whole domain; an oracle for
/// [`exact_distribution`].
pub fn exact_distribution_enumerated(
    f: &MultilinearPoly,
    domain: &Domain,
    budget: u128,
) -> Result<Pmf<Rational>> {
    let n = f.n();
    check_domain(n, domain)?;
    let eval = Evaluator::new(f);
    match domain {
        Domain::Slice { k } => {
            let needed = binomial_u128(n, *k);
            if needed > budget {
                return Err(Error::BudgetExceeded { needed, budget });
            }
            let w = Rational::new(BigInt::one(), binomial(n, *k));
            Pmf::from_weights(combinations(n, *k).map(|m| (eval.evaluate(m), w.clone())))
        }
        Domain::Cube { p } => {
            let needed = 1u128 << n;
            if needed > budget {
                return Err(Error::BudgetExceeded { needed, budget });
            }
            let (p_pow, q_pow) = (powers(p, n), powers(&(Rational::one() - p), n));
            Pmf::from_weights((0..1u64 << n).map(|m| {
                let w = m.count_ones() as usize;
                (eval.evaluate(m), &p_pow[w] * &q_pow[n - w])
            }))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMode {
    Exact,
    MonteCarlo {
        samples: usize,
        seed: u64,
        threads: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SecondMoment {
    Exact(Rational),
    Estimate {
        mean: f64,
        std_error: f64,
        samples: usize,
    },
}

impl SecondMoment {
    pub fn value_f64(&self) -> f64 {
        match self {
            SecondMoment::Exact(v) => crate::rational::to_f64(v),
            SecondMoment::Estimate { mean, .. } => *mean,
        }
    }
}

/// `E[(f(X(k)) - f(X(ℓ)))²]` over a uniform maximal chain. The order of `k`
/// and `ℓ` does not matter.
pub fn coupled_second_moment(
    f: &MultilinearPoly,
    k: usize,
    l: usize,
    mode: MomentMode,
) -> Result<SecondMoment> {
    let n = f.n();
    let (k, l) = (k.min(l), k.max(l));
    if l > n {
        return Err(Error::InvalidParameter(format!(
            "level {l} exceeds n = {n}"
        )));
    }
    match mode {
        MomentMode::Exact => nested_pair_moment(f, k, l).map(SecondMoment::Exact),
        MomentMode::MonteCarlo {
            samples,
            seed,
            threads,
        } => {
            if samples < 2 {
                return Err(Error::InvalidParameter("need at least 2 samples".into()));
            }
            let g = f.to_float();
            let draws: Vec<f64> = run_workers(samples, seed, threads, |rng, count| {
                (0..count)
                    .map(|_| {
                        let chain = sample_chain(n, rng).expect("valid n");
                        let sets = chain.sets();
                        let diff = g.evaluate_mask(sets[k]) - g.evaluate_mask(sets[l]);
                        diff * diff
                    })
                    .collect()
            });
            let m = draws.len() as f64;
            let mean = draws.iter().sum::<f64>() / m;
            let var = draws.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1.0);
            Ok(SecondMoment::Estimate {
                mean,
                std_error: (var / m).sqrt(),
                samples,
            })
        }
    }
}

fn nested_pair_moment(f: &MultilinearPoly, k: usize, l: usize) -> Result<Rational> {
    let n = f.n();
    if k == l {
        return Ok(Rational::zero());
    }
    let classes = symmetry_classes(f);
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    // States are pairs (a_c ≤ b_c); bound them by the product of the two
    // single-level counts.
    let needed = count_vectors(&sizes, Some(k)).saturating_mul(count_vectors(&sizes, Some(l)));
    let eval = Evaluator::new(f);
    let mut total = BigInt::zero();
    let mut visited: u128 = 0;
    let mut over = false;
    for_each_count(&sizes, Some(k), &mut |a| {
        if over {
            return;
        }
        let caps: Vec<usize> = sizes.iter().zip(a).map(|(s, a)| s - a).collect();
        let fa = eval.numerator(representative(&classes, a));
        let base: BigInt = sizes.iter().zip(a).map(|(&s, &x)| binomial(s, x)).product();
        for_each_count(&caps, Some(l - k), &mut |extra| {
            visited += 1;
            if visited > NESTED_PAIR_BUDGET {
                over = true;
                return;
            }
            let b: Vec<usize> = a.iter().zip(extra).map(|(x, e)| x + e).collect();
            let diff = &fa - eval.numerator(representative(&classes, &b));
            if diff.is_zero() {
                return;
            }
            let mult: BigInt = caps
                .iter()
                .zip(extra)
                .map(|(&c, &e)| binomial(c, e))
                .product();
            total += &base * mult * &diff * &diff;
        });
    });
    if over {
        return Err(Error::BudgetExceeded {
            needed: needed.max(NESTED_PAIR_BUDGET + 1),
            budget: NESTED_PAIR_BUDGET,
        });
    }
    let denom = eval.denominator();
    let pairs = binomial(n, k) * binomial(n - k, l - k);
    Ok(Rational::new(total, pairs * denom * denom))
}

/// Nested-pair enumeration; an oracle for the exact mode of
/// [`coupled_second_moment`].
pub fn coupled_second_moment_enumerated(
    f: &MultilinearPoly,
    k: usize,
    l: usize,
    budget: u128,
) -> Result<Rational> {
    let (k, l) = (k.min(l), k.max(l));
    let eval = Evaluator::new(f);
    expect_partial_chain(f.n(), &[k, l], budget, |sets| {
        let diff = eval.evaluate(sets[0]) - eval.evaluate(sets[1]);
        &diff * &diff
    })
}
