//! Random inputs shared by the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slice_harmonic::measures::ExchangeableMeasure;
use slice_harmonic::rational::rat;
use slice_harmonic::{MultilinearPoly, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numerator in `[-bound, bound]`, denominator in `[1, bound]`.
pub fn rational(rng: &mut impl Rng, bound: i64) -> Rational {
    rat(
        rng.random_range(-bound..=bound),
        rng.random_range(1..=bound),
    )
}

pub fn nonzero_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    loop {
        let r = rational(rng, bound);
        if r != Rational::from_integer(BigInt::from(0)) {
            return r;
        }
    }
}

/// Sum of `terms` random monomials of degree at most `max_degree`.
pub fn poly(rng: &mut impl Rng, n: usize, max_degree: usize, terms: usize) -> MultilinearPoly {
    let mut vars: Vec<usize> = (1..=n).collect();
    let mut f = MultilinearPoly::zero(n).unwrap();
    for _ in 0..terms {
        vars.shuffle(rng);
        let d = rng.random_range(0..=max_degree.min(n));
        let m = MultilinearPoly::monomial(n, &vars[..d], rational(rng, 9)).unwrap();
        f = f.add(&m).unwrap();
    }
    f
}

/// `c · Π (x_a - x_b)` over `d` random disjoint pairs.
pub fn elementary(rng: &mut impl Rng, n: usize, d: usize) -> MultilinearPoly {
    let mut vars: Vec<usize> = (1..=n).collect();
    vars.shuffle(rng);
    let pairs: Vec<(usize, usize)> = (0..d).map(|i| (vars[2 * i], vars[2 * i + 1])).collect();
    MultilinearPoly::product_of_differences(n, &pairs)
        .unwrap()
        .scale(&nonzero_rational(rng, 9))
}

/// Random harmonic polynomial with parts of every degree in `degrees`.
pub fn harmonic(rng: &mut impl Rng, n: usize, degrees: &[usize], parts: usize) -> MultilinearPoly {
    let mut f = MultilinearPoly::zero(n).unwrap();
    for &d in degrees {
        for _ in 0..parts {
            f = f.add(&elementary(rng, n, d)).unwrap();
        }
    }
    f
}

/// Random harmonic polynomial of exact degree at most `max_degree` with a
/// random mix of degrees.
pub fn mixed_harmonic(rng: &mut impl Rng, n: usize, max_degree: usize) -> MultilinearPoly {
    loop {
        let degrees: Vec<usize> = (0..=max_degree).filter(|_| rng.random_bool(0.6)).collect();
        let f = harmonic(rng, n, &degrees, 2);
        if f.degree().unwrap_or(0) > 0 {
            return f;
        }
    }
}

/// Level weights drawn uniformly from small integers, some possibly zero.
pub fn level_weights(rng: &mut impl Rng, n: usize) -> ExchangeableMeasure {
    loop {
        let raw: Vec<i64> = (0..=n).map(|_| rng.random_range(0..=6)).collect();
        let total: i64 = raw.iter().sum();
        if total == 0 {
            continue;
        }
        let weights = raw.iter().map(|&w| rat(w, total)).collect();
        return ExchangeableMeasure::level_weights(n, weights).unwrap();
    }
}

/// A slice-uniform, product, or level-weight measure.
pub fn measure(rng: &mut impl Rng, n: usize) -> ExchangeableMeasure {
    match rng.random_range(0..3) {
        0 => ExchangeableMeasure::slice_uniform(n, rng.random_range(0..=n)).unwrap(),
        1 => {
            let den = rng.random_range(2..=9);
            ExchangeableMeasure::product_bernoulli(n, rat(rng.random_range(1..den), den)).unwrap()
        }
        _ => level_weights(rng, n),
    }
}
