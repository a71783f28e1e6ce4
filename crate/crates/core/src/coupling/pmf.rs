use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{self, format_rational, Rational};

/// A finitely supported distribution on the line. The support is strictly
/// increasing and the weights are nonnegative with total mass one.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf<T> {
    support: Vec<T>,
    probs: Vec<T>,
}

fn check_shape<T: PartialOrd + Signed>(support: &[T], probs: &[T]) -> Result<()> {
    if support.len() != probs.len() {
        return Err(Error::DimensionMismatch {
            expected: support.len(),
            found: probs.len(),
        });
    }
    if support.is_empty() {
        return Err(Error::InvalidParameter("empty support".into()));
    }
    if support.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "support must be strictly increasing".into(),
        ));
    }
    if probs.iter().any(|p| p.is_negative()) {
        return Err(Error::InvalidParameter("negative probability".into()));
    }
    Ok(())
}

impl<T> Pmf<T> {
    pub fn support(&self) -> &[T] {
        &self.support
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }
}

impl Pmf<Rational> {
    pub fn new(support: Vec<Rational>, probs: Vec<Rational>) -> Result<Self> {
        check_shape(&support, &probs)?;
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidParameter(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(Self { support, probs })
    }

    /// Collects `(value, weight)` pairs, merging repeated values.
    pub fn from_weights(pairs: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (v, w) in pairs {
            *map.entry(v).or_insert_with(Rational::zero) += w;
        }
        map.retain(|_, w| !w.is_zero());
        let (support, probs) = map.into_iter().unzip();
        Self::new(support, probs)
    }

    pub fn point_mass(value: Rational) -> Self {
        Self {
            support: vec![value],
            probs: vec![Rational::one()],
        }
    }

    pub fn mean(&self) -> Rational {
        self.support
            .iter()
            .zip(&self.probs)
            .map(|(v, p)| v * p)
            .sum()
    }

    pub fn to_f64(&self) -> Pmf<f64> {
        let support: Vec<f64> = self.support.iter().map(rational::to_f64).collect();
        // Merge values that collapse to the same float.
        let mut merged = Pmf {
            support: Vec::with_capacity(support.len()),
            probs: Vec::with_capacity(support.len()),
        };
        for (v, p) in support
            .into_iter()
            .zip(self.probs.iter().map(rational::to_f64))
        {
            if merged.support.last() == Some(&v) {
                *merged.probs.last_mut().expect("nonempty") += p;
            } else {
                merged.support.push(v);
                merged.probs.push(p);
            }
        }
        merged
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "support": self.support.iter().map(format_rational).collect::<Vec<_>>(),
            "probs": self.probs.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }
}

impl Pmf<f64> {
    /// Weights must sum to one within `1e-12`.
    pub fn new(support: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        if support.iter().chain(&probs).any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite entry".into()));
        }
        check_shape(&support, &probs)?;
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(Self { support, probs })
    }

    /// Empirical distribution of a sample.
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite sample".into()));
        }
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mut support: Vec<f64> = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        for x in sorted {
            if support.last() == Some(&x) {
                *counts.last_mut().expect("nonempty") += 1;
            } else {
                support.push(x);
                counts.push(1);
            }
        }
        let total = samples.len() as f64;
        let probs: Vec<f64> = counts.into_iter().map(|c| c as f64 / total).collect();
        check_shape(&support, &probs)?;
        Ok(Self { support, probs })
    }

    pub fn to_json_value(&self) -> Value {
        json!({ "support": self.support, "probs": self.probs })
    }
}

/// Cumulative sums `F(x_i)`, clamped at one.
fn cdf_f64(pmf: &Pmf<f64>) -> Vec<f64> {
    let mut acc = 0.0;
    pmf.probs
        .iter()
        .map(|p| {
            acc += p;
            acc.min(1.0)
        })
        .collect()
}

/// `F(x)` given the support and its cumulative sums.
fn cdf_at(support: &[f64], cdf: &[f64], x: f64) -> f64 {
    let idx = support.partition_point(|&v| v <= x);
    if idx == 0 {
        0.0
    } else {
        cdf[idx - 1]
    }
}

/// Least `ε ≥ 0` with `G(x) ≤ F(x + ε) + ε` for every `x`, where `F`, `G`
/// are the CDFs of `a`, `b`.
fn levy_one_side(a: &Pmf<f64>, fa: &[f64], b: &Pmf<f64>, fb: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for (j, &x) in b.support.iter().enumerate() {
        let t = fb[j];
        // Segment starting at ε = 0, then one segment per atom of `a` past x.
        let start = a.support.partition_point(|&v| v <= x);
        let mut best = (t - cdf_at(&a.support, fa, x)).max(0.0);
        for (&v, &fv) in a.support[start..].iter().zip(&fa[start..]) {
            let shift = v - x;
            if shift >= best {
                break;
            }
            best = best.min(shift.max(t - fv));
        }
        worst = worst.max(best);
    }
    worst
}

/// Lévy distance: the least `ε` with `F_a(x-ε) - ε ≤ F_b(x) ≤ F_a(x+ε) + ε`
/// for all `x`. Computed exactly on the merged step functions.
pub fn levy_distance(a: &Pmf<f64>, b: &Pmf<f64>) -> f64 {
    if a.len().saturating_mul(b.len()) > 4_000_000 {
        return levy_distance_bisect(a, b);
    }
    let (fa, fb) = (cdf_f64(a), cdf_f64(b));
    levy_one_side(a, &fa, b, &fb).max(levy_one_side(b, &fb, a, &fa))
}

fn feasible(a: &Pmf<f64>, fa: &[f64], b: &Pmf<f64>, fb: &[f64], eps: f64) -> bool {
    let mut i = 0;
    for (j, &x) in b.support.iter().enumerate() {
        while i < a.support.len() && a.support[i] <= x + eps {
            i += 1;
        }
        let fa_shift = if i == 0 { 0.0 } else { fa[i - 1] };
        if fb[j] > fa_shift + eps {
            return false;
        }
    }
    true
}

/// Lévy distance by bisection on `ε`, accurate to about `1e-14`. Linear in
/// the support sizes per step.
pub fn levy_distance_bisect(a: &Pmf<f64>, b: &Pmf<f64>) -> f64 {
    let (fa, fb) = (cdf_f64(a), cdf_f64(b));
    let ok = |eps: f64| feasible(a, &fa, b, &fb, eps) && feasible(b, &fb, a, &fa, eps);
    if ok(0.0) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Merged walk over both supports, yielding `(p_a, p_b)` at each point.
fn merged<'a, T: PartialOrd + Zero + Clone>(
    a: &'a Pmf<T>,
    b: &'a Pmf<T>,
) -> impl Iterator<Item = (T, T)> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        let next = match (a.support.get(i), b.support.get(j)) {
            (None, None) => return None,
            (Some(_), None) => 0,
            (None, Some(_)) => 1,
            (Some(x), Some(y)) if x < y => 0,
            (Some(x), Some(y)) if x > y => 1,
            _ => 2,
        };
        Some(match next {
            0 => {
                i += 1;
                (a.probs[i - 1].clone(), T::zero())
            }
            1 => {
                j += 1;
                (T::zero(), b.probs[j - 1].clone())
            }
            _ => {
                i += 1;
                j += 1;
                (a.probs[i - 1].clone(), b.probs[j - 1].clone())
            }
        })
    })
}

/// `sup_t |F_a(t) - F_b(t)|`.
pub fn cdf_distance<T: PartialOrd + Signed + Clone>(a: &Pmf<T>, b: &Pmf<T>) -> T {
    let (mut fa, mut fb, mut best) = (T::zero(), T::zero(), T::zero());
    for (pa, pb) in merged(a, b) {
        fa = fa + pa;
        fb = fb + pb;
        let gap = (fa.clone() - fb.clone()).abs();
        if gap > best {
            best = gap;
        }
    }
    best
}

/// `½ Σ |a(x) - b(x)|` over the merged support.
pub fn tv_distance<T: PartialOrd + Signed + Clone>(a: &Pmf<T>, b: &Pmf<T>) -> T {
    let total = merged(a, b).fold(T::zero(), |acc, (pa, pb)| acc + (pa - pb).abs());
    total / (T::one() + T::one())
}
