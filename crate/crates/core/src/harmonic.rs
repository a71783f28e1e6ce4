//! Harmonic multilinear representations of functions on a slice.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{check_n, MultilinearPoly, Permutation};
use crate::rational::{self, from_usize, Rational};
use crate::subsets::{combinations, full_mask, popcount};

/// The slice `{x ∈ {0,1}^n : |x| = k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SliceSpec {
    n: usize,
    k: usize,
}

impl SliceSpec {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_n(n)?;
        if k > n {
            return Err(Error::InvalidParameter(format!(
                "level {k} exceeds n = {n}"
            )));
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `k / n`.
    pub fn p(&self) -> Rational {
        Rational::new(BigInt::from(self.k), BigInt::from(self.n))
    }

    /// `min(k, n - k)`, the largest degree of a harmonic representation.
    pub fn max_degree(&self) -> usize {
        self.k.min(self.n - self.k)
    }

    pub fn size(&self) -> u128 {
        rational::binomial_u128(self.n, self.k)
    }

    pub fn points(&self) -> impl Iterator<Item = u64> {
        combinations(self.n, self.k)
    }

    pub fn contains(&self, mask: u64) -> bool {
        mask & !full_mask(self.n) == 0 && popcount(mask) == self.k
    }

    /// Standardized coordinate `(k - n p0) / sqrt(n p0 (1 - p0))`.
    pub fn sigma(&self, p0: f64) -> f64 {
        let n = self.n as f64;
        (self.k as f64 - n * p0) / (n * p0 * (1.0 - p0)).sqrt()
    }
}

/// A rational-valued function on a slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceFunction {
    slice: SliceSpec,
    values: BTreeMap<u64, Rational>,
}

impl SliceFunction {
    /// Requires a value for every point of the slice and nothing else.
    pub fn new(slice: SliceSpec, values: BTreeMap<u64, Rational>) -> Result<Self> {
        if let Some(&bad) = values.keys().find(|&&m| !slice.contains(m)) {
            return Err(Error::InvalidParameter(format!(
                "point {bad:#b} is not on slice ({}, {})",
                slice.n, slice.k
            )));
        }
        if let Some(missing) = slice.points().find(|m| !values.contains_key(m)) {
            return Err(Error::MissingPoint(missing));
        }
        Ok(Self { slice, values })
    }

    pub fn from_fn(slice: SliceSpec, mut f: impl FnMut(u64) -> Rational) -> Self {
        let values = slice.points().map(|m| (m, f(m))).collect();
        Self { slice, values }
    }

    pub fn from_poly(f: &MultilinearPoly, slice: SliceSpec) -> Result<Self> {
        if f.n() != slice.n {
            return Err(Error::DimensionMismatch {
                expected: slice.n,
                found: f.n(),
            });
        }
        Ok(Self::from_fn(slice, |m| f.evaluate_mask(m)))
    }

    pub fn slice(&self) -> SliceSpec {
        self.slice
    }

    pub fn value(&self, mask: u64) -> Option<&Rational> {
        self.values.get(&mask)
    }

    pub fn values(&self) -> impl Iterator<Item = (u64, &Rational)> + '_ {
        self.values.iter().map(|(&m, v)| (m, v))
    }

    /// `x ↦ v(x_{π(1)}, …, x_{π(n)})`.
    pub fn permute(&self, pi: &Permutation) -> Result<Self> {
        if pi.len() != self.slice.n {
            return Err(Error::DimensionMismatch {
                expected: self.slice.n,
                found: pi.len(),
            });
        }
        let inv = pi.inverse();
        let values = self
            .values
            .keys()
            .map(|&m| (m, self.values[&inv.apply_mask(m)].clone()))
            .collect();
        Ok(Self {
            slice: self.slice,
            values,
        })
    }

    pub fn map(&self, mut f: impl FnMut(&Rational) -> Rational) -> Self {
        Self {
            slice: self.slice,
            values: self.values.iter().map(|(&m, v)| (m, f(v))).collect(),
        }
    }

    /// Pointwise product with another function on the same slice.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.slice != other.slice {
            return Err(Error::InvalidParameter(
                "functions live on different slices".into(),
            ));
        }
        Ok(Self {
            slice: self.slice,
            values: self
                .values
                .iter()
                .map(|(&m, v)| (m, v * &other.values[&m]))
                .collect(),
        })
    }
}

/// Splits a homogeneous `q` of degree `d ≤ n/2` as `q = h + Δᵀ r` with `h`
/// harmonic and `r` homogeneous of degree `d - 1`.
pub fn lefschetz_split(q: &MultilinearPoly) -> Result<(MultilinearPoly, MultilinearPoly)> {
    let n = q.n();
    let zero = MultilinearPoly::zero(n)?;
    if !q.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let Some(d) = q.degree() else {
        return Ok((zero.clone(), zero));
    };
    if 2 * d > n {
        return Err(Error::DegreeTooLarge { degree: d, n });
    }
    let b = q.lower_delta();
    if b.is_zero() {
        return Ok((q.clone(), zero));
    }
    let r = solve_down_up(&b, d - 1, n);
    let h = q.sub(&r.raise_delta())?;
    Ok((h, r))
}

/// Solves `ΔΔᵀ r = b` on homogeneous degree `e < n/2` without forming a
/// matrix. On that space `ΔΔᵀ` is diagonalizable with the distinct nonzero
/// eigenvalues `(e - j + 1)(n - e - j)`, `j = 0..=e`, so its inverse is a
/// polynomial in the operator.
fn solve_down_up(b: &MultilinearPoly, e: usize, n: usize) -> MultilinearPoly {
    let mut char_poly = vec![Rational::one()];
    for j in 0..=e {
        let lambda = from_usize((e - j + 1) * (n - e - j));
        let mut next = vec![Rational::zero(); char_poly.len() + 1];
        for (i, c) in char_poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &lambda;
        }
        char_poly = next;
    }
    let apply = |p: &MultilinearPoly| p.raise_delta().lower_delta();
    let top = char_poly.len() - 1;
    let mut acc = b.scale(&char_poly[top]);
    for c in char_poly[1..top].iter().rev() {
        acc = apply(&acc).add(&b.scale(c)).expect("same dimension");
    }
    acc.scale(&(-Rational::one() / &char_poly[0]))
}

/// The unique harmonic polynomial of degree at most `min(k, n - k)` that
/// agrees with `f` on the slice.
pub fn harmonic_projection(f: &MultilinearPoly, slice: SliceSpec) -> Result<MultilinearPoly> {
    if f.n() != slice.n {
        return Err(Error::DimensionMismatch {
            expected: slice.n,
            found: f.n(),
        });
    }
    if 2 * slice.k <= slice.n {
        project_low(f, slice.k)
    } else {
        // g(y) = f(1 - y) lives on the complementary slice; a harmonic G
        // satisfies G(1 - x) = G(-x).
        let g = project_low(&f.reflect(), slice.n - slice.k)?;
        Ok(g.negate_argument())
    }
}

fn project_low(f: &MultilinearPoly, k: usize) -> Result<MultilinearPoly> {
    let n = f.n();
    let mut work = f.truncate(k);
    let mut result = MultilinearPoly::zero(n)?;
    let top = work.degree().unwrap_or(0);
    for d in (1..=top).rev() {
        let q = work.homogeneous_part(d);
        if q.is_zero() {
            continue;
        }
        let (h, r) = lefschetz_split(&q)?;
        result = result.add(&h)?;
        // Modulo the slice ideal, Δᵀ r = (k - d + 1) r.
        work = work.sub(&q)?.add(&r.scale(&from_usize(k - d + 1)))?;
    }
    result.add(&work.homogeneous_part(0))
}

/// Harmonic representation of a function given by its values.
pub fn project_values(values: &SliceFunction) -> Result<MultilinearPoly> {
    let slice = values.slice;
    let (n, k) = (slice.n, slice.k);
    let full = full_mask(n);
    if 2 * k <= n {
        // On the slice, x_y is the indicator of the point y.
        let f = MultilinearPoly::from_terms(n, values.values().map(|(m, v)| (m, v.clone())))?;
        project_low(&f, k)
    } else {
        let g =
            MultilinearPoly::from_terms(n, values.values().map(|(m, v)| (full & !m, v.clone())))?;
        Ok(project_low(&g, n - k)?.negate_argument())
    }
}

/// Value-space expansion in the Gelfand–Tsetlin basis; an independent route
/// to the same polynomial as [`project_values`].
pub fn project_values_gt(values: &SliceFunction) -> Result<MultilinearPoly> {
    let slice = values.slice;
    let mut out = MultilinearPoly::zero(slice.n)?;
    for d in 0..=slice.max_degree() {
        for element in crate::gt::gt_basis(slice.n, d)?.iter() {
            let chi = &element.poly;
            let mut inner = Rational::zero();
            let mut norm = Rational::zero();
            for (m, v) in values.values() {
                let c = chi.evaluate_mask(m);
                if !c.is_zero() {
                    inner += v * &c;
                    norm += &c * &c;
                }
            }
            out = out.add(&chi.scale(&(inner / norm)))?;
        }
    }
    Ok(out)
}

/// Degree of the harmonic representation (zero for the zero function).
pub fn slice_degree(values: &SliceFunction) -> Result<usize> {
    Ok(project_values(values)?.degree().unwrap_or(0))
}
