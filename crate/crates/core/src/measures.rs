//! Exchangeable measures on the cube, handled through their moment sequence
//! `m_d = E[x_1 ⋯ x_d]`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{check_n, MultilinearPoly};
use crate::rational::{self, binomial, falling, from_usize, Rational};
use crate::subsets::{combinations, popcount};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureKind {
    /// Uniform on the slice of weight `k`.
    SliceUniform { k: usize },
    /// Independent bits with `Pr[x_i = 1] = p`.
    ProductBernoulli { p: Rational },
    /// Weight `w_ℓ` on level `ℓ`, uniform within each level.
    LevelWeights { weights: Vec<Rational> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeableMeasure {
    n: usize,
    kind: MeasureKind,
    moments: Vec<Rational>,
}

impl ExchangeableMeasure {
    pub fn slice_uniform(n: usize, k: usize) -> Result<Self> {
        check_n(n)?;
        if k > n {
            return Err(Error::InvalidParameter(format!(
                "level {k} exceeds n = {n}"
            )));
        }
        let denom_all: Vec<BigInt> = (0..=n).map(|d| falling(n, d)).collect();
        let moments = (0..=n)
            .map(|d| Rational::new(falling(k, d), denom_all[d].clone()))
            .collect();
        Ok(Self {
            n,
            kind: MeasureKind::SliceUniform { k },
            moments,
        })
    }

    pub fn product_bernoulli(n: usize, p: Rational) -> Result<Self> {
        check_n(n)?;
        if p.is_negative() || p > Rational::one() {
            return Err(Error::InvalidParameter(format!("p = {p} outside [0, 1]")));
        }
        let moments = (0..=n).map(|d| rational::pow(&p, d)).collect();
        Ok(Self {
            n,
            kind: MeasureKind::ProductBernoulli { p },
            moments,
        })
    }

    pub fn level_weights(n: usize, weights: Vec<Rational>) -> Result<Self> {
        check_n(n)?;
        if weights.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: weights.len(),
            });
        }
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::InvalidParameter("negative level weight".into()));
        }
        if weights.iter().sum::<Rational>() != Rational::one() {
            return Err(Error::InvalidParameter(
                "level weights must sum to 1".into(),
            ));
        }
        let moments = (0..=n)
            .map(|d| {
                let denom = Rational::from_integer(falling(n, d));
                weights
                    .iter()
                    .enumerate()
                    .filter(|(_, w)| !w.is_zero())
                    .map(|(l, w)| w * Rational::from_integer(falling(l, d)))
                    .sum::<Rational>()
                    / denom
            })
            .collect();
        Ok(Self {
            n,
            kind: MeasureKind::LevelWeights { weights },
            moments,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &MeasureKind {
        &self.kind
    }

    pub fn moments(&self) -> &[Rational] {
        &self.moments
    }

    pub fn moment(&self, d: usize) -> Result<Rational> {
        self.moments
            .get(d)
            .cloned()
            .ok_or(Error::InvalidParameter(format!(
                "moment order {d} exceeds n = {}",
                self.n
            )))
    }

    /// `Pr[|x| = ℓ]` for `ℓ = 0..=n`.
    pub fn level_distribution(&self) -> Vec<Rational> {
        let n = self.n;
        match &self.kind {
            MeasureKind::SliceUniform { k } => (0..=n)
                .map(|l| {
                    if l == *k {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
            MeasureKind::ProductBernoulli { p } => {
                let q = Rational::one() - p;
                (0..=n)
                    .map(|l| {
                        Rational::from_integer(binomial(n, l))
                            * rational::pow(p, l)
                            * rational::pow(&q, n - l)
                    })
                    .collect()
            }
            MeasureKind::LevelWeights { weights } => weights.clone(),
        }
    }

    /// Probability of a single point.
    pub fn point_probability(&self, mask: u64) -> Rational {
        let l = popcount(mask);
        &self.level_distribution()[l] / Rational::from_integer(binomial(self.n, l))
    }

    fn check(&self, f: &MultilinearPoly) -> Result<()> {
        if f.n() != self.n {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: f.n(),
            })
        } else {
            Ok(())
        }
    }
}

/// `A_t = Σ_{|S∪T| = t} c_S d_T`, independent of the measure; then
/// `E[f g] = Σ_t A_t m_t`.
pub fn union_profile(f: &MultilinearPoly, g: &MultilinearPoly) -> Result<Vec<Rational>> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: g.n(),
        });
    }
    let n = f.n();
    let (fi, df) = f.integer_form();
    let (gi, dg) = g.integer_form();
    let scale = Rational::new(BigInt::one(), df * dg);
    let raw = union_profile_small(&fi, &gi, n).unwrap_or_else(|| union_profile_big(&fi, &gi, n));
    Ok(raw
        .into_iter()
        .map(|a| Rational::from_integer(a) * &scale)
        .collect())
}

fn union_profile_small(f: &[(u64, BigInt)], g: &[(u64, BigInt)], n: usize) -> Option<Vec<BigInt>> {
    let f: Vec<(u64, i64)> = f
        .iter()
        .map(|(m, c)| c.to_i64().map(|c| (*m, c)))
        .collect::<Option<_>>()?;
    let g: Vec<(u64, i64)> = g
        .iter()
        .map(|(m, c)| c.to_i64().map(|c| (*m, c)))
        .collect::<Option<_>>()?;
    let mut acc = vec![0i128; n + 1];
    for &(a, ca) in &f {
        for &(b, cb) in &g {
            let t = popcount(a | b);
            acc[t] = acc[t].checked_add(ca as i128 * cb as i128)?;
        }
    }
    Some(acc.into_iter().map(BigInt::from).collect())
}

fn union_profile_big(f: &[(u64, BigInt)], g: &[(u64, BigInt)], n: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); n + 1];
    for (a, ca) in f {
        for (b, cb) in g {
            acc[popcount(a | b)] += ca * cb;
        }
    }
    acc
}

pub fn profile_dot(profile: &[Rational], measure: &ExchangeableMeasure) -> Rational {
    profile
        .iter()
        .zip(measure.moments())
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, m)| a * m)
        .sum()
}

pub fn inner_product(
    f: &MultilinearPoly,
    g: &MultilinearPoly,
    measure: &ExchangeableMeasure,
) -> Result<Rational> {
    measure.check(f)?;
    Ok(profile_dot(&union_profile(f, g)?, measure))
}

pub fn norm_sq(f: &MultilinearPoly, measure: &ExchangeableMeasure) -> Result<Rational> {
    inner_product(f, f, measure)
}

pub fn expectation(f: &MultilinearPoly, measure: &ExchangeableMeasure) -> Result<Rational> {
    measure.check(f)?;
    Ok(f.terms()
        .map(|(m, c)| c * &measure.moments[popcount(m)])
        .sum())
}

pub fn variance(f: &MultilinearPoly, measure: &ExchangeableMeasure) -> Result<Rational> {
    let mean = expectation(f, measure)?;
    Ok(norm_sq(f, measure)? - &mean * &mean)
}

/// `E[(x_1 - x_2)² ⋯ (x_{2d-1} - x_{2d})²]`.
pub fn basic_norm(measure: &ExchangeableMeasure, d: usize) -> Result<Rational> {
    let n = measure.n;
    if 2 * d > n {
        return Err(Error::DegreeTooLarge { degree: d, n });
    }
    match &measure.kind {
        MeasureKind::SliceUniform { k } => {
            let num = num_traits::pow(BigInt::from(2), d) * falling(*k, d) * falling(n - k, d);
            Ok(Rational::new(num, falling(n, 2 * d)))
        }
        MeasureKind::ProductBernoulli { p } => {
            let base = from_usize(2) * p * (Rational::one() - p);
            Ok(rational::pow(&base, d))
        }
        MeasureKind::LevelWeights { .. } => norm_sq(&MultilinearPoly::basic(n, d)?, measure),
    }
}

/// Expectation of `h` by walking the support of the measure.
pub fn enumerate_expectation(
    measure: &ExchangeableMeasure,
    budget: u128,
    mut h: impl FnMut(u64) -> Rational,
) -> Result<Rational> {
    let n = measure.n;
    let levels = measure.level_distribution();
    let needed: u128 = levels
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(l, _)| rational::binomial_u128(n, l))
        .sum();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut total = Rational::zero();
    for (l, w) in levels.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let mut level_sum = Rational::zero();
        for m in combinations(n, l) {
            level_sum += h(m);
        }
        total += w * level_sum / Rational::from_integer(binomial(n, l));
    }
    Ok(total)
}

pub const DEFAULT_BUDGET: u128 = 2_000_000;

/// `⟨f, g⟩` by enumeration; an oracle for [`inner_product`].
pub fn inner_product_enumerated(
    f: &MultilinearPoly,
    g: &MultilinearPoly,
    measure: &ExchangeableMeasure,
) -> Result<Rational> {
    measure.check(f)?;
    measure.check(g)?;
    enumerate_expectation(measure, DEFAULT_BUDGET, |m| {
        f.evaluate_mask(m) * g.evaluate_mask(m)
    })
}

/// `Σ_{i<j} f^{(i j)}` for harmonic `f`.
pub fn transposition_sum(f: &MultilinearPoly) -> Result<MultilinearPoly> {
    if !f.is_harmonic() {
        return Err(Error::NotHarmonic);
    }
    let n = f.n();
    let mut out = MultilinearPoly::zero(n)?;
    for j in 1..n {
        for i in 0..j {
            out = out.add(&f.swap(i, j))?;
        }
    }
    Ok(out)
}

/// `n·V[f]`, `½ Σ_{i<j} ‖f - f^{(i j)}‖²` and `d(n-d+1)·V[f]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareBounds {
    pub lhs: Rational,
    pub mid: Rational,
    pub rhs: Rational,
}

impl PoincareBounds {
    pub fn holds(&self) -> bool {
        self.lhs <= self.mid && self.mid <= self.rhs
    }
}

pub fn poincare_bounds(
    f: &MultilinearPoly,
    measure: &ExchangeableMeasure,
) -> Result<PoincareBounds> {
    poincare_bounds_many(f, std::slice::from_ref(measure)).map(|mut v| v.remove(0))
}

/// Same as [`poincare_bounds`] for several measures, sharing the work that
/// does not depend on the measure.
pub fn poincare_bounds_many(
    f: &MultilinearPoly,
    measures: &[ExchangeableMeasure],
) -> Result<Vec<PoincareBounds>> {
    for m in measures {
        m.check(f)?;
    }
    if !f.is_harmonic() {
        return Err(Error::NotHarmonic);
    }
    let n = f.n();
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        let zero = PoincareBounds {
            lhs: Rational::zero(),
            mid: Rational::zero(),
            rhs: Rational::zero(),
        };
        return Ok(vec![zero; measures.len()]);
    }
    let mut edge_profile = vec![Rational::zero(); n + 1];
    for j in 1..n {
        for i in 0..j {
            let diff = f.sub(&f.swap(i, j))?;
            for (acc, a) in edge_profile.iter_mut().zip(union_profile(&diff, &diff)?) {
                *acc += a;
            }
        }
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let self_profile = union_profile(f, f)?;
    measures
        .iter()
        .map(|m| {
            let mean = expectation(f, m)?;
            let var = profile_dot(&self_profile, m) - &mean * &mean;
            Ok(PoincareBounds {
                lhs: from_usize(n) * &var,
                mid: profile_dot(&edge_profile, m) * &half,
                rhs: from_usize(d * (n - d + 1)) * &var,
            })
        })
        .collect()
}

/// `Σ_i ‖∂f/∂x_i‖²`.
pub fn derivative_energy(f: &MultilinearPoly, measure: &ExchangeableMeasure) -> Result<Rational> {
    measure.check(f)?;
    let mut total = Rational::zero();
    for i in 0..f.n() {
        let df = f.partial_derivative(i);
        if !df.is_zero() {
            total += norm_sq(&df, measure)?;
        }
    }
    Ok(total)
}

/// `2d · basic_norm(d-1) / basic_norm(d)`: the ratio of derivative energy to
/// squared norm for homogeneous harmonic polynomials of degree `d`.
pub fn derivative_ratio(measure: &ExchangeableMeasure, d: usize) -> Result<Rational> {
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    let top = basic_norm(measure, d)?;
    if top.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "basic norm of degree {d} vanishes"
        )));
    }
    Ok(from_usize(2 * d) * basic_norm(measure, d - 1)? / top)
}
