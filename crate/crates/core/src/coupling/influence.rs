//! Total influence of Boolean functions and the hybrid bound comparing a
//! binomially chosen slice with the central one.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coupling::binomial::{binomial_pmf, check_probability};
use crate::coupling::NESTED_PAIR_BUDGET;
use crate::error::{Error, Result};
use crate::poly::{check_n, check_table_size, MultilinearPoly};
use crate::rational::{self, as_usize, binomial, binomial_u128, from_usize, Rational};
use crate::subsets::{combinations, full_mask};

/// A function `{0,1}^n → {0,1}` stored as its truth table, indexed by mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: usize,
    table: Vec<bool>,
}

impl BooleanFunction {
    pub fn from_table(n: usize, table: Vec<bool>) -> Result<Self> {
        check_n(n)?;
        check_table_size(n)?;
        if table.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: table.len(),
            });
        }
        Ok(Self { n, table })
    }

    pub fn from_fn(n: usize, f: impl Fn(u64) -> bool) -> Result<Self> {
        check_n(n)?;
        check_table_size(n)?;
        Ok(Self {
            n,
            table: (0..1u64 << n).map(f).collect(),
        })
    }

    /// Accepts polynomials whose values lie in `{0, 1}` or in `{-1, 1}`; the
    /// value `1` maps to `true` in both cases.
    pub fn from_poly(f: &MultilinearPoly) -> Result<Self> {
        let values = f.value_table()?;
        let zero_one = values.iter().all(|v| v.is_zero() || v.is_one());
        let signs = values.iter().all(|v| v.is_one() || (-v).is_one());
        if !(zero_one || signs) {
            return Err(Error::NotBoolean);
        }
        Ok(Self {
            n: f.n(),
            table: values.iter().map(One::is_one).collect(),
        })
    }

    /// `x_i`, with `i` 1-based.
    pub fn dictator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::InvalidParameter(format!(
                "variable {i} outside 1..={n}"
            )));
        }
        Self::from_fn(n, |x| x >> (i - 1) & 1 == 1)
    }

    /// `|x| ≥ k`.
    pub fn threshold(n: usize, k: usize) -> Result<Self> {
        Self::from_fn(n, |x| x.count_ones() as usize >= k)
    }

    /// Majority, for odd `n`.
    pub fn majority(n: usize) -> Result<Self> {
        if n.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "majority needs odd n, got {n}"
            )));
        }
        Self::threshold(n, n.div_ceil(2))
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, x: u64) -> bool {
        self.table[x as usize]
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    /// The unique multilinear polynomial with values in `{0, 1}`.
    pub fn to_poly(&self) -> MultilinearPoly {
        let mut coeffs: Vec<i64> = self.table.iter().map(|&b| i64::from(b)).collect();
        for i in 0..self.n {
            let bit = 1usize << i;
            for m in 0..coeffs.len() {
                if m & bit != 0 {
                    coeffs[m] -= coeffs[m ^ bit];
                }
            }
        }
        MultilinearPoly::from_terms(
            self.n,
            coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(m, c)| (m as u64, rational::int(c))),
        )
        .expect("valid n")
    }

    /// Number of neighbours of `x` with a different value.
    fn sensitivity(&self, x: u64) -> usize {
        let v = self.value(x);
        (0..self.n).filter(|i| self.value(x ^ 1 << i) != v).count()
    }
}

/// `Pr[f(A) ≠ f(B)]` for a uniform nested pair `A ⊆ B`, `|A| = a`, `|B| = b`
/// (the order of the levels does not matter).
pub fn disagreement(f: &BooleanFunction, a: usize, b: usize) -> Result<Rational> {
    let n = f.n;
    let (a, b) = (a.min(b), a.max(b));
    if b > n {
        return Err(Error::InvalidParameter(format!(
            "level {b} exceeds n = {n}"
        )));
    }
    let needed = binomial_u128(n, a).saturating_mul(binomial_u128(n - a, b - a));
    if needed > NESTED_PAIR_BUDGET {
        return Err(Error::BudgetExceeded {
            needed,
            budget: NESTED_PAIR_BUDGET,
        });
    }
    if a == b {
        return Ok(Rational::zero());
    }
    let mut count: u64 = 0;
    for x in combinations(n, a) {
        let v = f.value(x);
        let free: Vec<usize> = (0..n).filter(|i| x >> i & 1 == 0).collect();
        for pick in combinations(free.len(), b - a) {
            let y = crate::subsets::members(pick).fold(x, |acc, j| acc | 1 << free[j]);
            count += u64::from(f.value(y) != v);
        }
    }
    Ok(Rational::new(BigInt::from(count), BigInt::from(needed)))
}

/// `p(1-p) n Pr[f(x) ≠ f(y)]` with `x ~ μ_p` and `y` a uniform neighbour,
/// summed over the directed edges of the cube.
pub fn total_influence(f: &BooleanFunction, p: &Rational) -> Result<Rational> {
    check_probability(p)?;
    let n = f.n;
    let mut by_weight = vec![0u64; n + 1];
    for x in 0..=full_mask(n) {
        by_weight[x.count_ones() as usize] += f.sensitivity(x) as u64;
    }
    let q = Rational::one() - p;
    let mut total = Rational::zero();
    for (w, &sens) in by_weight.iter().enumerate() {
        if sens > 0 {
            total += rational::pow(p, w) * rational::pow(&q, n - w) * from_usize(sens as usize);
        }
    }
    Ok(p * q * total)
}

/// `Σ_s p(1-p) n Pr[Bin(n-1, p) = s] Pr[f(X(s)) ≠ f(X(s+1))]`.
pub fn total_influence_slice_sum(f: &BooleanFunction, p: &Rational) -> Result<Rational> {
    check_probability(p)?;
    let n = f.n;
    let t = binomial_pmf(n - 1, p)?;
    let scale = p * (Rational::one() - p) * from_usize(n);
    let mut total = Rational::zero();
    for (s, w) in t.iter().enumerate() {
        if !w.is_zero() {
            total += w * edge_disagreement(f, s);
        }
    }
    Ok(scale * total)
}

/// `Pr[f(X(s)) ≠ f(X(s+1))]` via sensitivities, without the pair budget.
fn edge_disagreement(f: &BooleanFunction, s: usize) -> Rational {
    let n = f.n;
    let mut count: u64 = 0;
    for x in combinations(n, s) {
        let v = f.value(x);
        count += (0..n)
            .filter(|i| x >> i & 1 == 0 && f.value(x | 1 << i) != v)
            .count() as u64;
    }
    Rational::new(BigInt::from(count), binomial(n, s) * BigInt::from(n - s))
}

#[derive(Debug, Clone, PartialEq)]
pub struct HybridBound {
    /// `Pr[f(X(S)) ≠ f(X(np))]`, `S ~ Bin(n, p)`.
    pub lhs: Rational,
    pub rhs: Rational,
    pub influence: Rational,
    /// `rhs / (√(π/2) Inf[f] / √(np(1-p)))`; absent when the influence is 0.
    pub ratio: Option<f64>,
}

impl HybridBound {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

pub fn hybrid_bound(f: &BooleanFunction, p: &Rational) -> Result<HybridBound> {
    check_probability(p)?;
    let n = f.n;
    let np = as_usize(&(from_usize(n) * p)).ok_or_else(|| {
        Error::InvalidParameter(format!("np = {} is not an integer", from_usize(n) * p))
    })?;
    let s_pmf = binomial_pmf(n, p)?;
    let mut lhs = Rational::zero();
    for (l, w) in s_pmf.iter().enumerate() {
        if !w.is_zero() && l != np {
            lhs += w * disagreement(f, l, np)?;
        }
    }
    let mut rhs = Rational::zero();
    for s in 0..n {
        // Pr[S ≥ s+1] above the centre, Pr[S ≤ s] below it.
        let tail: Rational = if s >= np {
            s_pmf[s + 1..].iter().sum()
        } else {
            s_pmf[..=s].iter().sum()
        };
        if !tail.is_zero() {
            rhs += tail * edge_disagreement(f, s);
        }
    }
    let influence = total_influence(f, p)?;
    let ratio = (!influence.is_zero()).then(|| {
        let spread = (rational::to_f64(&(from_usize(n) * p * (Rational::one() - p)))).sqrt();
        let scale = (std::f64::consts::PI / 2.0).sqrt() * rational::to_f64(&influence) / spread;
        rational::to_f64(&rhs) / scale
    });
    Ok(HybridBound {
        lhs,
        rhs,
        influence,
        ratio,
    })
}
