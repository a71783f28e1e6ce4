//! Gelfand–Tsetlin basis of harmonic polynomials.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::measures::{basic_norm, ExchangeableMeasure};
use crate::poly::{check_n, MultilinearPoly};
use crate::rational::{binomial, Rational};

/// A strictly increasing list `b_1 < ⋯ < b_d` (1-based) with `b_i ≥ 2i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleSet {
    elements: Vec<usize>,
}

impl AdmissibleSet {
    pub fn new(elements: Vec<usize>) -> Result<Self> {
        let increasing = elements.windows(2).all(|w| w[0] < w[1]);
        let ballot = elements.iter().enumerate().all(|(i, &b)| b >= 2 * (i + 1));
        if increasing && ballot {
            Ok(Self { elements })
        } else {
            Err(Error::NotAdmissible(elements))
        }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max(&self) -> usize {
        self.elements.last().copied().unwrap_or(0)
    }

    /// `C(b_1, 2) C(b_2 - 2, 2) ⋯ C(b_d - 2(d-1), 2)`.
    pub fn norm_factor(&self) -> BigInt {
        self.elements
            .iter()
            .enumerate()
            .map(|(i, &b)| binomial(b - 2 * i, 2))
            .product()
    }

    /// Eigenvalue of `Σ_{i<ℓ≤m} (i ℓ)` on `χ_B`.
    pub fn yjm_eigenvalue(&self, m: usize) -> i64 {
        let t = self.elements.iter().filter(|&&b| b <= m).count() as i64;
        let m = m as i64;
        m * (m - 1) / 2 - t * (m + 1 - t)
    }
}

pub fn gt_admissible_sets(n: usize, d: usize) -> Result<Vec<AdmissibleSet>> {
    check_n(n)?;
    if 2 * d > n {
        return Err(Error::DegreeTooLarge { degree: d, n });
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(d);
    extend_admissible(n, d, 1, &mut current, &mut out);
    Ok(out)
}

fn extend_admissible(
    n: usize,
    d: usize,
    next: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<AdmissibleSet>,
) {
    let i = current.len();
    if i == d {
        out.push(AdmissibleSet {
            elements: current.clone(),
        });
        return;
    }
    let lowest = next.max(2 * (i + 1));
    // Room is needed for the remaining d - i - 1 larger entries.
    let highest = n + i + 1 - d;
    for b in lowest..=highest {
        current.push(b);
        extend_admissible(n, d, b + 1, current, out);
        current.pop();
    }
}

/// `χ_B = Σ ∏_i (x_{a_i} - x_{b_i})` over distinct `a_i < b_i` outside `B`.
pub fn gt_basis_element(set: &AdmissibleSet, n: usize) -> Result<MultilinearPoly> {
    check_n(n)?;
    if set.max() > n {
        return Err(Error::NotAdmissible(set.elements.clone()));
    }
    let b_mask: u64 = set.elements.iter().fold(0, |acc, &b| acc | 1 << (b - 1));
    let mut coeffs: HashMap<u64, i64> = HashMap::new();
    let mut chosen = Vec::with_capacity(set.len());
    completions(&set.elements, b_mask, 0, &mut chosen, &mut |a| {
        // Expand ∏ (x_{a_i} - x_{b_i}) into its 2^d signed monomials.
        let d = a.len();
        for choice in 0u64..(1 << d) {
            let mut mask = 0u64;
            let mut sign = 1i64;
            for (i, &ai) in a.iter().enumerate() {
                if choice >> i & 1 == 0 {
                    mask |= 1 << (ai - 1);
                } else {
                    mask |= 1 << (set.elements[i] - 1);
                    sign = -sign;
                }
            }
            *coeffs.entry(mask).or_insert(0) += sign;
        }
    });
    MultilinearPoly::from_terms(
        n,
        coeffs
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(m, c)| (m, Rational::from_integer(BigInt::from(c)))),
    )
}

fn completions(
    b: &[usize],
    b_mask: u64,
    used: u64,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    let i = chosen.len();
    if i == b.len() {
        visit(chosen);
        return;
    }
    for a in 1..b[i] {
        let bit = 1u64 << (a - 1);
        if (b_mask | used) & bit == 0 {
            chosen.push(a);
            completions(b, b_mask, used | bit, chosen, visit);
            chosen.pop();
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GtElement {
    pub set: AdmissibleSet,
    pub poly: MultilinearPoly,
}

type BasisCache = RwLock<HashMap<(usize, usize), Arc<Vec<GtElement>>>>;

fn cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All degree-`d` basis elements for `n` variables, memoized.
pub fn gt_basis(n: usize, d: usize) -> Result<Arc<Vec<GtElement>>> {
    if let Some(hit) = cache().read().expect("cache poisoned").get(&(n, d)) {
        return Ok(Arc::clone(hit));
    }
    let elements = gt_admissible_sets(n, d)?
        .into_iter()
        .map(|set| {
            let poly = gt_basis_element(&set, n)?;
            Ok(GtElement { set, poly })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut guard = cache().write().expect("cache poisoned");
    Ok(Arc::clone(
        guard.entry((n, d)).or_insert_with(|| Arc::new(elements)),
    ))
}

/// `‖χ_B‖²` from the product formula.
pub fn gt_norm_squared(set: &AdmissibleSet, measure: &ExchangeableMeasure) -> Result<Rational> {
    if set.max() > measure.n() {
        return Err(Error::NotAdmissible(set.elements.clone()));
    }
    Ok(Rational::from_integer(set.norm_factor()) * basic_norm(measure, set.len())?)
}

/// `Σ_{1≤i<ℓ≤m} f^{(i ℓ)}`.
pub fn yjm_apply(m: usize, f: &MultilinearPoly) -> Result<MultilinearPoly> {
    if m == 0 || m > f.n() {
        return Err(Error::InvalidParameter(format!(
            "YJM index {m} outside 1..={}",
            f.n()
        )));
    }
    let mut out = MultilinearPoly::zero(f.n())?;
    for l in 1..m {
        for i in 0..l {
            out = out.add(&f.swap(i, l))?;
        }
    }
    Ok(out)
}

/// Eigenvalue of the full transposition sum on degree-`d` harmonics.
pub fn transposition_eigenvalue(n: usize, d: usize) -> Rational {
    let value = (n * (n - 1) / 2) as i64 - (d * (n + 1 - d)) as i64;
    Rational::from_integer(BigInt::from(value))
}
