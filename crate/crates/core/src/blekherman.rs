//! Blekherman expansions `f ≡ Σ_i f_i · S^i` with harmonic `f_i`, where
//! `S = x_1 + ⋯ + x_n`, together with Vandermonde inversion for recovering
//! the `f_i` from slice restrictions.

use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::harmonic::lefschetz_split;
use crate::poly::MultilinearPoly;
use crate::rational::{self, binomial, format_rational, from_usize, Rational};
use crate::subsets::popcount;
use crate::FloatPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpansionBasis {
    /// Powers of `S = Σ x_i`.
    RawSum,
    /// Powers of `σ̂ = (S - np) / √(np(1-p))`.
    Standardized { p: Rational },
}

/// `√(np(1-p))` when it is rational.
pub fn exact_scale(n: usize, p: &Rational) -> Option<Rational> {
    rational::exact_sqrt(&(from_usize(n) * p * (Rational::one() - p)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlekhermanExpansion {
    n: usize,
    degree: usize,
    basis: ExpansionBasis,
    /// Set when a standardized expansion keeps raw-sum coefficients because
    /// `√(np(1-p))` is irrational.
    deferred: bool,
    coeffs: Vec<MultilinearPoly>,
}

impl BlekhermanExpansion {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &ExpansionBasis {
        &self.basis
    }

    pub fn is_deferred(&self) -> bool {
        self.deferred
    }

    /// Coefficients against the stored basis: powers of `S` for raw or
    /// deferred expansions, powers of `σ̂` otherwise.
    pub fn coeffs(&self) -> &[MultilinearPoly] {
        &self.coeffs
    }

    /// Value of the stored variable (`S` or `σ̂`) on level `k`.
    pub fn node(&self, k: usize) -> Rational {
        match (&self.basis, self.deferred) {
            (ExpansionBasis::Standardized { p }, false) => {
                let tau = exact_scale(self.n, p).expect("checked at construction");
                (from_usize(k) - from_usize(self.n) * p) / tau
            }
            _ => from_usize(k),
        }
    }

    pub fn evaluate_mask(&self, bits: u64) -> Rational {
        let node = self.node(popcount(bits));
        let mut power = Rational::one();
        let mut acc = Rational::zero();
        for c in &self.coeffs {
            acc += c.evaluate_mask(bits) * &power;
            power *= &node;
        }
        acc
    }

    /// The harmonic polynomial `Σ f_i · node(k)^i`, which agrees with the
    /// source on slice `k`.
    pub fn slice_restrict(&self, k: usize) -> Result<MultilinearPoly> {
        if k > self.n {
            return Err(Error::InvalidParameter(format!(
                "level {k} exceeds n = {}",
                self.n
            )));
        }
        let node = self.node(k);
        let mut power = Rational::one();
        let mut acc = MultilinearPoly::zero(self.n)?;
        for c in &self.coeffs {
            acc = acc.add(&c.scale(&power))?;
            power *= &node;
        }
        Ok(acc)
    }

    /// Coefficients against powers of `σ̂` in floating point; this is where a
    /// deferred irrational scale is finally applied.
    pub fn standardized_coeffs_f64(&self) -> Option<Vec<FloatPoly>> {
        let ExpansionBasis::Standardized { p } = &self.basis else {
            return None;
        };
        if !self.deferred {
            return Some(self.coeffs.iter().map(MultilinearPoly::to_float).collect());
        }
        let np = from_usize(self.n) * p;
        let tau = (rational::to_f64(&(&np * (Rational::one() - p)))).sqrt();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for j in 0..self.coeffs.len() {
            let mut g = MultilinearPoly::zero(self.n).ok()?;
            for (i, c) in self.coeffs.iter().enumerate().skip(j) {
                let w = Rational::from_integer(binomial(i, j)) * rational::pow(&np, i - j);
                g = g.add(&c.scale(&w)).ok()?;
            }
            out.push(g.to_float().scale(tau.powi(j as i32)));
        }
        Some(out)
    }

    pub fn to_json_value(&self) -> Value {
        let basis = match &self.basis {
            ExpansionBasis::RawSum => json!({ "kind": "raw_sum" }),
            ExpansionBasis::Standardized { p } => {
                json!({ "kind": "standardized", "p": format_rational(p), "deferred": self.deferred })
            }
        };
        json!({
            "n": self.n,
            "degree": self.degree,
            "basis": basis,
            "coeffs": self.coeffs.iter().map(MultilinearPoly::to_json_value).collect::<Vec<_>>(),
        })
    }
}

pub fn blekherman_expand(
    f: &MultilinearPoly,
    basis: ExpansionBasis,
) -> Result<BlekhermanExpansion> {
    let n = f.n();
    let d = f.degree().unwrap_or(0);
    if 2 * d > n {
        return Err(Error::DegreeTooLarge { degree: d, n });
    }
    let mut raw = vec![MultilinearPoly::zero(n)?; d + 1];
    for (e, part) in f.homogeneous_parts().into_iter().enumerate() {
        if part.is_zero() {
            continue;
        }
        for (i, c) in expand_homogeneous(&part, e)?.into_iter().enumerate() {
            raw[i] = raw[i].add(&c)?;
        }
    }
    let (coeffs, deferred) = match &basis {
        ExpansionBasis::RawSum => (raw, false),
        ExpansionBasis::Standardized { p } => {
            if !(p.is_positive() && p < &Rational::one()) {
                return Err(Error::InvalidParameter(format!("p = {p} outside (0, 1)")));
            }
            match exact_scale(n, p) {
                None => (raw, true),
                Some(tau) => (standardize(&raw, &(from_usize(n) * p), &tau)?, false),
            }
        }
    };
    Ok(BlekhermanExpansion {
        n,
        degree: d,
        basis,
        deferred,
        coeffs,
    })
}

/// `Σ f_i S^i = Σ_j g_j σ̂^j` with `S = np + τ σ̂`.
fn standardize(
    raw: &[MultilinearPoly],
    np: &Rational,
    tau: &Rational,
) -> Result<Vec<MultilinearPoly>> {
    let n = raw[0].n();
    (0..raw.len())
        .map(|j| {
            let mut g = MultilinearPoly::zero(n)?;
            for (i, c) in raw.iter().enumerate().skip(j) {
                let w = Rational::from_integer(binomial(i, j)) * rational::pow(np, i - j);
                g = g.add(&c.scale(&w))?;
            }
            Ok(g.scale(&rational::pow(tau, j)))
        })
        .collect()
}

/// For homogeneous `q` of degree `e`: `q = h + Δᵀ r ≡ h + (S - (e-1)) r`
/// modulo `x_i² = x_i`, then recurse on `r`.
fn expand_homogeneous(q: &MultilinearPoly, e: usize) -> Result<Vec<MultilinearPoly>> {
    if e == 0 {
        return Ok(vec![q.clone()]);
    }
    let (h, r) = lefschetz_split(q)?;
    let mut out = vec![MultilinearPoly::zero(q.n())?; e + 1];
    out[0] = h;
    if r.is_zero() {
        return Ok(out);
    }
    let shift = from_usize(e - 1);
    for (i, c) in expand_homogeneous(&r, e - 1)?.into_iter().enumerate() {
        out[i + 1] = out[i + 1].add(&c)?;
        out[i] = out[i].sub(&c.scale(&shift))?;
    }
    Ok(out)
}

/// Inverse of the Vandermonde matrix `V_{ij} = ξ_i^j` as `U L`, with `L`
/// lower triangular and `U` unit upper triangular.
pub fn turner_inverse<T>(nodes: &[T]) -> Result<Vec<Vec<T>>>
where
    T: Clone + Num,
{
    let m = nodes.len();
    for i in 0..m {
        for j in 0..i {
            if nodes[i] == nodes[j] {
                return Err(Error::RepeatedNode);
            }
        }
    }
    let mut l = vec![vec![T::zero(); m]; m];
    for (i, row) in l.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate().take(i + 1) {
            let mut prod = T::one();
            for (k, node) in nodes.iter().enumerate().take(i + 1) {
                if k != j {
                    prod = prod * (nodes[j].clone() - node.clone());
                }
            }
            *entry = T::one() / prod;
        }
    }
    let mut u = vec![vec![T::zero(); m]; m];
    for i in 0..m {
        u[i][i] = T::one();
        for j in i + 1..m {
            let above = if i > 0 {
                u[i - 1][j - 1].clone()
            } else {
                T::zero()
            };
            u[i][j] = above - u[i][j - 1].clone() * nodes[j - 1].clone();
        }
    }
    let mut inv = vec![vec![T::zero(); m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut acc = T::zero();
            for k in i.max(j)..m {
                acc = acc + u[i][k].clone() * l[k][j].clone();
            }
            inv[i][j] = acc;
        }
    }
    Ok(inv)
}

/// `η = min(1, min_{i≠j} |ξ_i - ξ_j|)` and `M = max(1, max_i |ξ_i|)`.
pub fn node_spread(nodes: &[f64]) -> (f64, f64) {
    let mut eta: f64 = 1.0;
    for i in 0..nodes.len() {
        for j in 0..i {
            eta = eta.min((nodes[i] - nodes[j]).abs());
        }
    }
    let m = nodes.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
    (eta, m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Interpolation {
    pub coeffs: Vec<MultilinearPoly>,
    /// `weights[e][i]`: contribution of restriction `i` to coefficient `e`.
    pub weights: Vec<Vec<Rational>>,
    pub max_weight: Rational,
    /// `(2M/η)^d` for the given nodes.
    pub bound: f64,
}

/// Recovers `f_0, …, f_d` from `d + 1` restrictions `f^{ξ_i} = Σ_e f_e ξ_i^e`.
pub fn interpolate_coefficients(
    restrictions: &[(Rational, MultilinearPoly)],
    d: usize,
) -> Result<Interpolation> {
    if restrictions.len() != d + 1 {
        return Err(Error::InvalidParameter(format!(
            "need {} restrictions, got {}",
            d + 1,
            restrictions.len()
        )));
    }
    let n = restrictions[0].1.n();
    for (_, r) in restrictions {
        if r.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.n(),
            });
        }
        if !r.is_harmonic() {
            return Err(Error::NotHarmonic);
        }
        if r.degree().unwrap_or(0) > d {
            return Err(Error::InvalidParameter(format!(
                "restriction degree exceeds {d}"
            )));
        }
    }
    let nodes: Vec<Rational> = restrictions.iter().map(|(x, _)| x.clone()).collect();
    let weights = turner_inverse(&nodes)?;
    let mut coeffs = Vec::with_capacity(d + 1);
    for row in &weights {
        let mut acc = MultilinearPoly::zero(n)?;
        for (w, (_, r)) in row.iter().zip(restrictions) {
            acc = acc.add(&r.scale(w))?;
        }
        coeffs.push(acc);
    }
    let max_weight = weights
        .iter()
        .flatten()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(Rational::zero);
    let floats: Vec<f64> = nodes.iter().map(rational::to_f64).collect();
    let (eta, m) = node_spread(&floats);
    Ok(Interpolation {
        coeffs,
        weights,
        max_weight,
        bound: (2.0 * m / eta).powi(d as i32),
    })
}

/// Standardized coordinates of a set of slice levels.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceSystem {
    pub n: usize,
    pub p: Rational,
    pub levels: Vec<usize>,
    pub sigma: Vec<f64>,
    /// Present when `√(np(1-p))` is rational.
    pub sigma_exact: Option<Vec<Rational>>,
    pub eta: f64,
    pub m: f64,
}

impl SliceSystem {
    pub fn to_json_value(&self) -> Value {
        let nodes: Vec<Value> = match &self.sigma_exact {
            Some(exact) => exact
                .iter()
                .map(|s| Value::String(format_rational(s)))
                .collect(),
            None => self.sigma.iter().map(|&s| json!(s)).collect(),
        };
        json!({
            "n": self.n,
            "p": format_rational(&self.p),
            "levels": self.levels,
            "sigma_nodes": nodes,
            "eta": self.eta,
            "M": self.m,
        })
    }
}

pub fn system_stats(levels: &[usize], p: &Rational, n: usize) -> Result<SliceSystem> {
    if !(p.is_positive() && p < &Rational::one()) {
        return Err(Error::InvalidParameter(format!("p = {p} outside (0, 1)")));
    }
    if let Some(&k) = levels.iter().find(|&&k| k > n) {
        return Err(Error::InvalidParameter(format!(
            "level {k} exceeds n = {n}"
        )));
    }
    for i in 0..levels.len() {
        if levels[..i].contains(&levels[i]) {
            return Err(Error::RepeatedNode);
        }
    }
    let np = from_usize(n) * p;
    let sigma_exact = exact_scale(n, p).map(|tau| {
        levels
            .iter()
            .map(|&k| (from_usize(k) - &np) / &tau)
            .collect::<Vec<_>>()
    });
    let sigma: Vec<f64> = match &sigma_exact {
        Some(exact) => exact.iter().map(rational::to_f64).collect(),
        None => {
            let tau = rational::to_f64(&(&np * (Rational::one() - p))).sqrt();
            let center = rational::to_f64(&np);
            levels.iter().map(|&k| (k as f64 - center) / tau).collect()
        }
    };
    let (eta, m) = node_spread(&sigma);
    Ok(SliceSystem {
        n,
        p: p.clone(),
        levels: levels.to_vec(),
        sigma,
        sigma_exact,
        eta,
        m,
    })
}

/// Largest absolute entry, as a float.
pub fn max_abs_f64(matrix: &[Vec<Rational>]) -> f64 {
    matrix
        .iter()
        .flatten()
        .map(|x| x.abs().to_f64().unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::{harmonic_projection, SliceSpec};
    use crate::rational::{int, rat};

    fn x(n: usize, i: usize) -> MultilinearPoly {
        MultilinearPoly::var(n, i).unwrap()
    }

    #[test]
    fn expansion_of_single_variable() {
        let e = blekherman_expand(&x(2, 1), ExpansionBasis::RawSum).unwrap();
        assert_eq!(
            e.coeffs()[0],
            x(2, 1).sub(&x(2, 2)).unwrap().scale(&rat(1, 2))
        );
        assert_eq!(
            e.coeffs()[1],
            MultilinearPoly::constant(2, rat(1, 2)).unwrap()
        );
        for bits in 0..4 {
            assert_eq!(e.evaluate_mask(bits), x(2, 1).evaluate_mask(bits));
        }
    }

    #[test]
    fn harmonic_and_sum_inputs() {
        let h = MultilinearPoly::basic(6, 2).unwrap();
        let e = blekherman_expand(&h, ExpansionBasis::RawSum).unwrap();
        assert_eq!(e.coeffs()[0], h);
        assert!(e.coeffs()[1..].iter().all(MultilinearPoly::is_zero));

        let s = MultilinearPoly::sum_of_variables(5).unwrap();
        let e = blekherman_expand(&s, ExpansionBasis::RawSum).unwrap();
        assert!(e.coeffs()[0].is_zero());
        assert_eq!(e.coeffs()[1], MultilinearPoly::constant(5, int(1)).unwrap());
        for k in 0..=5 {
            assert_eq!(
                e.slice_restrict(k).unwrap(),
                MultilinearPoly::constant(5, from_usize(k)).unwrap()
            );
        }
    }

    #[test]
    fn restriction_matches_projection() {
        let e = blekherman_expand(&x(2, 1), ExpansionBasis::RawSum).unwrap();
        let slice = SliceSpec::new(2, 1).unwrap();
        assert_eq!(
            e.slice_restrict(1).unwrap(),
            harmonic_projection(&x(2, 1), slice).unwrap()
        );
    }

    #[test]
    fn standardized_basis() {
        let f = MultilinearPoly::from_terms(8, [(0b11, int(1)), (0b100, rat(2, 3)), (0, int(1))])
            .unwrap();
        // 8 · 1/2 · 1/2 = 2 is not a square; 16 · 1/2 · 1/2 = 4 is.
        let deferred =
            blekherman_expand(&f, ExpansionBasis::Standardized { p: rat(1, 2) }).unwrap();
        assert!(deferred.is_deferred());
        let f16 = f.with_n(16).unwrap();
        let exact = blekherman_expand(&f16, ExpansionBasis::Standardized { p: rat(1, 2) }).unwrap();
        assert!(!exact.is_deferred());
        for bits in [0u64, 0b1, 0b111, 0xFF, 0xF0F0, 0xFFFF] {
            assert_eq!(exact.evaluate_mask(bits), f16.evaluate_mask(bits));
        }
        for bits in 0..256 {
            assert_eq!(deferred.evaluate_mask(bits), f.evaluate_mask(bits));
        }
        let floats = deferred.standardized_coeffs_f64().unwrap();
        let tau = 2f64.sqrt();
        for bits in 0..256u64 {
            let sigma = (bits.count_ones() as f64 - 4.0) / tau;
            let value: f64 = floats
                .iter()
                .enumerate()
                .map(|(j, g)| g.evaluate_mask(bits) * sigma.powi(j as i32))
                .sum();
            assert!((value - rational::to_f64(&f.evaluate_mask(bits))).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_high_degree() {
        let f = MultilinearPoly::monomial(4, &[1, 2, 3], int(1)).unwrap();
        assert!(matches!(
            blekherman_expand(&f, ExpansionBasis::RawSum),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn turner_examples() {
        assert_eq!(
            turner_inverse(&[int(0), int(1)]).unwrap(),
            vec![vec![int(1), int(0)], vec![int(-1), int(1)]]
        );
        assert_eq!(
            turner_inverse(&[int(0), int(1), int(2)]).unwrap(),
            vec![
                vec![int(1), int(0), int(0)],
                vec![rat(-3, 2), int(2), rat(-1, 2)],
                vec![rat(1, 2), int(-1), rat(1, 2)],
            ]
        );
        assert_eq!(turner_inverse(&[rat(5, 7)]).unwrap(), vec![vec![int(1)]]);
        assert_eq!(turner_inverse(&[int(1), int(1)]), Err(Error::RepeatedNode));
        let float = turner_inverse(&[0.0, 1.0, 2.0]).unwrap();
        assert!((float[1][0] + 1.5).abs() < 1e-12);
    }

    #[test]
    fn interpolation_round_trip() {
        let e = blekherman_expand(&x(2, 1), ExpansionBasis::RawSum).unwrap();
        let restrictions: Vec<_> = [0usize, 1]
            .iter()
            .map(|&k| (from_usize(k), e.slice_restrict(k).unwrap()))
            .collect();
        let interp = interpolate_coefficients(&restrictions, 1).unwrap();
        assert_eq!(interp.coeffs, e.coeffs());

        let h = MultilinearPoly::basic(4, 1).unwrap();
        let restrictions: Vec<_> = [int(3), rat(1, 2), int(-2)]
            .into_iter()
            .map(|s| (s, h.clone()))
            .collect();
        let interp = interpolate_coefficients(&restrictions, 2).unwrap();
        assert_eq!(interp.coeffs[0], h);
        assert!(interp.coeffs[1].is_zero() && interp.coeffs[2].is_zero());

        assert!(interpolate_coefficients(&restrictions[..2], 2).is_err());
    }

    #[test]
    fn interpolation_weight_bound() {
        let h = MultilinearPoly::basic(4, 1).unwrap();
        let restrictions: Vec<_> = (0..3).map(|s| (int(s), h.clone())).collect();
        let interp = interpolate_coefficients(&restrictions, 2).unwrap();
        assert_eq!(interp.max_weight, int(2));
        assert_eq!(interp.bound, 16.0);
    }

    #[test]
    fn system_examples() {
        let s = system_stats(&[50, 55, 60], &rat(1, 2), 100).unwrap();
        assert_eq!(s.sigma_exact, Some(vec![int(0), int(1), int(2)]));
        assert_eq!((s.eta, s.m), (1.0, 2.0));
        let s = system_stats(&[50], &rat(1, 2), 100).unwrap();
        assert_eq!((s.eta, s.m), (1.0, 1.0));
        let s = system_stats(&[8, 10], &rat(1, 2), 16).unwrap();
        assert_eq!(s.sigma, vec![0.0, 1.0]);
        assert_eq!((s.eta, s.m), (1.0, 1.0));
        assert_eq!(
            system_stats(&[3, 3], &rat(1, 2), 8),
            Err(Error::RepeatedNode)
        );
        let irrational = system_stats(&[4, 5], &rat(1, 2), 8).unwrap();
        assert!(irrational.sigma_exact.is_none());
        assert!((irrational.sigma[1] - 1.0 / 2f64.sqrt()).abs() < 1e-12);
    }
}
