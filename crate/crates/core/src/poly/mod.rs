//! Sparse multilinear polynomials with exact rational coefficients.
//!
//! A monomial `x_S` is keyed by the bitmask of `S`; bit `i` is the variable
//! `x_{i+1}`.

mod format;
mod perm;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::subsets::{self, full_mask, members, popcount, submasks};

pub use perm::Permutation;

/// A point of `{0,1}^n`, stored as the set of coordinates equal to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubePoint {
    n: usize,
    bits: u64,
}

impl CubePoint {
    pub fn new(n: usize, bits: u64) -> Result<Self> {
        check_n(n)?;
        if bits & !full_mask(n) != 0 {
            return Err(Error::SubsetOutOfRange { mask: bits, n });
        }
        Ok(Self { n, bits })
    }

    /// Builds a point from 0/1 coordinates.
    pub fn from_bits(values: &[bool]) -> Result<Self> {
        let bits = values
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .fold(0u64, |acc, (i, _)| acc | (1 << i));
        Self::new(values.len(), bits)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn weight(&self) -> usize {
        popcount(self.bits)
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > 64 {
        Err(Error::InvalidVariableCount(n))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultilinearPoly {
    n: usize,
    terms: BTreeMap<u64, Rational>,
}

impl MultilinearPoly {
    pub fn zero(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(n: usize, c: Rational) -> Result<Self> {
        Self::monomial_mask(n, 0, c)
    }

    pub fn monomial_mask(n: usize, mask: u64, c: Rational) -> Result<Self> {
        let mut p = Self::zero(n)?;
        if mask & !full_mask(n) != 0 {
            return Err(Error::SubsetOutOfRange { mask, n });
        }
        if !c.is_zero() {
            p.terms.insert(mask, c);
        }
        Ok(p)
    }

    /// Monomial over 1-based variable indices.
    pub fn monomial(n: usize, vars: &[usize], c: Rational) -> Result<Self> {
        Self::monomial_mask(n, vars_to_mask(n, vars)?, c)
    }

    /// The variable `x_i` (1-based).
    pub fn var(n: usize, i: usize) -> Result<Self> {
        Self::monomial(n, &[i], Rational::one())
    }

    /// Collects `(mask, coefficient)` pairs, summing repeated masks.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Rational)>,
    {
        let mut p = Self::zero(n)?;
        let full = full_mask(n);
        for (mask, c) in terms {
            if mask & !full != 0 {
                return Err(Error::SubsetOutOfRange { mask, n });
            }
            p.add_term(mask, c);
        }
        Ok(p)
    }

    /// `∏ (x_{a_i} - x_{b_i})` over disjoint 1-based pairs.
    pub fn product_of_differences(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut acc = Self::constant(n, Rational::one())?;
        for &(a, b) in pairs {
            let factor = Self::var(n, a)?.sub(&Self::var(n, b)?)?;
            acc = acc.multiply(&factor, false)?;
        }
        Ok(acc)
    }

    /// `(x_1 - x_2)(x_3 - x_4)⋯(x_{2d-1} - x_{2d})`.
    pub fn basic(n: usize, d: usize) -> Result<Self> {
        if 2 * d > n {
            return Err(Error::DegreeTooLarge { degree: d, n });
        }
        let pairs: Vec<_> = (0..d).map(|i| (2 * i + 1, 2 * i + 2)).collect();
        Self::product_of_differences(n, &pairs)
    }

    /// `x_1 + ⋯ + x_n`.
    pub fn sum_of_variables(n: usize) -> Result<Self> {
        Self::from_terms(n, (0..n).map(|i| (1u64 << i, Rational::one())))
    }

    pub(crate) fn add_term(&mut self, mask: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> + '_ {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mask: u64) -> Rational {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|&m| popcount(m)).max()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|&m| popcount(m));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn evaluate(&self, x: &CubePoint) -> Result<Rational> {
        if x.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.n,
            });
        }
        Ok(self.evaluate_mask(x.bits))
    }

    /// Evaluation at the indicator vector of `bits`; bits outside `[n]` are
    /// ignored.
    pub fn evaluate_mask(&self, bits: u64) -> Rational {
        let mut acc = Rational::zero();
        for (&m, c) in &self.terms {
            if m & !bits == 0 {
                acc += c;
            }
        }
        acc
    }

    /// Evaluation at an arbitrary rational point.
    pub fn evaluate_at(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (&m, c) in &self.terms {
            let mut term = c.clone();
            for i in members(m) {
                term *= &point[i];
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self {
                n: self.n,
                terms: BTreeMap::new(),
            };
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(&m, v)| (m, v * c)).collect(),
        }
    }

    /// Product of two polynomials. With `reduce`, the result is taken modulo
    /// `x_i^2 = x_i`; without it, factors sharing a variable are rejected.
    pub fn multiply(&self, other: &Self, reduce: bool) -> Result<Self> {
        self.check_same(other)?;
        if !reduce {
            let support_a = self.terms.keys().fold(0, |acc, m| acc | m);
            let support_b = other.terms.keys().fold(0, |acc, m| acc | m);
            if support_a & support_b != 0 {
                return Err(Error::SharedVariables);
            }
        }
        let mut out = Self {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                out.add_term(a | b, ca * cb);
            }
        }
        Ok(out)
    }

    /// `Δ`: sends `x_S` to `Σ_{i∈S} x_{S∖{i}}`.
    pub fn lower_delta(&self) -> Self {
        let mut out = Self {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (&m, c) in &self.terms {
            for i in members(m) {
                out.add_term(m & !(1 << i), c.clone());
            }
        }
        out
    }

    /// `Δᵀ`: sends `x_S` to `Σ_{i∉S} x_{S∪{i}}`.
    pub fn raise_delta(&self) -> Self {
        let full = full_mask(self.n);
        let mut out = Self {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (&m, c) in &self.terms {
            for i in members(full & !m) {
                out.add_term(m | (1 << i), c.clone());
            }
        }
        out
    }

    /// `∂f/∂x_i` for a 0-based index.
    pub fn partial_derivative(&self, i: usize) -> Self {
        let bit = 1u64 << i;
        let terms = self
            .terms
            .iter()
            .filter(|(&m, _)| m & bit != 0)
            .map(|(&m, c)| (m & !bit, c.clone()))
            .collect();
        Self { n: self.n, terms }
    }

    /// `f^π(x) = f(x_{π(1)}, …, x_{π(n)})`, i.e. `x_S ↦ x_{π(S)}`.
    pub fn permute(&self, pi: &Permutation) -> Result<Self> {
        if pi.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: pi.len(),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(&m, c)| (pi.apply_mask(m), c.clone()))
            .collect();
        Ok(Self { n: self.n, terms })
    }

    /// `f^{(i j)}` for 0-based `i`, `j`.
    pub fn swap(&self, i: usize, j: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&m, c)| (swap_bits(m, i, j), c.clone()))
            .collect();
        Self { n: self.n, terms }
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(&m, _)| popcount(m) == d)
            .map(|(&m, c)| (m, c.clone()))
            .collect();
        Self { n: self.n, terms }
    }

    /// Homogeneous parts indexed by degree, up to `degree()`.
    pub fn homogeneous_parts(&self) -> Vec<Self> {
        let top = self.degree().unwrap_or(0);
        let mut parts = vec![
            Self {
                n: self.n,
                terms: BTreeMap::new()
            };
            top + 1
        ];
        for (&m, c) in &self.terms {
            parts[popcount(m)].terms.insert(m, c.clone());
        }
        parts
    }

    /// Drops every monomial of degree greater than `d`.
    pub fn truncate(&self, d: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(&m, _)| popcount(m) <= d)
            .map(|(&m, c)| (m, c.clone()))
            .collect();
        Self { n: self.n, terms }
    }

    pub fn is_harmonic(&self) -> bool {
        self.lower_delta().is_zero()
    }

    /// `g(x) = f(x_1 + c, …, x_n + c)`.
    pub fn shift(&self, c: &Rational) -> Self {
        let mut out = Self {
            n: self.n,
            terms: BTreeMap::new(),
        };
        let powers: Vec<Rational> = (0..=self.degree().unwrap_or(0))
            .map(|e| rational::pow(c, e))
            .collect();
        for (&m, coeff) in &self.terms {
            let size = popcount(m);
            for t in submasks(m) {
                let power = &powers[size - popcount(t)];
                if !power.is_zero() {
                    out.add_term(t, coeff * power);
                }
            }
        }
        out
    }

    /// `g(x) = f(1 - x_1, …, 1 - x_n)`.
    pub fn reflect(&self) -> Self {
        let mut out = Self {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (&m, coeff) in &self.terms {
            for t in submasks(m) {
                if popcount(t).is_multiple_of(2) {
                    out.add_term(t, coeff.clone());
                } else {
                    out.add_term(t, -coeff.clone());
                }
            }
        }
        out
    }

    /// `g(x) = f(-x)`: flips the sign of the odd-degree part.
    pub fn negate_argument(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&m, c)| {
                if popcount(m) % 2 == 1 {
                    (m, -c.clone())
                } else {
                    (m, c.clone())
                }
            })
            .collect();
        Self { n: self.n, terms }
    }

    /// Values at every point of `{0,1}^n`, indexed by bitmask.
    pub fn value_table(&self) -> Result<Vec<Rational>> {
        check_table_size(self.n)?;
        let size = 1usize << self.n;
        let mut table = vec![Rational::zero(); size];
        for (&m, c) in &self.terms {
            table[m as usize] = c.clone();
        }
        for i in 0..self.n {
            let bit = 1usize << i;
            for mask in 0..size {
                if mask & bit != 0 {
                    let (low, high) = table.split_at_mut(mask);
                    high[0] += &low[mask ^ bit];
                }
            }
        }
        Ok(table)
    }

    /// Floating-point value table; exact coefficients are rounded first.
    pub fn value_table_f64(&self) -> Result<Vec<f64>> {
        check_table_size(self.n)?;
        let size = 1usize << self.n;
        let mut table = vec![0.0; size];
        for (&m, c) in &self.terms {
            table[m as usize] = rational::to_f64(c);
        }
        zeta_transform(&mut table, self.n);
        Ok(table)
    }

    /// Coefficients scaled to integers by the least common denominator.
    pub fn integer_form(&self) -> (Vec<(u64, BigInt)>, BigInt) {
        let lcm = self.terms.values().fold(BigInt::one(), |acc, c| {
            num_integer::Integer::lcm(&acc, c.denom())
        });
        let ints = self
            .terms
            .iter()
            .map(|(&m, c)| (m, c.numer() * (&lcm / c.denom())))
            .collect();
        (ints, lcm)
    }

    pub fn evaluator(&self) -> Evaluator {
        Evaluator::new(self)
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn to_float(&self) -> crate::FloatPoly {
        crate::FloatPoly::from_terms(
            self.n,
            self.terms.iter().map(|(&m, c)| (m, rational::to_f64(c))),
        )
    }

    /// Variables (0-based) appearing in some monomial.
    pub fn support(&self) -> u64 {
        self.terms.keys().fold(0, |acc, m| acc | m)
    }

    /// Keeps the polynomial but changes the ambient dimension. Fails if a
    /// variable would fall outside the new range.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        check_n(n)?;
        let support = self.support();
        if support & !full_mask(n) != 0 {
            return Err(Error::SubsetOutOfRange { mask: support, n });
        }
        Ok(Self {
            n,
            terms: self.terms.clone(),
        })
    }
}

/// Fast repeated evaluation on cube points: coefficients are brought to a
/// common denominator and summed as machine integers when they fit.
#[derive(Debug, Clone)]
pub struct Evaluator {
    small: Option<Vec<(u64, i64)>>,
    big: Vec<(u64, BigInt)>,
    denom: BigInt,
    inv_denom: Rational,
}

impl Evaluator {
    pub fn new(f: &MultilinearPoly) -> Self {
        let (big, denom) = f.integer_form();
        // Keep sums far from overflow: at most 2^20 terms of size < 2^40.
        let small = if big.len() <= 1 << 20 {
            big.iter()
                .map(|(m, c)| {
                    num_traits::ToPrimitive::to_i64(c)
                        .filter(|v| v.unsigned_abs() < 1 << 40)
                        .map(|v| (*m, v))
                })
                .collect()
        } else {
            None
        };
        let inv_denom = Rational::new(BigInt::one(), denom.clone());
        Self {
            small,
            big,
            denom,
            inv_denom,
        }
    }

    /// `f(bits) · denominator()`.
    pub fn numerator(&self, bits: u64) -> BigInt {
        match &self.small {
            Some(terms) => BigInt::from(
                terms
                    .iter()
                    .filter(|(m, _)| m & !bits == 0)
                    .map(|(_, c)| *c)
                    .sum::<i64>(),
            ),
            None => self
                .big
                .iter()
                .filter(|(m, _)| m & !bits == 0)
                .map(|(_, c)| c)
                .sum(),
        }
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    pub fn evaluate(&self, bits: u64) -> Rational {
        Rational::from_integer(self.numerator(bits)) * &self.inv_denom
    }
}

pub(crate) fn zeta_transform(table: &mut [f64], n: usize) {
    for i in 0..n {
        let bit = 1usize << i;
        for mask in 0..table.len() {
            if mask & bit != 0 {
                table[mask] += table[mask ^ bit];
            }
        }
    }
}

pub(crate) const MAX_TABLE_BITS: usize = 26;

pub(crate) fn check_table_size(n: usize) -> Result<()> {
    if n > MAX_TABLE_BITS {
        Err(Error::BudgetExceeded {
            needed: 1u128 << n,
            budget: 1u128 << MAX_TABLE_BITS,
        })
    } else {
        Ok(())
    }
}

pub(crate) fn swap_bits(m: u64, i: usize, j: usize) -> u64 {
    let bi = (m >> i) & 1;
    let bj = (m >> j) & 1;
    if bi == bj {
        m
    } else {
        m ^ ((1 << i) | (1 << j))
    }
}

pub(crate) fn vars_to_mask(n: usize, vars: &[usize]) -> Result<u64> {
    let mut mask = 0u64;
    for &v in vars {
        if v == 0 || v > n {
            return Err(Error::InvalidParameter(format!(
                "variable index {v} outside 1..={n}"
            )));
        }
        mask |= 1 << (v - 1);
    }
    Ok(mask)
}

/// 1-based variable list of a mask.
pub fn mask_to_vars(mask: u64) -> Vec<usize> {
    subsets::members(mask).map(|i| i + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn x(n: usize, i: usize) -> MultilinearPoly {
        MultilinearPoly::var(n, i).unwrap()
    }

    fn pt(n: usize, bits: u64) -> CubePoint {
        CubePoint::new(n, bits).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let f = MultilinearPoly::monomial(2, &[1, 2], int(1)).unwrap();
        assert_eq!(f.evaluate(&pt(2, 0b11)).unwrap(), int(1));
        let g = x(2, 1).sub(&x(2, 2)).unwrap();
        assert_eq!(g.evaluate(&pt(2, 0b10)).unwrap(), int(-1));
        let h = MultilinearPoly::constant(2, rat(1, 2))
            .unwrap()
            .add(&g.scale(&rat(1, 2)))
            .unwrap();
        assert_eq!(h.evaluate(&pt(2, 0b01)).unwrap(), int(1));
        assert!(f.evaluate(&pt(3, 0)).is_err());
    }

    #[test]
    fn addition_and_scaling() {
        assert!(x(3, 1).add(&x(3, 1).neg()).unwrap().is_zero());
        let d12 = x(3, 1).sub(&x(3, 2)).unwrap();
        let d23 = x(3, 2).sub(&x(3, 3)).unwrap();
        assert_eq!(d12.add(&d23).unwrap(), x(3, 1).sub(&x(3, 3)).unwrap());
        let half = d12.scale(&rat(1, 2));
        assert_eq!(half.coeff(0b01), rat(1, 2));
        assert_eq!(half.coeff(0b10), rat(-1, 2));
        assert!(x(2, 1).add(&x(3, 1)).is_err());
    }

    #[test]
    fn multiplication() {
        let a = x(4, 1).sub(&x(4, 2)).unwrap();
        let b = x(4, 3).sub(&x(4, 4)).unwrap();
        let ab = a.multiply(&b, false).unwrap();
        assert_eq!(ab.num_terms(), 4);
        assert_eq!(ab.coeff(0b0101), int(1));
        assert_eq!(ab.coeff(0b1001), int(-1));
        assert_eq!(ab.coeff(0b0110), int(-1));
        assert_eq!(ab.coeff(0b1010), int(1));

        assert_eq!(x(2, 1).multiply(&x(2, 1), true).unwrap(), x(2, 1));
        assert_eq!(
            x(2, 1).multiply(&x(2, 1), false),
            Err(Error::SharedVariables)
        );

        let d = x(2, 1).sub(&x(2, 2)).unwrap();
        let sq = d.multiply(&d, true).unwrap();
        let expected =
            MultilinearPoly::from_terms(2, [(0b01, int(1)), (0b10, int(1)), (0b11, int(-2))])
                .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn lefschetz_operators() {
        let f = MultilinearPoly::monomial(2, &[1, 2], int(1)).unwrap();
        assert_eq!(f.lower_delta(), x(2, 1).add(&x(2, 2)).unwrap());
        assert!(x(2, 1).sub(&x(2, 2)).unwrap().lower_delta().is_zero());
        assert!(MultilinearPoly::basic(4, 2)
            .unwrap()
            .lower_delta()
            .is_zero());

        let one = MultilinearPoly::constant(3, int(1)).unwrap();
        assert_eq!(
            one.raise_delta(),
            MultilinearPoly::sum_of_variables(3).unwrap()
        );
        assert_eq!(
            x(2, 1).raise_delta(),
            MultilinearPoly::monomial(2, &[1, 2], int(1)).unwrap()
        );
    }

    #[test]
    fn commutator_on_monomials() {
        for n in 1..=8 {
            for d in 0..=n {
                for m in subsets::combinations(n, d) {
                    let f = MultilinearPoly::monomial_mask(n, m, int(1)).unwrap();
                    let lhs = f
                        .raise_delta()
                        .lower_delta()
                        .sub(&f.lower_delta().raise_delta())
                        .unwrap();
                    assert_eq!(lhs, f.scale(&int(n as i64 - 2 * d as i64)));
                }
            }
        }
    }

    #[test]
    fn permutation_action() {
        let d = x(2, 1).sub(&x(2, 2)).unwrap();
        let swap = Permutation::transposition(2, 0, 1).unwrap();
        assert_eq!(d.permute(&swap).unwrap(), d.neg());
        let s = MultilinearPoly::sum_of_variables(3).unwrap();
        let cyc = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(s.permute(&cyc).unwrap(), s);
    }

    #[test]
    fn permutation_matches_substitution() {
        // f = x1 + 2 x2 x3; f^π(x) = f(x_{π(1)}, x_{π(2)}, x_{π(3)}).
        let f = MultilinearPoly::from_terms(3, [(0b001, int(1)), (0b110, int(2))]).unwrap();
        let pi = Permutation::new(vec![2, 0, 1]).unwrap();
        let g = f.permute(&pi).unwrap();
        for bits in 0..8u64 {
            let y: u64 = (0..3)
                .filter(|&i| bits >> pi.apply(i) & 1 == 1)
                .fold(0, |acc, i| acc | 1 << i);
            assert_eq!(g.evaluate_mask(bits), f.evaluate_mask(y));
        }
    }

    #[test]
    fn homogeneous_parts_and_degree() {
        let f = MultilinearPoly::constant(2, int(5))
            .unwrap()
            .add(&x(2, 1).sub(&x(2, 2)).unwrap())
            .unwrap();
        assert_eq!(
            f.homogeneous_part(0),
            MultilinearPoly::constant(2, int(5)).unwrap()
        );
        assert_eq!(f.homogeneous_part(1), x(2, 1).sub(&x(2, 2)).unwrap());
        assert_eq!(f.degree(), Some(1));
        assert_eq!(MultilinearPoly::zero(3).unwrap().degree(), None);
    }

    #[test]
    fn harmonicity() {
        assert!(x(2, 1).sub(&x(2, 2)).unwrap().is_harmonic());
        assert!(!x(2, 1).is_harmonic());
    }

    #[test]
    fn shift_and_reflect() {
        let f = MultilinearPoly::monomial(2, &[1, 2], int(1)).unwrap();
        // (x1 + 1)(x2 + 1) = 1 + x1 + x2 + x1 x2
        let g = f.shift(&int(1));
        assert_eq!(g.num_terms(), 4);
        // 1 - x1 - x2 + x1 x2
        let r = f.reflect();
        assert_eq!(r.coeff(0), int(1));
        assert_eq!(r.coeff(0b01), int(-1));
        for bits in 0..4u64 {
            assert_eq!(r.evaluate_mask(bits), f.evaluate_mask(!bits & 0b11));
        }
    }

    #[test]
    fn value_tables_agree_with_evaluation() {
        let f = MultilinearPoly::from_terms(
            4,
            [
                (0, rat(1, 3)),
                (0b0011, int(2)),
                (0b1100, rat(-5, 7)),
                (0b1111, int(1)),
            ],
        )
        .unwrap();
        let exact = f.value_table().unwrap();
        let float = f.value_table_f64().unwrap();
        let eval = f.evaluator();
        for bits in 0..16u64 {
            assert_eq!(exact[bits as usize], f.evaluate_mask(bits));
            assert_eq!(eval.evaluate(bits), f.evaluate_mask(bits));
            assert!((float[bits as usize] - rational::to_f64(&exact[bits as usize])).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(MultilinearPoly::zero(0).is_err());
        assert!(MultilinearPoly::zero(65).is_err());
        assert!(MultilinearPoly::monomial(3, &[4], int(1)).is_err());
        assert!(CubePoint::new(2, 0b100).is_err());
        assert!(MultilinearPoly::basic(3, 2).is_err());
    }
}
