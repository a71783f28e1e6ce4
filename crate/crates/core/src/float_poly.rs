use std::collections::BTreeMap;

use crate::subsets::{popcount, submasks};

/// Multilinear polynomial with floating-point coefficients, produced by the
/// noise operators and by normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatPoly {
    n: usize,
    terms: BTreeMap<u64, f64>,
}

impl FloatPoly {
    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, f64)>,
    {
        let mut out = Self {
            n,
            terms: BTreeMap::new(),
        };
        for (m, c) in terms {
            *out.terms.entry(m).or_insert(0.0) += c;
        }
        out.terms.retain(|_, c| *c != 0.0);
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coeff(&self, mask: u64) -> f64 {
        self.terms.get(&mask).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|&m| popcount(m)).max()
    }

    pub fn evaluate_mask(&self, bits: u64) -> f64 {
        self.terms
            .iter()
            .filter(|(&m, _)| m & !bits == 0)
            .map(|(_, &c)| c)
            .sum()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(&m, &v)| (m, v * c)))
    }

    /// `g(x) = f(x_1 + c, …, x_n + c)`.
    pub fn shift(&self, c: f64) -> Self {
        let mut terms = Vec::new();
        for (&m, &coeff) in &self.terms {
            let size = popcount(m);
            for t in submasks(m) {
                terms.push((t, coeff * c.powi((size - popcount(t)) as i32)));
            }
        }
        Self::from_terms(self.n, terms)
    }

    pub fn value_table(&self) -> crate::Result<Vec<f64>> {
        crate::poly::check_table_size(self.n)?;
        let mut table = vec![0.0; 1usize << self.n];
        for (&m, &c) in &self.terms {
            table[m as usize] = c;
        }
        crate::poly::zeta_transform(&mut table, self.n);
        Ok(table)
    }
}
