use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{check_n, Permutation};

/// A maximal chain given by the order in which coordinates (0-based) are
/// added: `X(s) = {order[0], …, order[s-1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainSample {
    order: Vec<usize>,
}

impl ChainSample {
    pub fn from_order(order: Vec<usize>) -> Result<Self> {
        check_n(order.len())?;
        Permutation::new(order.clone())?;
        Ok(Self { order })
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Bitmask of `X(s)`.
    pub fn set(&self, s: usize) -> Result<u64> {
        if s > self.order.len() {
            return Err(Error::InvalidParameter(format!(
                "step {s} exceeds n = {}",
                self.order.len()
            )));
        }
        Ok(self.order[..s].iter().fold(0, |acc, &i| acc | 1 << i))
    }

    /// `X(0), …, X(n)`.
    pub fn sets(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.order.len() + 1);
        let mut acc = 0u64;
        out.push(acc);
        for &i in &self.order {
            acc |= 1 << i;
            out.push(acc);
        }
        out
    }
}

/// Uniform random chain (Fisher–Yates shuffle of the insertion order).
pub fn sample_chain<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ChainSample> {
    check_n(n)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    Ok(ChainSample { order })
}
