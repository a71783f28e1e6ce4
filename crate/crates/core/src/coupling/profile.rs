//! Profiles: values of `f` at several levels of one random chain, and the
//! binomial mixture that reassembles a cube distribution from them.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;

use crate::blekherman::{turner_inverse, SliceSystem};
use crate::coupling::binomial::binomial_pmf;
use crate::coupling::{run_workers, sample_chain};
use crate::error::{Error, Result};
use crate::poly::MultilinearPoly;
use crate::rational::{self, format_sig12, from_usize, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSamples {
    pub levels: Vec<usize>,
    pub rows: Vec<Vec<f64>>,
}

impl ProfileSamples {
    /// Header row of levels, then one row per sample.
    pub fn to_csv(&self) -> String {
        let mut out = self
            .levels
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_sig12(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Samples at the `i`-th level.
    pub fn column(&self, i: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[i]).collect()
    }
}

fn check_system(f: &MultilinearPoly, system: &SliceSystem) -> Result<()> {
    if system.n != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: system.n,
        });
    }
    Ok(())
}

/// `samples` draws of `(f(X(k_1)), …, f(X(k_r)))` along shared chains.
pub fn empirical_profile(
    f: &MultilinearPoly,
    system: &SliceSystem,
    samples: usize,
    seed: u64,
    threads: usize,
) -> Result<ProfileSamples> {
    check_system(f, system)?;
    let g = f.to_float();
    let n = f.n();
    let levels = system.levels.clone();
    let rows = run_workers(samples, seed, threads, |rng, count| {
        (0..count)
            .map(|_| {
                let sets = sample_chain(n, rng).expect("valid n").sets();
                levels.iter().map(|&k| g.evaluate_mask(sets[k])).collect()
            })
            .collect()
    });
    Ok(ProfileSamples {
        levels: system.levels.clone(),
        rows,
    })
}

/// Draws from the σ-mixture: `σ = (Bin(n,p) - np)/√(np(1-p))` conditioned on
/// `|σ| ≤ √(3 ln(np(1-p)))`, then `Σ_i γ_i(σ) f(X(k_i))` on a fresh chain,
/// where `γ_i(σ) = Σ_e σ^e W_{ei}` interpolates through the system's nodes.
pub fn mixture_samples(
    f: &MultilinearPoly,
    system: &SliceSystem,
    samples: usize,
    seed: u64,
    threads: usize,
) -> Result<Vec<f64>> {
    check_system(f, system)?;
    let n = f.n();
    let p = &system.p;
    let var = rational::to_f64(&(from_usize(n) * p * (Rational::from_integer(1.into()) - p)));
    if var <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "np(1-p) = {var} must exceed 1"
        )));
    }
    let cutoff = (3.0 * var.ln()).sqrt();
    let center = rational::to_f64(&(from_usize(n) * p));
    let w = turner_inverse(&system.sigma)?;
    let pmf = binomial_pmf(n, p)?;
    let mut gammas: Vec<Vec<f64>> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    for (s, prob) in pmf.iter().enumerate() {
        let sigma = (s as f64 - center) / var.sqrt();
        if sigma.abs() > cutoff {
            continue;
        }
        let gamma = (0..w.len())
            .map(|i| (0..w.len()).map(|e| sigma.powi(e as i32) * w[e][i]).sum())
            .collect();
        gammas.push(gamma);
        weights.push(rational::to_f64(prob));
    }
    let index = WeightedIndex::new(&weights)
        .map_err(|e| Error::InvalidParameter(format!("mixture weights: {e}")))?;
    let g = f.to_float();
    let levels = &system.levels;
    Ok(run_workers(samples, seed, threads, |rng, count| {
        (0..count)
            .map(|_| {
                let gamma = &gammas[index.sample(rng)];
                let sets = sample_chain(n, rng).expect("valid n").sets();
                levels
                    .iter()
                    .zip(gamma)
                    .map(|(&k, c)| c * g.evaluate_mask(sets[k]))
                    .sum()
            })
            .collect()
    }))
}
