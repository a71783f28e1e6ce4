//! Noise operators on the cube and on the slice.
//!
//! On the `p`-biased cube, `T_ρ` damps the level-`i` part of the expansion
//! in the characters `ω_S = ∏_{i∈S} (x_i - p)/√(p(1-p))` by `ρ^i`. Those
//! levels are the homogeneous parts of `y ↦ f(y + p)`; for harmonic `f` they
//! coincide with the homogeneous parts of `f` itself. On the slice, `H_ρ`
//! damps the degree-`i` part of a harmonic polynomial by
//! `ρ^{i(1 - (i-1)/n)}`.

use crate::error::{Error, Result};
use crate::float_poly::FloatPoly;
use crate::poly::MultilinearPoly;
use crate::rational::{self, Rational};
use crate::subsets::popcount;

use num_traits::{One, Signed};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoiseKind {
    Cube { p: Rational },
    Slice,
}

pub fn slice_multiplier(rho: f64, degree: usize, n: usize) -> f64 {
    let i = degree as f64;
    rho.powf(i * (1.0 - (i - 1.0) / n as f64))
}

pub fn noise_operator(f: &MultilinearPoly, rho: f64, kind: &NoiseKind) -> Result<FloatPoly> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::InvalidParameter(format!(
            "rho = {rho} outside [0, 1]"
        )));
    }
    match kind {
        NoiseKind::Slice => {
            if !f.is_harmonic() {
                return Err(Error::NotHarmonic);
            }
            let n = f.n();
            Ok(FloatPoly::from_terms(
                n,
                f.terms().map(|(m, c)| {
                    (
                        m,
                        rational::to_f64(c) * slice_multiplier(rho, popcount(m), n),
                    )
                }),
            ))
        }
        NoiseKind::Cube { p } => {
            check_p(p)?;
            let centered = f.shift(p);
            let damped = FloatPoly::from_terms(
                f.n(),
                centered
                    .terms()
                    .map(|(m, c)| (m, rational::to_f64(c) * rho.powi(popcount(m) as i32))),
            );
            Ok(damped.shift(-rational::to_f64(p)))
        }
    }
}

/// `T_ρ` on the `p`-biased cube with rational `ρ`, computed exactly.
pub fn noise_cube_exact(
    f: &MultilinearPoly,
    rho: &Rational,
    p: &Rational,
) -> Result<MultilinearPoly> {
    check_p(p)?;
    if rho.is_negative() || rho > &Rational::one() {
        return Err(Error::InvalidParameter(format!(
            "rho = {rho} outside [0, 1]"
        )));
    }
    let centered = f.shift(p);
    let damped = MultilinearPoly::from_terms(
        f.n(),
        centered
            .terms()
            .map(|(m, c)| (m, c * rational::pow(rho, popcount(m)))),
    )?;
    Ok(damped.shift(&-p.clone()))
}

fn check_p(p: &Rational) -> Result<()> {
    if p.is_negative() || p > &Rational::one() {
        Err(Error::InvalidParameter(format!("p = {p} outside [0, 1]")))
    } else {
        Ok(())
    }
}

/// `(E|g|^q)^{1/q}` under `μ_p`, given a full value table.
pub fn cube_lq_norm(values: &[f64], p: f64, q: f64) -> f64 {
    let total: f64 = values
        .iter()
        .enumerate()
        .map(|(mask, v)| {
            let ones = (mask as u64).count_ones() as i32;
            let n = values.len().trailing_zeros() as i32;
            p.powi(ones) * (1.0 - p).powi(n - ones) * v.abs().powf(q)
        })
        .sum();
    total.powf(1.0 / q)
}
