use std::time::Instant;

use num_traits::Zero;
use rand::Rng;
use slice_harmonic::coupling::{
    cdf_distance, exact_distribution, levy_distance, run_workers, sample_chain, Domain, Pmf,
};
use slice_harmonic::measures::{variance, ExchangeableMeasure};
use slice_harmonic::rational::{format_rational, to_f64};
use slice_harmonic::{Error, MultilinearPoly, Rational};

use super::{central_level, check_n, Context};
use crate::error::{CliError, CliResult};
use crate::fspec::FSpec;
use crate::output::{Cell, Report};

/// `scale · X` for an exact pmf of `X`.
fn scaled(pmf: &Pmf<Rational>, scale: f64) -> CliResult<Pmf<f64>> {
    let support = pmf.support().iter().map(|v| to_f64(v) * scale).collect();
    let probs = pmf.probs().iter().map(to_f64).collect();
    Ok(Pmf::<f64>::new(support, probs)?)
}

/// `(f(x), f(y))` for `x` uniform on slice `k` and `y ~ μ_p`.
fn sample_pairs(
    f: &MultilinearPoly,
    k: usize,
    p: f64,
    samples: usize,
    ctx: &Context,
) -> Vec<(f64, f64)> {
    let g = f.to_float();
    let n = f.n();
    run_workers(samples, ctx.seed, ctx.threads, |rng, count| {
        (0..count)
            .map(|_| {
                let chain = sample_chain(n, rng).expect("n checked");
                let x = chain.sets()[k];
                let y = (0..n).fold(0u64, |acc, i| {
                    if rng.random_bool(p) {
                        acc | 1 << i
                    } else {
                        acc
                    }
                });
                (g.evaluate_mask(x), g.evaluate_mask(y))
            })
            .collect()
    })
}

pub fn run(
    ctx: &Context,
    ns: &[usize],
    p: &Rational,
    spec: &FSpec,
    samples: Option<usize>,
) -> CliResult<Report> {
    if samples == Some(0) {
        return Err(CliError::invalid("--samples must be at least 1"));
    }
    let mut report = ctx.report("invariance", &["n", "k", "d", "levy", "cdf_dist"]);
    report.param("p", format_rational(p));
    report.param("f", spec.to_string());
    report.param("n", ns.to_vec());
    match samples {
        Some(s) => {
            report.param("mode", "samples");
            report.param("samples", s);
            report.param("seed", ctx.seed);
            report.param("threads", ctx.threads);
        }
        None => report.param("mode", "exact"),
    }
    for &n in ns {
        let start = Instant::now();
        check_n(n)?;
        let k = central_level(n, p)?;
        let f = spec.poly(n)?;
        if !f.is_harmonic() {
            return Err(Error::NotHarmonic.into());
        }
        // Unit variance on the reference slice; constants stay as they are.
        let var = variance(&f, &ExchangeableMeasure::slice_uniform(n, k)?)?;
        let scale = if var.is_zero() {
            1.0
        } else {
            1.0 / to_f64(&var).sqrt()
        };
        let (a, b) = match samples {
            None => (
                scaled(&exact_distribution(&f, &Domain::Slice { k })?, scale)?,
                scaled(
                    &exact_distribution(&f, &Domain::Cube { p: p.clone() })?,
                    scale,
                )?,
            ),
            Some(s) => {
                let pairs = sample_pairs(&f, k, to_f64(p), s, ctx);
                let xs: Vec<f64> = pairs.iter().map(|(x, _)| x * scale).collect();
                let ys: Vec<f64> = pairs.iter().map(|(_, y)| y * scale).collect();
                (
                    Pmf::<f64>::from_samples(&xs)?,
                    Pmf::<f64>::from_samples(&ys)?,
                )
            }
        };
        let mut row = vec![
            Cell::int(n),
            Cell::int(k),
            Cell::int(f.degree().unwrap_or(0)),
            Cell::Float(levy_distance(&a, &b)),
            Cell::Float(cdf_distance(&a, &b)),
        ];
        ctx.finish_row(&mut row, start);
        report.push(row);
    }
    Ok(report)
}
