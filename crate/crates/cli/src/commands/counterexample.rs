use std::time::Instant;

use num_traits::One;
use slice_harmonic::measures::{basic_norm, ExchangeableMeasure};
use slice_harmonic::rational::{format_rational, from_usize, pow, to_f64};
use slice_harmonic::Rational;

use super::{central_level, check_n, Context};
use crate::error::{CliError, CliResult};
use crate::output::{Cell, Report};

/// Norms of `f = (2p(1-p))^{-d/2} · basic(d)`. Its squared norms are
/// rational even when the scale is not.
pub fn run(ctx: &Context, n: usize, p: &Rational, d: usize) -> CliResult<Report> {
    let start = Instant::now();
    check_n(n)?;
    if d == 0 || 2 * d > n {
        return Err(CliError::invalid(format!(
            "need 1 ≤ d ≤ n/2, got d = {d}, n = {n}"
        )));
    }
    let k = central_level(n, p)?;
    let pq = p * (Rational::one() - p);
    let factor = pow(&(Rational::one() / (from_usize(2) * &pq)), d);
    let cube = basic_norm(&ExchangeableMeasure::product_bernoulli(n, p.clone())?, d)? * &factor;
    let slice = basic_norm(&ExchangeableMeasure::slice_uniform(n, k)?, d)? * &factor;
    let pqf = to_f64(&pq);
    let predicted = ((d * d) as f64 * (4.0 * pqf - 1.0) / (2.0 * pqf * n as f64)).exp();

    let mut report = ctx.report(
        "counterexample",
        &[
            "n",
            "k",
            "p",
            "d",
            "norm_mu",
            "norm_nu",
            "norm_nu_decimal",
            "predicted",
        ],
    );
    report.param("n", n);
    report.param("p", format_rational(p));
    report.param("d", d);
    let mut row = vec![
        Cell::int(n),
        Cell::int(k),
        Cell::exact(p),
        Cell::int(d),
        Cell::exact(&cube),
        Cell::exact(&slice),
        Cell::Float(to_f64(&slice)),
        Cell::Float(predicted),
    ];
    ctx.finish_row(&mut row, start);
    report.push(row);
    Ok(report)
}
