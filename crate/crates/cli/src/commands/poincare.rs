use std::time::Instant;

use slice_harmonic::measures::{poincare_bounds, ExchangeableMeasure};
use slice_harmonic::rational::parse_rational;
use slice_harmonic::Rational;

use super::{check_n, probability, Context};
use crate::error::{CliError, CliResult};
use crate::fspec::FSpec;
use crate::output::{Cell, Report};

/// `slice:k`, `cube:p` or `levels:w0,...,wn`.
fn parse_measure(text: &str, n: usize) -> CliResult<ExchangeableMeasure> {
    let bad = || CliError::invalid(format!("bad measure {text:?}"));
    let (kind, arg) = text.split_once(':').ok_or_else(bad)?;
    match kind {
        "slice" => {
            let k: usize = arg.trim().parse().map_err(|_| bad())?;
            Ok(ExchangeableMeasure::slice_uniform(n, k)?)
        }
        "cube" => Ok(ExchangeableMeasure::product_bernoulli(
            n,
            probability(arg)?,
        )?),
        "levels" => {
            let weights = arg
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<Rational>, _>>()?;
            Ok(ExchangeableMeasure::level_weights(n, weights)?)
        }
        _ => Err(bad()),
    }
}

pub fn run(ctx: &Context, spec: &FSpec, n: usize, measure: &str) -> CliResult<Report> {
    let start = Instant::now();
    check_n(n)?;
    let m = parse_measure(measure, n)?;
    let f = spec.poly(n)?;
    let b = poincare_bounds(&f, &m)?;

    let mut report = ctx.report("poincare", &["n", "d", "lhs", "mid", "rhs", "holds"]);
    report.param("f", spec.to_string());
    report.param("n", n);
    report.param("measure", measure);
    let mut row = vec![
        Cell::int(n),
        Cell::int(f.degree().unwrap_or(0)),
        Cell::exact(&b.lhs),
        Cell::exact(&b.mid),
        Cell::exact(&b.rhs),
        Cell::Bool(b.holds()),
    ];
    ctx.finish_row(&mut row, start);
    report.push(row);
    Ok(report)
}
