use std::time::Instant;

use slice_harmonic::coupling::projected_tv;
use slice_harmonic::rational::{format_rational, to_f64};
use slice_harmonic::Rational;

use super::{central_level, check_n, Context};
use crate::error::CliResult;
use crate::output::{Cell, Report};

pub fn run(ctx: &Context, ns: &[usize], p: &Rational, m: usize) -> CliResult<Report> {
    let mut report = ctx.report("tv", &["n", "k", "m", "tv", "tv_decimal"]);
    report.param("n", ns.to_vec());
    report.param("p", format_rational(p));
    report.param("m", m);
    for &n in ns {
        let start = Instant::now();
        check_n(n)?;
        let k = central_level(n, p)?;
        let tv = projected_tv(n, k, p, m)?;
        let mut row = vec![
            Cell::int(n),
            Cell::int(k),
            Cell::int(m),
            Cell::exact(&tv),
            Cell::Float(to_f64(&tv)),
        ];
        ctx.finish_row(&mut row, start);
        report.push(row);
    }
    Ok(report)
}
