use std::time::Instant;

use slice_harmonic::coupling::{hybrid_bound, total_influence, total_influence_slice_sum};
use slice_harmonic::rational::format_rational;
use slice_harmonic::Rational;

use super::{central_level, check_n, Context};
use crate::error::{CliError, CliResult};
use crate::fspec::FSpec;
use crate::output::{Cell, Report};

/// Enumerates the whole cube.
const MAX_N: usize = 24;

pub fn run(ctx: &Context, spec: &FSpec, n: usize, p: &Rational) -> CliResult<Report> {
    let start = Instant::now();
    check_n(n)?;
    if n > MAX_N {
        return Err(CliError::invalid(format!(
            "influence enumerates 2^n points; n ≤ {MAX_N}"
        )));
    }
    let f = spec.boolean(n)?;
    let edge = total_influence(&f, p)?;
    let slices = total_influence_slice_sum(&f, p)?;
    // The hybrid bound is defined only when pn is a level.
    let hybrid = match central_level(n, p) {
        Ok(_) => Some(hybrid_bound(&f, p)?),
        Err(_) => None,
    };

    let mut report = ctx.report(
        "influence",
        &[
            "n",
            "p",
            "influence",
            "influence_slices",
            "agree",
            "hybrid_lhs",
            "hybrid_rhs",
            "hybrid_ratio",
            "hybrid_holds",
        ],
    );
    report.param("f", spec.to_string());
    report.param("n", n);
    report.param("p", format_rational(p));
    let mut row = vec![
        Cell::int(n),
        Cell::exact(p),
        Cell::exact(&edge),
        Cell::exact(&slices),
        Cell::Bool(edge == slices),
    ];
    match &hybrid {
        Some(h) => row.extend([
            Cell::exact(&h.lhs),
            Cell::exact(&h.rhs),
            h.ratio.map_or(Cell::Null, Cell::Float),
            Cell::Bool(h.holds()),
        ]),
        None => row.extend([Cell::Null, Cell::Null, Cell::Null, Cell::Null]),
    }
    ctx.finish_row(&mut row, start);
    report.push(row);
    Ok(report)
}
