use std::time::Instant;

use serde_json::json;
use slice_harmonic::blekherman::{
    blekherman_expand, interpolate_coefficients, system_stats, ExpansionBasis,
};
use slice_harmonic::rational::{format_rational, to_f64};
use slice_harmonic::{MultilinearPoly, Rational};

use super::{check_n, Context};
use crate::error::{CliError, CliResult};
use crate::fspec::FSpec;
use crate::output::{float_json, Cell, Report};

pub fn run(
    ctx: &Context,
    spec: &FSpec,
    n: usize,
    p: Option<Rational>,
    levels: Option<&[usize]>,
) -> CliResult<Report> {
    let start = Instant::now();
    check_n(n)?;
    let f = spec.poly(n)?;
    let basis = match &p {
        Some(p) => ExpansionBasis::Standardized { p: p.clone() },
        None => ExpansionBasis::RawSum,
    };
    let e = blekherman_expand(&f, basis)?;

    let mut report = ctx.report("blekherman", &["i", "degree", "terms", "poly"]);
    report.param("f", spec.to_string());
    report.param("n", n);
    if let Some(p) = &p {
        report.param("p", format_rational(p));
    }
    report.extra("expansion", e.to_json_value());

    if let Some(levels) = levels {
        let p = p
            .as_ref()
            .ok_or_else(|| CliError::invalid("--levels needs --p"))?;
        let d = e.degree();
        if levels.len() != d + 1 {
            return Err(CliError::invalid(format!(
                "degree {d} needs {} levels, got {}",
                d + 1,
                levels.len()
            )));
        }
        let system = system_stats(levels, p, n)?;
        let restrictions = levels
            .iter()
            .map(|&k| Ok((e.node(k), e.slice_restrict(k)?)))
            .collect::<CliResult<Vec<_>>>()?;
        let interp = interpolate_coefficients(&restrictions, d)?;
        let zero = MultilinearPoly::zero(n)?;
        let recovered = interp
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c == e.coeffs().get(i).unwrap_or(&zero));
        report.param("levels", levels.to_vec());
        report.extra(
            "interpolation",
            json!({
                "system": system.to_json_value(),
                "max_weight": float_json(to_f64(&interp.max_weight)),
                "bound": float_json(interp.bound),
                "recovered": recovered,
            }),
        );
    }

    for (i, c) in e.coeffs().iter().enumerate() {
        let mut row = vec![
            Cell::int(i),
            c.degree().map_or(Cell::Null, Cell::int),
            Cell::int(c.num_terms()),
            Cell::Text(c.to_text()),
        ];
        ctx.finish_row(&mut row, start);
        report.push(row);
    }
    Ok(report)
}
