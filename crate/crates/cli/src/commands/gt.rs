use std::time::Instant;

use num_traits::Zero;
use serde_json::{json, Value};
use slice_harmonic::gt::{gt_basis, gt_norm_squared};
use slice_harmonic::measures::{inner_product, ExchangeableMeasure};
use slice_harmonic::rational::format_rational;

use super::{check_n, Context};
use crate::error::{CliError, CliResult};
use crate::output::{Cell, Report};

fn set_label(set: &[usize]) -> String {
    let items: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

pub fn run(ctx: &Context, n: usize, d: usize, k: Option<usize>, gram: bool) -> CliResult<Report> {
    let start = Instant::now();
    check_n(n)?;
    let k = k.unwrap_or(n / 2);
    if k > n || d > k.min(n - k) {
        return Err(CliError::invalid(format!(
            "need d ≤ min(k, n-k), got n = {n}, k = {k}, d = {d}"
        )));
    }
    let basis = gt_basis(n, d)?;
    let nu = ExchangeableMeasure::slice_uniform(n, k)?;

    let mut report = Report::new("gt", &["B", "terms", "poly", "norm_nu_k"]);
    report.param("n", n);
    report.param("d", d);
    report.param("k", k);
    let mut elements = Vec::with_capacity(basis.len());
    for e in basis.iter() {
        let norm = gt_norm_squared(&e.set, &nu)?;
        elements.push(json!({
            "B": e.set.elements(),
            "poly": e.poly.to_json_value(),
            "norm_nu_k": format_rational(&norm),
        }));
        report.push(vec![
            Cell::Text(set_label(e.set.elements())),
            Cell::int(e.poly.num_terms()),
            Cell::Text(e.poly.to_text()),
            Cell::exact(&norm),
        ]);
    }
    report.extra("n", json!(n));
    report.extra("d", json!(d));
    report.extra("k", json!(k));
    report.extra("elements", Value::Array(elements));
    if gram {
        let mut diagonal = true;
        'outer: for (i, a) in basis.iter().enumerate() {
            for b in &basis[i + 1..] {
                if !inner_product(&a.poly, &b.poly, &nu)?.is_zero() {
                    diagonal = false;
                    break 'outer;
                }
            }
        }
        report.extra("gram_diagonal", json!(diagonal));
    }
    if ctx.timing {
        report.extra("runtime", json!(start.elapsed().as_secs_f64()));
    }
    Ok(report)
}
