use serde_json::Value;
use slice_harmonic::blekherman::system_stats;
use slice_harmonic::coupling::{empirical_profile, mixture_samples};
use slice_harmonic::rational::{format_rational, format_sig12};
use slice_harmonic::Rational;

use super::{check_n, Context};
use crate::error::{CliError, CliResult};
use crate::fspec::FSpec;
use crate::output::{float_json, Report};

/// Samples along shared chains. The table is the profile itself: one column
/// per level, plus `mixture` when requested.
pub fn run(
    ctx: &Context,
    spec: &FSpec,
    n: usize,
    p: &Rational,
    levels: &[usize],
    samples: usize,
    mixture: bool,
) -> CliResult<Report> {
    check_n(n)?;
    if samples == 0 {
        return Err(CliError::invalid("--samples must be at least 1"));
    }
    let f = spec.poly(n)?;
    let system = system_stats(levels, p, n)?;
    let profile = empirical_profile(&f, &system, samples, ctx.seed, ctx.threads)?;
    let mix = if mixture {
        Some(mixture_samples(
            &f,
            &system,
            samples,
            ctx.seed,
            ctx.threads,
        )?)
    } else {
        None
    };

    let mut report = Report::new("profile", &[]);
    report.param("f", spec.to_string());
    report.param("n", n);
    report.param("p", format_rational(p));
    report.param("levels", levels.to_vec());
    report.param("samples", samples);
    report.param("seed", ctx.seed);
    report.param("threads", ctx.threads);
    report.extra("system", system.to_json_value());
    let rows: Vec<Value> = profile
        .rows
        .iter()
        .map(|r| Value::Array(r.iter().map(|&v| float_json(v)).collect()))
        .collect();
    report.extra("profile", Value::Array(rows));
    if let Some(m) = &mix {
        report.extra(
            "mixture",
            Value::Array(m.iter().map(|&v| float_json(v)).collect()),
        );
    }

    let csv = match &mix {
        None => profile.to_csv(),
        Some(m) => {
            let mut lines = profile
                .to_csv()
                .lines()
                .map(String::from)
                .collect::<Vec<_>>();
            lines[0].push_str(",mixture");
            for (line, v) in lines[1..].iter_mut().zip(m) {
                line.push(',');
                line.push_str(&format_sig12(*v));
            }
            lines.join("\n") + "\n"
        }
    };
    report.csv_body(csv);
    Ok(report)
}
