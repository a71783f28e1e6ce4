mod blekherman;
mod counterexample;
mod gt;
mod influence;
mod invariance;
mod poincare;
mod profile;
mod tv;

use std::time::Instant;

use num_traits::{One, Signed};
use slice_harmonic::rational::{as_usize, from_usize, parse_rational};
use slice_harmonic::Rational;

use crate::args::{Command, Global};
use crate::error::{CliError, CliResult};
use crate::fspec::FSpec;
use crate::output::{Cell, Report};

/// Settings shared by every subcommand.
pub struct Context {
    pub seed: u64,
    pub threads: usize,
    pub timing: bool,
}

impl Context {
    /// Appends the `runtime` column when timing is on.
    fn finish_row(&self, row: &mut Vec<Cell>, start: Instant) {
        if self.timing {
            row.push(Cell::Float(start.elapsed().as_secs_f64()));
        }
    }

    fn report(&self, command: &'static str, columns: &[&str]) -> Report {
        let mut r = Report::new(command, columns);
        if self.timing {
            r.add_column("runtime");
        }
        r
    }
}

pub fn run(command: &Command, global: &Global) -> CliResult<Report> {
    if global.threads == 0 {
        return Err(CliError::invalid("--threads must be at least 1"));
    }
    let ctx = Context {
        seed: global.seed,
        threads: global.threads,
        timing: global.timing,
    };
    match command {
        Command::Invariance { n, p, f, samples } => {
            invariance::run(&ctx, n, &probability(p)?, &f.parse()?, *samples)
        }
        Command::Counterexample { n, p, d } => counterexample::run(&ctx, *n, &probability(p)?, *d),
        Command::Tv { n, p, m } => tv::run(&ctx, n, &probability(p)?, *m),
        Command::Influence { f, n, p } => influence::run(&ctx, &f.parse()?, *n, &probability(p)?),
        Command::Profile {
            f,
            n,
            p,
            levels,
            samples,
            mixture,
        } => profile::run(
            &ctx,
            &f.parse()?,
            *n,
            &probability(p)?,
            levels,
            *samples,
            *mixture,
        ),
        Command::Gt { n, d, k, gram } => gt::run(&ctx, *n, *d, *k, *gram),
        Command::Poincare { f, n, measure } => poincare::run(&ctx, &f.parse()?, *n, measure),
        Command::Blekherman { f, n, p, levels } => {
            let p = p.as_deref().map(probability).transpose()?;
            blekherman::run(&ctx, &f.parse::<FSpec>()?, *n, p, levels.as_deref())
        }
    }
}

/// A rational strictly between 0 and 1.
fn probability(text: &str) -> CliResult<Rational> {
    let p = parse_rational(text)?;
    if !p.is_positive() || p >= Rational::one() {
        return Err(CliError::invalid(format!("p = {text} must lie in (0, 1)")));
    }
    Ok(p)
}

/// `pn`, which must be an integer.
fn central_level(n: usize, p: &Rational) -> CliResult<usize> {
    as_usize(&(from_usize(n) * p))
        .ok_or_else(|| CliError::invalid(format!("pn = {n}·{p} is not an integer")))
}

fn check_n(n: usize) -> CliResult<()> {
    if (1..=64).contains(&n) {
        Ok(())
    } else {
        Err(CliError::invalid(format!("n = {n} outside 1..=64")))
    }
}
