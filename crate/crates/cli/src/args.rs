use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::output::Format;

/// Experiments on harmonic analysis over slices of the Boolean cube.
#[derive(Debug, Parser)]
#[command(name = "slice-harmonic", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed for Monte Carlo subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for Monte Carlo subcommands; exact ones ignore it.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Add a wall-clock `runtime` column (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lévy distance between f on the slice ν_{pn} and on the cube μ_p.
    Invariance {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long, default_value = "basic:1")]
        f: String,
        /// Sample this many points per side instead of computing exactly.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Norms of the normalized degree-d basic function on slice and cube.
    Counterexample {
        #[arg(long, default_value_t = 32)]
        n: usize,
        #[arg(long, default_value = "1/4")]
        p: String,
        #[arg(long, default_value_t = 4)]
        d: usize,
    },
    /// Total variation between the first m coordinates under ν_{pn} and μ_p.
    Tv {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long)]
        m: usize,
    },
    /// Total influence of a Boolean function, two ways, and the hybrid bound.
    Influence {
        #[arg(long)]
        f: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        p: String,
    },
    /// Joint samples of f at several levels of one random chain.
    Profile {
        #[arg(long)]
        f: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Also draw from the binomial mixture over the levels.
        #[arg(long)]
        mixture: bool,
    },
    /// Gelfand–Tsetlin basis elements of degree d.
    Gt {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Slice for the norms; defaults to n/2.
        #[arg(long)]
        k: Option<usize>,
        /// Also check that the Gram matrix under ν_k is diagonal.
        #[arg(long)]
        gram: bool,
    },
    /// The two-sided Poincaré inequality for a harmonic f.
    Poincare {
        #[arg(long)]
        f: String,
        #[arg(long)]
        n: usize,
        /// `slice:k`, `cube:p` or `levels:w0,w1,...,wn`.
        #[arg(long)]
        measure: String,
    },
    /// Blekherman expansion of f, with optional interpolation from slices.
    Blekherman {
        #[arg(long)]
        f: String,
        #[arg(long)]
        n: usize,
        /// Expand in powers of the standardized sum for this p.
        #[arg(long)]
        p: Option<String>,
        /// Recover the coefficients from these d+1 slice levels (needs --p).
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<usize>>,
    },
}
