use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Parser, Debug)]
#[command(name = "semipolar", version, about = "Intrinsic Hausdorff measures, capacities and verdicts for Green kernels")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Options,
    /// TOML file whose keys override the flags of the same name
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate G(x, y)
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// G-ball membership and extents
    Ball {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        rho: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
    },
    /// Estimate the intrinsic measure of a set along a dyadic schedule
    Cover,
    /// Capacity lower-bound certificate for the uniform measure on a set
    Capacity,
    /// Polar / semipolar / nonpolar verdict from both evidence pipelines
    Classify,
    /// Run an acceptance suite
    Verify {
        /// inclusions, constants, semigroup, green, measures, capacity or all
        suite: String,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelName {
    /// |x-y|^{β-n} on ℝⁿ
    Riesz,
    /// space-time kernel of the normalized heat semigroup
    Heat,
    /// t^{-n/2} exp(-|x|²/4t) on ℝ^{n+1}
    GaussWeierstrass,
    /// space-time kernel of the Cauchy semigroup
    Cauchy,
    /// Green function of the heat semigroup on ℝⁿ
    GreenGauss,
    /// Green function of the Cauchy semigroup on ℝⁿ
    GreenCauchy,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Default, Clone, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct Options {
    #[arg(long, global = true, value_enum)]
    pub kernel: Option<KernelName>,
    /// spatial dimension
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    /// slice, vertical-segment, empty, singleton:X, segment:K,
    /// cantor:RATIO,DEPTH, window:LO/HI or a JSON descriptor
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub set: Option<String>,
    /// smallest δ of the schedule 2^{-1}, 2^{-2}, ...
    #[arg(long, global = true)]
    pub delta_min: Option<f64>,
    /// probes per covering check / sample count
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// capacity evaluation points
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// cells per active axis for the capacity candidate
    #[arg(long, global = true)]
    pub subdivisions: Option<usize>,
    /// fixed capacity grid margin
    #[arg(long, global = true)]
    pub margin: Option<f64>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

impl Options {
    /// Fields present in `config` win.
    pub fn overridden_by(self, config: Options) -> Options {
        Options {
            kernel: config.kernel.or(self.kernel),
            n: config.n.or(self.n),
            beta: config.beta.or(self.beta),
            set: config.set.or(self.set),
            delta_min: config.delta_min.or(self.delta_min),
            samples: config.samples.or(self.samples),
            seed: config.seed.or(self.seed),
            grid: config.grid.or(self.grid),
            subdivisions: config.subdivisions.or(self.subdivisions),
            margin: config.margin.or(self.margin),
            out: config.out.or(self.out),
            format: config.format.or(self.format),
        }
    }
}
