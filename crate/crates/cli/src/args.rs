use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "sgbc",
    version,
    about = "Spectral simulation and small-gain boundary feedback design for 1-D parabolic PDEs",
    after_help = "Environment: SGBC_THREADS caps the worker threads used by sweeps."
)]
pub struct Cli {
    /// Significant digits of the stderr summary; stdout data is never rounded.
    #[arg(long, global = true, default_value_t = 6)]
    pub digits: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate a scenario and write its trace as CSV.
    Simulate {
        /// Scenario file, or `builtin:<name>` for a bundled scenario.
        scenario: String,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Lower bound sqrt(g_m(mu)) on the gain of any static boundary feedback.
    GainLower {
        #[arg(long, default_value_t = 0.0)]
        mu: f64,
        #[arg(long = "m-max", default_value_t = 2)]
        m_max: usize,
    },
    /// Achievable gain b(r, mu) of the single-mode feedback, or its majorant ub(r).
    GainAchievable {
        #[arg(long, default_value_t = 0.91, allow_negative_numbers = true)]
        r: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        mu: f64,
        /// Use the closed-form majorant of L (mu is ignored).
        #[arg(long)]
        use_ub: bool,
        /// Series terms for L.
        #[arg(long, default_value_t = sgbc::gain::achievable::DEFAULT_SERIES_TERMS)]
        series: usize,
        /// Grid points per optimisation variable.
        #[arg(long, default_value_t = sgbc::gain::achievable::DEFAULT_GRID)]
        grid: usize,
        /// Sweep r over START:STOP:STEP and write CSV instead of JSON.
        #[arg(long, value_name = "START:STOP:STEP")]
        sweep: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate every applicable small-gain condition for a scenario (exit 4 on fail).
    DesignCheck {
        scenario: String,
    },
    /// Exact steady-state gain of a static kernel.
    SteadyGain {
        #[arg(long, value_enum, default_value_t = KernelArg::SingleMode)]
        kernel: KernelArg,
        #[arg(long, default_value_t = 0.91, allow_negative_numbers = true)]
        r: f64,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        q: f64,
        /// Number of input modes.
        #[arg(long, default_value_t = 6)]
        m: usize,
    },
    /// Regenerate the data behind one of the reference figures.
    Reproduce {
        #[arg(value_enum)]
        target: Figure,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Zero,
    SingleMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}
