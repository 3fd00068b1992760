mod args;
mod bundled;
mod commands;
mod error;
mod output;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("SGBC_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("SGBC_THREADS must be a positive integer, got `{value}`")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let digits = cli.digits;
    match cli.command {
        Command::Simulate { scenario, output } => {
            let sc = commands::load_scenario(&scenario)?;
            commands::simulate(&scenario, &sc, output.as_deref(), digits)
        }
        Command::GainLower { mu, m_max } => commands::gain_lower(mu, m_max, digits),
        Command::GainAchievable {
            r,
            mu,
            use_ub,
            series,
            grid,
            sweep,
            output,
        } => commands::gain_achievable(
            commands::AchievableArgs {
                r,
                mu,
                use_ub,
                series,
                grid,
                sweep: sweep.as_deref(),
                output: output.as_deref(),
            },
            digits,
        ),
        Command::DesignCheck { scenario } => {
            let sc = commands::load_scenario(&scenario)?;
            commands::design_check(&scenario, &sc, digits)
        }
        Command::SteadyGain { kernel, r, p, q, m } => commands::steady_gain(kernel, r, p, q, m, digits),
        Command::Reproduce { target, output } => commands::reproduce(target, output.as_deref(), digits),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
