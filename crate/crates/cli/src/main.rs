// NaN must fail range checks, so `!(x > 0.0)` is deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod error;
mod report;
mod selftest;

use error::CliError;
use report::Format;

/// Experiments with group rings, discrete p-Dirichlet energies and
/// truncated cochain maps on Cayley graphs.
#[derive(Parser, Debug)]
#[command(name = "lpcoh", version)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// JSON or TOML file with parameters for the subcommand.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for randomised experiments (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Norms of the averaging element x_n against n^{(1-p)/p}.
    Averaging(commands::algebra::AveragingArgs),
    /// Randomised checks of Young's inequality.
    Young(commands::algebra::YoungArgs),
    /// Exact factor witness d with 1 - x_n = (g - omega) d.
    Witness(commands::algebra::WitnessArgs),
    /// Truncated Neumann inverse of g - omega for |omega| != 1.
    Neumann(commands::algebra::NeumannArgs),
    /// Density of (g - omega)B for a finitely supported b.
    Density(commands::density::DensityArgs),
    /// Density for a product of linear factors.
    Composed(commands::density::ComposedArgs),
    /// Solve a p-Dirichlet problem on a ball.
    Dirichlet(commands::dirichlet::DirichletArgs),
    /// Complex checks and truncation experiments.
    Cohomology(commands::cohomology::CohomologyArgs),
    /// Sobolev ratios lambda(R) over balls.
    Amenability(commands::amenability::AmenabilityArgs),
    /// Decompose or approximate a vector in the span of differences.
    TilfDiff(commands::density::TilfDiffArgs),
    /// Sphere and ball sizes of a Cayley graph.
    Group(commands::group::GroupArgs),
}

fn configure_workers() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("LPCOH_WORKERS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
        CliError::Config(format!(
            "LPCOH_WORKERS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(e.to_string()))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    configure_workers()?;
    let file = config::load(cli.config.as_deref())?;
    let ctx = commands::Context::new(file, cli.seed)?;
    use commands::*;
    let selftest = match &cli.command {
        Command::Averaging(a) => a.selftest.then_some("averaging"),
        Command::Young(a) => a.selftest.then_some("young"),
        Command::Witness(a) => a.selftest.then_some("witness"),
        Command::Neumann(a) => a.selftest.then_some("neumann"),
        Command::Density(a) => a.selftest.then_some("density"),
        Command::Composed(a) => a.selftest.then_some("composed"),
        Command::Dirichlet(a) => a.selftest.then_some("dirichlet"),
        Command::Cohomology(a) => a.selftest.then_some("cohomology"),
        Command::Amenability(a) => a.selftest.then_some("amenability"),
        Command::TilfDiff(a) => a.selftest.then_some("tilf-diff"),
        Command::Group(a) => a.selftest.then_some("group"),
    };
    if let Some(name) = selftest {
        return Ok(selftest::run(name));
    }
    let report = match &cli.command {
        Command::Averaging(a) => algebra::averaging(a, &ctx),
        Command::Young(a) => algebra::young(a, &ctx),
        Command::Witness(a) => algebra::witness(a, &ctx),
        Command::Neumann(a) => algebra::neumann(a, &ctx),
        Command::Density(a) => density::density(a, &ctx),
        Command::Composed(a) => density::composed(a, &ctx),
        Command::Dirichlet(a) => dirichlet::dirichlet(a, &ctx),
        Command::Cohomology(a) => cohomology::cohomology(a, &ctx),
        Command::Amenability(a) => amenability::amenability(a, &ctx),
        Command::TilfDiff(a) => density::tilf_diff(a, &ctx),
        Command::Group(a) => group::group(a, &ctx),
    }?;
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    report::write(&report, format, cli.output.as_deref())?;
    if report.violations > 0 {
        Ok(ExitCode::from(error::EXIT_INVARIANT))
    } else if report.nonconverged > 0 {
        Ok(ExitCode::from(error::EXIT_NONCONVERGENCE))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
