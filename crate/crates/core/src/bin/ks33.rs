use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ks33::catalog::FamilyParams;
use ks33::commands::{
    self, CatalogFormat, CatalogSet, CriticalTarget, ProveMode, DEFAULT_MAJORANA_TOL, DEFAULT_SEED,
};
use ks33::report::Report;
use ks33::scalar::DEFAULT_TOL;
use ks33::Error;

/// Verify the 33-ray Kochen-Specker sets of Peres and Penrose.
#[derive(Parser)]
#[command(name = "ks33", version)]
struct Cli {
    /// Emit JSON instead of a text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Orthogonality / agreement tolerance (command-specific default).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Phases {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    gamma: f64,
}

impl From<Phases> for FamilyParams {
    fn from(p: Phases) -> Self {
        FamilyParams::new(p.alpha, p.beta, p.gamma)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the 33 rays or M-pairs of a catalog.
    Catalog {
        #[arg(long, value_enum, default_value_t = CatalogSet::Peres)]
        set: CatalogSet,
        #[command(flatten)]
        phases: Phases,
        #[arg(long, value_enum, default_value_t = CatalogFormat::Json)]
        format: CatalogFormat,
    },
    /// Build the orthogonality graph and compare it with the reference diagram.
    Verify {
        #[arg(long, value_enum, default_value_t = CatalogSet::Peres)]
        set: CatalogSet,
        #[command(flatten)]
        phases: Phases,
        /// Extra random phase samples for the family.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Show that no coloring exists.
    Prove {
        #[arg(long, value_enum, default_value_t = CatalogSet::Peres)]
        set: CatalogSet,
        #[arg(long, value_enum, default_value_t = ProveMode::Both)]
        mode: ProveMode,
    },
    /// Color every single-ray deletion.
    Critical {
        #[arg(long, value_enum, default_value_t = CatalogSet::Peres)]
        set: CatalogSet,
        #[arg(long, conflicts_with = "ray")]
        all: bool,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=33))]
        ray: Option<u8>,
    },
    /// Write the coloring constraints as DIMACS CNF.
    ExportCnf {
        #[arg(long, value_enum, default_value_t = CatalogSet::Peres)]
        set: CatalogSet,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=33))]
        delete: Option<u8>,
    },
    /// Cross-check the Majorana overlap formula.
    Majorana {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
    },
}

fn run(cli: Cli) -> ks33::Result<Option<Report>> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument("--tol must be positive".into()));
    }
    let report = match cli.command {
        Command::Catalog { set, phases, format } => {
            let format = if cli.json { CatalogFormat::Json } else { format };
            emit(commands::catalog(set, &phases.into(), format)?.trim_end());
            return Ok(None);
        }
        Command::Verify { set, phases, samples } => commands::verify(set, &phases.into(), samples, seed, tol)?,
        Command::Prove { set, mode } => commands::prove(set, mode, tol)?,
        Command::Critical { set, all, ray } => {
            let target = match (all, ray) {
                (_, Some(v)) => CriticalTarget::Ray(v),
                _ => CriticalTarget::All,
            };
            commands::critical(set, target, tol)?
        }
        Command::ExportCnf { set, out, delete } => commands::export_cnf(set, &out, delete, tol)?,
        Command::Majorana { samples } => {
            commands::majorana(samples as usize, seed, cli.tol.unwrap_or(DEFAULT_MAJORANA_TOL))?
        }
    };
    if cli.json {
        emit(&report.to_json());
    } else {
        emit(report.to_text().trim_end());
    }
    Ok(Some(report))
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Some(r)) if !r.passed => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e @ (Error::InvalidArgument(_) | Error::IndexOutOfRange(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
