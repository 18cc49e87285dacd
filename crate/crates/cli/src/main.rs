mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Parser, Debug)]
#[command(name = "kcsc", version, about = "Exact feasibility checks for gluing ALE models into Kcsc orbifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output style on standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the structured result to this path (a directory in batch mode).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the singular points of a fan or an orbifold file.
    Classify { input: PathBuf },
    /// The polytope of -kK for a fan.
    Polytope {
        input: PathBuf,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Decide the balancing and nondegeneracy conditions.
    Balance {
        input: PathBuf,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Leading gluing coefficients and model constants of an orbifold file.
    Coeffs {
        input: PathBuf,
        /// Gluing parameter ε as p/q, for the scale exponents.
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<String>,
    },
    /// Sphere spectrum, invariant multiplicities and admissible weights.
    Spectral {
        #[arg(long)]
        m: u32,
        /// Order of a cyclic group acting diagonally.
        #[arg(long)]
        order: Option<u64>,
        /// Comma-separated action weights.
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u64>,
        /// Highest eigenvalue index to tabulate.
        #[arg(long, default_value_t = 4)]
        j: u32,
        /// Weight δ (p/q) to test for admissibility.
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
        /// Context for --delta: BaseOrbifold_m3, BaseOrbifold_m2, ALE_m3 or Nonlinear.
        #[arg(long)]
        context: Option<String>,
    },
    /// Dirichlet-to-Neumann mode matrix and its inverse.
    Dtn {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        gamma: u32,
        /// Γ is nontrivial: the γ = 1 mode is rejected.
        #[arg(long)]
        nontrivial: bool,
    },
    /// Full report for one input, or for every .fan/.orb file in a directory.
    Report {
        input: Option<PathBuf>,
        #[arg(long)]
        batch: Option<PathBuf>,
        #[arg(long)]
        k: Option<u64>,
    },
    /// List the bundled worked examples, optionally writing their files.
    Examples {
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
