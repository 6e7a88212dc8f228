//! `degenlab`: command-line front end for the degeneration library.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degenlab::budget::Budgets;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: degenlab::Error },
    #[error(transparent)]
    Lib(#[from] degenlab::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(degenlab::Error::ResourceLimit { .. }) => 3,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "degenlab", version, about = "Degenerations of Cohen-Macaulay modules over hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Parse and check inputs without computing.
    #[arg(long)]
    pub dry_run: bool,
    /// Write the report here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct BudgetArgs {
    /// Largest power of t tried in saturation containments.
    #[arg(long)]
    pub l_max: Option<usize>,
    /// Largest Fitting index compared.
    #[arg(long)]
    pub i_max: Option<usize>,
    /// Largest minor size screened.
    #[arg(long)]
    pub j_max: Option<usize>,
    /// Comma-separated nonzero values of t for generic fibers.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub samples: Option<Vec<i64>>,
    /// Intertwiner degree bound as a multiple of the largest entry degree.
    #[arg(long)]
    pub degree_factor: Option<u32>,
}

impl BudgetArgs {
    /// The environment profile with command-line overrides.
    pub fn resolve(&self) -> Result<Budgets, CliError> {
        let mut b = Budgets::from_env().map_err(|e| CliError::Usage(e.to_string()))?;
        let positive = |name: &str, v: usize| {
            if v == 0 {
                Err(CliError::Usage(format!("--{name} must be positive")))
            } else {
                Ok(v)
            }
        };
        if let Some(l) = self.l_max {
            b.l_max = positive("l-max", l)?;
        }
        if let Some(i) = self.i_max {
            b.i_max = positive("i-max", i)?;
        }
        if let Some(j) = self.j_max {
            b.j_max = Some(positive("j-max", j)?);
        }
        if let Some(s) = &self.samples {
            if s.is_empty() || s.contains(&0) {
                return Err(CliError::Usage("--samples must list nonzero values".into()));
            }
            b.samples = s.clone();
        }
        if let Some(d) = self.degree_factor {
            b.degree_factor = positive("degree-factor", d as usize)? as u32;
        }
        Ok(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WitnessFamily {
    Thm31,
    Cor45,
    KnoerrerLift,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check mu^2 + b mu + c I = 0 for a representation file.
    MfValidate {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// The sharp block (mu u; -u -mu).
    MfSharp {
        input: PathBuf,
        #[arg(long, default_value = "u")]
        u: String,
        #[command(flatten)]
        common: Common,
    },
    /// The double-sharp block (mu zeta; -eta_bar -mu).
    MfDoubleSharp {
        input: PathBuf,
        #[arg(long, default_value = "u")]
        u: String,
        #[arg(long, default_value = "v")]
        v: String,
        #[command(flatten)]
        common: Common,
    },
    /// The syzygy representation -mu - b I.
    MfSyzygy {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Build a witness from one of the built-in families.
    WitnessBuild {
        #[arg(long, value_enum)]
        family: WitnessFamily,
        /// Source chain position (thm31, knoerrer-lift).
        #[arg(long)]
        a: Option<u32>,
        /// Target chain position (thm31, knoerrer-lift).
        #[arg(long)]
        b: Option<u32>,
        /// Power of the regular element in the sequence (cor45).
        #[arg(long)]
        i: Option<u32>,
        /// Exponent of the source module (cor45).
        #[arg(long)]
        j: Option<u32>,
        /// Odd target dimension (knoerrer-lift).
        #[arg(long, default_value_t = 3)]
        dim: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Verify a degeneration witness file.
    WitnessVerify {
        input: PathBuf,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Necessary-condition screens: minor ideals and Fitting ideals.
    Screen {
        /// Family over S[t] (matrix file).
        #[arg(long)]
        xi: Option<PathBuf>,
        /// Generic fiber (representation file).
        #[arg(long)]
        mu: Option<PathBuf>,
        #[arg(long, default_value = "t")]
        t: String,
        /// Presentation of the degenerating module (matrix file with modulus).
        #[arg(long)]
        m_pres: Option<PathBuf>,
        /// Presentation of the degenerate module.
        #[arg(long)]
        n_pres: Option<PathBuf>,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Build the exact sequence 0 -> Z -> M ⊕ Z -> N -> 0.
    ZwaraBuild {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Build the sequence and check exactness and nilpotency.
    ZwaraVerify {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// The degeneration poset of the catalog.
    Poset {
        #[arg(long)]
        dim: u8,
        #[arg(long)]
        max_n: u32,
        /// Threads for witness verification.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        budgets: BudgetArgs,
        #[command(flatten)]
        common: Common,
    },
    /// (x, y^h) pushed through iterated double sharps.
    KnoerrerModule {
        #[arg(long)]
        h: u32,
        /// Odd target dimension.
        #[arg(long)]
        dim: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Images of (alpha z^h) and their Knörrer presentation identity.
    Prop56 {
        #[arg(long)]
        h: u32,
        /// Matrix file for alpha; defaults to (x0) over Q(i)[x0,z].
        #[arg(long)]
        alpha: Option<PathBuf>,
        /// Non-zerodivisor, parsed in the ring of alpha.
        #[arg(long, default_value = "z")]
        z: String,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
