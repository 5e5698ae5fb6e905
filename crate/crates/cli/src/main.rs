//! `dpframe`: termination proofs and complexity instrumentation for rewrite systems.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dpframe_core::ProcKind;

#[derive(Parser, Debug)]
#[command(name = "dpframe", version, about)]
pub struct Cli {
    /// Node budget for reachability exploration.
    #[arg(long, global = true, default_value_t = 200_000)]
    pub fuel_nodes: usize,
    /// Depth budget for reachability exploration.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub fuel_depth: usize,
    /// Largest coefficient tried by the interpretation search.
    #[arg(long, global = true)]
    pub coeff_bound: Option<u64>,
    /// Reduction pair function coefficients, constant term first.
    #[arg(long, global = true, value_delimiter = ',', default_value = "5,1")]
    pub g_poly: Vec<u64>,
    /// Seed for sampled start terms.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Processor order for proof search.
    #[arg(long, global = true, value_delimiter = ',')]
    pub order: Vec<Proc>,
    /// Interpretation file offered to the user-supplied reduction pair processor.
    #[arg(long, global = true)]
    pub interp: Vec<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Proc {
    Graph,
    Subterm,
    AutoRp,
    UserRp,
}

impl From<Proc> for ProcKind {
    fn from(p: Proc) -> ProcKind {
        match p {
            Proc::Graph => ProcKind::Graph,
            Proc::Subterm => ProcKind::Subterm,
            Proc::AutoRp => ProcKind::AutoRp,
            Proc::UserRp => ProcKind::UserRp,
        }
    }
}

/// `FILE` arguments accept a path or `builtin:NAME[:K]`.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the dependency pairs.
    Dps { file: String },
    /// Show the estimated dependency graph with its SCCs and ranks.
    Graph { file: String },
    /// Search for a termination proof and re-validate it.
    Prove { file: String },
    /// Print the proof tree with the pairs of every node.
    Tree { file: String },
    /// Current path and norm of a term (variables are grounded).
    Norm { file: String, term: String },
    /// Check the norm decrease properties on all small ground terms.
    VerifyLemmas {
        file: String,
        #[arg(long)]
        max_size: usize,
        /// Check only this many seeded random start terms.
        #[arg(long)]
        sample: Option<usize>,
        /// Print every comparison, not just failures.
        #[arg(long)]
        verbose: bool,
    },
    /// Emit the simulating system in rule-file syntax.
    GenRsim { file: String },
    /// Simulate a longest derivation of a term in the simulating system.
    Simulate { file: String, term: String },
    /// Check LPO compatibility of a system with a precedence file.
    LpoCheck { file: String, precfile: PathBuf },
    /// Derivation height of a term.
    Dheight { file: String, term: String },
    /// Derivational complexity for start terms up to size N.
    Dc { file: String, n: usize },
    /// Print a built-in system.
    Builtin { name: String, k: Option<usize> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match commands::run(&cli) {
        Ok(out) => (out.text, out.code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            (String::new(), f.code)
        }
    };
    if !text.is_empty() {
        let written = match &cli.out {
            Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
            None => match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(format!("stdout: {e}")),
                _ => Ok(()),
            },
        };
        if let Err(e) = written {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
