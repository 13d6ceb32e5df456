mod dot;
mod verbs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Construct and analyse EMV-algebras.
#[derive(Parser, Debug)]
#[command(name = "emv", version, about)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Constructor expression, e.g. "chain(2)xchain(1)" or "sum(chain(3))"
    #[arg(long, short = 'c', conflicts_with = "input")]
    pub construct: Option<String>,
    /// JSON file with operation tables, a direct-sum description or a clan table
    #[arg(long, short = 'i')]
    pub input: Option<PathBuf>,
    /// Print a machine-readable JSON report
    #[arg(long)]
    pub json: bool,
    /// Worker threads for sampled checks; results do not depend on it
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Args, Debug, Clone)]
pub struct Sampling {
    /// Random samples for checks on infinite algebras
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Build an algebra and summarize it
    Construct {
        #[command(flatten)]
        src: Source,
    },
    /// Check the axioms (exhaustively when finite, sampled otherwise)
    Axioms {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// List all ideals with their classification
    Ideals {
        #[command(flatten)]
        src: Source,
    },
    /// List the maximal ideals
    MaximalIdeals {
        #[command(flatten)]
        src: Source,
        /// How many coordinate kernels to list for infinite direct sums
        #[arg(long, default_value_t = 8)]
        limit: usize,
    },
    /// State-morphisms and their values
    States {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 8)]
        limit: usize,
    },
    /// Quotient by the ideal generated by the given elements
    Quotient {
        #[command(flatten)]
        src: Source,
        /// Generator label; repeat for several
        #[arg(long = "gen", required = true)]
        generators: Vec<String>,
    },
    /// MV-completion of a proper algebra, with a sampled embedding check
    Complete {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        sampling: Sampling,
        /// Complete the first maximal ideal instead of the algebra itself
        #[arg(long)]
        of_maximal_ideal: bool,
    },
    /// Clan conditions, the minimal clan, or the clan representation
    Clan {
        #[command(flatten)]
        src: Source,
        /// Extend a clan-like system without 1 to its minimal clan
        #[arg(long)]
        minimal: bool,
    },
    /// Check an equation on a finite algebra
    CheckEq {
        #[command(flatten)]
        src: Source,
        /// Equation such as "x+x=x"
        #[arg(long = "eq")]
        equation: String,
        /// Maximum number of variables
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Export operation tables (JSON) or a DOT diagram
    Export {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Diagram::Hasse)]
        what: Diagram,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagram {
    Hasse,
    Ideals,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let src = match &cli.verb {
        Verb::Construct { src }
        | Verb::Axioms { src, .. }
        | Verb::Ideals { src }
        | Verb::MaximalIdeals { src, .. }
        | Verb::States { src, .. }
        | Verb::Quotient { src, .. }
        | Verb::Complete { src, .. }
        | Verb::Clan { src, .. }
        | Verb::CheckEq { src, .. }
        | Verb::Export { src, .. } => src.clone(),
    };
    if src.threads > 1 {
        // a global pool only fails if one was already installed
        let _ = rayon::ThreadPoolBuilder::new().num_threads(src.threads).build_global();
    }
    let outcome = match cli.verb {
        Verb::Construct { src } => verbs::construct(&src),
        Verb::Axioms { src, sampling } => verbs::axioms(&src, &sampling),
        Verb::Ideals { src } => verbs::ideals(&src),
        Verb::MaximalIdeals { src, limit } => verbs::maximal_ideals(&src, limit),
        Verb::States { src, limit } => verbs::states(&src, limit),
        Verb::Quotient { src, generators } => verbs::quotient(&src, &generators),
        Verb::Complete {
            src,
            sampling,
            of_maximal_ideal,
        } => verbs::complete(&src, &sampling, of_maximal_ideal),
        Verb::Clan { src, minimal } => verbs::clan(&src, minimal),
        Verb::CheckEq { src, equation, bound } => verbs::check_eq(&src, &equation, bound),
        Verb::Export { src, format, what } => verbs::export(&src, format, what),
    };
    verbs::emit(&src, outcome)
}
