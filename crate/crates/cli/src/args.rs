use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "motzkin", version, about = "Exact counting and guessing for colored Motzkin paths")]
pub struct Cli {
    /// Output format (default: json; plain for `reproduce`).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Worker threads for commands that can use them.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// Weight spec given inline (`u_1,..,u_r;l;d_1,..,d_r`) or as `@file`.
#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long, value_name = "SPEC")]
    pub weights: String,

    /// Expected rank; a mismatch with `--weights` is a usage error.
    #[arg(long)]
    pub rank: Option<usize>,
}

/// Where a sequence or series comes from: a spec (computed) or a file.
#[derive(Debug, Args)]
pub struct SourceArgs {
    #[arg(long, value_name = "SPEC", conflicts_with = "input", required_unless_present = "input")]
    pub weights: Option<String>,

    #[arg(long, requires = "weights")]
    pub rank: Option<usize>,

    /// JSON array / CSV sequence or series JSON; `-` reads stdin.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqMethod {
    Dp,
    Series,
    /// Rank-1 three-term recursion, or the 7-term relation for all-ones rank 2.
    Recurrence,
    /// Rank-1 closed form.
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PublishedRec {
    Prodinger,
    Motzkin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Table1,
    Table2,
    Table3,
    AlgeqR2,
    AlgeqR3,
    AlgeqR4,
    Prodinger,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of weighted paths of length n from height s to height t.
    Count {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        s: u64,
        #[arg(long, default_value_t = 0)]
        t: u64,
    },
    /// The sequence m_0, .., m_{terms-1}.
    Seq {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        terms: usize,
        #[arg(long, value_enum, default_value_t = SeqMethod::Dp)]
        method: SeqMethod,
    },
    /// List every path (MOTZKIN_MAX_ENUM overrides the size cap).
    Enumerate {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        s: u64,
        #[arg(long, default_value_t = 0)]
        t: u64,
        /// One path per displacement sequence, all colors 1.
        #[arg(long)]
        uncolored: bool,
    },
    /// Generating function A_{i,j} modulo x^order.
    Series {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 64)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        i: usize,
        #[arg(long, default_value_t = 0)]
        j: usize,
        /// Print the equation system instead of solving it.
        #[arg(long)]
        system: bool,
        /// Use the reduced system (all-ones weights only).
        #[arg(long)]
        symmetric: bool,
    },
    /// Guess an algebraic equation P(x, F) = 0.
    GuessAlgeq {
        #[command(flatten)]
        source: SourceArgs,
        /// Series order when computing from --weights (default 64).
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        max_y_deg: usize,
        /// Uniform x-degree bound; omitted means deg a_i <= i, then uniform.
        #[arg(long)]
        max_x_deg: Option<usize>,
        #[arg(long, default_value_t = 8)]
        guard: usize,
    },
    /// Check an equation against a series.
    VerifyAlgeq {
        #[command(flatten)]
        source: SourceArgs,
        /// Equation JSON file.
        #[arg(long, value_name = "PATH", conflicts_with = "published", required_unless_present = "published")]
        equation: Option<PathBuf>,
        /// Use the published all-ones equation of this rank.
        #[arg(long, value_name = "RANK")]
        published: Option<usize>,
        /// Check modulo x^order (default 64, or the whole input series).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Guess a linear recurrence with polynomial coefficients.
    GuessRec {
        #[command(flatten)]
        source: SourceArgs,
        /// Number of terms when computing from --weights (default 120).
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        max_degree: usize,
    },
    /// Check a recurrence against a sequence.
    VerifyRec {
        #[command(flatten)]
        source: SourceArgs,
        /// Recurrence JSON file.
        #[arg(long, value_name = "PATH", conflicts_with = "published", required_unless_present = "published")]
        recurrence: Option<PathBuf>,
        #[arg(long, value_enum)]
        published: Option<PublishedRec>,
        /// Number of terms when computing from --weights (default 101).
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Exhaustive (order, degree) grid scan.
    ScanMin {
        #[command(flatten)]
        source: SourceArgs,
        /// Number of terms when computing from --weights (default 120).
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long)]
        order_bound: usize,
        #[arg(long)]
        degree_bound: usize,
    },
    /// Apply the (u,l,d) -> (1,l,ud) recoloring to a rank-1 path.
    Biject {
        #[command(flatten)]
        spec: SpecArgs,
        /// Path in `+1:c,0:c,-1:c` form.
        #[arg(long, allow_hyphen_values = true)]
        path: String,
        #[arg(long, default_value_t = 0)]
        start: u64,
        /// Map a recolored path back; --weights names the original spec.
        #[arg(long)]
        inverse: bool,
    },
    /// Re-derive a published fixture and diff it against the transcription.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
    },
}
