use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "xfc",
    version,
    about = "Forbidden configurations, t-designs and exact extremal search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a matrix (or design) and write it in the text format.
    Construct(ConstructArgs),
    /// Decide whether a matrix contains a configuration.
    Contains(ContainsArgs),
    /// Check a design file; exits 1 if it is not a design.
    VerifyDesign(VerifyDesignArgs),
    /// Evaluate a closed-form bound exactly.
    Bounds(BoundsArgs),
    /// t-set quantities and inequality audit of a matrix.
    Analyze(AnalyzeArgs),
    /// Exact maximum by branch-and-bound.
    Search(SearchArgs),
    /// Audit every design-equality construction for the given row counts.
    Audit(AuditArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub kind: ConstructKind,
    /// Print a JSON summary instead of the matrix (the matrix still goes to --out).
    #[arg(long, global = true)]
    pub meta: bool,
    /// Write the matrix or design here instead of standard output.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// K_m^s: every column of sum s.
    Kms {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        s: usize,
    },
    /// K_m^s for each s in a sum range such as `0..3` or `0,1,5`.
    Layers {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        sums: String,
    },
    /// Low layers, a t-(m,t+1,lambda) design, and high layers.
    Genl {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 1)]
        lambda: usize,
        /// Needed unless t = 2, where a folded Steiner triple system is used.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        design: Option<PathBuf>,
    },
    /// Layered matrix on lambda+t+l rows that beats the layered bound.
    Exceeder {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        lambda: usize,
    },
    /// Graph-based matrix avoiding q·1_1 0_1.
    Q10 {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        m: usize,
    },
    /// Layers 0, 1, 2, m-1, m on m = q-1 rows.
    Pigeonhole {
        #[arg(long)]
        q: usize,
    },
    /// Two folded triple systems, one complemented, avoiding (a+b+3)·1_2 0_2.
    Split1100 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// A Steiner triple system, optionally folded, in the design format.
    Sts {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        lambda: usize,
    },
}

#[derive(Debug, Args)]
pub struct ContainsArgs {
    /// Block pattern `q,t,l`.
    #[arg(
        long,
        conflicts_with = "config_file",
        required_unless_present = "config_file"
    )]
    pub config: Option<String>,
    /// A general pattern given as a matrix file.
    #[arg(long)]
    pub config_file: Option<PathBuf>,
    #[arg(long)]
    pub matrix: PathBuf,
    /// No output; exit 0 if contained, 1 if not.
    #[arg(long, short)]
    pub quiet: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyDesignArgs {
    #[arg(long)]
    pub design: PathBuf,
    /// Run the divisibility conditions over i = 1..t-1 only.
    #[arg(long)]
    pub positive_indices: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(subcommand)]
    pub formula: Formula,
}

#[derive(Debug, Subcommand)]
pub enum Formula {
    /// lambda·C(m,t)/C(k,t).
    Designconfig {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        m: usize,
    },
    /// Layered bound for (lambda+2)·1_t0_l.
    Genl {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        m: usize,
    },
    /// lambda·C(m,t)/(t+1).
    DesignTplus1 {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        m: usize,
    },
    Q10Lower {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        m: usize,
    },
    Q10Upper {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        m: usize,
    },
    /// Bound for (lambda+3)·1_2 0_2.
    Bound1100 {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        m: usize,
    },
    /// Sum-3 part of the (lambda+3)·1_2 0_2 bound.
    Design1100 {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        m: usize,
    },
    Turan {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        /// Also report whether this many edges force a k-clique.
        #[arg(long)]
        edges: Option<u64>,
    },
    ExceederGap {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        lambda: usize,
    },
    /// Placement count of 1_t0_l for a column-sum profile against its budget.
    Pigeonhole {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        a_t: u64,
        #[arg(long)]
        a_t1: u64,
        #[arg(long, default_value_t = 0)]
        a_ge_t2: u64,
    },
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub lambda: usize,
    /// A row set R as 1-based rows `1,4,5`; repeat for several.
    #[arg(long = "rows")]
    pub rowsets: Vec<String>,
    /// Keep the violating objects in the report.
    #[arg(long)]
    pub witness: bool,
    /// Also report the least k-set of rows whose t-subsets are all typical.
    #[arg(long)]
    pub clique: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub m: usize,
    /// Block pattern `q,t,l`.
    #[arg(long)]
    pub config: String,
    /// Allowed column sums, `a..b` (inclusive) or a list; all sums by default.
    #[arg(long)]
    pub sums: Option<String>,
    /// simple, free, or paper (repeats only for sums t+1..=m-l).
    #[arg(long, default_value = "simple")]
    pub policy: String,
    #[arg(long, env = "XFC_BUDGET_NODES")]
    pub budget_nodes: Option<u64>,
    /// 1 for the sequential search, 0 for one worker per core.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Brute force over all column subsets instead (tiny instances only).
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    /// Row counts, each 1 or 3 mod 6.
    #[arg(long, value_delimiter = ',', default_values_t = [7, 9, 13])]
    pub m: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2])]
    pub lambda: Vec<usize>,
    #[arg(long)]
    pub witness: bool,
}
