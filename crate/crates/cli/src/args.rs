use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bruteforge", version, about = "Generate-and-test proof discovery workbench")]
pub struct Cli {
    /// Seed for stochastic subcommands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// JSON-lines log file.
    #[arg(long, global = true)]
    pub log: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, env = "BRUTEFORGE_JOBS", default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Propositional satisfiability.
    #[command(subcommand)]
    Sat(SatCmd),
    /// Boolean Pythagorean triples.
    #[command(subcommand)]
    Bpt(BptCmd),
    /// Cap sets in (Z/3)^n.
    #[command(subcommand)]
    Capset(CapsetCmd),
    /// Equational reasoning.
    #[command(subcommand)]
    Eq(EqCmd),
    /// Arithmetical-hierarchy class of a formula.
    Classify(ClassifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum SatCmd {
    /// Solve a DIMACS CNF file.
    Solve(SatSolveArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LearningArg {
    FirstUip,
    Decisions,
}

#[derive(Args, Debug)]
pub struct SatSolveArgs {
    pub file: PathBuf,
    /// Write the unsatisfiability certificate here.
    #[arg(long)]
    pub cert: Option<PathBuf>,
    /// Write the model here, as a DIMACS value line.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Split on the first K variables and solve the cubes in parallel.
    #[arg(long)]
    pub cubes: Option<u32>,
    #[arg(long, value_enum, default_value_t = LearningArg::FirstUip)]
    pub learning: LearningArg,
    /// Give up after this many conflicts.
    #[arg(long)]
    pub max_conflicts: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum BptCmd {
    /// Write the CNF encoding for the bound M.
    Encode {
        m: u32,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Decide whether {1..M} can be 2-colored without a monochromatic triple.
    Solve {
        m: u32,
        /// Coloring output (default `bpt_M.coloring`).
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Certificate output when no coloring exists.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Find the least uncolorable bound up to --max.
    Scan {
        #[arg(long)]
        max: u32,
        /// Distance between scanned bounds before bisection.
        #[arg(long, default_value_t = 10)]
        step: u32,
        /// Write the certificate for the threshold here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CapsetCmd {
    /// Check that a file of vectors is a cap set.
    Verify { file: PathBuf },
    /// Greedy cap set driven by a priority expression.
    Greedy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Maximum cap size by exhaustive branch and bound.
    Exact {
        #[arg(long)]
        n: usize,
        /// Node budget.
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Evolutionary search over priority expressions.
    Evolve(EvolveArgs),
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// key = value settings; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Number of programs scored.
    #[arg(long)]
    pub evals: Option<usize>,
    /// Stop once this score is reached.
    #[arg(long)]
    pub target: Option<usize>,
    /// External generator command.
    #[arg(long, env = "CAPSET_GENERATOR")]
    pub generator: Option<String>,
    /// Best cap set output.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum EqCmd {
    /// Search for an equational proof of a goal.
    Prove(EqProveArgs),
    /// Replay a proof file.
    Check {
        file: PathBuf,
        /// Axiom set or file, overriding the one named in the proof.
        #[arg(long)]
        axioms: Option<String>,
    },
    /// Knuth-Bendix completion of an axiom set.
    Complete {
        #[arg(long)]
        axioms: String,
        /// Equations processed before giving up.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
}

#[derive(Args, Debug)]
pub struct EqProveArgs {
    /// robbins, boolean, group, or an axiom file.
    #[arg(long)]
    pub axioms: String,
    #[arg(long)]
    pub goal: String,
    /// Superposition inferences.
    #[arg(long, default_value_t = 100_000)]
    pub budget: u64,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    pub time: Option<f64>,
    /// Comma-separated axiom ids to use instead of the whole set.
    #[arg(long = "use", value_delimiter = ',')]
    pub use_ids: Vec<String>,
    /// Read goal variables existentially and search for witnesses.
    #[arg(long)]
    pub exists: bool,
    /// Witness candidates tried with --exists.
    #[arg(long, default_value_t = 1000)]
    pub candidates: u64,
    /// Proof output file.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// File holding one formula.
    #[arg(required_unless_present = "formula")]
    pub file: Option<PathBuf>,
    /// Formula text instead of a file.
    #[arg(short = 'e', long, conflicts_with = "file")]
    pub formula: Option<String>,
    /// Also print the prenex form.
    #[arg(long)]
    pub prenex: bool,
}
