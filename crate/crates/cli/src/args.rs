use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "lipwalk",
    version,
    about = "Exact average range of Lipschitz mappings of rooted graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for enumeration and sweeps (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: Option<u16>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Average range of all mappings of a graph.
    Avg(ComputeArgs),
    /// Number of mappings of a graph.
    Count(ComputeArgs),
    /// Reproduce the path or cycle table.
    Table {
        #[arg(value_enum)]
        class: TableClass,
        /// Largest order listed.
        n_max: usize,
        /// Compare with the published values.
        #[arg(long)]
        check: bool,
    },
    /// Run a verification suite; exits with 2 on any failure.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest order for the conjecture sweeps (default: the caps).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Apply the generalized KC-transformation to a graph file.
    Kc {
        file: PathBuf,
        a: usize,
        b: usize,
        output: PathBuf,
        /// Also print avg1 before and after.
        #[arg(long)]
        compare: bool,
    },
    /// Distribution of the endpoint of a walk along P_n.
    EndpointDist { n: usize },
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub graph: GraphSource,

    /// Adjacent labels differ by exactly M instead of at most M.
    #[arg(long)]
    pub strong: bool,

    /// The Lipschitz constant M.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub lipschitz: u32,

    #[command(flatten)]
    pub method: MethodArgs,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    #[arg(long, value_name = "N")]
    pub path: Option<usize>,
    #[arg(long, value_name = "N")]
    pub cycle: Option<usize>,
    #[arg(long, value_name = "N")]
    pub complete: Option<usize>,
    #[arg(long, value_name = "N")]
    pub star: Option<usize>,
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    pub bipartite: Option<Vec<usize>>,
    /// Cycle length followed by comma-separated pendant path lengths.
    #[arg(long, num_args = 1..=2, value_names = ["C", "LENGTHS"])]
    pub corolla: Option<Vec<String>>,
    /// JSON or edge-list graph file.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct MethodArgs {
    /// Require a closed form.
    #[arg(long)]
    pub closed_form: bool,
    /// Always enumerate.
    #[arg(long)]
    pub brute: bool,
    /// Compute both ways and compare.
    #[arg(long)]
    pub both: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableClass {
    Path,
    Cycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Formulas,
    Conjectures,
    All,
}
