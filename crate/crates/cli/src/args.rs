use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xquery_core::{Family, QueryTag};

#[derive(Parser, Debug)]
#[command(
    name = "xquery",
    version,
    about = "Explanation and verification queries over Boolean classifiers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Answer one query on one model.
    Query(QueryArgs),
    /// Translate a CNF into another family.
    Translate(TranslateArgs),
    /// Build the satisfiability gadget of a query from a CNF.
    Gadget(GadgetArgs),
    /// Run every query on every model of a directory.
    Map(MapArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, ValueEnum)]
pub enum Engine {
    /// Decision-tree engine for trees, oracle otherwise.
    #[default]
    Auto,
    Dt,
    Oracle,
}

#[derive(Args, Debug)]
pub struct QueryArgs {
    #[arg(value_parser = clap::value_parser!(QueryTag))]
    pub query: QueryTag,
    #[arg(long)]
    pub model: PathBuf,
    /// Model format; inferred from the file name when omitted.
    #[arg(long)]
    pub format: Option<Family>,
    /// Bitstring with x1 leftmost, e.g. 1101.
    #[arg(long)]
    pub instance: Option<String>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub class: Option<u8>,
    #[arg(long)]
    pub feature: Option<usize>,
    /// Signed literals, e.g. "1,-3".
    #[arg(long, allow_hyphen_values = true)]
    pub term: Option<String>,
    #[arg(long)]
    pub limit: Option<usize>,
    /// DPI elimination order, a permutation such as "3,4,1,2".
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    pub engine: Engine,
    /// Lift the oracle's feature cap.
    #[arg(long)]
    pub force: bool,
    /// IMA: mandatory|forbidden. IMO: monotone|antimonotone.
    #[arg(long)]
    pub mode: Option<String>,
    /// Oracle deadline in milliseconds.
    #[arg(long)]
    pub timeout: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Target {
    Dl,
    Rf,
    Bt,
    Mlp,
    Bnn,
    DnfNeg,
}

#[derive(Args, Debug)]
pub struct TranslateArgs {
    #[arg(long, value_enum)]
    pub to: Target,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GadgetArgs {
    #[arg(long, value_parser = clap::value_parser!(QueryTag))]
    pub query: QueryTag,
    #[arg(long)]
    pub cnf: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Print the query arguments as JSON.
    #[arg(long)]
    pub print_aux: bool,
    /// IMA: mandatory|forbidden. IMO: monotone|antimonotone.
    #[arg(long)]
    pub mode: Option<String>,
}

#[derive(Args, Debug)]
pub struct MapArgs {
    #[arg(long)]
    pub dir: PathBuf,
    /// Per-query oracle deadline in milliseconds.
    #[arg(long)]
    pub timeout: Option<u64>,
    /// Oracle feature cap.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Also write one JSON object per row here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
