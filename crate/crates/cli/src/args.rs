use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "syzex",
    version,
    about = "Extension dimension of syzygy categories over path algebras"
)]
pub struct Cli {
    /// Override the prime of the algebra spec.
    #[arg(long, global = true, value_name = "P")]
    pub field: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for randomized fallbacks (isomorphism sampling, decomposition).
    #[arg(long, global = true, value_name = "ID", default_value_t = 0)]
    pub seed: u64,

    /// Enumeration budget; falls back to $SYZEX_BUDGET, then the built-in default.
    #[arg(long, global = true, value_name = "N")]
    pub budget: Option<u128>,

    /// Include wall-clock timings (makes reports non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structural data of an algebra.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Module operations.
    Mod {
        #[command(subcommand)]
        action: ModAction,
    },
    /// Ext^1(X, Y).
    Ext {
        spec: String,
        x: String,
        y: String,
        /// List every class with its middle term.
        #[arg(long)]
        enumerate: bool,
    },
    /// Indecomposable middle terms of extensions of --right by --left.
    Bullet {
        spec: String,
        #[arg(long, value_delimiter = ',', required = true)]
        left: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        right: Vec<String>,
        #[command(flatten)]
        window: Window,
    },
    /// Extension layers [T]_1, ..., [T]_n.
    Layer {
        spec: String,
        #[arg(long = "gen", value_delimiter = ',', required = true)]
        generators: Vec<String>,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        window: Window,
    },
    /// n-th syzygy category inside a dimension window.
    Syzcat {
        spec: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        window: Window,
    },
    /// Interval bounds on the extension dimension of syzygy categories.
    Ed {
        spec: String,
        #[arg(long = "i", value_delimiter = ',', default_value = "0")]
        indices: Vec<usize>,
        /// JSON list of external facts.
        #[arg(long)]
        facts: Option<PathBuf>,
        /// Largest n tried for a finite-type certificate of the n-th syzygy category.
        #[arg(long, default_value_t = 2)]
        syzygy_search: usize,
        #[command(flatten)]
        window: Window,
    },
    /// Classical tilting conditions.
    Tilting {
        spec: String,
        module: String,
        /// Projective dimension search bound (default 2 dim A).
        #[arg(long)]
        pd_bound: Option<usize>,
    },
    /// Representation type with its certificate.
    Reptype {
        spec: String,
        #[command(flatten)]
        window: Window,
    },
    /// Packaged example algebras.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Window {
    /// Largest total dimension of modules considered.
    #[arg(long, default_value_t = 6)]
    pub dim_bound: usize,
    /// Largest multiplicity of one summand on the sub side of an extension.
    #[arg(long, default_value_t = 2)]
    pub mult_bound: usize,
}

#[derive(Subcommand, Debug)]
pub enum AlgebraAction {
    Info { spec: String },
}

#[derive(Subcommand, Debug)]
pub enum ModAction {
    Validate {
        spec: String,
        module: String,
    },
    Decompose {
        spec: String,
        module: String,
    },
    Syzygy {
        #[arg(long, default_value_t = 1)]
        n: usize,
        spec: String,
        module: String,
        /// Also write the resulting module file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Cosyzygy {
        #[arg(long, default_value_t = 1)]
        n: usize,
        spec: String,
        module: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CorpusAction {
    List,
    Show { id: String },
}
