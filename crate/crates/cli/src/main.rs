use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "qkneser",
    version,
    about = "q-Kneser graphs, covers of PG(v-1,q) and certified colourings"
)]
pub struct Cli {
    /// Refuse to build graphs or geometries with more vertices than this.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_vertices: u64,
    /// Stop exact searches after this many branch-and-bound nodes.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    pub max_nodes: u64,
    /// Worker threads for exact searches.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Print machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Vertex count, valency and colouring bounds of qK_{v:k}.
    Params { v: usize, k: usize, q: u32 },
    /// Build qK_{v:k} and export it in DIMACS format.
    Graph {
        v: usize,
        k: usize,
        q: u32,
        /// Output file; standard output when omitted.
        #[arg(long)]
        dimacs: Option<PathBuf>,
    },
    /// Chromatic number of qK_{v:2} as a minimum cover of PG(v-1,q).
    Chi {
        v: usize,
        q: u32,
        /// Also write the certificate JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count, list and classify covers of PG(v-1,q) of a given size.
    Covers {
        v: usize,
        q: u32,
        /// Cover size; the minimum when omitted.
        #[arg(long)]
        size: Option<usize>,
        /// Print every cover as JSON.
        #[arg(long)]
        enumerate: bool,
        /// Classify each cover as standard or not (PG(3,q) only).
        #[arg(long)]
        classify: bool,
    },
    /// Independence number of qK_{v:k} with an optimality certificate.
    Alpha { v: usize, k: usize, q: u32 },
    /// Build a colouring of qK_{v:k} and check that it is proper.
    Colour {
        v: usize,
        k: usize,
        q: u32,
        #[arg(long, value_enum)]
        scheme: Scheme,
        /// Cover JSON for the cover scheme.
        file: Option<PathBuf>,
    },
    /// Check one of the standard homomorphisms exhaustively.
    VerifyHom {
        #[arg(value_enum)]
        name: HomName,
        /// v k q, followed by r for subfield and field-reduction.
        params: Vec<u64>,
        /// Also check that non-edges map to non-edges.
        #[arg(long)]
        induced: bool,
    },
    /// Exact certificate that qK_{5:2} has no homomorphism to qK_{3:1}.
    NoHom { q: u64 },
    /// Point sets of PG(v-1,q) of a given size meeting every line.
    Blocking {
        v: usize,
        q: u32,
        /// Set size; the minimum when omitted.
        #[arg(long)]
        size: Option<usize>,
    },
    /// Run the acceptance suite.
    Accept,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Scheme {
    Hyperplane,
    Middle,
    Cover,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum HomName {
    Extension,
    Subfield,
    FieldReduction,
    EchelonShadow,
    PointSet,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(commands::run(&cli))
}
