mod certificate;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Symmetric graphs from permutation groups: coset graphs, quotients,
/// designs and unfolding constructions, each with a JSON certificate.
#[derive(Parser)]
#[command(name = "sgk", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    /// The plain-text graph format (`vertices:` / `edge` lines).
    #[value(alias = "text")]
    Edges,
    Dot,
}

#[derive(Args, Clone, Debug)]
pub struct Output {
    /// Format of the emitted graph.
    #[arg(long = "out", value_enum, default_value = "edges")]
    pub format: OutFormat,
    /// File for the emitted graph or design; stdout when absent.
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
    /// File for the JSON certificate.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Enumerate a group and report order, orbits and stabilizers.
    Group {
        #[arg(long)]
        group: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Build Sab(G, H, HaH), or Sab(G, H, D) from an explicit connection set.
    Cosetgraph {
        #[arg(long)]
        group: PathBuf,
        /// Generators of H in cycle notation, e.g. "(2 3),(3 4)".
        #[arg(long)]
        subgroup: String,
        #[arg(long, conflicts_with = "connectors", required_unless_present = "connectors")]
        involution: Option<String>,
        /// Connection set D in cycle notation.
        #[arg(long)]
        connectors: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// List the orbitals of a transitive group; optionally emit one orbital graph.
    Orbitals {
        #[arg(long)]
        group: PathBuf,
        /// Emit the graph of this orbital (0-based index in the listing).
        #[arg(long)]
        graph_index: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Quotient of a graph by a block system.
    Quotient {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        blocks: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Block systems of a group, or the minimal block containing two points.
    Blocks {
        #[arg(long)]
        group: PathBuf,
        /// Two 1-based points, e.g. "1,3".
        #[arg(long)]
        seed: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Overgroups of a point stabilizer paired with their blocks.
    Lattice {
        #[arg(long)]
        group: PathBuf,
        /// 1-based base point.
        #[arg(long, default_value_t = 1)]
        base: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Conversions between symmetric graphs and flag-transitive designs.
    Design {
        #[command(subcommand)]
        action: DesignAction,
    },
    /// Three-arc graphs of a symmetric graph.
    Threearc {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        group: PathBuf,
        /// Which 3-arc orbit to use; lists the orbits when absent.
        #[arg(long)]
        orbit_index: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Biggs cover over N ⋊ G from a compatible N-chain.
    Biggs {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        n: PathBuf,
        /// Twist file; the trivial twist when absent.
        #[arg(long)]
        twist: Option<PathBuf>,
        #[arg(long)]
        chain: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Subgraph graph of a directed subgraph under an involution.
    SubgraphGraph {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        group: PathBuf,
        /// Arcs of the subgraph, 1-based, e.g. "2 3,3 4,4 2".
        #[arg(long)]
        arcs: String,
        #[arg(long)]
        involution: String,
        #[command(flatten)]
        out: Output,
    },
    /// Extensions: by an arc partition of a coset graph, or by flag-orbital reconstruction.
    Extend {
        #[arg(long, value_enum)]
        via: Via,
        #[arg(long)]
        group: PathBuf,
        /// H (arcs): generators in cycle notation.
        #[arg(long, required_if_eq("via", "arcs"))]
        subgroup: Option<String>,
        /// K (arcs): generators; the first candidate is used when absent.
        #[arg(long)]
        k: Option<String>,
        #[arg(long, required_if_eq("via", "arcs"))]
        involution: Option<String>,
        /// Graph (flags).
        #[arg(long, required_if_eq("via", "flags"))]
        graph: Option<PathBuf>,
        /// Block system (flags).
        #[arg(long, required_if_eq("via", "flags"))]
        blocks: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Check that a group acts symmetrically on a graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        group: PathBuf,
        /// Also certify the quotient by this block system.
        #[arg(long)]
        blocks: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Arcs,
    Flags,
}

#[derive(Subcommand)]
pub enum DesignAction {
    /// Design of neighbourhoods of a symmetric graph.
    FromGraph {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Graph from a design, a group on its points and a polarity.
    ToGraph {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        group: PathBuf,
        /// Index into the polarity listing.
        #[arg(long, default_value_t = 0)]
        polarity: usize,
        #[command(flatten)]
        out: Output,
    },
    /// All polarities and the graphs they give.
    Polarities {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Parameters (v, b, k, λ, m) of a 1-design.
    Validate {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        group: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            let code = e.downcast_ref::<sgk_core::Error>().map_or("InputError", |c| c.code());
            eprintln!("error[{code}]: {e:#}");
            ExitCode::from(1)
        }
    }
}
