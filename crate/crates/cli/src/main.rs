//! `pebblekit`: one JSON document on stdout per run; exit 0 on success, 2 on
//! invalid input, 3 when a resource cap stops the computation.

mod commands;
mod input;
mod pretty;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "pebblekit", version, about = "Pebble-pushing games, pebble-permutation groups and ray graphs")]
struct Cli {
    /// Print a human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GraphArgs {
    /// Graph file: JSON `{"n", "edges"}` or an edge list.
    #[arg(long)]
    graph: String,
    /// `json` or `edge-list`; guessed from the extension and contents if absent.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args, Clone)]
struct WorldArgs {
    /// A world kind (full-grid, half-grid, hex-half-grid, product-Z,
    /// product-N, dominated-ray) or a world descriptor JSON file.
    #[arg(long)]
    world: String,
    /// Base graph file for product worlds.
    #[arg(long)]
    base: Option<String>,
    /// Dominator count for dominated-ray worlds.
    #[arg(long)]
    k: Option<usize>,
    /// Window depth; overrides the descriptor.
    #[arg(long)]
    depth: Option<u64>,
    /// Largest window, in vertices.
    #[arg(long)]
    window_cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Shortest move sequence between two game states.
    Solve {
        #[command(flatten)]
        graph: GraphArgs,
        /// Start state: a JSON array of vertices, or a file holding one.
        #[arg(long)]
        from: String,
        /// Goal state, as for --from.
        #[arg(long)]
        to: String,
        /// Most game states or search states explored before giving up.
        #[arg(long)]
        state_cap: Option<usize>,
    },
    /// Pebble-permutation group of a game state.
    Group {
        #[command(flatten)]
        graph: GraphArgs,
        /// A JSON array of vertices, or a file holding one.
        #[arg(long)]
        state: String,
        /// Most game states or search states explored before giving up.
        #[arg(long)]
        state_cap: Option<usize>,
    },
    /// Whether the graph is k-pebble-win.
    Win {
        #[command(flatten)]
        graph: GraphArgs,
        /// Number of pebbles.
        #[arg(long)]
        k: usize,
        /// Most game states or search states explored before giving up.
        #[arg(long)]
        state_cap: Option<usize>,
    },
    /// Win flag, bare-path witness and red/blue colouring.
    Structure {
        #[command(flatten)]
        graph: GraphArgs,
        /// Number of pebbles.
        #[arg(long)]
        k: usize,
        /// Most game states or search states explored before giving up.
        #[arg(long)]
        state_cap: Option<usize>,
    },
    /// Exhaustive sweeps over all small connected graphs.
    Verify {
        /// Check the bare-path witness of every non-pebble-win instance.
        #[arg(long, conflicts_with = "colouring", required_unless_present = "colouring")]
        structure: bool,
        /// Check the red/blue colouring of every non-pebble-win instance.
        #[arg(long)]
        colouring: bool,
        /// Largest vertex count, at most 7.
        #[arg(long)]
        n_max: usize,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Ray graph of a ray family.
    Raygraph {
        #[command(flatten)]
        world: WorldArgs,
        /// `canonical:m` or a JSON file with a list of rays.
        #[arg(long)]
        rays: String,
        /// Depth beyond which connecting paths are sought.
        #[arg(long)]
        d0: u64,
        /// Annuli examined beyond d0; at least 3.
        #[arg(long, default_value_t = 3)]
        annuli: usize,
    },
    /// Linkage from one ray family to another after a finite set.
    Linkage {
        #[command(flatten)]
        world: WorldArgs,
        /// Source rays: `canonical:m`, `canonical:a..b` or a JSON file.
        #[arg(long)]
        from: String,
        /// Target rays, as for --from.
        #[arg(long)]
        to: String,
        /// Finite set: JSON array of coordinates, or a file holding one.
        #[arg(long, conflicts_with = "ball")]
        x: Option<String>,
        /// Use the ball of this radius about the root as the finite set.
        #[arg(long)]
        ball: Option<u64>,
        /// Required map from sources to target positions, as a JSON array.
        #[arg(long)]
        sigma: Option<String>,
        /// Most game states or search states explored before giving up.
        #[arg(long)]
        state_cap: Option<usize>,
    },
    /// Linkage realizing a pebble-move sequence on the complete graph of rays.
    Transition {
        #[command(flatten)]
        world: WorldArgs,
        /// `canonical:m` or a JSON file with a list of rays.
        #[arg(long)]
        rays: String,
        /// Move sequence: JSON array of states, or a file holding one.
        #[arg(long)]
        moves: String,
        /// Finite set: JSON array of coordinates, or a file holding one.
        #[arg(long, conflicts_with = "ball")]
        x: Option<String>,
        /// Use the ball of this radius about the root as the finite set.
        #[arg(long)]
        ball: Option<u64>,
    },
    /// Write a Graphviz file for a graph or a window.
    ExportDot {
        /// Graph file to draw.
        #[arg(long, conflicts_with = "world", required_unless_present = "world")]
        graph: Option<String>,
        /// `json` or `edge-list`; guessed from the extension and contents if absent.
        #[arg(long)]
        format: Option<String>,
        /// World kind or descriptor file whose window is drawn.
        #[arg(long)]
        world: Option<String>,
        /// Base graph file for product worlds.
        #[arg(long)]
        base: Option<String>,
        /// Dominator count for dominated-ray worlds.
        #[arg(long)]
        k: Option<usize>,
        /// Window depth; overrides the descriptor.
        #[arg(long)]
        depth: Option<u64>,
        /// Largest window, in vertices.
        #[arg(long)]
        window_cap: Option<usize>,
        /// Rays to colour: `canonical:m` or a JSON file.
        #[arg(long)]
        rays: Option<String>,
        /// Linkage JSON file whose paths are drawn dashed.
        #[arg(long)]
        linkage: Option<String>,
        /// Output .dot path.
        #[arg(long)]
        out: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(value) => {
            let text = if cli.pretty { pretty::render(&value) } else { value.to_string() };
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
