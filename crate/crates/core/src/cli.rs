use std::collections::BTreeMap;
use std::io::{ErrorKind, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use degseq::arcswap::recognize_realization;
use degseq::chain::{chain_rng, run_chain_with, ChainConfig, ChainMode, Chainable};
use degseq::generate::{generate_blocked, BlockedInstanceSpec, Family};
use degseq::io::{edge_list, parse_input, GraphJson, Input};
use degseq::realize::{realize_directed, realize_undirected};
use degseq::stats::{directed_ensemble_stats, ensemble_stats};
use degseq::statespace::{
    check_diameter_bounds, check_properties, default_max_n, directed_state_graph, undirected_state_graph,
    StateGraph, StateKind, StateSpace,
};
use degseq::{AnyGraph, AnySequence, Error, Result};

const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Parser)]
#[command(name = "degseq", version, about = "Realize and sample graphs with a prescribed degree sequence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one realization of a degree sequence.
    Realize {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
    },
    /// Run Markov chains from a sequence or an edge list.
    Sample {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        chain: ChainArgs,
        /// Output format (`--emit` is an alias).
        #[arg(long, alias = "emit", value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Decide whether a directed sequence is an arc-swap sequence.
    Recognize {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Enumerate all realizations and check the state graph.
    Enumerate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Vertex bound (default from DEGSEQ_MAX_N, else 8 undirected / 6 directed).
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Generate a blocked digraph instance.
    Generate {
        #[arg(long, value_enum, default_value_t = FamilyArg::Example1)]
        family: FamilyArg,
        #[arg(long, default_value_t = 2)]
        blocks: usize,
        /// Clique size for the attached families.
        #[arg(long, default_value_t = 2)]
        clique: usize,
        /// Independent set size for the clique-partition family.
        #[arg(long, default_value_t = 2)]
        independent: usize,
        /// Print the degree sequence instead of the digraph.
        #[arg(long)]
        sequence: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Ensemble statistics over independent chains.
    Stats {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        chain: ChainArgs,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Degree sequence, e.g. `1 1 1 1` or `1/1 1/1 1/1` (out/in).
    sequence: Vec<String>,
    /// Read a sequence or an edge list from a file (`-` for stdin).
    #[arg(long, short = 'i')]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct ChainArgs {
    /// Chain mode; defaults to undirected or full by input kind.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, default_value_t = 10_000)]
    tau: u64,
    /// RNG seed, or `entropy` for a random one.
    #[arg(long, default_value_t = DEFAULT_SEED.to_string())]
    seed: String,
    #[arg(long, default_value_t = 1)]
    runs: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Undirected,
    Full,
    Plain,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Psi,
    Phi,
    Phibar,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Example1,
    AppendixOneDirection,
    AppendixCliquePartition,
}

impl InputArgs {
    fn read(&self) -> Result<Input> {
        let text = match &self.input {
            Some(p) if p.as_os_str() == "-" => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            }
            Some(p) => std::fs::read_to_string(p)?,
            None if self.sequence.is_empty() => return Err(Error::InvalidInput("no input given".into())),
            None => self.sequence.join(" "),
        };
        parse_input(&text)
    }

    fn realization(&self) -> Result<AnyGraph> {
        Ok(match self.read()? {
            Input::Graph(g) => g,
            Input::Sequence(AnySequence::Undirected(s)) => AnyGraph::Undirected(realize_undirected(&s)?),
            Input::Sequence(AnySequence::Directed(s)) => AnyGraph::Directed(realize_directed(&s)?),
        })
    }
}

impl ChainArgs {
    fn config(&self, directed: bool) -> Result<ChainConfig> {
        let mode = match self.mode {
            Some(ModeArg::Undirected) => ChainMode::Undirected,
            Some(ModeArg::Full) => ChainMode::Full,
            Some(ModeArg::Plain) => ChainMode::Plain,
            None if directed => ChainMode::Full,
            None => ChainMode::Undirected,
        };
        let seed = if self.seed == "entropy" {
            rand::random()
        } else {
            self.seed
                .parse()
                .map_err(|_| Error::InvalidInput(format!("seed must be an integer or `entropy`, got `{}`", self.seed)))?
        };
        Ok(ChainConfig { tau: self.tau, seed, mode, record_trace: false })
    }
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn emit(s: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(s.as_bytes()) {
        Err(e) if e.kind() == ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn print_json(v: &impl Serialize) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Inconsistent(e.to_string()))?;
    emit(&format!("{s}\n"))
}

fn graph_out(g: &AnyGraph, format: Format) -> Result<()> {
    match (g, format) {
        (AnyGraph::Undirected(g), Format::Json) => print_json(&GraphJson::of(g)),
        (AnyGraph::Directed(g), Format::Json) => print_json(&GraphJson::of(g)),
        (AnyGraph::Undirected(g), Format::Edgelist) => emit(&edge_list(g)),
        (AnyGraph::Directed(g), Format::Edgelist) => emit(&edge_list(g)),
        (_, Format::Dot) => Err(Error::InvalidInput("dot output is only available for `enumerate`".into())),
    }
}

pub fn run() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Realize { input, format } => graph_out(&input.realization()?, format),
        Command::Sample { input, chain, format } => {
            let g = input.realization()?;
            let cfg = chain.config(g.is_directed())?;
            match g {
                AnyGraph::Undirected(g) => sample(&g, &cfg, chain.runs, format),
                AnyGraph::Directed(g) => sample(&g, &cfg, chain.runs, format),
            }
        }
        Command::Recognize { input } => {
            let g = match input.realization()? {
                AnyGraph::Directed(g) => g,
                AnyGraph::Undirected(_) => {
                    return Err(Error::InvalidInput("recognition needs a directed sequence".into()))
                }
            };
            let r = recognize_realization(&g)?;
            print_json(&json!({
                "sequence": g.degree_sequence().to_string(),
                "is_arc_swap": r.is_arc_swap,
                "cycle_sets": r.cycle_sets.iter().map(|c| c.vertices).collect::<Vec<_>>(),
                "component_count_log2": r.component_count_log2,
                "component_count": r.component_count,
                "reduced_sequence": r.reduced_sequence.map(|s| s.to_string()),
            }))
        }
        Command::Enumerate { input, kind, max_n, format } => {
            let seq = match input.read()? {
                Input::Sequence(s) => s,
                Input::Graph(g) => g.sequence(),
            };
            match seq {
                AnySequence::Undirected(s) => {
                    if matches!(kind, Some(KindArg::Phi | KindArg::Phibar)) {
                        return Err(Error::InvalidInput("phi and phibar need a directed sequence".into()));
                    }
                    let sg = undirected_state_graph(&s, max_n.unwrap_or_else(|| default_max_n(false)))?;
                    enumerate_out(&sg, format)
                }
                AnySequence::Directed(s) => {
                    let kind = match kind {
                        Some(KindArg::Psi) => {
                            return Err(Error::InvalidInput("psi needs an undirected sequence".into()))
                        }
                        Some(KindArg::Phibar) => StateKind::PhiBar,
                        _ => StateKind::Phi,
                    };
                    let sg = directed_state_graph(&s, kind, max_n.unwrap_or_else(|| default_max_n(true)))?;
                    enumerate_out(&sg, format)
                }
            }
        }
        Command::Generate { family, blocks, clique, independent, sequence, format } => {
            let family = match family {
                FamilyArg::Example1 => Family::Example1,
                FamilyArg::AppendixOneDirection => Family::OneDirection,
                FamilyArg::AppendixCliquePartition => Family::CliquePartition,
            };
            let spec = BlockedInstanceSpec { blocks, family, clique, independent };
            let g = generate_blocked(&spec)?;
            if sequence {
                match format {
                    Format::Json => print_json(&g.degree_sequence()),
                    _ => emit(&format!("{}\n", g.degree_sequence())),
                }
            } else {
                graph_out(&AnyGraph::Directed(g), format)
            }
        }
        Command::Stats { input, chain } => {
            let g = input.realization()?;
            let cfg = chain.config(g.is_directed())?;
            let report = match &g {
                AnyGraph::Undirected(g) => ensemble_stats(g, &cfg, chain.runs)?,
                AnyGraph::Directed(g) => directed_ensemble_stats(g, &cfg, chain.runs)?,
            };
            print_json(&report)
        }
    }
}

fn sample<G: Chainable>(g0: &G, cfg: &ChainConfig, runs: u64, format: Format) -> Result<()>
where
    AnyGraph: From<G>,
{
    let results = (0..runs.max(1))
        .into_par_iter()
        .map(|r| run_chain_with(g0, cfg, &mut chain_rng(cfg.seed, r)))
        .collect::<Result<Vec<_>>>()?;
    match format {
        Format::Json => {
            let mut freq: BTreeMap<String, u64> = BTreeMap::new();
            for r in &results {
                *freq.entry(r.graph.key().to_bit_string()).or_insert(0) += 1;
            }
            let first = &results[0];
            let mut out = json!({
                "mode": cfg.mode,
                "tau": cfg.tau,
                "seed": cfg.seed,
                "runs": results.len(),
                "graph": GraphJson::of(&first.graph),
                "moves": results.iter().map(|r| r.moves).sum::<u64>(),
                "loops": results.iter().map(|r| r.loops).sum::<u64>(),
            });
            if runs > 1 {
                out["key_frequencies"] = json!(freq);
            }
            print_json(&out)
        }
        _ => {
            for (i, r) in results.into_iter().enumerate() {
                if i > 0 {
                    emit("\n")?;
                }
                graph_out(&AnyGraph::from(r.graph), format)?;
            }
            Ok(())
        }
    }
}

fn enumerate_out<G: StateSpace>(sg: &StateGraph<G>, format: Format) -> Result<()> {
    if let Format::Dot = format {
        return emit(&sg.to_dot());
    }
    let p = check_properties(sg);
    let b = check_diameter_bounds(sg);
    print_json(&json!({
        "kind": sg.kind,
        "node_count": p.node_count,
        "degree": p.regular_degree,
        "symmetric": p.symmetric,
        "non_bipartite": p.non_bipartite,
        "components": p.component_sizes,
        "diameter": p.diameters.iter().max(),
        "bounds_applicable": b.applicable,
        "bounds_ok": b.ok(),
        "moves_match_arcs": p.moves_match_arcs,
    }))
}
