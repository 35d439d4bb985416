//! Ensemble statistics over independent chains.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arcswap::{arc_probability_bias, ArcBias};
use crate::chain::{chain_rng, run_chain_with, ChainConfig, ChainMode, Chainable};
use crate::error::Result;
use crate::graph::{Digraph, Graph};

/// Realizations with a 3-vertex motif count: triangles for graphs, induced
/// directed 3-cycles for digraphs.
pub trait Motif: Chainable {
    fn motif_count(&self) -> usize;
}

impl Motif for Graph {
    fn motif_count(&self) -> usize {
        self.triangle_count()
    }
}

impl Motif for Digraph {
    fn motif_count(&self) -> usize {
        self.induced_3cycles().len()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairFrequency {
    pub pair: (usize, usize),
    pub count: u64,
    pub frequency: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatsReport {
    pub mode: ChainMode,
    pub runs: u64,
    pub tau: u64,
    pub seed: u64,
    pub total_moves: u64,
    pub total_loops: u64,
    /// Presence frequency of every vertex pair (ordered for digraphs).
    pub arc_frequencies: Vec<PairFrequency>,
    /// Number of runs ending with a given motif count.
    pub motif_counts: BTreeMap<usize, u64>,
    /// Number of runs ending in each realization, keyed by canonical bitstring.
    pub state_counts: BTreeMap<String, u64>,
    /// Bias classification, for the 2-swap-only chain on a sequence that is not
    /// arc-swap.
    pub bias: Option<Vec<ArcBias>>,
}

#[derive(Default)]
struct Tally {
    moves: u64,
    loops: u64,
    pairs: BTreeMap<(usize, usize), u64>,
    motifs: BTreeMap<usize, u64>,
    states: BTreeMap<String, u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.moves += other.moves;
        self.loops += other.loops;
        for (k, v) in other.pairs {
            *self.pairs.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.motifs {
            *self.motifs.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.states {
            *self.states.entry(k).or_insert(0) += v;
        }
        self
    }
}

/// Runs `runs` independent chains from `g0`; run `r` uses stream `r` of
/// `cfg.seed`, so results do not depend on scheduling.
pub fn ensemble_stats<G: Motif>(g0: &G, cfg: &ChainConfig, runs: u64) -> Result<StatsReport> {
    g0.universe(cfg.mode)?;
    let tally = (0..runs)
        .into_par_iter()
        .map(|r| -> Result<Tally> {
            let mut rng = chain_rng(cfg.seed, r);
            let run = run_chain_with(g0, &ChainConfig { record_trace: false, ..*cfg }, &mut rng)?;
            let mut t = Tally { moves: run.moves, loops: run.loops, ..Tally::default() };
            for p in run.graph.pair_list() {
                t.pairs.insert(p, 1);
            }
            t.motifs.insert(run.graph.motif_count(), 1);
            t.states.insert(run.graph.key().to_bit_string(), 1);
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    let n = g0.order();
    let denom = runs.max(1) as f64;
    let arc_frequencies = (0..G::pair_slots(n))
        .map(|pos| {
            let pair = G::unrank(n, pos);
            let count = tally.pairs.get(&pair).copied().unwrap_or(0);
            PairFrequency { pair, count, frequency: count as f64 / denom }
        })
        .collect();
    Ok(StatsReport {
        mode: cfg.mode,
        runs,
        tau: cfg.tau,
        seed: cfg.seed,
        total_moves: tally.moves,
        total_loops: tally.loops,
        arc_frequencies,
        motif_counts: tally.motifs,
        state_counts: tally.states,
        bias: None,
    })
}

/// [`ensemble_stats`] for digraphs, adding the bias report in plain mode
/// when the sequence has induced cycle sets.
pub fn directed_ensemble_stats(g0: &Digraph, cfg: &ChainConfig, runs: u64) -> Result<StatsReport> {
    let mut report = ensemble_stats(g0, cfg, runs)?;
    if cfg.mode == ChainMode::Plain {
        let bias = arc_probability_bias(&g0.degree_sequence(), g0)?;
        if bias.iter().any(|b| b.plain != b.corrected) {
            report.bias = Some(bias);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_sequence_frequencies() {
        let bi = Digraph::from_arcs(3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap();
        let r = directed_ensemble_stats(&bi, &ChainConfig::new(ChainMode::Full, 50, 1), 20).unwrap();
        assert!(r.arc_frequencies.iter().all(|f| f.frequency == 1.0));
        assert_eq!(r.total_moves, 0);
        assert!(r.bias.is_none());
        assert_eq!(r.state_counts.len(), 1);
    }

    #[test]
    fn plain_triangle_is_biased() {
        let c3 = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = directed_ensemble_stats(&c3, &ChainConfig::new(ChainMode::Plain, 100, 1), 50).unwrap();
        for f in &r.arc_frequencies {
            assert_eq!(f.frequency, if c3.has_arc(f.pair.0, f.pair.1) { 1.0 } else { 0.0 });
        }
        assert_eq!(r.motif_counts, BTreeMap::from([(1, 50)]));
        assert!(r.bias.unwrap().iter().all(|b| b.corrected == Some(0.5)));
    }

    #[test]
    fn results_do_not_depend_on_thread_count() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let cfg = ChainConfig::new(ChainMode::Undirected, 200, 9);
        let a = ensemble_stats(&g, &cfg, 64).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| ensemble_stats(&g, &cfg, 64)).unwrap();
        assert_eq!(a, b);
    }
}
