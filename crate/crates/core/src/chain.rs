//! Markov-chain samplers over the realizations of a degree sequence.
//!
//! Every state of a chain has the same number of outgoing move slots (the
//! state degree); a step picks one slot uniformly, so the walk is symmetric
//! and its stationary distribution is uniform on the reachable component.
//!
//! * Undirected: `2·P + 1` slots where `P` counts non-adjacent edge pairs
//!   (two re-pairings per pair, plus one idle slot).
//! * Directed: `N` slots for unordered arc pairs that share neither a tail
//!   nor a head, `T = Σ out·in` slots for directed 2-paths (full mode only) and
//!   one idle slot (plain mode always; full mode when `T = 0`). Pairs sharing
//!   a vertex head-to-tail and degenerate 2-paths `(u,v,u)` are idle slots.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CanonicalKey, DegreeSequence, DiDegreeSequence, Digraph, Graph, Realization};
use crate::moves::{try_2swap_directed, try_2swap_undirected, try_reorient_3cycle, MoveOutcome, SwapVariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainMode {
    /// 2-swaps on undirected graphs.
    Undirected,
    /// Directed 2-swaps plus induced 3-cycle reorientation.
    Full,
    /// Directed 2-swaps only.
    Plain,
}

impl std::str::FromStr for ChainMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "undirected" | "psi" => Ok(ChainMode::Undirected),
            "full" | "phi" => Ok(ChainMode::Full),
            "plain" | "phibar" => Ok(ChainMode::Plain),
            _ => Err(Error::invalid(format!("unknown chain mode `{s}`"))),
        }
    }
}

fn choose2(x: usize) -> u64 {
    let x = x as u64;
    x * x.saturating_sub(1) / 2
}

/// Selection universe for one chain step, computed from the degree sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveUniverse {
    pub mode: ChainMode,
    /// Number of edges or arcs.
    pub size: usize,
    /// Undirected: non-adjacent edge pairs. Directed: arc pairs with distinct
    /// tails and distinct heads.
    pub n_pairs: u64,
    /// Directed 2-paths, degenerate ones included (full mode only).
    pub n_2paths: u64,
    /// Cumulative `out·in` weights for picking a 2-path center.
    #[serde(skip)]
    center_weights: Vec<u64>,
    #[serde(skip)]
    exhaustive: bool,
}

impl MoveUniverse {
    pub fn undirected(s: &DegreeSequence) -> Self {
        let m = s.edge_count();
        let adjacent: u64 = s.degrees().iter().map(|&a| choose2(a)).sum();
        let n_pairs = choose2(m) - adjacent;
        MoveUniverse {
            mode: ChainMode::Undirected,
            size: m,
            n_pairs,
            n_2paths: 0,
            center_weights: Vec::new(),
            exhaustive: use_exhaustive(m, n_pairs),
        }
    }

    pub fn directed(s: &DiDegreeSequence, mode: ChainMode) -> Result<Self> {
        if mode == ChainMode::Undirected {
            return Err(Error::invalid("undirected mode needs an undirected sequence"));
        }
        let m = s.arc_count();
        let shared: u64 = s.pairs().iter().map(|&(o, i)| choose2(o) + choose2(i)).sum();
        let n_pairs = choose2(m) - shared;
        let mut acc = 0u64;
        let center_weights = s
            .pairs()
            .iter()
            .map(|&(o, i)| {
                acc += (o * i) as u64;
                acc
            })
            .collect();
        Ok(MoveUniverse {
            mode,
            size: m,
            n_pairs,
            n_2paths: if mode == ChainMode::Full { acc } else { 0 },
            center_weights,
            exhaustive: use_exhaustive(m, n_pairs),
        })
    }

    pub fn for_graph(g: &Graph) -> Self {
        Self::undirected(&g.degree_sequence())
    }

    pub fn for_digraph(g: &Digraph, mode: ChainMode) -> Result<Self> {
        Self::directed(&g.degree_sequence(), mode)
    }

    /// Idle slots added on top of the pair and 2-path slots.
    pub fn idle_slots(&self) -> u64 {
        match self.mode {
            ChainMode::Undirected | ChainMode::Plain => 1,
            ChainMode::Full => u64::from(self.n_2paths == 0),
        }
    }

    /// Common out-degree of every state in the state graph, loops included.
    pub fn state_degree(&self) -> u64 {
        match self.mode {
            ChainMode::Undirected => 2 * self.n_pairs + 1,
            _ => self.n_pairs + self.n_2paths + self.idle_slots(),
        }
    }

    /// The closed-form degree stated in the literature for this state graph,
    /// with `a_i` read as out-degree. Reported for comparison only; it does not
    /// match [`Self::state_degree`] in general.
    pub fn closed_form_degree(s: &crate::graph::AnySequence, mode: ChainMode) -> i64 {
        use crate::graph::AnySequence;
        match s {
            AnySequence::Undirected(d) => {
                let m = d.edge_count();
                let adj: u64 = d.degrees().iter().map(|&a| choose2(a)).sum();
                2 * (choose2(m) as i64 - adj as i64) + 1
            }
            AnySequence::Directed(d) => {
                let m = choose2(d.arc_count()) as i64;
                let ca: i64 = d.pairs().iter().map(|&(a, _)| choose2(a) as i64).sum();
                let cb: i64 = d.pairs().iter().map(|&(_, b)| choose2(b) as i64).sum();
                let ab: i64 = d.pairs().iter().map(|&(a, b)| (a * b) as i64).sum();
                match mode {
                    ChainMode::Full => m - 2 * ca,
                    _ => m - ca - cb - ab,
                }
            }
        }
    }

    /// Directly counted `(pairs, 2-paths)` on an undirected realization.
    pub fn count_on_graph(g: &Graph) -> (u64, u64) {
        let e = g.edges();
        let mut pairs = 0;
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if disjoint(e[i], e[j]) {
                    pairs += 1;
                }
            }
        }
        (pairs, 0)
    }

    /// Directly counted `(pairs, 2-paths)` on a directed realization.
    pub fn count_on_digraph(g: &Digraph) -> (u64, u64) {
        let a = g.arcs();
        let mut pairs = 0;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if a[i].0 != a[j].0 && a[i].1 != a[j].1 {
                    pairs += 1;
                }
            }
        }
        let paths = (0..g.order()).map(|v| (g.predecessors(v).len() * g.successors(v).len()) as u64).sum();
        (pairs, paths)
    }

    fn pick_center(&self, rng: &mut impl Rng) -> usize {
        let total = *self.center_weights.last().unwrap_or(&0);
        let r = rng.random_range(0..total);
        self.center_weights.partition_point(|&w| w <= r)
    }
}

/// Rejection sampling is abandoned for explicit enumeration when the
/// universe is small or sparse within all pairs.
fn use_exhaustive(m: usize, n_pairs: u64) -> bool {
    m <= 8 || 10 * n_pairs < choose2(m)
}

fn disjoint(e: (usize, usize), f: (usize, usize)) -> bool {
    e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1
}

fn distinct_pair(rng: &mut impl Rng, m: usize) -> (usize, usize) {
    let i = rng.random_range(0..m);
    let mut j = rng.random_range(0..m - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// Uniform unordered pair from `items` satisfying `ok`.
fn pick_pair<T: Copy>(
    items: &[T],
    ok: impl Fn(T, T) -> bool,
    exhaustive: bool,
    rng: &mut impl Rng,
) -> Option<(T, T)> {
    let m = items.len();
    if m < 2 {
        return None;
    }
    if exhaustive {
        let mut all = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                if ok(items[i], items[j]) {
                    all.push((items[i], items[j]));
                }
            }
        }
        if all.is_empty() {
            return None;
        }
        return Some(all[rng.random_range(0..all.len())]);
    }
    loop {
        let (i, j) = distinct_pair(rng, m);
        if ok(items[i], items[j]) {
            return Some((items[i], items[j]));
        }
    }
}

/// One step of the undirected chain.
pub fn step_undirected(g: &mut Graph, u: &MoveUniverse, rng: &mut impl Rng) -> MoveOutcome {
    if rng.random_range(0..u.state_degree()) == 0 {
        return MoveOutcome::Loop;
    }
    let Some((e1, e2)) = pick_pair(g.edges(), disjoint, u.exhaustive, rng) else {
        return MoveOutcome::Loop;
    };
    let variant = if rng.random_bool(0.5) { SwapVariant::A } else { SwapVariant::B };
    try_2swap_undirected(g, e1, e2, variant).expect("sampled edges are present and disjoint")
}

fn tail_head_disjoint(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 != b.0 && a.1 != b.1
}

fn pair_move(g: &mut Digraph, u: &MoveUniverse, rng: &mut impl Rng) -> MoveOutcome {
    let Some((a1, a2)) = pick_pair(g.arcs(), tail_head_disjoint, u.exhaustive, rng) else {
        return MoveOutcome::Loop;
    };
    if !disjoint(a1, a2) {
        return MoveOutcome::Loop;
    }
    try_2swap_directed(g, a1, a2).expect("sampled arcs are present and disjoint")
}

/// One step of the full directed chain (2-swaps and reorientations).
pub fn step_directed_full(g: &mut Digraph, u: &MoveUniverse, rng: &mut impl Rng) -> MoveOutcome {
    let r = rng.random_range(0..u.state_degree());
    if r < u.n_pairs {
        return pair_move(g, u, rng);
    }
    if r >= u.n_pairs + u.n_2paths {
        return MoveOutcome::Loop;
    }
    let v = u.pick_center(rng);
    let preds = g.predecessors(v);
    let succs = g.successors(v);
    let a = preds[rng.random_range(0..preds.len())];
    let c = succs[rng.random_range(0..succs.len())];
    try_reorient_3cycle(g, (a, v, c)).expect("sampled 2-path is present")
}

/// One step of the 2-swap-only directed chain.
pub fn step_directed_plain(g: &mut Digraph, u: &MoveUniverse, rng: &mut impl Rng) -> MoveOutcome {
    if rng.random_range(0..u.state_degree()) < u.n_pairs {
        pair_move(g, u, rng)
    } else {
        MoveOutcome::Loop
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainConfig {
    pub tau: u64,
    pub seed: u64,
    pub mode: ChainMode,
    pub record_trace: bool,
}

impl ChainConfig {
    pub fn new(mode: ChainMode, tau: u64, seed: u64) -> Self {
        ChainConfig { tau, seed, mode, record_trace: false }
    }
}

/// Seeded generator for run `stream` of a seed; distinct streams are independent.
pub fn chain_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Realizations a chain can walk on.
pub trait Chainable: Realization {
    fn universe(&self, mode: ChainMode) -> Result<MoveUniverse>;
    fn step(&mut self, u: &MoveUniverse, rng: &mut ChaCha8Rng) -> MoveOutcome;
    fn direct_counts(&self) -> (u64, u64);
}

impl Chainable for Graph {
    fn universe(&self, mode: ChainMode) -> Result<MoveUniverse> {
        if mode != ChainMode::Undirected {
            return Err(Error::invalid(format!("mode {mode:?} needs a directed graph")));
        }
        Ok(MoveUniverse::for_graph(self))
    }

    fn step(&mut self, u: &MoveUniverse, rng: &mut ChaCha8Rng) -> MoveOutcome {
        step_undirected(self, u, rng)
    }

    fn direct_counts(&self) -> (u64, u64) {
        MoveUniverse::count_on_graph(self)
    }
}

impl Chainable for Digraph {
    fn universe(&self, mode: ChainMode) -> Result<MoveUniverse> {
        MoveUniverse::for_digraph(self, mode)
    }

    fn step(&mut self, u: &MoveUniverse, rng: &mut ChaCha8Rng) -> MoveOutcome {
        match u.mode {
            ChainMode::Full => step_directed_full(self, u, rng),
            _ => step_directed_plain(self, u, rng),
        }
    }

    fn direct_counts(&self) -> (u64, u64) {
        MoveUniverse::count_on_digraph(self)
    }
}

#[derive(Clone, Debug)]
pub struct ChainRun<G> {
    pub graph: G,
    pub moves: u64,
    pub loops: u64,
    /// Key of the state after each step, when requested.
    pub trace: Option<Vec<CanonicalKey>>,
}

/// Runs `cfg.tau` steps from `g0` on stream 0 of `cfg.seed`.
pub fn run_chain<G: Chainable>(g0: &G, cfg: &ChainConfig) -> Result<ChainRun<G>> {
    run_chain_with(g0, cfg, &mut chain_rng(cfg.seed, 0))
}

pub fn run_chain_with<G: Chainable>(g0: &G, cfg: &ChainConfig, rng: &mut ChaCha8Rng) -> Result<ChainRun<G>> {
    let u = g0.universe(cfg.mode)?;
    let mut g = g0.clone();
    let profile = cfg!(debug_assertions).then(|| g0.degree_profile());
    let check_counts = cfg!(debug_assertions) && u.size <= 64;
    let mut run = ChainRun { graph: g0.clone(), moves: 0, loops: 0, trace: cfg.record_trace.then(Vec::new) };
    for _ in 0..cfg.tau {
        match g.step(&u, rng) {
            MoveOutcome::Applied => {
                run.moves += 1;
                if let Some(p) = &profile {
                    debug_assert_eq!(&g.degree_profile(), p, "move changed the degree sequence");
                }
                if check_counts {
                    let want = (u.n_pairs, if cfg.mode == ChainMode::Full { u.n_2paths } else { g.direct_counts().1 });
                    debug_assert_eq!(g.direct_counts(), want, "selection universe is not constant");
                }
            }
            MoveOutcome::Loop => run.loops += 1,
        }
        if let Some(t) = &mut run.trace {
            t.push(g.key());
        }
    }
    run.graph = g;
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn diseq(p: &[(usize, usize)]) -> DiDegreeSequence {
        DiDegreeSequence::new(p.to_vec()).unwrap()
    }

    #[test]
    fn universe_counts_match_direct_counts() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let u = MoveUniverse::for_graph(&g);
        assert_eq!(MoveUniverse::count_on_graph(&g).0, u.n_pairs);
        // 4-cycle versus two 2-cycles: same sequence, same tail/head-disjoint count
        let c4 = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let twin = Digraph::from_arcs(4, [(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        let u = MoveUniverse::for_digraph(&c4, ChainMode::Full).unwrap();
        assert_eq!(MoveUniverse::count_on_digraph(&c4), (u.n_pairs, u.n_2paths));
        assert_eq!(MoveUniverse::count_on_digraph(&twin), (u.n_pairs, u.n_2paths));
        assert_eq!((u.n_pairs, u.n_2paths), (6, 4));
    }

    #[test]
    fn state_degrees() {
        let u = MoveUniverse::undirected(&DegreeSequence::new(vec![1; 4]).unwrap());
        assert_eq!((u.n_pairs, u.state_degree()), (1, 3));
        let u = MoveUniverse::directed(&diseq(&[(1, 1); 3]), ChainMode::Full).unwrap();
        assert_eq!((u.n_pairs, u.n_2paths, u.state_degree()), (3, 3, 6));
        let p = MoveUniverse::directed(&diseq(&[(1, 1); 3]), ChainMode::Plain).unwrap();
        assert_eq!(p.state_degree(), 4);
        let e = MoveUniverse::directed(&diseq(&[(0, 0); 3]), ChainMode::Full).unwrap();
        assert_eq!(e.state_degree(), 1);
    }

    #[test]
    fn tau_zero_and_determinism() {
        let g = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5), (0, 2)]).unwrap();
        let cfg = ChainConfig::new(ChainMode::Undirected, 0, 7);
        assert_eq!(run_chain(&g, &cfg).unwrap().graph, g);
        let cfg = ChainConfig::new(ChainMode::Undirected, 500, 7);
        let a = run_chain(&g, &cfg).unwrap();
        let b = run_chain(&g, &cfg).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.moves + a.loops, 500);
        assert_eq!(a.graph.degree_sequence(), g.degree_sequence());
    }

    #[test]
    fn mode_kind_mismatch() {
        let g = Graph::new(3);
        assert!(matches!(run_chain(&g, &ChainConfig::new(ChainMode::Full, 1, 0)), Err(Error::InvalidInput(_))));
        let d = Digraph::new(3);
        assert!(run_chain(&d, &ChainConfig::new(ChainMode::Undirected, 1, 0)).is_err());
    }

    #[test]
    fn frozen_sequences_always_loop() {
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = run_chain(&tri, &ChainConfig::new(ChainMode::Undirected, 1000, 1)).unwrap();
        assert_eq!(r.moves, 0);
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(run_chain(&k4, &ChainConfig::new(ChainMode::Undirected, 1000, 1)).unwrap().moves, 0);
        let bi = Digraph::from_arcs(3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap();
        assert_eq!(run_chain(&bi, &ChainConfig::new(ChainMode::Full, 1000, 1)).unwrap().moves, 0);
        let c3 = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(run_chain(&c3, &ChainConfig::new(ChainMode::Plain, 1000, 1)).unwrap().moves, 0);
        assert!(run_chain(&c3, &ChainConfig::new(ChainMode::Full, 1000, 1)).unwrap().moves > 0);
    }

    #[test]
    fn matching_chain_visits_all_states() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let mut cfg = ChainConfig::new(ChainMode::Undirected, 100_000, 3);
        cfg.record_trace = true;
        let run = run_chain(&g, &cfg).unwrap();
        let mut seen: HashMap<CanonicalKey, u64> = HashMap::new();
        for k in run.trace.unwrap() {
            *seen.entry(k).or_default() += 1;
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn rejection_path_is_exercised() {
        // 12 edges keeps the sampler on the rejection branch
        let edges: Vec<_> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
        let g = Graph::from_edges(12, edges).unwrap();
        let u = MoveUniverse::for_graph(&g);
        assert!(!u.exhaustive);
        let r = run_chain(&g, &ChainConfig::new(ChainMode::Undirected, 2000, 5)).unwrap();
        assert!(r.moves > 0);
        assert_eq!(r.graph.degree_sequence(), g.degree_sequence());
    }

    #[test]
    fn plain_swap_on_two_arcs() {
        let g = Digraph::from_arcs(4, [(0, 1), (2, 3)]).unwrap();
        let u = MoveUniverse::for_digraph(&g, ChainMode::Plain).unwrap();
        assert_eq!(u.state_degree(), 2);
        let mut rng = chain_rng(11, 0);
        let mut moved = 0;
        for _ in 0..4000 {
            let mut h = g.clone();
            if step_directed_plain(&mut h, &u, &mut rng) == MoveOutcome::Applied {
                assert_eq!(h.sorted_arcs(), vec![(0, 3), (2, 1)]);
                moved += 1;
            }
        }
        assert!((1700..2300).contains(&moved));
    }
}
