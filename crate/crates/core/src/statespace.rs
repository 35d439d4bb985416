//! Exhaustive enumeration of realizations and explicit state graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{chain_rng, ChainMode, Chainable, MoveUniverse};
use crate::error::{Error, Result};
use crate::graph::{CanonicalKey, DegreeSequence, DiDegreeSequence, Digraph, Graph, Realization};
use crate::moves::{try_2swap_directed, try_2swap_undirected, try_reorient_3cycle, MoveOutcome, SwapVariant};

pub const DEFAULT_MAX_N_UNDIRECTED: usize = 8;
pub const DEFAULT_MAX_N_DIRECTED: usize = 6;
/// Upper bound on the number of enumerated realizations.
pub const MAX_STATES: usize = 250_000;

/// Vertex bound for enumeration; `DEGSEQ_MAX_N` overrides the defaults.
pub fn default_max_n(directed: bool) -> usize {
    std::env::var("DEGSEQ_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(if directed { DEFAULT_MAX_N_DIRECTED } else { DEFAULT_MAX_N_UNDIRECTED })
}

fn check_bound(n: usize, max_n: usize) -> Result<()> {
    if n > max_n {
        return Err(Error::ResourceLimit(format!("{n} vertices exceed the enumeration bound {max_n}")));
    }
    Ok(())
}

fn too_many() -> Error {
    Error::ResourceLimit(format!("more than {MAX_STATES} realizations"))
}

/// All labeled simple graphs with degree sequence `s`, in lexicographic
/// order of their edge sets.
pub fn enumerate_undirected(s: &DegreeSequence, max_n: usize) -> Result<Vec<Graph>> {
    let n = s.len();
    check_bound(n, max_n)?;
    let mut res = s.degrees().to_vec();
    if res.iter().any(|&d| d >= n) || s.total() % 2 == 1 {
        return Ok(Vec::new());
    }
    let mut chosen = Vec::new();
    let mut out = Vec::new();
    undirected_rec(n, 0, 1, &mut res, &mut chosen, &mut out)?;
    Ok(out)
}

fn undirected_rec(
    n: usize,
    i: usize,
    j: usize,
    res: &mut [usize],
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Graph>,
) -> Result<()> {
    if i + 1 >= n {
        if res.iter().all(|&r| r == 0) {
            if out.len() == MAX_STATES {
                return Err(too_many());
            }
            out.push(Graph::from_edges(n, chosen.iter().copied())?);
        }
        return Ok(());
    }
    if j == n {
        if res[i] != 0 {
            return Ok(());
        }
        return undirected_rec(n, i + 1, i + 2, res, chosen, out);
    }
    if res[i] > n - j {
        return Ok(());
    }
    if res[i] > 0 && res[j] > 0 {
        res[i] -= 1;
        res[j] -= 1;
        chosen.push((i, j));
        undirected_rec(n, i, j + 1, res, chosen, out)?;
        chosen.pop();
        res[i] += 1;
        res[j] += 1;
    }
    undirected_rec(n, i, j + 1, res, chosen, out)
}

/// All labeled simple digraphs with degree sequence `s`, in lexicographic
/// order of their arc sets.
pub fn enumerate_directed(s: &DiDegreeSequence, max_n: usize) -> Result<Vec<Digraph>> {
    let n = s.len();
    check_bound(n, max_n)?;
    if s.out_total() != s.in_total() || s.pairs().iter().any(|&(o, i)| o >= n || i >= n) {
        return Ok(Vec::new());
    }
    let mut out_res: Vec<usize> = s.pairs().iter().map(|p| p.0).collect();
    let mut in_res: Vec<usize> = s.pairs().iter().map(|p| p.1).collect();
    let mut chosen = Vec::new();
    let mut out = Vec::new();
    directed_rec(n, 0, 0, &mut out_res, &mut in_res, &mut chosen, &mut out)?;
    Ok(out)
}

fn directed_rec(
    n: usize,
    i: usize,
    j: usize,
    out_res: &mut [usize],
    in_res: &mut [usize],
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Digraph>,
) -> Result<()> {
    if i == n {
        if in_res.iter().all(|&r| r == 0) {
            if out.len() == MAX_STATES {
                return Err(too_many());
            }
            out.push(Digraph::from_arcs(n, chosen.iter().copied())?);
        }
        return Ok(());
    }
    if j == n {
        if out_res[i] != 0 {
            return Ok(());
        }
        // rows after i must still be able to absorb every residual in-degree
        for v in 0..n {
            let rows_left = (i + 1..n).filter(|&r| r != v).count();
            if in_res[v] > rows_left {
                return Ok(());
            }
        }
        return directed_rec(n, i + 1, 0, out_res, in_res, chosen, out);
    }
    if j == i {
        return directed_rec(n, i, j + 1, out_res, in_res, chosen, out);
    }
    let slots_left = (j..n).filter(|&c| c != i).count();
    if out_res[i] > slots_left {
        return Ok(());
    }
    if out_res[i] > 0 && in_res[j] > 0 {
        out_res[i] -= 1;
        in_res[j] -= 1;
        chosen.push((i, j));
        directed_rec(n, i, j + 1, out_res, in_res, chosen, out)?;
        chosen.pop();
        out_res[i] += 1;
        in_res[j] += 1;
    }
    directed_rec(n, i, j + 1, out_res, in_res, chosen, out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    /// Undirected 2-swap graph.
    Psi,
    /// Directed 2-swap and reorientation graph.
    Phi,
    /// Directed 2-swap-only graph.
    PhiBar,
}

impl StateKind {
    pub fn mode(self) -> ChainMode {
        match self {
            StateKind::Psi => ChainMode::Undirected,
            StateKind::Phi => ChainMode::Full,
            StateKind::PhiBar => ChainMode::Plain,
        }
    }

    pub fn from_mode(mode: ChainMode) -> Self {
        match mode {
            ChainMode::Undirected => StateKind::Psi,
            ChainMode::Full => StateKind::Phi,
            ChainMode::Plain => StateKind::PhiBar,
        }
    }

    pub fn is_directed(self) -> bool {
        self != StateKind::Psi
    }
}

impl std::str::FromStr for StateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psi" => Ok(StateKind::Psi),
            "phi" => Ok(StateKind::Phi),
            "phibar" => Ok(StateKind::PhiBar),
            _ => Err(Error::invalid(format!("unknown state graph kind `{s}` (psi, phi, phibar)"))),
        }
    }
}

/// Realizations whose moves can be listed one selection slot at a time.
pub trait StateSpace: Chainable {
    /// Outcome of every slot of the selection universe at this state: the key
    /// of the resulting realization, or `None` for a loop.
    fn slot_outcomes(&self, kind: StateKind) -> Result<Vec<Option<CanonicalKey>>>;
}

impl StateSpace for Graph {
    fn slot_outcomes(&self, kind: StateKind) -> Result<Vec<Option<CanonicalKey>>> {
        if kind != StateKind::Psi {
            return Err(Error::invalid("undirected graphs only have the psi state graph"));
        }
        let e = self.edges();
        let mut out = vec![None];
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                let ((a, b), (c, d)) = (e[i], e[j]);
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                for v in [SwapVariant::A, SwapVariant::B] {
                    let mut g = self.clone();
                    out.push(match try_2swap_undirected(&mut g, e[i], e[j], v)? {
                        MoveOutcome::Applied => Some(g.canonical_key()),
                        MoveOutcome::Loop => None,
                    });
                }
            }
        }
        Ok(out)
    }
}

impl StateSpace for Digraph {
    fn slot_outcomes(&self, kind: StateKind) -> Result<Vec<Option<CanonicalKey>>> {
        if kind == StateKind::Psi {
            return Err(Error::invalid("digraphs have the phi and phibar state graphs"));
        }
        let a = self.arcs();
        let mut out = Vec::new();
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if a[i].0 == a[j].0 || a[i].1 == a[j].1 {
                    continue;
                }
                if a[i].0 == a[j].1 || a[i].1 == a[j].0 {
                    out.push(None);
                    continue;
                }
                let mut g = self.clone();
                out.push(match try_2swap_directed(&mut g, a[i], a[j])? {
                    MoveOutcome::Applied => Some(g.canonical_key()),
                    MoveOutcome::Loop => None,
                });
            }
        }
        let mut paths = 0;
        if kind == StateKind::Phi {
            for v in 0..self.order() {
                for &u in self.predecessors(v) {
                    for &w in self.successors(v) {
                        paths += 1;
                        let mut g = self.clone();
                        out.push(match try_reorient_3cycle(&mut g, (u, v, w))? {
                            MoveOutcome::Applied => Some(g.canonical_key()),
                            MoveOutcome::Loop => None,
                        });
                    }
                }
            }
        }
        if kind == StateKind::PhiBar || paths == 0 {
            out.push(None);
        }
        Ok(out)
    }
}

/// Explicit state graph over all realizations of one sequence.
#[derive(Clone, Debug)]
pub struct StateGraph<G> {
    pub kind: StateKind,
    pub n: usize,
    pub nodes: Vec<G>,
    pub keys: Vec<CanonicalKey>,
    pub index: HashMap<CanonicalKey, usize>,
    /// Arcs between distinct states from the adjacency definition, with
    /// multiplicity.
    pub arcs: Vec<BTreeMap<usize, u64>>,
    /// Loop multiplicity per state.
    pub loops: Vec<u64>,
    /// Transitions between distinct states produced by the move slots.
    pub move_arcs: Vec<BTreeMap<usize, u64>>,
}

/// Whether two keys are adjacent under rule a) of `kind`.
fn rule_a<G: Realization>(kind: StateKind, n: usize, x: &CanonicalKey, y: &CanonicalKey) -> bool {
    match x.distance(y) {
        4 => true,
        6 if kind == StateKind::Phi => {
            let vs: BTreeSet<usize> = x
                .differing_positions(y)
                .into_iter()
                .flat_map(|p| {
                    let (u, v) = G::unrank(n, p);
                    [u, v]
                })
                .collect();
            vs.len() == 3
        }
        _ => false,
    }
}

impl<G: StateSpace> StateGraph<G> {
    pub fn build(nodes: Vec<G>, n: usize, kind: StateKind) -> Result<Self> {
        if kind.is_directed() != G::DIRECTED {
            return Err(Error::invalid("state graph kind does not match the realization kind"));
        }
        let keys: Vec<CanonicalKey> = nodes.iter().map(|g| g.key()).collect();
        let index: HashMap<CanonicalKey, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        if index.len() != keys.len() {
            return Err(Error::invalid("duplicate realizations"));
        }
        let arcs: Vec<BTreeMap<usize, u64>> = (0..keys.len())
            .into_par_iter()
            .map(|i| {
                (0..keys.len())
                    .filter(|&j| j != i && rule_a::<G>(kind, n, &keys[i], &keys[j]))
                    .map(|j| (j, 1))
                    .collect()
            })
            .collect();
        let slots: Vec<(BTreeMap<usize, u64>, u64)> = nodes
            .par_iter()
            .map(|g| -> Result<_> {
                let mut targets = BTreeMap::new();
                let mut loops = 0;
                for o in g.slot_outcomes(kind)? {
                    match o {
                        None => loops += 1,
                        Some(k) => {
                            let j = *index
                                .get(&k)
                                .ok_or_else(|| Error::Inconsistent("move left the realization set".into()))?;
                            *targets.entry(j).or_insert(0) += 1;
                        }
                    }
                }
                Ok((targets, loops))
            })
            .collect::<Result<_>>()?;
        let (move_arcs, loops) = slots.into_iter().unzip();
        Ok(StateGraph { kind, n, nodes, keys, index, arcs, loops, move_arcs })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn out_degree(&self, i: usize) -> u64 {
        self.arcs[i].values().sum::<u64>() + self.loops[i]
    }

    /// Every adjacency-rule arc is produced by exactly one move slot and
    /// every applied move slot lands on an adjacency-rule arc.
    pub fn moves_match_arcs(&self) -> bool {
        self.arcs == self.move_arcs
    }

    /// Transition probabilities from state `i`, loop included.
    pub fn transition_row(&self, i: usize) -> BTreeMap<usize, f64> {
        let d = self.out_degree(i) as f64;
        let mut row: BTreeMap<usize, f64> = self.arcs[i].iter().map(|(&j, &m)| (j, m as f64 / d)).collect();
        if self.loops[i] > 0 {
            row.insert(i, self.loops[i] as f64 / d);
        }
        row
    }

    fn petgraph(&self) -> DiGraph<(), ()> {
        let mut pg = DiGraph::new();
        let ids: Vec<_> = (0..self.len()).map(|_| pg.add_node(())).collect();
        for (i, row) in self.arcs.iter().enumerate() {
            for &j in row.keys() {
                pg.add_edge(ids[i], ids[j], ());
            }
        }
        pg
    }

    /// Strongly connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comps: Vec<Vec<usize>> = tarjan_scc(&self.petgraph())
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
                c.sort_unstable();
                c
            })
            .collect();
        comps.sort();
        comps
    }

    /// Loop-free BFS distances from `src`.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[src] = Some(0);
        let mut q = VecDeque::from([src]);
        while let Some(x) = q.pop_front() {
            let d = dist[x].unwrap();
            for &y in self.arcs[x].keys() {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    q.push_back(y);
                }
            }
        }
        dist
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph states {\n");
        for (i, k) in self.keys.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label=\"{k}\\nloops={}\"];", self.loops[i]);
        }
        for (i, row) in self.arcs.iter().enumerate() {
            for (&j, &m) in row {
                if i < j {
                    let _ = writeln!(s, "  {i} -> {j} [dir=both, label=\"{m}\"];");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

pub fn undirected_state_graph(s: &DegreeSequence, max_n: usize) -> Result<StateGraph<Graph>> {
    StateGraph::build(enumerate_undirected(s, max_n)?, s.len(), StateKind::Psi)
}

pub fn directed_state_graph(s: &DiDegreeSequence, kind: StateKind, max_n: usize) -> Result<StateGraph<Digraph>> {
    StateGraph::build(enumerate_directed(s, max_n)?, s.len(), kind)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub node_count: usize,
    pub symmetric: bool,
    /// Common out-degree, loops included, when all states agree.
    pub regular_degree: Option<u64>,
    /// Every component has a loop or an odd cycle.
    pub non_bipartite: bool,
    pub component_sizes: Vec<usize>,
    pub strongly_connected: bool,
    /// Largest loop-free distance inside each component.
    pub diameters: Vec<usize>,
    pub moves_match_arcs: bool,
}

pub fn check_properties<G: StateSpace>(sg: &StateGraph<G>) -> PropertyReport {
    let symmetric = sg
        .arcs
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().all(|(&j, &m)| sg.arcs[j].get(&i) == Some(&m)));
    let degrees: BTreeSet<u64> = (0..sg.len()).map(|i| sg.out_degree(i)).collect();
    let regular_degree = if degrees.len() == 1 { degrees.first().copied() } else { None };
    let comps = sg.components();
    let mut color = vec![u8::MAX; sg.len()];
    let non_bipartite = comps.iter().all(|c| {
        if c.iter().any(|&i| sg.loops[i] > 0) {
            return true;
        }
        // two-colour the underlying graph; symmetric arcs make it undirected
        color[c[0]] = 0;
        let mut q = VecDeque::from([c[0]]);
        let mut odd = false;
        while let Some(x) = q.pop_front() {
            for &y in sg.arcs[x].keys() {
                if color[y] == u8::MAX {
                    color[y] = 1 - color[x];
                    q.push_back(y);
                } else if color[y] == color[x] {
                    odd = true;
                }
            }
        }
        odd
    });
    let diameters = comps
        .iter()
        .map(|c| c.par_iter().map(|&i| sg.distances_from(i).into_iter().flatten().max().unwrap_or(0)).max().unwrap_or(0))
        .collect();
    PropertyReport {
        node_count: sg.len(),
        symmetric,
        regular_degree,
        non_bipartite,
        component_sizes: comps.iter().map(Vec::len).collect(),
        strongly_connected: comps.len() == 1,
        diameters,
        moves_match_arcs: sg.moves_match_arcs(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundViolation {
    pub from: usize,
    pub to: usize,
    pub difference: usize,
    pub distance: Option<usize>,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    /// False when no bound applies (the 2-swap-only graph of a sequence that
    /// is not arc-swap).
    pub applicable: bool,
    pub checked_pairs: usize,
    pub violations: Vec<BoundViolation>,
}

impl BoundReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Distance bound for two realizations at symmetric-difference size `delta`.
pub fn distance_bound(kind: StateKind, delta: usize, n: usize) -> usize {
    let half = (delta / 2).saturating_sub(1);
    match kind {
        StateKind::Psi | StateKind::Phi => half,
        StateKind::PhiBar => half * (n + 1),
    }
}

pub fn check_diameter_bounds<G: StateSpace>(sg: &StateGraph<G>) -> BoundReport {
    if sg.kind == StateKind::PhiBar && sg.components().len() > 1 {
        return BoundReport { applicable: false, checked_pairs: 0, violations: Vec::new() };
    }
    let per_source: Vec<(usize, Vec<BoundViolation>)> = (0..sg.len())
        .into_par_iter()
        .map(|i| {
            let dist = sg.distances_from(i);
            let mut v = Vec::new();
            for (j, d) in dist.iter().enumerate().filter(|&(j, _)| j != i) {
                let delta = sg.keys[i].distance(&sg.keys[j]);
                let bound = distance_bound(sg.kind, delta, sg.n);
                if d.is_none_or(|d| d > bound) {
                    v.push(BoundViolation { from: i, to: j, difference: delta, distance: *d, bound });
                }
            }
            (sg.len() - 1, v)
        })
        .collect();
    BoundReport {
        applicable: true,
        checked_pairs: per_source.iter().map(|p| p.0).sum(),
        violations: per_source.into_iter().flat_map(|p| p.1).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransitionEntry {
    pub from: usize,
    pub to: usize,
    pub expected: f64,
    pub observed: u64,
    pub trials: u64,
    /// Deviation in binomial standard deviations (0 when both are exact).
    pub z: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub entries: Vec<TransitionEntry>,
    pub max_z: f64,
    pub tolerance: f64,
    pub ok: bool,
}

/// Runs `steps_per_state` single chain steps from each state and compares
/// the empirical one-step distribution with the state graph's rows.
pub fn empirical_transition_check<G: StateSpace>(
    sg: &StateGraph<G>,
    steps_per_state: u64,
    seed: u64,
) -> Result<ComparisonReport> {
    let tolerance = 4.0;
    let rows: Vec<Vec<TransitionEntry>> = (0..sg.len())
        .into_par_iter()
        .map(|i| -> Result<Vec<TransitionEntry>> {
            let x = &sg.nodes[i];
            let u: MoveUniverse = x.universe(sg.kind.mode())?;
            let mut rng = chain_rng(seed, i as u64);
            let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
            let mut g = x.clone();
            for _ in 0..steps_per_state {
                match g.step(&u, &mut rng) {
                    MoveOutcome::Loop => *counts.entry(i).or_insert(0) += 1,
                    MoveOutcome::Applied => {
                        let j = *sg
                            .index
                            .get(&g.key())
                            .ok_or_else(|| Error::Inconsistent("step left the realization set".into()))?;
                        *counts.entry(j).or_insert(0) += 1;
                        g = x.clone();
                    }
                }
            }
            let expected = sg.transition_row(i);
            let targets: BTreeSet<usize> = expected.keys().chain(counts.keys()).copied().collect();
            Ok(targets
                .into_iter()
                .map(|j| {
                    let p = expected.get(&j).copied().unwrap_or(0.0);
                    let obs = counts.get(&j).copied().unwrap_or(0);
                    let t = steps_per_state as f64;
                    let sigma = (t * p * (1.0 - p)).sqrt();
                    let dev = (obs as f64 - t * p).abs();
                    let z = if sigma > 0.0 {
                        dev / sigma
                    } else if dev < 0.5 {
                        0.0
                    } else {
                        f64::INFINITY
                    };
                    TransitionEntry { from: i, to: j, expected: p, observed: obs, trials: steps_per_state, z }
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let entries: Vec<TransitionEntry> = rows.into_iter().flatten().collect();
    let max_z = entries.iter().map(|e| e.z).fold(0.0, f64::max);
    Ok(ComparisonReport { ok: max_z <= tolerance, entries, max_z, tolerance })
}
