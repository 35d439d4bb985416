//! Recognition of arc-swap sequences.
//!
//! A vertex triple is an induced cycle set when it induces a directed 3-cycle
//! in every realization. Realizations are compared through the split
//! bipartite graph: vertex `v` becomes an out-node `v+` (id `2v`) and an
//! in-node `v-` (id `2v+1`), and every ordered pair `(u, v)`, `u != v`, is an
//! edge `u+ v-`. Arcs of the reference digraph are oriented `u+ -> v-`,
//! non-arcs `v- -> u+`; simple directed cycles in this orientation are exactly
//! the simple alternating cycles whose swap yields another realization.
//!
//! A triple inducing a 3-cycle fails to be a cycle set iff some simple
//! alternating cycle meets at least one and at most five of its six ordered
//! pairs, which one breadth-first search per (probed pair, excluded pair)
//! decides.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DiDegreeSequence, Digraph};
use crate::realize::realize_directed;
use crate::symdiff::{AlternatingCycle, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct InducedCycleSet {
    /// Sorted vertex triple.
    pub vertices: [usize; 3],
}

impl InducedCycleSet {
    pub fn new(mut vertices: [usize; 3]) -> Self {
        vertices.sort_unstable();
        InducedCycleSet { vertices }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// The six ordered pairs inside the triple.
    pub fn pairs(&self) -> [(usize, usize); 6] {
        triple_pairs(self.vertices)
    }
}

fn triple_pairs([a, b, c]: [usize; 3]) -> [(usize, usize); 6] {
    [(a, b), (b, c), (c, a), (b, a), (c, b), (a, c)]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcSwapReport {
    pub is_arc_swap: bool,
    pub cycle_sets: Vec<InducedCycleSet>,
    pub component_count_log2: usize,
    /// `2^k`, absent when it does not fit in 64 bits.
    pub component_count: Option<u64>,
    pub reduced_sequence: Option<DiDegreeSequence>,
}

/// Shortest directed path between split nodes, skipping the pair `banned`.
fn split_path(g: &Digraph, from: usize, to: usize, banned: (usize, usize)) -> Option<Vec<usize>> {
    let n = g.order();
    let mut prev = vec![usize::MAX; 2 * n];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(a) = queue.pop_front() {
        if a == to {
            let mut path = vec![to];
            let mut x = to;
            while x != from {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        let x = a / 2;
        let mut visit = |b: usize, pair: (usize, usize)| {
            if pair != banned && prev[b] == usize::MAX {
                prev[b] = a;
                queue.push_back(b);
            }
        };
        if a % 2 == 0 {
            for &v in g.successors(x) {
                visit(2 * v + 1, (x, v));
            }
        } else {
            for u in (0..n).filter(|&u| u != x && !g.has_arc(u, x)) {
                visit(2 * u, (u, x));
            }
        }
    }
    None
}

/// A simple alternating cycle through the ordered pair `probe` avoiding
/// `banned`. Present arcs are [`Side::Left`] steps (to be removed).
fn cycle_through(g: &Digraph, probe: (usize, usize), banned: (usize, usize)) -> Option<AlternatingCycle> {
    let (x, y) = probe;
    let nodes = if g.has_arc(x, y) {
        let mut nodes = vec![2 * x];
        nodes.extend(split_path(g, 2 * y + 1, 2 * x, banned)?);
        nodes
    } else {
        let mut nodes = split_path(g, 2 * x, 2 * y + 1, banned)?;
        nodes.push(2 * x);
        nodes
    };
    let sides: Vec<Side> = nodes.windows(2).map(|w| if w[0] % 2 == 0 { Side::Left } else { Side::Right }).collect();
    Some(AlternatingCycle::from_nodes(true, &nodes, &sides))
}

/// Searches for an alternating closed walk through `arc` whose swap breaks
/// the induced 3-cycle `cycle` (given in orientation order).
///
/// `arc` may be any of the six ordered pairs on the triple. Each of the other
/// five pairs is excluded in turn; the first walk found is returned. The walk
/// is a simple cycle in the split graph, so each vertex has in- and out-degree
/// at most 2 within it.
pub fn find_breaking_walk(g: &Digraph, cycle: [usize; 3], arc: (usize, usize)) -> Result<Option<AlternatingCycle>> {
    let [a, b, c] = cycle;
    if a.max(b).max(c) >= g.order() || !g.is_induced_3cycle(a, b, c) {
        return Err(Error::invalid(format!("{cycle:?} is not an induced directed 3-cycle")));
    }
    let pairs = triple_pairs(cycle);
    if !pairs.contains(&arc) {
        return Err(Error::invalid(format!("{arc:?} is not a pair of the cycle {cycle:?}")));
    }
    Ok(pairs.iter().filter(|&&p| p != arc).find_map(|&banned| cycle_through(g, arc, banned)))
}

/// Whether the induced 3-cycle on `cycle` is an induced cycle set.
pub fn is_induced_cycle_set(g: &Digraph, cycle: [usize; 3]) -> Result<bool> {
    for arc in triple_pairs(cycle) {
        if find_breaking_walk(g, cycle, arc)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All induced cycle sets of the sequence realized by `g`.
pub fn detect_induced_cycle_sets(g: &Digraph) -> Vec<InducedCycleSet> {
    let mut sets: Vec<InducedCycleSet> = g
        .induced_3cycles()
        .into_par_iter()
        .filter(|&c| is_induced_cycle_set(g, c).expect("cycle comes from the digraph"))
        .map(InducedCycleSet::new)
        .collect();
    sets.sort_unstable();
    sets
}

pub fn recognize(s: &DiDegreeSequence) -> Result<ArcSwapReport> {
    let g = realize_directed(s)?;
    recognize_realization(&g)
}

/// Like [`recognize`], starting from a given realization.
pub fn recognize_realization(g: &Digraph) -> Result<ArcSwapReport> {
    let sets = detect_induced_cycle_sets(g);
    let k = sets.len();
    let reduced_sequence = if k > 0 { Some(reduce_sequence(&g.degree_sequence(), &sets)?) } else { None };
    Ok(ArcSwapReport {
        is_arc_swap: k == 0,
        component_count_log2: k,
        component_count: 1u64.checked_shl(k as u32),
        cycle_sets: sets,
        reduced_sequence,
    })
}

/// Decrements both degrees of every vertex covered by `sets`.
pub fn reduce_sequence(s: &DiDegreeSequence, sets: &[InducedCycleSet]) -> Result<DiDegreeSequence> {
    let mut pairs = s.pairs().to_vec();
    let mut covered = vec![false; pairs.len()];
    for set in sets {
        for &v in &set.vertices {
            if v >= pairs.len() {
                return Err(Error::invalid(format!("cycle set vertex {v} out of range")));
            }
            if std::mem::replace(&mut covered[v], true) {
                return Err(Error::Inconsistent(format!("vertex {v} lies in two cycle sets")));
            }
            let (o, i) = &mut pairs[v];
            if *o == 0 || *i == 0 {
                return Err(Error::Inconsistent(format!("cycle set vertex {v} has a zero degree")));
            }
            *o -= 1;
            *i -= 1;
        }
    }
    DiDegreeSequence::new(pairs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcClass {
    /// Arc of an induced cycle set, present in the reference realization.
    CycleSetPresent,
    /// Reversal of such an arc.
    CycleSetReversed,
    /// Present in every realization.
    ForcedPresent,
    /// Absent from every realization.
    ForcedAbsent,
    /// Varies across realizations; the 2-swap chain estimates it without bias.
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ArcBias {
    pub arc: (usize, usize),
    pub class: ArcClass,
    /// Probability under the 2-swap-only chain started at the reference
    /// realization, when it is determined by the class.
    pub plain: Option<f64>,
    /// Probability under the uniform distribution over all realizations,
    /// when it is determined by the class.
    pub corrected: Option<f64>,
}

/// Classifies every ordered pair by how the 2-swap-only chain started at
/// `g0` is biased on it.
pub fn arc_probability_bias(s: &DiDegreeSequence, g0: &Digraph) -> Result<Vec<ArcBias>> {
    if &g0.degree_sequence() != s {
        return Err(Error::invalid("reference digraph does not realize the sequence"));
    }
    let n = g0.order();
    let sets = detect_induced_cycle_sets(g0);
    let mut in_set = vec![None; n];
    for (i, set) in sets.iter().enumerate() {
        for &v in &set.vertices {
            in_set[v] = Some(i);
        }
    }
    let mut out = Vec::with_capacity(n * n.saturating_sub(1));
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u) {
            let present = g0.has_arc(u, v);
            let class = match (in_set[u], in_set[v]) {
                (Some(i), Some(j)) if i == j => {
                    if present {
                        ArcClass::CycleSetPresent
                    } else {
                        ArcClass::CycleSetReversed
                    }
                }
                // any simple alternating cycle through (u, v) proves it free
                _ if cycle_through(g0, (u, v), (usize::MAX, usize::MAX)).is_some() => ArcClass::Free,
                _ if present => ArcClass::ForcedPresent,
                _ => ArcClass::ForcedAbsent,
            };
            let (plain, corrected) = match class {
                ArcClass::CycleSetPresent => (Some(1.0), Some(0.5)),
                ArcClass::CycleSetReversed => (Some(0.0), Some(0.5)),
                ArcClass::ForcedPresent => (Some(1.0), Some(1.0)),
                ArcClass::ForcedAbsent => (Some(0.0), Some(0.0)),
                ArcClass::Free => (None, None),
            };
            out.push(ArcBias { arc: (u, v), class, plain, corrected });
        }
    }
    Ok(out)
}
