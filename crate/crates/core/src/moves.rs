//! Elementary degree-preserving moves.
//!
//! A move either applies (the graph changes) or is a loop (the graph is left
//! untouched because a replacement edge/arc already exists or the index gate
//! rejects it). Malformed requests, such as adjacent input edges, are
//! [`Error::InvalidMove`] and never loops.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph, Realization};
use crate::symdiff::{AlternatingCycle, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveOutcome {
    Applied,
    Loop,
}

/// Re-pairing used by an undirected 2-swap of `{a,b}, {c,d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SwapVariant {
    /// `{a,c}, {b,d}`
    A,
    /// `{a,d}, {b,c}`
    B,
}

/// Removed and inserted edges of an undirected 2-swap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UndirectedSwap {
    pub removed: [(usize, usize); 2],
    pub inserted: [(usize, usize); 2],
    pub variant: SwapVariant,
}

impl UndirectedSwap {
    pub fn new(e1: (usize, usize), e2: (usize, usize), variant: SwapVariant) -> Result<Self> {
        let ((a, b), (c, d)) = (e1, e2);
        if a == b || c == d || a == c || a == d || b == c || b == d {
            return Err(Error::bad_move(format!("edges {{{a},{b}}} and {{{c},{d}}} are adjacent")));
        }
        let inserted = match variant {
            SwapVariant::A => [(a, c), (b, d)],
            SwapVariant::B => [(a, d), (b, c)],
        };
        Ok(UndirectedSwap { removed: [e1, e2], inserted, variant })
    }
}

/// Removes `(a,b), (c,d)` and inserts `(a,d), (c,b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DirectedSwap {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

impl DirectedSwap {
    pub fn new(first: (usize, usize), second: (usize, usize)) -> Result<Self> {
        let ((a, b), (c, d)) = (first, second);
        if a == b || c == d || a == c || a == d || b == c || b == d {
            return Err(Error::bad_move(format!("arcs ({a},{b}) and ({c},{d}) share an endpoint")));
        }
        Ok(DirectedSwap { first, second })
    }

    pub fn inserted(&self) -> [(usize, usize); 2] {
        let ((a, b), (c, d)) = (self.first, self.second);
        [(a, d), (c, b)]
    }
}

/// An induced directed 3-cycle `v1 -> v2 -> v3 -> v1` to be reversed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleReorientation {
    pub cycle: [usize; 3],
}

impl TriangleReorientation {
    pub fn arcs(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.cycle;
        [(a, b), (b, c), (c, a)]
    }
}

/// Every directed 2-swap applicable to `g`, by exhaustive scan of arc pairs.
pub fn applicable_directed_swaps(g: &Digraph) -> Vec<DirectedSwap> {
    let a = g.arcs();
    let mut out = Vec::new();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if let Ok(sw) = DirectedSwap::new(a[i], a[j]) {
                if sw.inserted().iter().all(|&(u, v)| !g.has_arc(u, v)) {
                    out.push(sw);
                }
            }
        }
    }
    out
}

pub fn try_2swap_undirected(
    g: &mut Graph,
    e1: (usize, usize),
    e2: (usize, usize),
    variant: SwapVariant,
) -> Result<MoveOutcome> {
    let swap = UndirectedSwap::new(e1, e2, variant)?;
    for (u, v) in swap.removed {
        if !g.has_edge(u, v) {
            return Err(Error::bad_move(format!("edge {{{u},{v}}} not in graph")));
        }
    }
    if swap.inserted.iter().any(|&(u, v)| g.has_edge(u, v)) {
        return Ok(MoveOutcome::Loop);
    }
    for (u, v) in swap.removed {
        g.remove_edge(u, v)?;
    }
    for (u, v) in swap.inserted {
        g.add_edge(u, v)?;
    }
    Ok(MoveOutcome::Applied)
}

pub fn try_2swap_directed(g: &mut Digraph, a1: (usize, usize), a2: (usize, usize)) -> Result<MoveOutcome> {
    let swap = DirectedSwap::new(a1, a2)?;
    for (u, v) in [a1, a2] {
        if !g.has_arc(u, v) {
            return Err(Error::bad_move(format!("arc ({u},{v}) not in digraph")));
        }
    }
    let inserted = swap.inserted();
    if inserted.iter().any(|&(u, v)| g.has_arc(u, v)) {
        return Ok(MoveOutcome::Loop);
    }
    for (u, v) in [a1, a2] {
        g.remove_arc(u, v)?;
    }
    for (u, v) in inserted {
        g.add_arc(u, v)?;
    }
    Ok(MoveOutcome::Applied)
}

/// The gate under which the 2-path `(v1, v2, v3)` reverses its triangle:
/// `(v3,v1)` present, the three reversals absent, and `v3` the largest index.
/// Exactly one of the three 2-paths of an induced 3-cycle passes it.
pub fn reorientation_gate(g: &Digraph, path: (usize, usize, usize)) -> bool {
    let (v1, v2, v3) = path;
    v1 != v3 && v3 > v1 && v3 > v2 && g.is_induced_3cycle(v1, v2, v3)
}

/// Reverses the triangle closed by the directed 2-path `(v1, v2, v3)` when the
/// gate admits it. A degenerate path `(u, v, u)` is always a loop.
pub fn try_reorient_3cycle(g: &mut Digraph, path: (usize, usize, usize)) -> Result<MoveOutcome> {
    let (v1, v2, v3) = path;
    if v1 >= g.order() || v2 >= g.order() || v3 >= g.order() || !g.has_arc(v1, v2) || !g.has_arc(v2, v3) {
        return Err(Error::bad_move(format!("({v1},{v2},{v3}) is not a directed 2-path")));
    }
    if !reorientation_gate(g, path) {
        return Ok(MoveOutcome::Loop);
    }
    reverse_triangle(g, TriangleReorientation { cycle: [v1, v2, v3] })?;
    Ok(MoveOutcome::Applied)
}

/// Reverses an induced 3-cycle without consulting the index gate.
pub fn reverse_triangle(g: &mut Digraph, t: TriangleReorientation) -> Result<()> {
    let [a, b, c] = t.cycle;
    if !g.is_induced_3cycle(a, b, c) {
        return Err(Error::bad_move(format!("{{{a},{b},{c}}} is not an induced directed 3-cycle")));
    }
    for (u, v) in t.arcs() {
        g.remove_arc(u, v)?;
    }
    for (u, v) in t.arcs() {
        g.add_arc(v, u)?;
    }
    Ok(())
}

/// Flips membership along an alternating closed walk: left steps must be
/// present and are removed, right steps must be absent and are inserted.
///
/// On error the graph is left unchanged.
pub fn swap_alternating_cycle<G: Realization>(g: &mut G, c: &AlternatingCycle) -> Result<()> {
    if c.directed != G::DIRECTED {
        return Err(Error::bad_move("cycle kind does not match graph kind"));
    }
    if !c.alternates() {
        return Err(Error::bad_move("steps do not alternate"));
    }
    for s in &c.steps {
        let (u, v) = s.pair;
        let present = u < g.order() && v < g.order() && g.contains(u, v);
        match (s.side, present) {
            (Side::Left, false) => return Err(Error::bad_move(format!("left step ({u},{v}) is absent"))),
            (Side::Right, true) => return Err(Error::bad_move(format!("right step ({u},{v}) is present"))),
            _ => {}
        }
    }
    let mut next = g.clone();
    for s in c.steps.iter().filter(|s| s.side == Side::Left) {
        next.delete(s.pair.0, s.pair.1)?;
    }
    for s in c.steps.iter().filter(|s| s.side == Side::Right) {
        next.insert(s.pair.0, s.pair.1)
            .map_err(|e| Error::bad_move(format!("cannot insert right step: {e}")))?;
    }
    if next.degree_profile() != g.degree_profile() {
        return Err(Error::bad_move("walk does not preserve degrees"));
    }
    *g = next;
    Ok(())
}

/// The same walk with sides exchanged, undoing [`swap_alternating_cycle`].
pub fn inverse_cycle(c: &AlternatingCycle) -> AlternatingCycle {
    let mut inv = c.clone();
    for s in &mut inv.steps {
        s.side = s.side.flip();
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symdiff::{decompose_alternating, symmetric_difference};

    #[test]
    fn undirected_swap_applies() {
        let mut g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let out = try_2swap_undirected(&mut g, (0, 1), (2, 3), SwapVariant::B).unwrap();
        assert_eq!(out, MoveOutcome::Applied);
        assert_eq!(g.sorted_edges(), vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn adjacent_edges_are_errors() {
        let mut g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            try_2swap_undirected(&mut g, (0, 1), (1, 2), SwapVariant::A),
            Err(Error::InvalidMove(_))
        ));
        let mut g = Graph::from_edges(4, [(0, 1)]).unwrap();
        assert!(try_2swap_undirected(&mut g, (0, 1), (2, 3), SwapVariant::A).is_err());
    }

    #[test]
    fn complete_graph_always_loops() {
        let edges: Vec<_> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        let mut g = Graph::from_edges(4, edges).unwrap();
        let before = g.clone();
        for (e1, e2) in [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))] {
            for v in [SwapVariant::A, SwapVariant::B] {
                assert_eq!(try_2swap_undirected(&mut g, e1, e2, v).unwrap(), MoveOutcome::Loop);
            }
        }
        assert_eq!(g, before);
    }

    #[test]
    fn directed_swap_and_loop() {
        let mut g = Digraph::from_arcs(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(try_2swap_directed(&mut g, (0, 1), (2, 3)).unwrap(), MoveOutcome::Applied);
        assert_eq!(g.sorted_arcs(), vec![(0, 3), (2, 1)]);
        let mut h = Digraph::from_arcs(4, [(0, 1), (2, 3), (0, 3)]).unwrap();
        let before = h.clone();
        assert_eq!(try_2swap_directed(&mut h, (0, 1), (2, 3)).unwrap(), MoveOutcome::Loop);
        assert_eq!(h, before);
        assert!(try_2swap_directed(&mut h, (0, 1), (0, 3)).is_err());
    }

    #[test]
    fn reorientation_gate_examples() {
        let mut g = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(try_reorient_3cycle(&mut g, (1, 2, 0)).unwrap(), MoveOutcome::Loop);
        assert_eq!(try_reorient_3cycle(&mut g, (2, 0, 1)).unwrap(), MoveOutcome::Loop);
        assert_eq!(try_reorient_3cycle(&mut g, (0, 1, 2)).unwrap(), MoveOutcome::Applied);
        assert_eq!(g.sorted_arcs(), vec![(0, 2), (1, 0), (2, 1)]);
        // the reversed cycle 0 -> 2 -> 1 -> 0 qualifies via (1, 0, 2)
        assert_eq!(try_reorient_3cycle(&mut g, (1, 0, 2)).unwrap(), MoveOutcome::Applied);
        assert_eq!(g.sorted_arcs(), vec![(0, 1), (1, 2), (2, 0)]);

        let mut full = Digraph::from_arcs(3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap();
        assert_eq!(try_reorient_3cycle(&mut full, (0, 1, 2)).unwrap(), MoveOutcome::Loop);
        assert_eq!(try_reorient_3cycle(&mut full, (0, 1, 0)).unwrap(), MoveOutcome::Loop);
        assert!(try_reorient_3cycle(&mut g, (0, 2, 1)).is_err());
    }

    #[test]
    fn cycle_swap_matches_elementary_moves() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let h = Graph::from_edges(4, [(0, 3), (1, 2)]).unwrap();
        let c = decompose_alternating(&symmetric_difference(&g, &h).unwrap()).unwrap().remove(0);
        let mut x = g.clone();
        swap_alternating_cycle(&mut x, &c).unwrap();
        assert_eq!(x, h);
        // involution through the inverted walk
        swap_alternating_cycle(&mut x, &inverse_cycle(&c)).unwrap();
        assert_eq!(x, g);

        let t = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = Digraph::from_arcs(3, [(1, 0), (2, 1), (0, 2)]).unwrap();
        let c = decompose_alternating(&symmetric_difference(&t, &r).unwrap()).unwrap().remove(0);
        let mut y = t.clone();
        swap_alternating_cycle(&mut y, &c).unwrap();
        assert_eq!(y, r);
        // swapping the same walk again is rejected: its left steps are gone
        assert!(swap_alternating_cycle(&mut y, &c).is_err());
        assert_eq!(y, r);
    }
}
