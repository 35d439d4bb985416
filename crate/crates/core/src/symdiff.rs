//! Symmetric differences of two realizations and their alternating structure.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Realization;

/// Which realization an edge/arc of a symmetric difference belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Present in the first (current) realization only.
    Left,
    /// Present in the second (target) realization only.
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// `E(G) \ E(H)` and `E(H) \ E(G)` for two realizations of the same kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricDifference {
    pub n: usize,
    pub directed: bool,
    pub left_only: BTreeSet<(usize, usize)>,
    pub right_only: BTreeSet<(usize, usize)>,
}

impl SymmetricDifference {
    pub fn size(&self) -> usize {
        self.left_only.len() + self.right_only.len()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    pub fn side_of(&self, u: usize, v: usize) -> Option<Side> {
        let p = if self.directed || u < v { (u, v) } else { (v, u) };
        if self.left_only.contains(&p) {
            Some(Side::Left)
        } else if self.right_only.contains(&p) {
            Some(Side::Right)
        } else {
            None
        }
    }

    fn iter_sided(&self) -> impl Iterator<Item = ((usize, usize), Side)> + '_ {
        self.left_only
            .iter()
            .map(|&p| (p, Side::Left))
            .chain(self.right_only.iter().map(|&p| (p, Side::Right)))
    }

    /// Every vertex has even degree within the difference.
    pub fn is_eulerian(&self) -> bool {
        let mut deg = vec![0usize; self.n];
        for ((u, v), _) in self.iter_sided() {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg.iter().all(|d| d % 2 == 0)
    }

    /// Left and right contributions agree at every vertex (and, for digraphs,
    /// separately for out- and in-arcs). Holds whenever both realizations share
    /// a degree sequence.
    pub fn is_balanced(&self) -> bool {
        let mut bal = vec![0i64; 2 * self.n];
        for ((u, v), side) in self.iter_sided() {
            let s = if side == Side::Left { 1 } else { -1 };
            let (a, b) = self.split_nodes(u, v);
            bal[a] += s;
            bal[b] += s;
        }
        bal.iter().all(|&b| b == 0)
    }

    /// Node ids used for walking: undirected edges join vertices; directed
    /// arcs `(u, v)` join out-node `2u` to in-node `2v + 1`.
    fn split_nodes(&self, u: usize, v: usize) -> (usize, usize) {
        if self.directed {
            (2 * u, 2 * v + 1)
        } else {
            (u, v)
        }
    }

    /// Weakly connected components, as vertex sets, of the difference.
    pub fn weak_components(&self) -> Vec<BTreeSet<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        let mut touched = BTreeSet::new();
        for ((u, v), _) in self.iter_sided() {
            touched.insert(u);
            touched.insert(v);
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
        let mut groups: HashMap<usize, BTreeSet<usize>> = HashMap::new();
        for &v in &touched {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().insert(v);
        }
        let mut comps: Vec<_> = groups.into_values().collect();
        comps.sort();
        comps
    }

    /// Distinct vertices touched by the difference.
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.iter_sided().flat_map(|((u, v), _)| [u, v]).collect()
    }
}

/// `G Δ H`. Both realizations must have the same order.
pub fn symmetric_difference<G: Realization>(g: &G, h: &G) -> Result<SymmetricDifference> {
    if g.order() != h.order() {
        return Err(Error::invalid(format!(
            "vertex counts differ ({} vs {})",
            g.order(),
            h.order()
        )));
    }
    let left: BTreeSet<_> = g.pair_list().into_iter().filter(|&(u, v)| !h.contains(u, v)).collect();
    let right: BTreeSet<_> = h.pair_list().into_iter().filter(|&(u, v)| !g.contains(u, v)).collect();
    Ok(SymmetricDifference { n: g.order(), directed: G::DIRECTED, left_only: left, right_only: right })
}

/// One edge/arc of an alternating walk together with its membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub pair: (usize, usize),
    pub side: Side,
}

/// Closed walk whose consecutive edges/arcs alternate between [`Side::Left`]
/// and [`Side::Right`].
///
/// `vertices` is closed (`first == last`) and has one more entry than
/// `steps`. For digraphs the walk follows the split convention: arcs are
/// traversed forward and backward in turn, so `(v1, v2)` is followed by an
/// arc `(v3, v2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternatingCycle {
    pub directed: bool,
    pub vertices: Vec<usize>,
    pub steps: Vec<Step>,
}

impl AlternatingCycle {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Distinct vertices on the walk.
    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.vertices.iter().copied().collect()
    }

    /// Sides alternate along the walk, including across the closing step.
    pub fn alternates(&self) -> bool {
        let k = self.steps.len();
        k >= 2 && k % 2 == 0 && (0..k).all(|i| self.steps[i].side != self.steps[(i + 1) % k].side)
    }

    /// Builds a cycle from a closed sequence of walk nodes (vertex ids for
    /// graphs, split ids for digraphs) and the edge sides between them.
    pub(crate) fn from_nodes(directed: bool, nodes: &[usize], sides: &[Side]) -> Self {
        debug_assert_eq!(nodes.len(), sides.len() + 1);
        let vertex = |x: usize| if directed { x / 2 } else { x };
        let steps = nodes
            .windows(2)
            .zip(sides)
            .map(|(w, &side)| {
                let (a, b) = (w[0], w[1]);
                let pair = if directed {
                    if a % 2 == 0 {
                        (a / 2, b / 2)
                    } else {
                        (b / 2, a / 2)
                    }
                } else if a < b {
                    (a, b)
                } else {
                    (b, a)
                };
                Step { pair, side }
            })
            .collect();
        AlternatingCycle { directed, vertices: nodes.iter().map(|&x| vertex(x)).collect(), steps }
    }
}

/// Splits a balanced symmetric difference into alternating closed walks.
///
/// Uses greedy extraction: incident left and right edges are paired at every
/// walk node, the resulting closed trails are followed, and a cycle is cut off
/// whenever the trail revisits a node with opposite parity. The decomposition
/// is not guaranteed to be minimal. Every returned cycle has even length at
/// least 4, and together the cycles partition the difference.
pub fn decompose_alternating(sd: &SymmetricDifference) -> Result<Vec<AlternatingCycle>> {
    if !sd.is_balanced() {
        return Err(Error::invalid("symmetric difference is not balanced"));
    }
    let edges: Vec<((usize, usize), Side)> = sd.iter_sided().collect();
    let ends: Vec<(usize, usize)> = edges.iter().map(|&((u, v), _)| sd.split_nodes(u, v)).collect();

    // partner[e][k]: the edge paired with e at its k-th endpoint
    let node_count = if sd.directed { 2 * sd.n } else { sd.n };
    let mut at_node: Vec<(Vec<(usize, usize)>, Vec<(usize, usize)>)> = vec![Default::default(); node_count];
    for (e, &(a, b)) in ends.iter().enumerate() {
        let side = edges[e].1;
        for (k, x) in [(0, a), (1, b)] {
            let slot = &mut at_node[x];
            if side == Side::Left {
                slot.0.push((e, k));
            } else {
                slot.1.push((e, k));
            }
        }
    }
    let mut partner = vec![[(usize::MAX, 0usize); 2]; edges.len()];
    for (lefts, rights) in &at_node {
        if lefts.len() != rights.len() {
            return Err(Error::Inconsistent("unbalanced node in symmetric difference".into()));
        }
        for (&(le, lk), &(re, rk)) in lefts.iter().zip(rights) {
            partner[le][lk] = (re, rk);
            partner[re][rk] = (le, lk);
        }
    }

    let mut used = vec![false; edges.len()];
    let mut cycles = Vec::new();
    for start in 0..edges.len() {
        if used[start] {
            continue;
        }
        // follow the trail through the pairing
        let mut trail_nodes = vec![ends[start].0];
        let mut trail_edges = Vec::new();
        let (mut e, mut k) = (start, 0usize);
        loop {
            used[e] = true;
            trail_edges.push(e);
            let far = 1 - k;
            let node = if far == 0 { ends[e].0 } else { ends[e].1 };
            trail_nodes.push(node);
            let (ne, nk) = partner[e][far];
            if ne == start {
                break;
            }
            e = ne;
            k = nk;
        }
        split_trail(sd.directed, &trail_nodes, &trail_edges, &edges, &mut cycles);
    }
    Ok(cycles)
}

fn split_trail(
    directed: bool,
    nodes: &[usize],
    trail: &[usize],
    edges: &[((usize, usize), Side)],
    out: &mut Vec<AlternatingCycle>,
) {
    let mut stack_nodes = vec![nodes[0]];
    let mut stack_edges: Vec<usize> = Vec::new();
    for (i, &e) in trail.iter().enumerate() {
        let arrive = nodes[i + 1];
        let color = edges[e].1;
        stack_edges.push(e);
        // most recent earlier visit whose departing edge has the other color
        let hit = (0..stack_nodes.len())
            .rev()
            .find(|&j| stack_nodes[j] == arrive && edges[stack_edges[j]].1 != color);
        match hit {
            Some(j) => {
                let mut cyc_nodes: Vec<usize> = stack_nodes[j..].to_vec();
                cyc_nodes.push(arrive);
                let sides: Vec<Side> = stack_edges[j..].iter().map(|&x| edges[x].1).collect();
                out.push(AlternatingCycle::from_nodes(directed, &cyc_nodes, &sides));
                stack_nodes.truncate(j + 1);
                stack_edges.truncate(j);
            }
            None => stack_nodes.push(arrive),
        }
    }
    // the remainder is itself closed and alternating at the start node
    if !stack_edges.is_empty() {
        debug_assert_eq!(stack_nodes.first(), stack_nodes.last());
        let sides: Vec<Side> = stack_edges.iter().map(|&x| edges[x].1).collect();
        out.push(AlternatingCycle::from_nodes(directed, &stack_nodes, &sides));
    }
}

/// Shape of a vertex-disjoint alternating 3-walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WalkPattern {
    /// `(v1,v2), (v3,v4)` left-only and `(v3,v2)` right-only.
    P,
    /// `(w1,w2), (w3,w4)` right-only and `(w3,w2)` left-only.
    Q,
}

/// Four distinct vertices `v1..v4` forming an alternating 3-walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AlternatingWalk {
    pub vertices: [usize; 4],
    pub pattern: WalkPattern,
}

impl AlternatingWalk {
    /// Re-checks the membership pattern against `sd`.
    pub fn is_valid_in(&self, sd: &SymmetricDifference) -> bool {
        let [a, b, c, d] = self.vertices;
        let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
        let (outer, inner) = match self.pattern {
            WalkPattern::P => (Side::Left, Side::Right),
            WalkPattern::Q => (Side::Right, Side::Left),
        };
        distinct
            && sd.side_of(a, b) == Some(outer)
            && sd.side_of(c, d) == Some(outer)
            && sd.side_of(c, b) == Some(inner)
    }
}

/// Searches `sd` for a vertex-disjoint alternating 3-walk.
///
/// Undirected differences only yield pattern `P`. For digraphs pattern `P` is
/// tried first, then `Q`. The search is exhaustive, so `None` means no such
/// walk exists.
pub fn find_disjoint_3walk(sd: &SymmetricDifference) -> Option<AlternatingWalk> {
    if sd.directed {
        directed_walk(sd, Side::Left).or_else(|| directed_walk(sd, Side::Right))
    } else {
        undirected_walk(sd)
    }
}

fn undirected_walk(sd: &SymmetricDifference) -> Option<AlternatingWalk> {
    let mut left_adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(u, v) in &sd.left_only {
        left_adj.entry(u).or_default().push(v);
        left_adj.entry(v).or_default().push(u);
    }
    let empty = Vec::new();
    for &(x, y) in &sd.right_only {
        for (v2, v3) in [(x, y), (y, x)] {
            for &v1 in left_adj.get(&v2).unwrap_or(&empty) {
                if v1 == v3 {
                    continue;
                }
                for &v4 in left_adj.get(&v3).unwrap_or(&empty) {
                    if v4 != v1 && v4 != v2 {
                        return Some(AlternatingWalk { vertices: [v1, v2, v3, v4], pattern: WalkPattern::P });
                    }
                }
            }
        }
    }
    None
}

fn directed_walk(sd: &SymmetricDifference, outer: Side) -> Option<AlternatingWalk> {
    let (outer_set, inner_set) = match outer {
        Side::Left => (&sd.left_only, &sd.right_only),
        Side::Right => (&sd.right_only, &sd.left_only),
    };
    let mut preds: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut succs: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(u, v) in outer_set {
        succs.entry(u).or_default().push(v);
        preds.entry(v).or_default().push(u);
    }
    let empty = Vec::new();
    let pattern = if outer == Side::Left { WalkPattern::P } else { WalkPattern::Q };
    for &(v3, v2) in inner_set {
        for &v1 in preds.get(&v2).unwrap_or(&empty) {
            if v1 == v3 {
                continue;
            }
            for &v4 in succs.get(&v3).unwrap_or(&empty) {
                if v4 != v1 && v4 != v2 {
                    return Some(AlternatingWalk { vertices: [v1, v2, v3, v4], pattern });
                }
            }
        }
    }
    None
}
