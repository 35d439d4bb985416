//! Labeled simple graphs and digraphs, their degree sequences, and canonical
//! encodings.
//!
//! Vertices are `0..n`. Loops are never stored. Undirected edges are kept
//! normalized as `(u, v)` with `u < v`; digraphs may hold both `(u, v)` and
//! `(v, u)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prescribed undirected degrees, one entry per labeled vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::invalid("degree sequence must have at least one vertex"));
        }
        Ok(DegreeSequence { degrees })
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn total(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// Number of edges of any realization (half the degree sum, rounded down).
    pub fn edge_count(&self) -> usize {
        self.total() / 2
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for DegreeSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let degrees = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad degree entry `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        DegreeSequence::new(degrees)
    }
}

/// Prescribed directed degrees as `(out, in)` pairs, one per labeled vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DiDegreeSequence {
    pairs: Vec<(usize, usize)>,
}

impl DiDegreeSequence {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::invalid("degree sequence must have at least one vertex"));
        }
        Ok(DiDegreeSequence { pairs })
    }

    /// Builds a sequence from parallel out/in slices.
    pub fn from_parts(out: &[usize], inn: &[usize]) -> Result<Self> {
        if out.len() != inn.len() {
            return Err(Error::invalid("out- and in-degree lists differ in length"));
        }
        DiDegreeSequence::new(out.iter().copied().zip(inn.iter().copied()).collect())
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.pairs[v].0
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.pairs[v].1
    }

    pub fn out_total(&self) -> usize {
        self.pairs.iter().map(|p| p.0).sum()
    }

    pub fn in_total(&self) -> usize {
        self.pairs.iter().map(|p| p.1).sum()
    }

    /// Arc count of any realization (the out-degree sum).
    pub fn arc_count(&self) -> usize {
        self.out_total()
    }
}

impl fmt::Display for DiDegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{a}/{b}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for DiDegreeSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let pairs = s
            .split_whitespace()
            .map(|tok| {
                let (a, b) = tok
                    .split_once('/')
                    .ok_or_else(|| Error::invalid(format!("expected out/in pair, got `{tok}`")))?;
                let a = a
                    .parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad out-degree in `{tok}`")))?;
                let b = b
                    .parse::<usize>()
                    .map_err(|_| Error::invalid(format!("bad in-degree in `{tok}`")))?;
                Ok((a, b))
            })
            .collect::<Result<Vec<_>>>()?;
        DiDegreeSequence::new(pairs)
    }
}

/// Either kind of degree sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnySequence {
    Undirected(DegreeSequence),
    Directed(DiDegreeSequence),
}

impl FromStr for AnySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains('/') {
            Ok(AnySequence::Directed(s.parse()?))
        } else {
            Ok(AnySequence::Undirected(s.parse()?))
        }
    }
}

impl fmt::Display for AnySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnySequence::Undirected(s) => s.fmt(f),
            AnySequence::Directed(s) => s.fmt(f),
        }
    }
}

/// Bitstring over the fixed pair ordering of one graph kind and order.
///
/// Undirected pairs `(i, j)`, `i < j`, are ranked lexicographically; directed
/// pairs `(i, j)`, `i != j`, likewise over all ordered pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    words: Vec<u64>,
    bits: usize,
}

impl CanonicalKey {
    fn zeroed(bits: usize) -> Self {
        CanonicalKey { words: vec![0; bits.div_ceil(64)], bits }
    }

    fn set(&mut self, pos: usize) {
        self.words[pos / 64] |= 1 << (pos % 64);
    }

    pub fn get(&self, pos: usize) -> bool {
        pos < self.bits && self.words[pos / 64] >> (pos % 64) & 1 == 1
    }

    pub fn bit_len(&self) -> usize {
        self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Size of the symmetric difference between the encoded pair sets.
    pub fn distance(&self, other: &CanonicalKey) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Positions where the two keys differ.
    pub fn differing_positions(&self, other: &CanonicalKey) -> Vec<usize> {
        (0..self.bits).filter(|&p| self.get(p) != other.get(p)).collect()
    }

    /// `'0'`/`'1'` rendering, first pair first.
    pub fn to_bit_string(&self) -> String {
        (0..self.bits).map(|p| if self.get(p) { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

pub(crate) fn undirected_pair_rank(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

pub(crate) fn undirected_pair_unrank(n: usize, mut pos: usize) -> (usize, usize) {
    for i in 0..n {
        let row = n - i - 1;
        if pos < row {
            return (i, i + 1 + pos);
        }
        pos -= row;
    }
    unreachable!("pair rank out of range")
}

pub(crate) fn directed_pair_rank(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i != j && i < n && j < n);
    i * (n - 1) + if j < i { j } else { j - 1 }
}

pub(crate) fn directed_pair_unrank(n: usize, pos: usize) -> (usize, usize) {
    let i = pos / (n - 1);
    let r = pos % (n - 1);
    (i, if r < i { r } else { r + 1 })
}

fn insert_sorted(list: &mut Vec<usize>, x: usize) {
    if let Err(pos) = list.binary_search(&x) {
        list.insert(pos, x);
    }
}

fn remove_sorted(list: &mut Vec<usize>, x: usize) {
    if let Ok(pos) = list.binary_search(&x) {
        list.remove(pos);
    }
}

/// Indexed pair storage: O(1) membership and O(1) uniform access.
#[derive(Clone, Debug, Default)]
struct PairIndex {
    items: Vec<(usize, usize)>,
    slot: HashMap<(usize, usize), usize>,
}

impl PairIndex {
    fn contains(&self, p: (usize, usize)) -> bool {
        self.slot.contains_key(&p)
    }

    fn insert(&mut self, p: (usize, usize)) -> bool {
        if self.slot.contains_key(&p) {
            return false;
        }
        self.slot.insert(p, self.items.len());
        self.items.push(p);
        true
    }

    fn remove(&mut self, p: (usize, usize)) -> bool {
        let Some(pos) = self.slot.remove(&p) else {
            return false;
        };
        self.items.swap_remove(pos);
        if pos < self.items.len() {
            self.slot.insert(self.items[pos], pos);
        }
        true
    }
}

/// Simple labeled undirected graph.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: PairIndex,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edges: PairIndex::default() }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds the graph encoded by `key` for order `n`.
    pub fn from_key(n: usize, key: &CanonicalKey) -> Result<Self> {
        if key.bit_len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::invalid("key length does not match vertex count"));
        }
        let edges = (0..key.bit_len()).filter(|&p| key.get(p)).map(|p| undirected_pair_unrank(n, p));
        Graph::from_edges(n, edges)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.edges.items.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(norm(u, v))
    }

    /// Edges in storage order; the order changes as moves are applied.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges.items
    }

    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.items.clone();
        e.sort_unstable();
        e
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            return Err(Error::invalid(format!("vertex {v} out of range for n={}", self.order())));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::invalid(format!("loop at vertex {u}")));
        }
        if !self.edges.insert(norm(u, v)) {
            return Err(Error::invalid(format!("parallel edge {{{u},{v}}}")));
        }
        insert_sorted(&mut self.adj[u], v);
        insert_sorted(&mut self.adj[v], u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.order() || v >= self.order() || !self.edges.remove(norm(u, v)) {
            return Err(Error::invalid(format!("edge {{{u},{v}}} not present")));
        }
        remove_sorted(&mut self.adj[u], v);
        remove_sorted(&mut self.adj[v], u);
        Ok(())
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence { degrees: (0..self.order()).map(|v| self.degree(v)).collect() }
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        let n = self.order();
        let mut key = CanonicalKey::zeroed(n * n.saturating_sub(1) / 2);
        for &(u, v) in &self.edges.items {
            key.set(undirected_pair_rank(n, u, v));
        }
        key
    }

    /// Number of triangles.
    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for &(u, v) in &self.edges.items {
            count += self.adj[u]
                .iter()
                .filter(|&&w| w > v && self.adj[v].binary_search(&w).is_ok())
                .count();
        }
        count
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order()
            && self.size() == other.size()
            && self.edges.items.iter().all(|&p| other.edges.contains(p))
    }
}

impl Eq for Graph {}

fn norm(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple labeled digraph; antiparallel arcs are allowed, loops are not.
#[derive(Clone, Debug)]
pub struct Digraph {
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    arcs: PairIndex,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph { out_adj: vec![Vec::new(); n], in_adj: vec![Vec::new(); n], arcs: PairIndex::default() }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Digraph::new(n);
        for (u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    /// Builds the digraph encoded by `key` for order `n`.
    pub fn from_key(n: usize, key: &CanonicalKey) -> Result<Self> {
        if key.bit_len() != n * n.saturating_sub(1) {
            return Err(Error::invalid("key length does not match vertex count"));
        }
        let arcs = (0..key.bit_len()).filter(|&p| key.get(p)).map(|p| directed_pair_unrank(n, p));
        Digraph::from_arcs(n, arcs)
    }

    pub fn order(&self) -> usize {
        self.out_adj.len()
    }

    pub fn size(&self) -> usize {
        self.arcs.items.len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains((u, v))
    }

    /// Arcs in storage order; the order changes as moves are applied.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs.items
    }

    pub fn sorted_arcs(&self) -> Vec<(usize, usize)> {
        let mut a = self.arcs.items.clone();
        a.sort_unstable();
        a
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            return Err(Error::invalid(format!("vertex {v} out of range for n={}", self.order())));
        }
        Ok(())
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::invalid(format!("loop at vertex {u}")));
        }
        if !self.arcs.insert((u, v)) {
            return Err(Error::invalid(format!("parallel arc ({u},{v})")));
        }
        insert_sorted(&mut self.out_adj[u], v);
        insert_sorted(&mut self.in_adj[v], u);
        Ok(())
    }

    pub fn remove_arc(&mut self, u: usize, v: usize) -> Result<()> {
        if !self.arcs.remove((u, v)) {
            return Err(Error::invalid(format!("arc ({u},{v}) not present")));
        }
        remove_sorted(&mut self.out_adj[u], v);
        remove_sorted(&mut self.in_adj[v], u);
        Ok(())
    }

    pub fn degree_sequence(&self) -> DiDegreeSequence {
        DiDegreeSequence {
            pairs: (0..self.order()).map(|v| (self.out_degree(v), self.in_degree(v))).collect(),
        }
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        let n = self.order();
        let mut key = CanonicalKey::zeroed(n * n.saturating_sub(1));
        for &(u, v) in &self.arcs.items {
            key.set(directed_pair_rank(n, u, v));
        }
        key
    }

    /// True when `{u, v, w}` induces exactly the directed 3-cycle
    /// `u -> v -> w -> u`.
    pub fn is_induced_3cycle(&self, u: usize, v: usize, w: usize) -> bool {
        u != v
            && v != w
            && u != w
            && self.has_arc(u, v)
            && self.has_arc(v, w)
            && self.has_arc(w, u)
            && !self.has_arc(v, u)
            && !self.has_arc(w, v)
            && !self.has_arc(u, w)
    }

    /// All induced directed 3-cycles, each reported once as
    /// `[min, next, last]` in orientation order starting at its smallest vertex.
    pub fn induced_3cycles(&self) -> Vec<[usize; 3]> {
        let mut found = Vec::new();
        for u in 0..self.order() {
            for &v in &self.out_adj[u] {
                if v < u {
                    continue;
                }
                for &w in &self.out_adj[v] {
                    if w > u && self.is_induced_3cycle(u, v, w) {
                        found.push([u, v, w]);
                    }
                }
            }
        }
        found
    }
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order()
            && self.size() == other.size()
            && self.arcs.items.iter().all(|&p| other.arcs.contains(p))
    }
}

impl Eq for Digraph {}

/// Operations shared by both realization kinds.
///
/// Pairs are `(u, v)`; for undirected graphs the order of `u` and `v` is
/// irrelevant on input and normalized to `u < v` on output.
pub trait Realization: Clone + PartialEq + Send + Sync + fmt::Debug {
    const DIRECTED: bool;

    fn order(&self) -> usize;
    fn size(&self) -> usize;
    fn contains(&self, u: usize, v: usize) -> bool;
    fn insert(&mut self, u: usize, v: usize) -> Result<()>;
    fn delete(&mut self, u: usize, v: usize) -> Result<()>;
    fn pair_list(&self) -> Vec<(usize, usize)>;
    fn key(&self) -> CanonicalKey;
    /// `(deg, 0)` per vertex for graphs, `(out, in)` for digraphs.
    fn degree_profile(&self) -> Vec<(usize, usize)>;
    fn normalize(u: usize, v: usize) -> (usize, usize);
    /// Total number of pair slots encoded by a key of this order.
    fn pair_slots(n: usize) -> usize;
    fn unrank(n: usize, pos: usize) -> (usize, usize);
}

impl Realization for Graph {
    const DIRECTED: bool = false;

    fn order(&self) -> usize {
        Graph::order(self)
    }
    fn size(&self) -> usize {
        Graph::size(self)
    }
    fn contains(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v)
    }
    fn insert(&mut self, u: usize, v: usize) -> Result<()> {
        self.add_edge(u, v)
    }
    fn delete(&mut self, u: usize, v: usize) -> Result<()> {
        self.remove_edge(u, v)
    }
    fn pair_list(&self) -> Vec<(usize, usize)> {
        self.sorted_edges()
    }
    fn key(&self) -> CanonicalKey {
        self.canonical_key()
    }
    fn degree_profile(&self) -> Vec<(usize, usize)> {
        (0..Graph::order(self)).map(|v| (self.degree(v), 0)).collect()
    }
    fn normalize(u: usize, v: usize) -> (usize, usize) {
        norm(u, v)
    }
    fn pair_slots(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }
    fn unrank(n: usize, pos: usize) -> (usize, usize) {
        undirected_pair_unrank(n, pos)
    }
}

impl Realization for Digraph {
    const DIRECTED: bool = true;

    fn order(&self) -> usize {
        Digraph::order(self)
    }
    fn size(&self) -> usize {
        Digraph::size(self)
    }
    fn contains(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v)
    }
    fn insert(&mut self, u: usize, v: usize) -> Result<()> {
        self.add_arc(u, v)
    }
    fn delete(&mut self, u: usize, v: usize) -> Result<()> {
        self.remove_arc(u, v)
    }
    fn pair_list(&self) -> Vec<(usize, usize)> {
        self.sorted_arcs()
    }
    fn key(&self) -> CanonicalKey {
        self.canonical_key()
    }
    fn degree_profile(&self) -> Vec<(usize, usize)> {
        (0..Digraph::order(self)).map(|v| (self.out_degree(v), self.in_degree(v))).collect()
    }
    fn normalize(u: usize, v: usize) -> (usize, usize) {
        (u, v)
    }
    fn pair_slots(n: usize) -> usize {
        n * n.saturating_sub(1)
    }
    fn unrank(n: usize, pos: usize) -> (usize, usize) {
        directed_pair_unrank(n, pos)
    }
}

/// A realization of either kind, as read from an edge-list file.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyGraph {
    Undirected(Graph),
    Directed(Digraph),
}

impl From<Graph> for AnyGraph {
    fn from(g: Graph) -> Self {
        AnyGraph::Undirected(g)
    }
}

impl From<Digraph> for AnyGraph {
    fn from(g: Digraph) -> Self {
        AnyGraph::Directed(g)
    }
}

impl AnyGraph {
    pub fn order(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.order(),
            AnyGraph::Directed(g) => g.order(),
        }
    }

    pub fn is_directed(&self) -> bool {
        matches!(self, AnyGraph::Directed(_))
    }

    pub fn pair_list(&self) -> Vec<(usize, usize)> {
        match self {
            AnyGraph::Undirected(g) => g.sorted_edges(),
            AnyGraph::Directed(g) => g.sorted_arcs(),
        }
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        match self {
            AnyGraph::Undirected(g) => g.canonical_key(),
            AnyGraph::Directed(g) => g.canonical_key(),
        }
    }

    pub fn sequence(&self) -> AnySequence {
        match self {
            AnyGraph::Undirected(g) => AnySequence::Undirected(g.degree_sequence()),
            AnyGraph::Directed(g) => AnySequence::Directed(g.degree_sequence()),
        }
    }
}
