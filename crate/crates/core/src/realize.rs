//! Graphicality tests and greedy construction of a first realization.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, DiDegreeSequence, Digraph, Graph};

/// The first condition a sequence fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// 1-based prefix length of the failing inequality, when one applies.
    pub index: Option<usize>,
    pub description: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description)
    }
}

#[derive(Clone, Debug)]
pub struct RealizabilityReport<G> {
    pub graphical: bool,
    pub witness: Option<G>,
    pub violated_condition: Option<Violation>,
}

/// Parity plus the Erdős–Gallai inequalities on the non-increasing
/// rearrangement.
pub fn erdos_gallai_violation(s: &DegreeSequence) -> Option<Violation> {
    let n = s.len();
    if let Some(v) = s.degrees().iter().position(|&d| d >= n) {
        return Some(Violation {
            index: None,
            description: format!("vertex {v} has degree {} but only {} other vertices exist", s.degrees()[v], n - 1),
        });
    }
    if s.total() % 2 == 1 {
        return Some(Violation { index: None, description: format!("degree sum {} is odd", s.total()) });
    }
    let mut d = s.degrees().to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let mut prefix = 0usize;
    for k in 1..=n {
        prefix += d[k - 1];
        let tail: usize = d[k..].iter().map(|&x| x.min(k)).sum();
        let rhs = k * (k - 1) + tail;
        if prefix > rhs {
            return Some(Violation {
                index: Some(k),
                description: format!("Erdős–Gallai inequality fails at k={k}: {prefix} > {rhs}"),
            });
        }
    }
    None
}

/// Degree balance plus the Fulkerson–Chen inequalities on the sequence sorted
/// lexicographically (out-degree, then in-degree, both non-increasing).
pub fn fulkerson_chen_violation(s: &DiDegreeSequence) -> Option<Violation> {
    let n = s.len();
    if let Some(v) = s.pairs().iter().position(|&(a, b)| a >= n || b >= n) {
        let (a, b) = s.pairs()[v];
        return Some(Violation {
            index: None,
            description: format!("vertex {v} has degrees {a}/{b} but only {} other vertices exist", n - 1),
        });
    }
    if s.out_total() != s.in_total() {
        return Some(Violation {
            index: None,
            description: format!("out-degree sum {} differs from in-degree sum {}", s.out_total(), s.in_total()),
        });
    }
    let mut p = s.pairs().to_vec();
    p.sort_unstable_by(|x, y| y.cmp(x));
    let mut prefix = 0usize;
    for k in 1..=n {
        prefix += p[k - 1].0;
        let head: usize = p[..k].iter().map(|&(_, b)| b.min(k - 1)).sum();
        let tail: usize = p[k..].iter().map(|&(_, b)| b.min(k)).sum();
        if prefix > head + tail {
            return Some(Violation {
                index: Some(k),
                description: format!("Fulkerson–Chen inequality fails at k={k}: {prefix} > {}", head + tail),
            });
        }
    }
    None
}

pub fn is_graphical(s: &DegreeSequence) -> RealizabilityReport<Graph> {
    match erdos_gallai_violation(s) {
        Some(v) => RealizabilityReport { graphical: false, witness: None, violated_condition: Some(v) },
        None => {
            let g = havel_hakimi(s);
            RealizabilityReport { graphical: g.is_some(), witness: g, violated_condition: None }
        }
    }
}

pub fn is_digraphical(s: &DiDegreeSequence) -> RealizabilityReport<Digraph> {
    match fulkerson_chen_violation(s) {
        Some(v) => RealizabilityReport { graphical: false, witness: None, violated_condition: Some(v) },
        None => {
            let g = kleitman_wang(s);
            RealizabilityReport { graphical: g.is_some(), witness: g, violated_condition: None }
        }
    }
}

/// Havel–Hakimi realization. Ties on residual degree go to the lowest index.
pub fn realize_undirected(s: &DegreeSequence) -> Result<Graph> {
    if let Some(v) = erdos_gallai_violation(s) {
        return Err(Error::NotRealizable(v.description));
    }
    havel_hakimi(s).ok_or_else(|| Error::Inconsistent(format!("Havel–Hakimi failed on graphical sequence {s}")))
}

/// Kleitman–Wang realization.
///
/// The vertex with the largest residual out-degree (lowest index on ties) is
/// connected to the vertices of largest residual in-degree; ties among targets
/// are broken by larger residual out-degree, then lower index.
pub fn realize_directed(s: &DiDegreeSequence) -> Result<Digraph> {
    if let Some(v) = fulkerson_chen_violation(s) {
        return Err(Error::NotRealizable(v.description));
    }
    kleitman_wang(s).ok_or_else(|| Error::Inconsistent(format!("Kleitman–Wang failed on digraphical sequence {s}")))
}

fn havel_hakimi(s: &DegreeSequence) -> Option<Graph> {
    let n = s.len();
    let mut residual = s.degrees().to_vec();
    let mut g = Graph::new(n);
    loop {
        let Some(v) = (0..n).filter(|&v| residual[v] > 0).max_by_key(|&v| (residual[v], std::cmp::Reverse(v))) else {
            break;
        };
        let mut targets: Vec<usize> = (0..n).filter(|&u| u != v && residual[u] > 0).collect();
        if targets.len() < residual[v] {
            return None;
        }
        targets.sort_by_key(|&u| (std::cmp::Reverse(residual[u]), u));
        for &u in &targets[..residual[v]] {
            g.add_edge(v, u).ok()?;
            residual[u] -= 1;
        }
        residual[v] = 0;
    }
    Some(g)
}

fn kleitman_wang(s: &DiDegreeSequence) -> Option<Digraph> {
    let n = s.len();
    let mut out: Vec<usize> = s.pairs().iter().map(|p| p.0).collect();
    let mut inn: Vec<usize> = s.pairs().iter().map(|p| p.1).collect();
    let mut g = Digraph::new(n);
    loop {
        let Some(v) = (0..n).filter(|&v| out[v] > 0).max_by_key(|&v| (out[v], std::cmp::Reverse(v))) else {
            break;
        };
        let mut targets: Vec<usize> = (0..n).filter(|&u| u != v && inn[u] > 0).collect();
        if targets.len() < out[v] {
            return None;
        }
        targets.sort_by_key(|&u| (std::cmp::Reverse(inn[u]), std::cmp::Reverse(out[u]), u));
        for &u in &targets[..out[v]] {
            g.add_arc(v, u).ok()?;
            inn[u] -= 1;
        }
        out[v] = 0;
    }
    if inn.iter().any(|&x| x > 0) {
        return None;
    }
    Some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(d: &[usize]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec()).unwrap()
    }

    fn diseq(p: &[(usize, usize)]) -> DiDegreeSequence {
        DiDegreeSequence::new(p.to_vec()).unwrap()
    }

    #[test]
    fn complete_graph_is_graphical() {
        let r = is_graphical(&seq(&[3, 3, 3, 3]));
        assert!(r.graphical);
        assert_eq!(r.witness.unwrap().size(), 6);
    }

    #[test]
    fn odd_sum_rejected() {
        let r = is_graphical(&seq(&[2, 1]));
        assert!(!r.graphical);
        assert!(r.violated_condition.is_some());
        assert!(r.witness.is_none());
    }

    #[test]
    fn star_with_extra_degree_rejected() {
        // brute force: no 4-vertex graph has degrees (4,1,1,1); vertex 0 would need 4 neighbors
        let r = is_graphical(&seq(&[4, 1, 1, 1]));
        assert!(!r.graphical);
        // (3,3,1,1): sum even, degrees < n, but the Erdős–Gallai prefix k=2 fails
        let r = is_graphical(&seq(&[3, 3, 1, 1]));
        assert!(!r.graphical);
        assert_eq!(r.violated_condition.unwrap().index, Some(2));
    }

    #[test]
    fn havel_hakimi_examples() {
        let g = realize_undirected(&seq(&[1, 1, 1, 1])).unwrap();
        assert_eq!(g.sorted_edges(), vec![(0, 1), (2, 3)]);
        assert_eq!(realize_undirected(&seq(&[0, 0, 0])).unwrap().size(), 0);
        let t = realize_undirected(&seq(&[2, 2, 2])).unwrap();
        assert_eq!(t.sorted_edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(matches!(realize_undirected(&seq(&[2, 1])), Err(Error::NotRealizable(_))));
    }

    #[test]
    fn directed_examples() {
        let c = realize_directed(&diseq(&[(1, 1); 3])).unwrap();
        assert_eq!(c.degree_sequence(), diseq(&[(1, 1); 3]));
        assert_eq!(c.induced_3cycles().len(), 1);
        assert!(!is_digraphical(&diseq(&[(2, 0), (0, 1)])).graphical);
        let full = realize_directed(&diseq(&[(2, 2); 3])).unwrap();
        assert_eq!(full.size(), 6);
        assert_eq!(realize_directed(&diseq(&[(0, 0); 4])).unwrap().size(), 0);
        let blocked = diseq(&[(4, 1), (4, 1), (4, 1), (1, 4), (1, 4), (1, 4)]);
        assert_eq!(realize_directed(&blocked).unwrap().degree_sequence(), blocked);
    }

    #[test]
    fn chen_reports_index() {
        // a single vertex with out- and in-degree 1 would need a loop
        let r = is_digraphical(&diseq(&[(1, 1), (0, 0)]));
        assert!(!r.graphical);
        assert_eq!(r.violated_condition.unwrap().index, Some(1));
        assert!(is_digraphical(&diseq(&[(1, 1), (1, 1)])).graphical);
    }
}
