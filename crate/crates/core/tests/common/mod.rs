#![allow(dead_code)]

use degseq::arcswap::InducedCycleSet;
use degseq::realize::{is_digraphical, is_graphical};
use degseq::{DegreeSequence, DiDegreeSequence, Digraph, Graph};

/// Every labeled undirected sequence of length `n` with entries `<= max`.
pub fn undirected_sequences(n: usize, max: usize) -> Vec<DegreeSequence> {
    let mut out = Vec::new();
    let mut d = vec![0; n];
    loop {
        out.push(DegreeSequence::new(d.clone()).unwrap());
        let mut i = 0;
        while i < n && d[i] == max {
            d[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
        d[i] += 1;
    }
}

/// Every labeled directed sequence of length `n` with entries `<= max`.
pub fn directed_sequences(n: usize, max: usize) -> Vec<DiDegreeSequence> {
    let base = (max + 1) * (max + 1);
    let total = base.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let pairs = (0..n)
                .map(|_| {
                    let c = code % base;
                    code /= base;
                    (c / (max + 1), c % (max + 1))
                })
                .collect();
            DiDegreeSequence::new(pairs).unwrap()
        })
        .collect()
}

/// Directed sequences of length `n` with entries `<= max`, one per multiset
/// (pairs in non-increasing order).
pub fn directed_multisets(n: usize, max: usize) -> Vec<DiDegreeSequence> {
    let values: Vec<(usize, usize)> = (0..=max).flat_map(|a| (0..=max).map(move |b| (a, b))).rev().collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(values: &[(usize, usize)], start: usize, n: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<DiDegreeSequence>) {
        if cur.len() == n {
            out.push(DiDegreeSequence::new(cur.clone()).unwrap());
            return;
        }
        for i in start..values.len() {
            cur.push(values[i]);
            rec(values, i, n, cur, out);
            cur.pop();
        }
    }
    rec(&values, 0, n, &mut cur, &mut out);
    out
}

pub fn graphical(v: Vec<DegreeSequence>) -> Vec<DegreeSequence> {
    v.into_iter().filter(|s| is_graphical(s).graphical).collect()
}

pub fn digraphical(v: Vec<DiDegreeSequence>) -> Vec<DiDegreeSequence> {
    v.into_iter().filter(|s| is_digraphical(s).graphical).collect()
}

pub fn useq(d: &[usize]) -> DegreeSequence {
    DegreeSequence::new(d.to_vec()).unwrap()
}

pub fn dseq(p: &[(usize, usize)]) -> DiDegreeSequence {
    DiDegreeSequence::new(p.to_vec()).unwrap()
}

/// Hand-picked sequences on 5 and 6 vertices.
pub fn curated_undirected() -> Vec<DegreeSequence> {
    [
        &[2, 2, 2, 2, 2][..],
        &[3, 3, 2, 2, 2],
        &[4, 2, 2, 1, 1],
        &[3, 2, 2, 2, 1],
        &[1, 1, 1, 1, 1, 1],
        &[2, 2, 2, 2, 2, 2],
        &[3, 3, 2, 2, 1, 1],
        &[3, 3, 3, 3, 3, 3],
    ]
    .iter()
    .map(|d| useq(d))
    .collect()
}

pub fn curated_directed() -> Vec<DiDegreeSequence> {
    [
        &[(1, 1); 5][..],
        &[(2, 2); 5],
        &[(1, 1), (1, 1), (1, 1), (1, 1), (0, 0)],
        &[(2, 1), (1, 2), (1, 1), (1, 1), (1, 1)],
        &[(3, 1), (1, 2), (1, 2), (1, 1), (0, 0)],
        &[(2, 2), (2, 1), (1, 2), (1, 1), (1, 1)],
        &[(1, 1); 6],
        &[(4, 1), (4, 1), (4, 1), (1, 4), (1, 4), (1, 4)],
        &[(1, 1), (1, 1), (1, 1), (2, 2), (2, 2), (1, 1)],
        &[(2, 1), (2, 1), (1, 2), (1, 2), (1, 1), (1, 1)],
    ]
    .iter()
    .map(|p| dseq(p))
    .filter(|s| is_digraphical(s).graphical)
    .collect()
}

/// Brute force: every simple graph on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| Graph::from_edges(n, pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p)).unwrap())
        .collect()
}

/// Brute force: every simple digraph on `n` vertices.
pub fn all_digraphs(n: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| Digraph::from_arcs(n, pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p)).unwrap())
        .collect()
}

/// Triples inducing a directed 3-cycle (either orientation) in every realization.
pub fn cycle_set_oracle(realizations: &[Digraph]) -> Vec<InducedCycleSet> {
    let Some(first) = realizations.first() else { return Vec::new() };
    let n = first.order();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let all = realizations.iter().all(|g| g.is_induced_3cycle(a, b, c) || g.is_induced_3cycle(a, c, b));
                if all {
                    out.push(InducedCycleSet::new([a, b, c]));
                }
            }
        }
    }
    out
}
