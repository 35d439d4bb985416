//! Text formats.
//!
//! Edge list: a header `undirected n=<n>` or `directed n=<n>`, then one
//! `u v` pair per line (0-based). Degree sequence: `a_1 a_2 ... a_n` or
//! `a_1/b_1 ... a_n/b_n` (out/in). Both allow `#` comments and blank lines.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{AnyGraph, AnySequence, Digraph, Graph, Realization};

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn meaningful(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, strip(l))).filter(|(_, l)| !l.is_empty())
}

pub fn parse_edge_list(text: &str) -> Result<AnyGraph> {
    let mut lines = meaningful(text);
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty edge list".into() })?;
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut words = header.split_whitespace();
    let directed = match words.next() {
        Some("undirected") => false,
        Some("directed") => true,
        other => return Err(perr(hline, format!("expected `undirected` or `directed`, got {other:?}"))),
    };
    let n: usize = words
        .next()
        .and_then(|w| w.strip_prefix("n="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| perr(hline, "header needs `n=<count>`".into()))?;
    let mut pairs = Vec::new();
    for (ln, line) in lines {
        let nums: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = nums[..] else {
            return Err(perr(ln, format!("expected `u v`, got `{line}`")));
        };
        let parse = |t: &str| t.parse::<usize>().map_err(|_| perr(ln, format!("bad vertex id `{t}`")));
        pairs.push((ln, parse(u)?, parse(v)?));
    }
    let locate = |ln: usize, e: Error| match e {
        Error::InvalidInput(msg) => perr(ln, msg),
        other => other,
    };
    if directed {
        let mut g = Digraph::new(n);
        for (ln, u, v) in pairs {
            g.add_arc(u, v).map_err(|e| locate(ln, e))?;
        }
        Ok(AnyGraph::Directed(g))
    } else {
        let mut g = Graph::new(n);
        for (ln, u, v) in pairs {
            g.add_edge(u, v).map_err(|e| locate(ln, e))?;
        }
        Ok(AnyGraph::Undirected(g))
    }
}

pub fn edge_list<G: Realization>(g: &G) -> String {
    let mut s = format!("{} n={}\n", if G::DIRECTED { "directed" } else { "undirected" }, g.order());
    for (u, v) in g.pair_list() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn write_edge_list(g: &AnyGraph) -> String {
    match g {
        AnyGraph::Undirected(g) => edge_list(g),
        AnyGraph::Directed(g) => edge_list(g),
    }
}

pub fn parse_sequence(text: &str) -> Result<AnySequence> {
    let joined: Vec<&str> = meaningful(text).map(|(_, l)| l).collect();
    if joined.is_empty() {
        return Err(Error::invalid("empty degree sequence"));
    }
    joined.join(" ").parse()
}

/// Either a sequence or a realization, told apart by the edge-list header.
#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Sequence(AnySequence),
    Graph(AnyGraph),
}

pub fn parse_input(text: &str) -> Result<Input> {
    let first = meaningful(text).next().map(|(_, l)| l).unwrap_or("");
    if first.starts_with("undirected") || first.starts_with("directed") {
        parse_edge_list(text).map(Input::Graph)
    } else {
        parse_sequence(text).map(Input::Sequence)
    }
}

/// JSON shape of a realization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphJson {
    pub directed: bool,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphJson {
    pub fn of<G: Realization>(g: &G) -> Self {
        GraphJson { directed: G::DIRECTED, n: g.order(), edges: g.pair_list() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip() {
        let g = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let text = edge_list(&g);
        assert_eq!(text, "directed n=3\n0 1\n1 2\n2 0\n");
        assert_eq!(parse_edge_list(&text).unwrap(), AnyGraph::Directed(g));
        let u = parse_edge_list("# matching\nundirected n=4\n0 1 # first\n\n3 2\n").unwrap();
        assert_eq!(u.pair_list(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn edge_list_errors_carry_lines() {
        assert!(matches!(parse_edge_list("graph n=3"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("undirected n=3\n0 1\n1 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_edge_list("undirected n=3\n0 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("directed n=2\n0 1\n0 1\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn inputs_are_told_apart() {
        assert!(matches!(parse_input("1 1 1 1\n").unwrap(), Input::Sequence(AnySequence::Undirected(_))));
        assert!(matches!(parse_input("# c\n1/1 1/1\n").unwrap(), Input::Sequence(AnySequence::Directed(_))));
        assert!(matches!(parse_input("directed n=2\n").unwrap(), Input::Graph(_)));
        assert!(parse_sequence("# nothing\n").is_err());
    }
}
