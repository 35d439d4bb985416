//! Digraph families on which 2-swaps alone cannot reorient 3-cycles.
//!
//! Vertices `0..3k` form the blocks `{3i, 3i+1, 3i+2}`, each carrying the
//! directed cycle `3i -> 3i+1 -> 3i+2 -> 3i`, with an arc from every vertex of
//! block `i` to every vertex of each block `j > i`. The attached families add
//! an attachment after the blocks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DiDegreeSequence, Digraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Blocks only.
    Example1,
    /// Every block vertex points to each vertex of a bidirected clique.
    OneDirection,
    /// Block vertices and a bidirected clique are joined both ways; an
    /// independent set points into the clique.
    CliquePartition,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "example1" => Ok(Family::Example1),
            "one-direction" | "appendix-one-direction" => Ok(Family::OneDirection),
            "clique-partition" | "appendix-clique-partition" => Ok(Family::CliquePartition),
            _ => Err(Error::invalid(format!("unknown family `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockedInstanceSpec {
    pub blocks: usize,
    pub family: Family,
    /// Size of the bidirected clique (attached families).
    pub clique: usize,
    /// Size of the independent set (clique-partition family).
    pub independent: usize,
}

impl BlockedInstanceSpec {
    pub fn new(family: Family, blocks: usize) -> Self {
        BlockedInstanceSpec { blocks, family, clique: 2, independent: 2 }
    }

    pub fn order(&self) -> usize {
        match self.family {
            Family::Example1 => 3 * self.blocks,
            Family::OneDirection => 3 * self.blocks + self.clique,
            Family::CliquePartition => 3 * self.blocks + self.clique + self.independent,
        }
    }
}

fn block_arcs(k: usize) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    for i in 0..k {
        let b = 3 * i;
        arcs.extend([(b, b + 1), (b + 1, b + 2), (b + 2, b)]);
        for v in b..b + 3 {
            arcs.extend((b + 3..3 * k).map(|w| (v, w)));
        }
    }
    arcs
}

pub fn generate_blocked(spec: &BlockedInstanceSpec) -> Result<Digraph> {
    let k = spec.blocks;
    if k < 1 {
        return Err(Error::invalid("at least one block is required"));
    }
    let n = spec.order();
    let mut arcs = block_arcs(k);
    let clique = 3 * k..3 * k + spec.clique;
    let clique_pairs = clique.clone().flat_map(|u| clique.clone().filter(move |&v| v != u).map(move |v| (u, v)));
    match spec.family {
        Family::Example1 => {}
        Family::OneDirection => {
            arcs.extend(clique_pairs);
            arcs.extend((0..3 * k).flat_map(|v| clique.clone().map(move |w| (v, w))));
        }
        Family::CliquePartition => {
            arcs.extend(clique_pairs);
            for v in 0..3 * k {
                for w in clique.clone() {
                    arcs.extend([(v, w), (w, v)]);
                }
            }
            for x in clique.end..n {
                arcs.extend(clique.clone().map(|w| (x, w)));
            }
        }
    }
    Digraph::from_arcs(n, arcs)
}

/// Blocks only, `k` of them.
pub fn example1(k: usize) -> Result<Digraph> {
    generate_blocked(&BlockedInstanceSpec::new(Family::Example1, k))
}

/// Degree sequence of [`example1`]: block `i` has `(1 + 3(k-1-i), 1 + 3i)`.
pub fn example1_sequence(k: usize) -> Result<DiDegreeSequence> {
    if k < 1 {
        return Err(Error::invalid("at least one block is required"));
    }
    DiDegreeSequence::new((0..3 * k).map(|v| (1 + 3 * (k - 1 - v / 3), 1 + 3 * (v / 3))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcswap::{detect_induced_cycle_sets, InducedCycleSet};
    use crate::moves::applicable_directed_swaps;
    use crate::statespace::enumerate_directed;

    #[test]
    fn single_block_is_a_triangle() {
        let g = example1(1).unwrap();
        assert_eq!(g.sorted_arcs(), vec![(0, 1), (1, 2), (2, 0)]);
        assert!(example1(0).is_err());
    }

    #[test]
    fn two_blocks_degrees_and_stall() {
        let g = example1(2).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.degree_sequence(), example1_sequence(2).unwrap());
        assert_eq!(g.degree_sequence().pairs()[0], (4, 1));
        assert_eq!(g.degree_sequence().pairs()[5], (1, 4));
        assert!(applicable_directed_swaps(&g).is_empty());
        // four realizations: the two orientations of each block
        assert_eq!(enumerate_directed(&g.degree_sequence(), 6).unwrap().len(), 4);
    }

    #[test]
    fn attached_families_keep_their_cycle_sets() {
        for family in [Family::OneDirection, Family::CliquePartition] {
            for blocks in [1, 2] {
                let mut spec = BlockedInstanceSpec::new(family, blocks);
                spec.independent = 1;
                let g = generate_blocked(&spec).unwrap();
                assert_eq!(g.order(), spec.order());
                assert!(applicable_directed_swaps(&g).is_empty(), "{family:?} {blocks}");
                let sets = detect_induced_cycle_sets(&g);
                let want: Vec<_> = (0..blocks).map(|i| InducedCycleSet::new([3 * i, 3 * i + 1, 3 * i + 2])).collect();
                assert_eq!(sets, want, "{family:?} {blocks}");
                if g.order() <= 7 {
                    let all = enumerate_directed(&g.degree_sequence(), 7).unwrap();
                    assert_eq!(all.len(), 1 << blocks, "{family:?} {blocks}");
                }
            }
        }
    }
}
