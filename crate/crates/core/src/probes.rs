//! Degree, distance and common-neighborhood probes.

use serde::Serialize;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    /// Largest `|N(u) ∩ N(v)|` over distinct `u, v`.
    pub max_common_neighbors: usize,
    /// `None` when the graph is disconnected (infinite diameter).
    pub diameter: Option<usize>,
    pub degree_one_vertices: usize,
}

pub fn structure_probes(g: &Graph) -> StructureReport {
    let n = g.n();
    let mut common = 0;
    for u in 0..n {
        for v in u + 1..n {
            common = common.max((g.adjacency(u) & g.adjacency(v)).count_ones() as usize);
        }
    }
    StructureReport {
        max_common_neighbors: common,
        diameter: diameter(g),
        degree_one_vertices: (0..n).filter(|&v| g.degree(v) == 1).count(),
    }
}

pub fn diameter(g: &Graph) -> Option<usize> {
    let mut best = 0;
    for s in 0..g.n() {
        for d in g.distances_from(s) {
            best = best.max(d?);
        }
    }
    Some(best)
}
