//! Maximum `C_k`-free spanning subgraphs by branch-and-bound.

use serde::Serialize;

use crate::cycles::cycle_edge_sets;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Hosts with more edges are refused.
pub const MAX_HOST_EDGES: usize = 30;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MaxFreeStats {
    pub nodes: u64,
    pub pruned_by_bound: u64,
    pub pruned_by_cycle: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MaxFreeResult {
    pub best_count: usize,
    /// Host edge indices kept, ascending.
    pub selected: Vec<usize>,
    #[serde(skip)]
    pub witness: Graph,
    pub stats: MaxFreeStats,
}

/// A `C_k`-free spanning subgraph of `g` with the most edges. Among optima
/// the lexicographically smallest set of kept edge indices is returned.
pub fn max_cycle_free_subgraph(g: &Graph, k: usize) -> Result<MaxFreeResult> {
    let m = g.edge_count();
    if m > MAX_HOST_EDGES {
        return Err(Error::TooLarge(format!(
            "host has {m} edges, exhaustive mode supports at most {MAX_HOST_EDGES}"
        )));
    }
    let cycles = cycle_edge_sets(g, k);
    let mut through = vec![Vec::new(); m];
    for (i, c) in cycles.iter().enumerate() {
        for &e in c {
            through[e].push(i);
        }
    }
    let mut bb = Bb {
        k,
        m,
        through,
        // selected edges per cycle
        filled: vec![0; cycles.len()],
        chosen: Vec::new(),
        best: None,
        stats: MaxFreeStats::default(),
    };
    bb.descend(0);
    let selected = bb.best.expect("the empty subgraph is always feasible");
    let witness = g.spanning_subgraph(selected.iter().copied());
    debug_assert!(crate::cycles::enumerate_cycles(&witness, k).is_empty());
    Ok(MaxFreeResult {
        best_count: selected.len(),
        selected,
        witness,
        stats: bb.stats,
    })
}

struct Bb {
    k: usize,
    m: usize,
    through: Vec<Vec<usize>>,
    filled: Vec<usize>,
    chosen: Vec<usize>,
    best: Option<Vec<usize>>,
    stats: MaxFreeStats,
}

impl Bb {
    fn descend(&mut self, e: usize) {
        self.stats.nodes += 1;
        let best = self.best.as_ref().map_or(0, Vec::len);
        if self.best.is_some() && self.chosen.len() + (self.m - e) <= best {
            self.stats.pruned_by_bound += 1;
            return;
        }
        if e == self.m {
            // strictly better, or the first leaf
            self.best = Some(self.chosen.clone());
            return;
        }
        // keep e first, so the first optimum reached is lexicographically smallest
        if self.through[e].iter().all(|&c| self.filled[c] + 1 < self.k) {
            for &c in &self.through[e] {
                self.filled[c] += 1;
            }
            self.chosen.push(e);
            self.descend(e + 1);
            self.chosen.pop();
            for &c in &self.through[e] {
                self.filled[c] -= 1;
            }
        } else {
            self.stats.pruned_by_cycle += 1;
        }
        self.descend(e + 1);
    }
}

/// Upper bound on the number of colors in a proper coloring of `g` without
/// a rainbow `C_k`: one edge of each color forms a rainbow subgraph, which
/// must be `C_k`-free. Exact for hosts within [`MAX_HOST_EDGES`]; larger
/// hosts get `|E|` minus the size of a greedy packing of edge-disjoint
/// `C_k` copies, each of which loses at least one edge.
pub fn palette_ceiling_by_peeling(g: &Graph, k: usize) -> usize {
    if g.edge_count() <= MAX_HOST_EDGES {
        return max_cycle_free_subgraph(g, k)
            .expect("size checked")
            .best_count;
    }
    let mut used = vec![false; g.edge_count()];
    let mut packed = 0;
    for c in cycle_edge_sets(g, k) {
        if c.iter().all(|&e| !used[e]) {
            for &e in &c {
                used[e] = true;
            }
            packed += 1;
        }
    }
    g.edge_count() - packed
}

/// Ceiling for a graph made of a base with known color maximum plus
/// `added_edges` further edges: each new edge brings at most one new color.
pub fn incremental_ceiling(base_max_colors: usize, added_edges: usize) -> usize {
    base_max_colors + added_edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_hosts() {
        assert_eq!(max_cycle_free_subgraph(&Graph::cycle(6), 6).unwrap().best_count, 5);
        // every edge of K4 lies on a 4-cycle and K4 - e still has one
        let k4 = max_cycle_free_subgraph(&Graph::complete(4), 4).unwrap();
        assert_eq!(k4.best_count, 4);
        assert_eq!(k4.selected, vec![0, 1, 2, 3]);
        assert_eq!(max_cycle_free_subgraph(&Graph::path(5), 4).unwrap().best_count, 4);
    }

    #[test]
    fn guard() {
        assert!(matches!(max_cycle_free_subgraph(&Graph::complete(9), 4), Err(Error::TooLarge(_))));
    }

    #[test]
    fn forest_ceiling_is_edge_count() {
        assert_eq!(palette_ceiling_by_peeling(&Graph::star(5), 4), 5);
        assert_eq!(palette_ceiling_by_peeling(&Graph::path(40), 6), 39);
    }
}
