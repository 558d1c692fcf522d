//! Enumeration of `k`-cycle copies.

use serde::{Deserialize, Serialize};

use crate::graph::{at_most, Graph};

/// A `k`-cycle copy given by its vertex sequence, stored in canonical form:
/// the smallest vertex first, then the orientation whose second vertex is
/// smaller. This is the lexicographic minimum over the `2k` symmetries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleEmbedding {
    vertices: Vec<usize>,
}

impl CycleEmbedding {
    /// Canonicalizes an arbitrary closed vertex sequence. Adjacency in a host
    /// graph is not checked here.
    pub fn canonical(seq: &[usize]) -> Self {
        let k = seq.len();
        assert!(k >= 3, "a cycle needs at least three vertices");
        let start = (0..k).min_by_key(|&i| seq[i]).unwrap();
        let fwd = seq[(start + 1) % k];
        let bwd = seq[(start + k - 1) % k];
        let vertices = if fwd < bwd {
            (0..k).map(|i| seq[(start + i) % k]).collect()
        } else {
            (0..k).map(|i| seq[(start + k - i) % k]).collect()
        };
        CycleEmbedding { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge indices of the cycle in walk order: `v0v1, v1v2, ..., v(k-1)v0`.
    /// Panics if a consecutive pair is not an edge of `g`.
    pub fn edge_indices(&self, g: &Graph) -> Vec<usize> {
        let k = self.vertices.len();
        (0..k)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
                g.edge_index(a, b)
                    .unwrap_or_else(|| panic!("({a}, {b}) is not an edge of the host"))
            })
            .collect()
    }

    pub fn lies_in(&self, g: &Graph) -> bool {
        let k = self.vertices.len();
        (0..k).all(|i| g.has_edge(self.vertices[i], self.vertices[(i + 1) % k]))
    }
}

/// Every `C_k` copy of `g` exactly once, in lexicographic order of the
/// canonical vertex sequences.
pub fn enumerate_cycles(g: &Graph, k: usize) -> Vec<CycleEmbedding> {
    let mut out = Vec::new();
    if k < 3 || k > g.n() {
        return out;
    }
    let mut path = Vec::with_capacity(k);
    for s in 0..g.n() {
        // only vertices above s may appear after it
        let allowed = !at_most(s);
        path.clear();
        path.push(s);
        extend(g, k, allowed, 1u64 << s, &mut path, &mut out);
    }
    out
}

fn extend(
    g: &Graph,
    k: usize,
    allowed: u64,
    used: u64,
    path: &mut Vec<usize>,
    out: &mut Vec<CycleEmbedding>,
) {
    let last = *path.last().unwrap();
    if path.len() == k {
        if g.has_edge(last, path[0]) && path[1] < path[k - 1] {
            out.push(CycleEmbedding {
                vertices: path.clone(),
            });
        }
        return;
    }
    let mut candidates = g.adjacency(last) & allowed & !used;
    while candidates != 0 {
        let w = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        path.push(w);
        extend(g, k, allowed, used | 1 << w, path, out);
        path.pop();
    }
}

/// Edge-index lists of all `C_k` copies, in the order of [`enumerate_cycles`].
pub fn cycle_edge_sets(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    enumerate_cycles(g, k)
        .iter()
        .map(|c| c.edge_indices(g))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_rotation_and_reflection_invariant() {
        let a = CycleEmbedding::canonical(&[3, 1, 4, 2]);
        assert_eq!(a.vertices(), &[1, 3, 2, 4]);
        assert_eq!(CycleEmbedding::canonical(&[4, 1, 3, 2]), a);
        assert_eq!(CycleEmbedding::canonical(&[2, 4, 1, 3]), a);
    }

    #[test]
    fn k4_has_three_four_cycles() {
        let cycles = enumerate_cycles(&Graph::complete(4), 4);
        assert_eq!(cycles.len(), 3);
        let seqs: Vec<_> = cycles.iter().map(|c| c.vertices().to_vec()).collect();
        assert_eq!(seqs, vec![vec![0, 1, 2, 3], vec![0, 1, 3, 2], vec![0, 2, 1, 3]]);
    }

    #[test]
    fn c5_has_one_five_cycle() {
        let cycles = enumerate_cycles(&Graph::cycle(5), 5);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].vertices(), &[0, 1, 2, 3, 4]);
        assert_eq!(cycles[0].edge_indices(&Graph::cycle(5)).len(), 5);
    }

    #[test]
    fn out_of_range_lengths_are_empty() {
        assert!(enumerate_cycles(&Graph::complete(4), 5).is_empty());
        assert!(enumerate_cycles(&Graph::complete(4), 2).is_empty());
        assert!(enumerate_cycles(&Graph::path(6), 4).is_empty());
    }

    #[test]
    fn k5_cycle_counts() {
        // (5 choose k) * (k-1)! / 2
        let g = Graph::complete(5);
        assert_eq!(enumerate_cycles(&g, 3).len(), 10);
        assert_eq!(enumerate_cycles(&g, 4).len(), 15);
        assert_eq!(enumerate_cycles(&g, 5).len(), 12);
    }
}
