//! Simple undirected graphs on vertices `0..n` with a canonical edge order.
//!
//! Edges are stored as `(u, v)` with `u < v`, sorted lexicographically. The
//! position of an edge in that list is its *edge index*; coloring search, CNF
//! variable numbering and witness serialization all refer to this index.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Adjacency rows are `u64` bitsets.
pub const MAX_VERTICES: usize = 64;

const NO_EDGE: u32 = u32::MAX;

pub type Edge = (usize, usize);

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<u64>,
    index: Vec<u32>,
}

impl Graph {
    /// Builds a graph from an arbitrary list of vertex pairs. Pairs may be
    /// given in either orientation and any order; loops, duplicates and
    /// out-of-range endpoints are rejected.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted(n, edges))
    }

    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        Self::from_sorted(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_sorted(n, edges)
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle(n: usize) -> Self {
        assert!((3..=MAX_VERTICES).contains(&n));
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn path(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star is simple")
    }

    /// Builds from a bitmask over the upper triangle, bit `t` set for the
    /// `t`-th pair in lexicographic order.
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        let mut edges = Vec::new();
        let mut t = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> t & 1 == 1 {
                    edges.push((u, v));
                }
                t += 1;
            }
        }
        Self::from_sorted(n, edges)
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![0u64; n];
        let mut index = vec![NO_EDGE; n * n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            index[u * n + v] = i as u32;
            index[v * n + u] = i as u32;
        }
        Graph {
            n,
            edges,
            adj,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        match self.index[u * self.n + v] {
            NO_EDGE => None,
            i => Some(i as usize),
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Neighborhood of `v` as a bitset.
    pub fn adjacency(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Missing pairs `(u, v)`, `u < v`, in lexicographic order.
    pub fn non_edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// `G + uv`. Errors when `uv` is already an edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if self.has_edge(u, v) {
            return Err(Error::InvalidGraph(format!("({u}, {v}) is already an edge")));
        }
        Graph::new(self.n, self.edges.iter().copied().chain([(u, v)]))
    }

    /// Spanning subgraph keeping the edges whose indices are listed.
    pub fn spanning_subgraph(&self, keep: impl IntoIterator<Item = usize>) -> Graph {
        let mut edges: Vec<Edge> = keep.into_iter().map(|i| self.edges[i]).collect();
        edges.sort_unstable();
        edges.dedup();
        Self::from_sorted(self.n, edges)
    }

    /// Subgraph induced on the vertex bitset `set`, keeping original labels
    /// (vertices outside the set become isolated).
    pub fn induced_on(&self, set: u64) -> Graph {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| set >> u & 1 == 1 && set >> v & 1 == 1)
            .collect();
        Self::from_sorted(self.n, edges)
    }

    /// Graph with vertex `v` relabeled to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabeling by a permutation preserves simplicity")
    }

    /// Pairs of distinct edges sharing an endpoint, `(e, f)` with `e < f`,
    /// in lexicographic order.
    pub fn incident_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            for (f, &(c, d)) in self.edges.iter().enumerate().skip(e + 1) {
                if a == c || a == d || b == c || b == d {
                    out.push((e, f));
                }
            }
        }
        out
    }

    /// For each edge, the indices of the other edges sharing an endpoint.
    pub fn edge_neighbors(&self) -> Vec<Vec<usize>> {
        self.edges
            .iter()
            .enumerate()
            .map(|(e, &(a, b))| {
                let mut out: Vec<usize> = self
                    .neighbors(a)
                    .filter(|&w| w != b)
                    .map(|w| self.edge_index(a, w).unwrap())
                    .chain(
                        self.neighbors(b)
                            .filter(|&w| w != a)
                            .map(|w| self.edge_index(b, w).unwrap()),
                    )
                    .collect();
                out.sort_unstable();
                debug_assert!(!out.contains(&e));
                out
            })
            .collect()
    }

    /// BFS distances from `s`; `None` for unreachable vertices.
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::from([s]);
        dist[s] = Some(0);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for y in self.neighbors(x) {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Upper-triangle bitmask, the inverse of [`Graph::from_pair_mask`].
    /// Only meaningful for `n <= 11`.
    pub fn pair_mask(&self) -> u64 {
        assert!(self.n <= 11);
        let mut mask = 0u64;
        for &(u, v) in &self.edges {
            mask |= 1 << pair_position(self.n, u, v);
        }
        mask
    }
}

/// Position of pair `(u, v)`, `u < v`, in the lexicographic pair order.
pub(crate) fn pair_position(n: usize, u: usize, v: usize) -> usize {
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Bits `0..=i`.
pub fn at_most(i: usize) -> u64 {
    if i >= 63 {
        !0
    } else {
        (2u64 << i) - 1
    }
}

/// Iterates the set bits of a `u64`.
pub fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let i = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(i)
        }
    })
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Serialized form: `{"n": .., "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for EdgeList {
    fn from(g: &Graph) -> Self {
        EdgeList {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<EdgeList> for Graph {
    type Error = Error;

    fn try_from(list: EdgeList) -> Result<Self> {
        Graph::new(list.n, list.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_are_sorted_and_indexed() {
        let g = Graph::new(4, [(3, 1), (0, 2), (2, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 2), (1, 3)]);
        assert_eq!(g.edge_index(3, 1), Some(2));
        assert_eq!(g.edge_index(0, 1), None);
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::new(65, []).is_err());
    }

    #[test]
    fn pair_mask_round_trip() {
        let g = Graph::new(6, [(0, 5), (1, 2), (3, 4), (2, 5)]).unwrap();
        assert_eq!(Graph::from_pair_mask(6, g.pair_mask()), g);
        assert_eq!(pair_position(4, 0, 1), 0);
        assert_eq!(pair_position(4, 2, 3), 5);
    }

    #[test]
    fn incident_pairs_of_triangle() {
        assert_eq!(Graph::complete(3).incident_pairs().len(), 3);
        assert_eq!(Graph::complete(4).incident_pairs().len(), 12);
    }

    #[test]
    fn with_edge_rejects_existing() {
        let g = Graph::path(3);
        assert!(g.with_edge(0, 1).is_err());
        assert_eq!(g.with_edge(0, 2).unwrap(), Graph::complete(3));
    }
}
