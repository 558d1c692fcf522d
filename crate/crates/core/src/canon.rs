//! Canonical labeling and exhaustive generation of small graphs.
//!
//! The canonical form of a graph is the smallest upper-triangle pair mask
//! over all leaves of an individualization-refinement tree: color
//! refinement splits vertices by (color, multiset of neighbor colors) until
//! stable, then the first non-singleton cell is split by individualizing each
//! of its vertices in turn. No automorphism pruning is done; at `n <= 11`
//! the tree is small.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{pair_position, Graph};

pub const MAX_CANON_N: usize = 11;
pub const MAX_ENUMERATION_N: usize = 8;

/// Canonical pair mask of `g`. Two graphs are isomorphic iff their canonical
/// masks (and orders) agree.
pub fn canonical_mask(g: &Graph) -> u64 {
    canonical_labeling(g).0
}

/// Canonical mask together with a permutation `perm` such that relabeling
/// `g` by `v -> perm[v]` yields the canonical graph.
pub fn canonical_labeling(g: &Graph) -> (u64, Vec<usize>) {
    let n = g.n();
    assert!(n <= MAX_CANON_N, "canonical labeling supports n <= {MAX_CANON_N}");
    if n == 0 {
        return (0, Vec::new());
    }
    let colors = refine(g, vec![0; n]);
    let mut best: Option<(u64, Vec<usize>)> = None;
    search(g, colors, &mut best);
    best.expect("at least one leaf")
}

pub fn canonical_form(g: &Graph) -> Graph {
    Graph::from_pair_mask(g.n(), canonical_mask(g))
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_mask(a) == canonical_mask(b)
}

fn search(g: &Graph, colors: Vec<usize>, best: &mut Option<(u64, Vec<usize>)>) {
    let n = g.n();
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c] += 1;
    }
    let target = (0..n).find(|&c| counts[c] > 1);
    let Some(cell) = target else {
        // discrete: colors are a permutation
        let mask = permuted_mask(g, &colors);
        if best.as_ref().is_none_or(|(m, _)| mask < *m) {
            *best = Some((mask, colors));
        }
        return;
    };
    for v in (0..n).filter(|&v| colors[v] == cell) {
        let keyed: Vec<(usize, usize)> = colors
            .iter()
            .enumerate()
            .map(|(w, &c)| (c, usize::from(c == cell && w != v)))
            .collect();
        search(g, refine(g, rank(&keyed)), best);
    }
}

fn permuted_mask(g: &Graph, perm: &[usize]) -> u64 {
    let n = g.n();
    let mut mask = 0u64;
    for &(u, v) in g.edges() {
        let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
        mask |= 1 << pair_position(n, a, b);
    }
    mask
}

/// Dense ranks of `keys`, preserving their order.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap())
        .collect()
}

fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    let n = g.n();
    let mut classes = count_classes(&colors);
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = rank(&keys);
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// each in canonical form, ordered by edge count then canonical mask.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::TooLarge(format!(
            "exhaustive graph enumeration supports n <= {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    let mut level: Vec<u64> = vec![0];
    for size in 1..=n {
        let mut next = BTreeSet::new();
        for &mask in &level {
            let base = Graph::from_pair_mask(size - 1, mask);
            for subset in 0u64..1 << (size - 1) {
                let edges = base
                    .edges()
                    .iter()
                    .copied()
                    .chain((0..size - 1).filter(|&w| subset >> w & 1 == 1).map(|w| (w, size - 1)));
                let g = Graph::new(size, edges).expect("extension is simple");
                next.insert(canonical_mask(&g));
            }
        }
        level = next.into_iter().collect();
    }
    let mut graphs: Vec<Graph> = level.into_iter().map(|m| Graph::from_pair_mask(n, m)).collect();
    graphs.sort_by_key(|g| (g.edge_count(), g.pair_mask()));
    Ok(graphs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| enumerate_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn refuses_large_n() {
        assert!(matches!(enumerate_graphs(9), Err(Error::TooLarge(_))));
    }

    #[test]
    fn labeling_reproduces_mask() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (0, 5)]).unwrap();
        let (mask, perm) = canonical_labeling(&g);
        assert_eq!(g.relabel(&perm).pair_mask(), mask);
    }

    #[test]
    fn isomorphism_examples() {
        let p = Graph::path(4);
        let q = Graph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert!(are_isomorphic(&p, &q));
        assert!(!are_isomorphic(&p, &Graph::star(3)));
        // C6 versus two triangles: same degree sequence
        let two_triangles = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!are_isomorphic(&Graph::cycle(6), &two_triangles));
    }
}
