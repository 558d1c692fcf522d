//! Slow, obviously-correct reference implementations shared by the test
//! targets. Nothing here calls into the library beyond `Graph` accessors.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rainbow_saturation::Graph;

/// Edge-index sets of all `k`-cycles, found by trying every vertex sequence.
pub fn oracle_cycles(g: &Graph, k: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let mut seq = Vec::with_capacity(k);
    fn extend(g: &Graph, k: usize, seq: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if seq.len() == k {
            if g.has_edge(seq[k - 1], seq[0]) {
                let mut es: Vec<usize> = (0..k)
                    .map(|i| g.edge_index(seq[i], seq[(i + 1) % k]).unwrap())
                    .collect();
                es.sort_unstable();
                out.insert(es);
            }
            return;
        }
        for v in 0..g.n() {
            if seq.contains(&v) {
                continue;
            }
            if let Some(&last) = seq.last() {
                if !g.has_edge(last, v) {
                    continue;
                }
            }
            seq.push(v);
            extend(g, k, seq, out);
            seq.pop();
        }
    }
    if k >= 3 {
        extend(g, k, &mut seq, &mut out);
    }
    out
}

fn proper_so_far(g: &Graph, colors: &[usize]) -> bool {
    let e = colors.len() - 1;
    let (a, b) = g.edge(e);
    (0..e).all(|f| {
        let (c, d) = g.edge(f);
        colors[f] != colors[e] || (a != c && a != d && b != c && b != d)
    })
}

fn has_rainbow(cycles: &BTreeSet<Vec<usize>>, colors: &[usize]) -> bool {
    cycles.iter().any(|cyc| {
        let set: BTreeSet<usize> = cyc.iter().map(|&e| colors[e]).collect();
        set.len() == cyc.len()
    })
}

/// Visits every proper coloring up to renaming of colors, as color vectors
/// in first-use order. Stops when `visit` returns true.
pub fn for_each_proper_coloring(g: &Graph, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    fn go(g: &Graph, colors: &mut Vec<usize>, used: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if colors.len() == g.edge_count() {
            return visit(colors);
        }
        for c in 0..=used {
            colors.push(c);
            if proper_so_far(g, colors) && go(g, colors, used.max(c + 1), visit) {
                return true;
            }
            colors.pop();
        }
        false
    }
    go(g, &mut Vec::new(), 0, &mut visit)
}

/// Whether some proper coloring has no rainbow `C_k`.
pub fn oracle_feasible(g: &Graph, k: usize) -> bool {
    let cycles = oracle_cycles(g, k);
    for_each_proper_coloring(g, |c| !has_rainbow(&cycles, c))
}

/// Color counts reachable by proper rainbow-`C_k`-free colorings.
pub fn oracle_color_counts(g: &Graph, k: usize) -> BTreeSet<usize> {
    let cycles = oracle_cycles(g, k);
    let mut out = BTreeSet::new();
    for_each_proper_coloring(g, |c| {
        if !has_rainbow(&cycles, c) {
            out.insert(c.iter().max().map_or(0, |m| m + 1));
        }
        false
    });
    out
}

/// Rainbow `C_k`-saturation straight from the definition.
pub fn oracle_saturated(g: &Graph, k: usize) -> bool {
    oracle_feasible(g, k)
        && g.non_edges()
            .into_iter()
            .all(|(u, v)| !oracle_feasible(&g.with_edge(u, v).unwrap(), k))
}

/// Largest `C_k`-free spanning subgraph size over all edge subsets.
pub fn oracle_max_free(g: &Graph, k: usize) -> usize {
    let cycles: Vec<u64> = oracle_cycles(g, k)
        .into_iter()
        .map(|c| c.iter().fold(0u64, |m, &e| m | 1 << e))
        .collect();
    let m = g.edge_count();
    assert!(m <= 20);
    (0u64..1 << m)
        .filter(|s| cycles.iter().all(|c| s & c != *c))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest pair mask over all relabelings.
pub fn oracle_canonical_mask(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    perms.iter().map(|p| g.relabel(p).pair_mask()).min().unwrap()
}

/// One representative per isomorphism class on `n` vertices.
pub fn oracle_classes(n: usize) -> BTreeSet<u64> {
    let perms = permutations(n);
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..1 << pairs)
        .map(|m| oracle_canonical_mask(&Graph::from_pair_mask(n, m), &perms))
        .collect()
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    permutations(n)
}

/// Deterministic small random graph.
pub fn random_graph(rng: &mut impl rand::Rng, max_n: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(3..=max_n);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    rand::seq::SliceRandom::shuffle(pairs.as_mut_slice(), rng);
    let m = rng.gen_range(0..=max_edges.min(pairs.len()));
    Graph::new(n, pairs.into_iter().take(m)).unwrap()
}
