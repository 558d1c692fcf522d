//! Subgraphs of `G[N(v)]` that rule out a proper rainbow-`C_4`-free coloring.
//!
//! All four are sought as (not necessarily induced) subgraphs of the graph
//! induced on the neighborhood of an apex `v`:
//! - a triangle with pendant edges at two of its vertices, to two distinct
//!   outside vertices;
//! - a 4-cycle;
//! - a cycle of length at least 5 with a pendant edge;
//! - a subdivision of the double star `D_{2,2}`: two distinct centers joined by
//!   a path (one edge or longer), each center carrying two further leaves,
//!   all vertices distinct.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::{at_most, bits, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PatternKind {
    TriangleTwoPendants,
    C4,
    LongCyclePendant,
    D22Subdivision,
}

/// One occurrence of a pattern inside `N(apex)`.
///
/// Embedding layouts:
/// - `TriangleTwoPendants`: `[t1, t2, t3, p1, p2]`, pendants `t1p1`, `t2p2`;
/// - `C4`: the cycle in order;
/// - `LongCyclePendant`: the cycle in order, then the pendant vertex, which
///   is adjacent to the first cycle vertex;
/// - `D22Subdivision`: `[l1, l2, a, ..., b, l3, l4]` where `a ... b` is the
///   center path, `l1, l2` hang off `a` and `l3, l4` off `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternHit {
    pub kind: PatternKind,
    pub apex: usize,
    pub embedding: Vec<usize>,
}

/// One hit for every pattern kind present in `G[N(v)]`, in the order of
/// [`PatternKind`].
pub fn detect_forbidden_patterns(g: &Graph, v: usize) -> Vec<PatternHit> {
    let nb = g.adjacency(v);
    let local = |x: usize| g.adjacency(x) & nb;
    let mut hits = Vec::new();
    let mut push = |kind, embedding| {
        hits.push(PatternHit {
            kind,
            apex: v,
            embedding,
        })
    };
    if let Some(e) = triangle_two_pendants(nb, &local) {
        push(PatternKind::TriangleTwoPendants, e);
    }
    if let Some(e) = four_cycle(nb, &local) {
        push(PatternKind::C4, e);
    }
    if let Some(e) = long_cycle_pendant(nb, &local) {
        push(PatternKind::LongCyclePendant, e);
    }
    if let Some(e) = d22_subdivision(nb, &local) {
        push(PatternKind::D22Subdivision, e);
    }
    hits
}

/// First hit over all apexes, scanning apexes in increasing order.
pub fn first_pattern_hit(g: &Graph) -> Option<PatternHit> {
    (0..g.n()).find_map(|v| detect_forbidden_patterns(g, v).into_iter().next())
}

fn triangle_two_pendants(set: u64, local: &impl Fn(usize) -> u64) -> Option<Vec<usize>> {
    for a in bits(set) {
        for b in bits(local(a) & !at_most(a)) {
            for c in bits(local(a) & local(b) & !at_most(b)) {
                let tri = 1u64 << a | 1 << b | 1 << c;
                let t = [a, b, c];
                for i in 0..3 {
                    for j in 0..3 {
                        if i == j {
                            continue;
                        }
                        let (x, y) = (t[i], t[j]);
                        let z = t[3 - i - j];
                        for p in bits(local(x) & !tri) {
                            if let Some(q) = bits(local(y) & !tri & !(1 << p)).next() {
                                return Some(vec![x, y, z, p, q]);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn four_cycle(set: u64, local: &impl Fn(usize) -> u64) -> Option<Vec<usize>> {
    for a in bits(set) {
        for c in bits(set & !at_most(a)) {
            let mut common = bits(local(a) & local(c));
            if let (Some(b), Some(d)) = (common.next(), common.next()) {
                return Some(vec![a, b, c, d]);
            }
        }
    }
    None
}

fn components(set: u64, local: &impl Fn(usize) -> u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut left = set;
    while left != 0 {
        let mut comp = 1u64 << left.trailing_zeros();
        let mut frontier = comp;
        while frontier != 0 {
            let mut grow = 0;
            for x in bits(frontier) {
                grow |= local(x);
            }
            frontier = grow & !comp;
            comp |= grow;
        }
        left &= !comp;
        out.push(comp);
    }
    out
}

fn long_cycle_pendant(set: u64, local: &impl Fn(usize) -> u64) -> Option<Vec<usize>> {
    for comp in components(set, local) {
        let size = comp.count_ones() as usize;
        if size < 6 {
            continue;
        }
        for s in bits(comp) {
            let mut path = vec![s];
            let above = comp & !at_most(s);
            if let Some(cycle) = cycle_search(local, s, above, 1 << s, size - 1, &mut path) {
                let on = cycle.iter().fold(0u64, |m, &x| m | 1 << x);
                // the component is connected and strictly larger than the cycle
                for (i, &x) in cycle.iter().enumerate() {
                    if let Some(p) = bits(local(x) & !on).next() {
                        let mut emb: Vec<usize> = cycle[i..].iter().chain(&cycle[..i]).copied().collect();
                        emb.push(p);
                        return Some(emb);
                    }
                }
                unreachable!("a connected component larger than the cycle attaches to it");
            }
        }
    }
    None
}

/// Simple cycle through `s` of length in `5..=max_len` using vertices of
/// `allowed` (all above `s`).
fn cycle_search(
    local: &impl Fn(usize) -> u64,
    s: usize,
    allowed: u64,
    used: u64,
    max_len: usize,
    path: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let last = *path.last().unwrap();
    if path.len() >= 5 && local(last) >> s & 1 == 1 {
        return Some(path.clone());
    }
    if path.len() == max_len {
        return None;
    }
    for w in bits(local(last) & allowed & !used) {
        path.push(w);
        if let Some(c) = cycle_search(local, s, allowed, used | 1 << w, max_len, path) {
            return Some(c);
        }
        path.pop();
    }
    None
}

fn d22_subdivision(set: u64, local: &impl Fn(usize) -> u64) -> Option<Vec<usize>> {
    let centers: Vec<usize> = bits(set).filter(|&x| local(x).count_ones() >= 3).collect();
    for (i, &a) in centers.iter().enumerate() {
        for &b in &centers[i + 1..] {
            let la: Vec<usize> = bits(local(a) & !(1 << b)).collect();
            let lb: Vec<usize> = bits(local(b) & !(1 << a)).collect();
            for x in 0..la.len() {
                for y in x + 1..la.len() {
                    for z in 0..lb.len() {
                        for w in z + 1..lb.len() {
                            let leaves = [la[x], la[y], lb[z], lb[w]];
                            let mask = leaves.iter().fold(0u64, |m, &l| m | 1 << l);
                            if mask.count_ones() < 4 {
                                continue;
                            }
                            if let Some(path) = bfs_path(local, set & !mask, a, b) {
                                let mut emb = vec![la[x], la[y]];
                                emb.extend(path);
                                emb.extend([lb[z], lb[w]]);
                                return Some(emb);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn bfs_path(local: &impl Fn(usize) -> u64, allowed: u64, from: usize, to: usize) -> Option<Vec<usize>> {
    let mut parent = [usize::MAX; 64];
    let mut seen = 1u64 << from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            while *path.last().unwrap() != from {
                path.push(parent[*path.last().unwrap()]);
            }
            path.reverse();
            return Some(path);
        }
        for y in bits(local(x) & allowed & !seen) {
            seen |= 1 << y;
            parent[y] = x;
            queue.push_back(y);
        }
    }
    None
}

/// `apex + H`: vertex 0 joined to every vertex of `h` (shifted by one).
pub fn apex_over(h: &Graph) -> Graph {
    let n = h.n() + 1;
    Graph::new(
        n,
        (1..n)
            .map(|x| (0, x))
            .chain(h.edges().iter().map(|&(a, b)| (a + 1, b + 1))),
    )
    .expect("apex join is simple")
}

/// The smallest configuration of each kind, as a graph to put under an apex.
pub fn smallest_pattern(kind: PatternKind) -> Graph {
    let edges: &[(usize, usize)] = match kind {
        PatternKind::TriangleTwoPendants => &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)],
        PatternKind::C4 => &[(0, 1), (1, 2), (2, 3), (0, 3)],
        PatternKind::LongCyclePendant => &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (4, 5)],
        PatternKind::D22Subdivision => &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)],
    };
    let n = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap() + 1;
    Graph::new(n, edges.iter().copied()).expect("pattern is simple")
}
