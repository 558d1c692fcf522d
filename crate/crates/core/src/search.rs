//! Exhaustive search for proper edge-colorings without a rainbow `C_k`.
//!
//! Colorings are explored up to renaming of colors: an edge may take any
//! color already in use or the single next unused color. Domains are color
//! bitsets. Assigning an edge removes its color from incident edges; for
//! every `C_k` copy whose other `k - 1` edges are colored pairwise distinct,
//! the remaining edge is restricted to those `k - 1` colors. Edges are
//! picked smallest-domain first, ties broken by the number of `C_k` copies
//! through the edge (descending) and then by canonical index.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::coloring::{verifies, Color, EdgeColoring};
use crate::cycles::cycle_edge_sets;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::mask::{ColorMask, Wide};

/// Hard limit on palette size.
pub const MAX_PALETTE: usize = 256;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_millis: Option<u64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        max_millis: None,
    };

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            max_millis: None,
        }
    }

    pub fn time(limit: Duration) -> Self {
        Budget {
            max_nodes: None,
            max_millis: Some(limit.as_millis() as u64),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Feasible,
    Infeasible,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct FeasibilityVerdict {
    pub status: Status,
    pub witness: Option<EdgeColoring>,
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
    pub budget: Budget,
}

impl FeasibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        self.status == Status::Feasible
    }
}

/// What kind of coloring to look for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub k: usize,
    /// Colors available, `0..palette`.
    pub palette: usize,
    /// Require every palette color to appear.
    pub use_all_colors: bool,
    /// Restrict the last edge of an almost-rainbow copy. Disabling leaves
    /// only the check on fully colored copies.
    pub rainbow_propagation: bool,
    pub budget: Budget,
}

impl SearchConfig {
    /// Feasibility over palette `|E(g)|`.
    pub fn feasibility(g: &Graph, k: usize, budget: Budget) -> Self {
        SearchConfig {
            k,
            palette: g.edge_count().max(1),
            use_all_colors: false,
            rainbow_propagation: true,
            budget,
        }
    }

    /// Colorings using exactly `colors` colors, all of them.
    pub fn exact(k: usize, colors: usize, budget: Budget) -> Self {
        SearchConfig {
            k,
            palette: colors,
            use_all_colors: true,
            rainbow_propagation: true,
            budget,
        }
    }
}

/// Searches for a proper coloring of `g` with palette `|E(g)|` and no rainbow
/// `C_k`. Any proper coloring uses at most `|E|` colors, so the palette loses
/// nothing up to renaming.
pub fn find_rainbow_free_coloring(g: &Graph, k: usize, budget: Budget) -> Result<FeasibilityVerdict> {
    search(g, &SearchConfig::feasibility(g, k, budget))
}

/// Searches for a proper coloring using all `colors` colors and no rainbow `C_k`.
pub fn find_exact_coloring(
    g: &Graph,
    k: usize,
    colors: usize,
    budget: Budget,
) -> Result<FeasibilityVerdict> {
    search(g, &SearchConfig::exact(k, colors, budget))
}

pub fn search(g: &Graph, config: &SearchConfig) -> Result<FeasibilityVerdict> {
    if config.palette > MAX_PALETTE {
        return Err(Error::TooLarge(format!(
            "palette {} exceeds {MAX_PALETTE}",
            config.palette
        )));
    }
    if config.palette == 0 && g.edge_count() > 0 {
        return Err(Error::Precondition("palette size 0 with a nonempty edge set".into()));
    }
    let verdict = if config.palette <= 64 {
        Engine::<u64>::new(g, config).run()
    } else if config.palette <= 128 {
        Engine::<u128>::new(g, config).run()
    } else {
        Engine::<Wide>::new(g, config).run()
    };
    if let Some(w) = &verdict.witness {
        debug_assert!(verifies(g, w, config.k));
        if !verifies(g, w, config.k) {
            return Err(Error::Precondition(
                "search produced a witness that fails verification".into(),
            ));
        }
    }
    Ok(verdict)
}

const UNCOLORED: Color = Color::MAX;

#[derive(Clone)]
struct State<M> {
    color: Vec<Color>,
    allowed: Vec<M>,
    used: usize,
    uncolored: usize,
}

struct Engine<M> {
    k: usize,
    palette: usize,
    use_all: bool,
    propagate: bool,
    neighbors: Vec<Vec<u32>>,
    cycles: Vec<Vec<u32>>,
    edge_cycles: Vec<Vec<u32>>,
    budget: Budget,
    deadline: Option<Instant>,
    started: Instant,
    nodes: u64,
    aborted: bool,
    _mask: std::marker::PhantomData<M>,
}

impl<M: ColorMask> Engine<M> {
    fn new(g: &Graph, config: &SearchConfig) -> Self {
        let cycles: Vec<Vec<u32>> = cycle_edge_sets(g, config.k)
            .into_iter()
            .map(|c| c.into_iter().map(|e| e as u32).collect())
            .collect();
        let mut edge_cycles = vec![Vec::new(); g.edge_count()];
        for (i, c) in cycles.iter().enumerate() {
            for &e in c {
                edge_cycles[e as usize].push(i as u32);
            }
        }
        let neighbors = g
            .edge_neighbors()
            .into_iter()
            .map(|v| v.into_iter().map(|e| e as u32).collect())
            .collect();
        let started = Instant::now();
        Engine {
            k: config.k,
            palette: config.palette,
            use_all: config.use_all_colors,
            propagate: config.rainbow_propagation,
            neighbors,
            cycles,
            edge_cycles,
            budget: config.budget,
            deadline: config
                .budget
                .max_millis
                .map(|ms| started + Duration::from_millis(ms)),
            started,
            nodes: 0,
            aborted: false,
            _mask: std::marker::PhantomData,
        }
    }

    fn run(mut self) -> FeasibilityVerdict {
        let m = self.neighbors.len();
        let root = State {
            color: vec![UNCOLORED; m],
            allowed: vec![M::below(self.palette); m],
            used: 0,
            uncolored: m,
        };
        let found = if self.use_all && self.palette > m {
            None
        } else {
            self.descend(root)
        };
        let status = match (&found, self.aborted) {
            (Some(_), _) => Status::Feasible,
            (None, true) => Status::Unknown,
            (None, false) => Status::Infeasible,
        };
        FeasibilityVerdict {
            status,
            witness: found.map(EdgeColoring::new),
            nodes_explored: self.nodes,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
            budget: self.budget,
        }
    }

    /// Colors available to an uncolored edge right now.
    #[inline]
    fn domain(&self, s: &State<M>, e: usize) -> M {
        s.allowed[e].and(M::below((s.used + 1).min(self.palette)))
    }

    fn out_of_budget(&mut self) -> bool {
        if self.aborted {
            return true;
        }
        self.nodes += 1;
        if matches!(self.budget.max_nodes, Some(cap) if self.nodes > cap) {
            self.aborted = true;
        } else if self.nodes.is_multiple_of(1024) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.aborted = true;
                }
            }
        }
        self.aborted
    }

    fn descend(&mut self, s: State<M>) -> Option<Vec<Color>> {
        if self.out_of_budget() {
            return None;
        }
        if s.uncolored == 0 {
            return (!self.use_all || s.used == self.palette).then(|| s.color.clone());
        }
        if self.use_all {
            // every missing color must be introduced by a distinct edge
            let missing = self.palette - s.used;
            if missing > 0 {
                let can_introduce = (0..s.color.len())
                    .filter(|&f| s.color[f] == UNCOLORED && s.allowed[f].contains(s.used))
                    .count();
                if can_introduce < missing {
                    return None;
                }
            }
        }

        let mut best: Option<(u32, usize, usize)> = None;
        for e in 0..s.color.len() {
            if s.color[e] != UNCOLORED {
                continue;
            }
            let size = self.domain(&s, e).count();
            if size == 0 {
                return None;
            }
            let weight = self.edge_cycles[e].len();
            let better = match best {
                None => true,
                Some((bs, bw, _)) => size < bs || (size == bs && weight > bw),
            };
            if better {
                best = Some((size, weight, e));
            }
        }
        let (_, _, e) = best.expect("an uncolored edge exists");

        let mut values = self.domain(&s, e);
        while let Some(c) = values.pop_lowest() {
            let mut child = s.clone();
            if self.assign(&mut child, e, c) {
                if let Some(found) = self.descend(child) {
                    return Some(found);
                }
            }
            if self.aborted {
                return None;
            }
        }
        None
    }

    /// Colors `e` with `c` and propagates. Returns false on a wipeout.
    fn assign(&self, s: &mut State<M>, e: usize, c: usize) -> bool {
        s.color[e] = c as Color;
        s.uncolored -= 1;
        if c == s.used {
            s.used += 1;
        }
        let bit = M::bit(c);
        for &f in &self.neighbors[e] {
            let f = f as usize;
            if s.color[f] == UNCOLORED {
                s.allowed[f] = s.allowed[f].and_not(bit);
                if self.domain(s, f).is_empty() {
                    return false;
                }
            }
        }
        for &cy in &self.edge_cycles[e] {
            let mut seen = M::empty();
            let mut colored = 0usize;
            let mut open = usize::MAX;
            for &f in &self.cycles[cy as usize] {
                let f = f as usize;
                if s.color[f] == UNCOLORED {
                    open = f;
                } else {
                    seen = seen.or(M::bit(s.color[f] as usize));
                    colored += 1;
                }
            }
            let distinct = seen.count() as usize == colored;
            if colored == self.k {
                if distinct {
                    return false;
                }
            } else if self.propagate && colored == self.k - 1 && distinct {
                s.allowed[open] = s.allowed[open].and(seen);
                if self.domain(s, open).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn status(g: &Graph, k: usize) -> Status {
        find_rainbow_free_coloring(g, k, Budget::UNLIMITED).unwrap().status
    }

    #[test]
    fn c4_is_feasible_with_two_colors() {
        let v = find_rainbow_free_coloring(&Graph::cycle(4), 4, Budget::UNLIMITED).unwrap();
        assert_eq!(v.status, Status::Feasible);
        assert_eq!(v.witness.unwrap().distinct_colors(), 2);
    }

    #[test]
    fn apex_over_c4_is_infeasible() {
        // wheel W4: hub 0 joined to the 4-cycle 1-2-3-4
        let g = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (1, 4)])
            .unwrap();
        assert_eq!(status(&g, 4), Status::Infeasible);
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(status(&Graph::complete(4), 4), Status::Feasible);
        // a properly colored triangle is always rainbow
        assert_eq!(status(&Graph::complete(3), 3), Status::Infeasible);
        assert_eq!(status(&Graph::empty(3), 4), Status::Feasible);
    }

    #[test]
    fn exact_color_counts() {
        let k4 = Graph::complete(4);
        assert_eq!(find_exact_coloring(&k4, 4, 3, Budget::UNLIMITED).unwrap().status, Status::Feasible);
        assert_eq!(find_exact_coloring(&k4, 4, 2, Budget::UNLIMITED).unwrap().status, Status::Infeasible);
        // more colors than edges
        assert_eq!(find_exact_coloring(&k4, 4, 7, Budget::UNLIMITED).unwrap().status, Status::Infeasible);
        let w = find_exact_coloring(&Graph::path(5), 4, 4, Budget::UNLIMITED).unwrap();
        assert_eq!(w.witness.unwrap().distinct_colors(), 4);
    }

    #[test]
    fn node_budget_yields_unknown() {
        let g = Graph::complete(6);
        let v = find_rainbow_free_coloring(&g, 4, Budget::nodes(3)).unwrap();
        assert_eq!(v.status, Status::Unknown);
        assert!(v.witness.is_none());
    }

    #[test]
    fn zero_palette_rejected() {
        let cfg = SearchConfig::exact(4, 0, Budget::UNLIMITED);
        assert!(search(&Graph::path(2), &cfg).is_err());
        assert_eq!(search(&Graph::empty(2), &cfg).unwrap().status, Status::Feasible);
    }
}
