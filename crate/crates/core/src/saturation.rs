//! Rainbow saturation checks, the exact minimum over small graphs, and
//! audits of necessary structure.

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::enumerate_graphs;
use crate::dimacs_path::{decide_feasibility, Engine};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::graph6::to_graph6;
use crate::patterns::{apex_over, detect_forbidden_patterns, smallest_pattern, PatternHit, PatternKind};
use crate::probes::structure_probes;
use crate::search::{find_rainbow_free_coloring, Budget, FeasibilityVerdict, Status};

/// Hosts up to this many edges get the exhaustive cross-check of pattern
/// certificates in audit mode.
pub const AUDIT_EDGE_LIMIT: usize = 20;

pub const MAX_SAT_STAR_N: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Tri {
    True,
    False,
    Unknown,
}

#[derive(Debug, Clone, Copy)]
pub struct SaturationOptions {
    /// Per search call.
    pub budget: Budget,
    /// Use pattern certificates for `k = 4`.
    pub patterns: bool,
    /// Also search exhaustively where a certificate was used (hosts with at
    /// most [`AUDIT_EDGE_LIMIT`] edges).
    pub audit: bool,
    /// Stop at the first non-edge that keeps a rainbow-free coloring.
    pub stop_early: bool,
    pub parallel: bool,
    pub engine: Engine,
}

impl Default for SaturationOptions {
    fn default() -> Self {
        SaturationOptions {
            budget: Budget::UNLIMITED,
            patterns: true,
            audit: false,
            stop_early: false,
            parallel: false,
            engine: Engine::Backtrack,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Certificate {
    Pattern { hit: PatternHit },
    Search,
}

#[derive(Debug, Clone, Serialize)]
pub struct NonEdgeVerdict {
    pub edge: Edge,
    pub status: Status,
    pub certificate: Certificate,
    pub verdict: Option<FeasibilityVerdict>,
    /// Exhaustive status of a pattern-certified instance, in audit mode.
    pub audit_status: Option<Status>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SaturationReport {
    pub k: usize,
    pub host: FeasibilityVerdict,
    /// In canonical non-edge order. May stop short with `stop_early`.
    pub per_nonedge: Vec<NonEdgeVerdict>,
    pub is_saturated: Tri,
    /// Complete host: condition on non-edges holds vacuously.
    pub vacuous: bool,
}

impl SaturationReport {
    pub fn unknown_nonedges(&self) -> Vec<Edge> {
        self.per_nonedge
            .iter()
            .filter(|v| v.status == Status::Unknown)
            .map(|v| v.edge)
            .collect()
    }

    pub fn pattern_certified(&self) -> usize {
        self.per_nonedge
            .iter()
            .filter(|v| matches!(v.certificate, Certificate::Pattern { .. }))
            .count()
    }
}

pub fn check_rainbow_saturated(g: &Graph, k: usize, budget: Budget) -> Result<SaturationReport> {
    check_rainbow_saturated_with(
        g,
        k,
        &SaturationOptions {
            budget,
            ..Default::default()
        },
    )
}

pub fn check_rainbow_saturated_with(g: &Graph, k: usize, opts: &SaturationOptions) -> Result<SaturationReport> {
    let host = decide_feasibility(g, k, opts.engine, opts.budget)?;
    let non_edges = g.non_edges();
    let vacuous = non_edges.is_empty();
    let mut per_nonedge = Vec::with_capacity(non_edges.len());
    if host.status == Status::Infeasible && opts.stop_early {
        return Ok(SaturationReport {
            k,
            host,
            per_nonedge,
            is_saturated: Tri::False,
            vacuous,
        });
    }
    if opts.parallel {
        let results: Vec<Result<NonEdgeVerdict>> = non_edges
            .par_iter()
            .map(|&(u, v)| check_non_edge(g, k, u, v, opts))
            .collect();
        for r in results {
            per_nonedge.push(r?);
        }
    } else {
        for &(u, v) in &non_edges {
            let r = check_non_edge(g, k, u, v, opts)?;
            let feasible = r.status == Status::Feasible;
            per_nonedge.push(r);
            if feasible && opts.stop_early {
                break;
            }
        }
    }
    let any = |s| per_nonedge.iter().any(|v: &NonEdgeVerdict| v.status == s);
    let is_saturated = if host.status == Status::Infeasible || any(Status::Feasible) {
        Tri::False
    } else if host.status == Status::Unknown || any(Status::Unknown) {
        Tri::Unknown
    } else {
        Tri::True
    };
    Ok(SaturationReport {
        k,
        host,
        per_nonedge,
        is_saturated,
        vacuous,
    })
}

fn check_non_edge(g: &Graph, k: usize, u: usize, v: usize, opts: &SaturationOptions) -> Result<NonEdgeVerdict> {
    let h = g.with_edge(u, v)?;
    if k == 4 && opts.patterns {
        if let Some(hit) = (0..h.n()).find_map(|a| detect_forbidden_patterns(&h, a).into_iter().next()) {
            let audit_status = if opts.audit && h.edge_count() <= AUDIT_EDGE_LIMIT {
                Some(find_rainbow_free_coloring(&h, k, Budget::UNLIMITED)?.status)
            } else {
                None
            };
            return Ok(NonEdgeVerdict {
                edge: (u, v),
                status: Status::Infeasible,
                certificate: Certificate::Pattern { hit },
                verdict: None,
                audit_status,
            });
        }
    }
    let verdict = decide_feasibility(&h, k, opts.engine, opts.budget)?;
    Ok(NonEdgeVerdict {
        edge: (u, v),
        status: verdict.status,
        certificate: Certificate::Search,
        verdict: Some(verdict),
        audit_status: None,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelSummary {
    pub edges: usize,
    pub classes: usize,
    pub saturated: usize,
    pub unknown: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SatStarResult {
    pub n: usize,
    pub k: usize,
    /// `None` when an undecided class blocks the minimum.
    pub value: Option<usize>,
    /// graph6 strings of every saturated class at the minimum.
    pub witnesses: Vec<String>,
    /// False when some class at the minimum level stayed undecided.
    pub witnesses_complete: bool,
    /// Whether each witness is a complete graph.
    pub vacuous: Vec<bool>,
    pub levels: Vec<LevelSummary>,
}

/// Minimum edge count of a rainbow `C_k`-saturated graph on `n` vertices,
/// over all isomorphism classes by increasing edge count. The first level
/// with a saturated class is completed before returning.
pub fn sat_star(n: usize, k: usize, budget: Budget) -> Result<SatStarResult> {
    if n > MAX_SAT_STAR_N {
        return Err(Error::TooLarge(format!("sat_star supports n <= {MAX_SAT_STAR_N}, got {n}")));
    }
    let graphs = enumerate_graphs(n)?;
    let opts = SaturationOptions {
        budget,
        stop_early: true,
        ..Default::default()
    };
    let mut levels = Vec::new();
    let mut blocked = false;
    let mut start = 0;
    while start < graphs.len() {
        let m = graphs[start].edge_count();
        let end = start + graphs[start..].iter().take_while(|g| g.edge_count() == m).count();
        let mut witnesses = Vec::new();
        let mut vacuous = Vec::new();
        let mut unknown = 0;
        for g in &graphs[start..end] {
            let report = check_rainbow_saturated_with(g, k, &opts)?;
            match report.is_saturated {
                Tri::True => {
                    witnesses.push(to_graph6(g)?);
                    vacuous.push(report.vacuous);
                }
                Tri::Unknown => unknown += 1,
                Tri::False => {}
            }
        }
        levels.push(LevelSummary {
            edges: m,
            classes: end - start,
            saturated: witnesses.len(),
            unknown,
        });
        if !witnesses.is_empty() {
            return Ok(SatStarResult {
                n,
                k,
                value: (!blocked).then_some(m),
                witnesses,
                witnesses_complete: unknown == 0,
                vacuous,
                levels,
            });
        }
        blocked |= unknown > 0;
        start = end;
    }
    Ok(SatStarResult {
        n,
        k,
        value: None,
        witnesses: Vec::new(),
        witnesses_complete: !blocked,
        vacuous: Vec::new(),
        levels,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Violation {
    /// More than one vertex of degree one.
    DegreeOne { count: usize },
    /// A pair at distance above 3; `None` when disconnected.
    Distance { u: usize, v: usize, distance: Option<usize> },
    /// A pair with four or more common neighbors.
    CommonNeighborhood { u: usize, v: usize, size: usize },
}

/// Necessary conditions on a rainbow `C_4`-saturated graph: at most one
/// vertex of degree one, diameter at most 3, and fewer than four common
/// neighbors for every pair.
pub fn audit_structural_conditions(g: &Graph) -> Vec<Violation> {
    let mut out = Vec::new();
    let report = structure_probes(g);
    if report.degree_one_vertices > 1 {
        out.push(Violation::DegreeOne {
            count: report.degree_one_vertices,
        });
    }
    for u in 0..g.n() {
        let dist = g.distances_from(u);
        for (v, &distance) in dist.iter().enumerate().skip(u + 1) {
            if distance.is_none_or(|d| d > 3) {
                out.push(Violation::Distance { u, v, distance });
            }
        }
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let size = (g.adjacency(u) & g.adjacency(v)).count_ones() as usize;
            if size >= 4 {
                out.push(Violation::CommonNeighborhood { u, v, size });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct TrapResult {
    pub kind: PatternKind,
    pub graph6: String,
    pub status: Status,
    pub nodes_explored: u64,
    /// Status after deleting each pattern edge (edge given in host labels).
    pub deletions: Vec<(Edge, Status)>,
    /// Every single-edge deletion is feasible.
    pub minimal: bool,
}

/// For each pattern kind, the apex over its smallest instance must have no
/// rainbow-`C_4`-free proper coloring; deleting any one pattern edge is
/// expected to restore one.
pub fn verify_lemma_traps(budget: Budget) -> Result<Vec<TrapResult>> {
    let kinds = [
        PatternKind::TriangleTwoPendants,
        PatternKind::C4,
        PatternKind::LongCyclePendant,
        PatternKind::D22Subdivision,
    ];
    let mut out = Vec::new();
    for kind in kinds {
        let pattern = smallest_pattern(kind);
        let g = apex_over(&pattern);
        let verdict = find_rainbow_free_coloring(&g, 4, budget)?;
        let mut deletions = Vec::new();
        for &(a, b) in pattern.edges() {
            let (a, b) = (a + 1, b + 1);
            let keep = (0..g.edge_count()).filter(|&e| g.edge(e) != (a, b));
            let status = find_rainbow_free_coloring(&g.spanning_subgraph(keep), 4, budget)?.status;
            deletions.push(((a, b), status));
        }
        out.push(TrapResult {
            kind,
            graph6: to_graph6(&g)?,
            status: verdict.status,
            nodes_explored: verdict.nodes_explored,
            minimal: deletions.iter().all(|&(_, s)| s == Status::Feasible),
            deletions,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_is_vacuously_saturated() {
        let r = check_rainbow_saturated(&Graph::complete(4), 4, Budget::UNLIMITED).unwrap();
        assert_eq!(r.is_saturated, Tri::True);
        assert!(r.vacuous);
        assert!(r.per_nonedge.is_empty());
    }

    #[test]
    fn path_is_not_saturated() {
        let r = check_rainbow_saturated(&Graph::path(4), 4, Budget::UNLIMITED).unwrap();
        assert_eq!(r.is_saturated, Tri::False);
    }

    #[test]
    fn audit_examples() {
        let star = audit_structural_conditions(&Graph::star(5));
        assert_eq!(star, vec![Violation::DegreeOne { count: 5 }]);
        // two triangles joined through a 4-edge chain
        let g = Graph::new(
            9,
            [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (6, 8)],
        )
        .unwrap();
        assert!(audit_structural_conditions(&g)
            .iter()
            .any(|v| matches!(v, Violation::Distance { .. })));
        assert!(audit_structural_conditions(&Graph::complete(4)).is_empty());
    }

    #[test]
    fn sat_star_tiny() {
        let r = sat_star(3, 4, Budget::UNLIMITED).unwrap();
        assert_eq!(r.value, Some(3));
        assert_eq!(r.vacuous, vec![true]);
    }
}
