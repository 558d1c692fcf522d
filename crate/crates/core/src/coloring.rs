//! Edge colorings and the rainbow-freeness predicate.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cycles::{enumerate_cycles, CycleEmbedding};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Color = u16;

/// A total assignment of colors to edges, indexed by canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        EdgeColoring { colors }
    }

    /// Builds a coloring of `g` from `((u, v), color)` entries. Every edge must
    /// be listed exactly once.
    pub fn from_pairs(
        g: &Graph,
        entries: impl IntoIterator<Item = ((usize, usize), Color)>,
    ) -> Result<Self> {
        let mut colors = vec![None; g.edge_count()];
        for ((u, v), c) in entries {
            let e = g
                .edge_index(u, v)
                .ok_or_else(|| Error::InvalidGraph(format!("({u}, {v}) is not an edge")))?;
            if colors[e].replace(c).is_some() {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) colored twice")));
            }
        }
        let got = colors.iter().filter(|c| c.is_some()).count();
        if got != colors.len() {
            return Err(Error::ColoringNotTotal {
                expected: colors.len(),
                got,
            });
        }
        Ok(EdgeColoring {
            colors: colors.into_iter().map(Option::unwrap).collect(),
        })
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, edge: usize) -> Color {
        self.colors[edge]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors actually used.
    pub fn distinct_colors(&self) -> usize {
        let mut seen: Vec<Color> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Renames colors to `0..distinct` in order of first appearance.
    pub fn normalized(&self) -> EdgeColoring {
        let mut map = BTreeMap::new();
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                let next = map.len() as Color;
                *map.entry(c).or_insert(next)
            })
            .collect();
        EdgeColoring { colors }
    }

    pub fn check_total(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.edge_count() {
            return Err(Error::ColoringNotTotal {
                expected: g.edge_count(),
                got: self.colors.len(),
            });
        }
        Ok(())
    }

    /// Pairs of incident edges sharing a color.
    pub fn properness_conflicts(&self, g: &Graph) -> Vec<(usize, usize)> {
        g.incident_pairs()
            .into_iter()
            .filter(|&(e, f)| self.colors[e] == self.colors[f])
            .collect()
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.edge_count() && self.properness_conflicts(g).is_empty()
    }

    /// JSON form: object mapping edge index (as a string key) to color.
    pub fn to_json_map(&self) -> BTreeMap<usize, Color> {
        self.colors.iter().copied().enumerate().collect()
    }

    pub fn from_json_map(map: &BTreeMap<usize, Color>, edge_count: usize) -> Result<Self> {
        if map.len() != edge_count || map.keys().any(|&e| e >= edge_count) {
            return Err(Error::ColoringNotTotal {
                expected: edge_count,
                got: map.keys().filter(|&&e| e < edge_count).count(),
            });
        }
        Ok(EdgeColoring {
            colors: map.values().copied().collect(),
        })
    }
}

impl Serialize for EdgeColoring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_map().serialize(s)
    }
}

impl<'de> Deserialize<'de> for EdgeColoring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<usize, Color>::deserialize(d)?;
        let n = map.len();
        EdgeColoring::from_json_map(&map, n).map_err(serde::de::Error::custom)
    }
}

/// Result of checking a coloring against rainbow `C_k` copies.
#[derive(Debug, Clone, Serialize)]
pub struct RainbowCheck {
    pub rainbow_free: bool,
    pub proper: bool,
    pub properness_conflicts: Vec<(usize, usize)>,
    pub violations: Vec<CycleEmbedding>,
}

/// Whether no `C_k` copy of `g` has `k` pairwise distinct colors. Every
/// rainbow copy is listed. Properness is reported separately and does not
/// affect the rainbow verdict.
pub fn is_rainbow_free(g: &Graph, coloring: &EdgeColoring, k: usize) -> Result<RainbowCheck> {
    coloring.check_total(g)?;
    let violations: Vec<CycleEmbedding> = enumerate_cycles(g, k)
        .into_iter()
        .filter(|c| is_rainbow(coloring, &c.edge_indices(g)))
        .collect();
    let conflicts = coloring.properness_conflicts(g);
    Ok(RainbowCheck {
        rainbow_free: violations.is_empty(),
        proper: conflicts.is_empty(),
        properness_conflicts: conflicts,
        violations,
    })
}

/// Proper and rainbow-`C_k`-free.
pub fn verifies(g: &Graph, coloring: &EdgeColoring, k: usize) -> bool {
    matches!(is_rainbow_free(g, coloring, k), Ok(r) if r.rainbow_free && r.proper)
}

pub(crate) fn is_rainbow(coloring: &EdgeColoring, edges: &[usize]) -> bool {
    let mut seen: Vec<Color> = edges.iter().map(|&e| coloring.color(e)).collect();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_c4_is_rainbow_free() {
        let g = Graph::cycle(4);
        // edges (0,1) (0,3) (1,2) (2,3)
        let c = EdgeColoring::from_pairs(&g, [((0, 1), 0), ((1, 2), 1), ((2, 3), 0), ((0, 3), 1)])
            .unwrap();
        let r = is_rainbow_free(&g, &c, 4).unwrap();
        assert!(r.rainbow_free && r.proper);
    }

    #[test]
    fn k4_matching_coloring_is_rainbow_free() {
        let g = Graph::complete(4);
        let c = EdgeColoring::from_pairs(
            &g,
            [((0, 1), 0), ((2, 3), 0), ((0, 2), 1), ((1, 3), 1), ((0, 3), 2), ((1, 2), 2)],
        )
        .unwrap();
        let r = is_rainbow_free(&g, &c, 4).unwrap();
        assert!(r.rainbow_free && r.proper);
        // each of the three 4-cycles uses exactly two matchings
        for cyc in enumerate_cycles(&g, 4) {
            let mut used: Vec<_> = cyc.edge_indices(&g).iter().map(|&e| c.color(e)).collect();
            used.sort_unstable();
            used.dedup();
            assert_eq!(used.len(), 2);
        }
    }

    #[test]
    fn rainbow_copy_reported_and_improper_flagged() {
        let g = Graph::cycle(4);
        let rainbow = EdgeColoring::new(vec![0, 1, 2, 3]);
        let r = is_rainbow_free(&g, &rainbow, 4).unwrap();
        assert!(!r.rainbow_free);
        assert_eq!(r.violations.len(), 1);

        let improper = EdgeColoring::new(vec![0, 0, 1, 2]);
        let r = is_rainbow_free(&g, &improper, 4).unwrap();
        assert!(!r.proper);
        assert!(r.rainbow_free);
    }

    #[test]
    fn partial_coloring_is_rejected() {
        let g = Graph::cycle(4);
        assert!(matches!(
            is_rainbow_free(&g, &EdgeColoring::new(vec![0, 1]), 4),
            Err(Error::ColoringNotTotal { expected: 4, got: 2 })
        ));
        assert!(EdgeColoring::from_pairs(&g, [((0, 1), 0)]).is_err());
    }

    #[test]
    fn json_map_round_trip() {
        let c = EdgeColoring::new(vec![3, 1, 4, 1]);
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, r#"{"0":3,"1":1,"2":4,"3":1}"#);
        let back: EdgeColoring = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(c.normalized().colors(), &[0, 1, 2, 1]);
    }
}
