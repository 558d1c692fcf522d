//! The extremal constructions for rainbow `C_4`, `C_5` and `C_6` saturation,
//! each with its witness coloring.
//!
//! Vertex layouts:
//! - `C_4`: `u = 0`, then one spider after another. Within a spider the
//!   center comes first, then the single-vertex leg, then the two long legs
//!   from the center outwards.
//! - `C_5`: `u = 0`, `v = 1`, matching pairs `x_i = 2i`, `y_i = 2i + 1`
//!   (`i >= 1`), and the unmatched vertex `z = n - 1` when `n` is odd.
//! - `C_6`: core vertices `v_1..v_8` are `0..8`, triangle `T_i` is
//!   `x_i, y_i, z_i = 8 + 3(i-1) + {0, 1, 2}`, extra vertices last.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Universal,
    Spider(usize),
    Matching(usize),
    Unmatched,
    Core,
    Triangle(usize),
    Extra,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Universal => write!(f, "universal"),
            Role::Spider(i) => write!(f, "spider-{i}"),
            Role::Matching(i) => write!(f, "matching-{i}"),
            Role::Unmatched => write!(f, "unmatched"),
            Role::Core => write!(f, "core"),
            Role::Triangle(i) => write!(f, "T{i}"),
            Role::Extra => write!(f, "extra"),
        }
    }
}

impl Serialize for Role {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Spider `S_{a,b,c}`: three paths of the given lengths sharing an endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpiderSpec {
    pub legs: [usize; 3],
}

impl SpiderSpec {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        if a == 0 || b == 0 || c == 0 {
            return Err(Error::Precondition("spider legs must be positive".into()));
        }
        Ok(SpiderSpec { legs: [a, b, c] })
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.legs.iter().sum::<usize>()
    }

    pub fn edge_count(&self) -> usize {
        self.legs.iter().sum()
    }

    /// Spider as a standalone graph, center 0, legs laid out in order.
    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in &self.legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Graph::new(self.vertex_count(), edges).expect("spider is simple")
    }
}

#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub name: String,
    /// Length of the cycle the construction targets.
    pub k: usize,
    pub graph: Graph,
    pub roles: Vec<Role>,
    pub witness: Option<EdgeColoring>,
}

impl ConstructionResult {
    pub fn role_map(&self) -> BTreeMap<usize, String> {
        self.roles
            .iter()
            .enumerate()
            .map(|(v, r)| (v, r.to_string()))
            .collect()
    }
}

/// Collects edges and their witness colors.
#[derive(Default)]
struct Builder {
    edges: Vec<(Edge, Color)>,
}

impl Builder {
    fn add(&mut self, u: usize, v: usize, c: usize) {
        self.edges.push(((u, v), c as Color));
    }

    fn finish(self, name: String, k: usize, n: usize, roles: Vec<Role>) -> ConstructionResult {
        let graph = Graph::new(n, self.edges.iter().map(|&(e, _)| e))
            .expect("construction produces a simple graph");
        let witness =
            EdgeColoring::from_pairs(&graph, self.edges).expect("every edge receives one color");
        ConstructionResult {
            name,
            k,
            graph,
            roles,
            witness: Some(witness),
        }
    }
}

/// Leg lengths of the spiders tiling `N(u)` in the `C_4` construction.
///
/// `m = floor((n-1)/6)` spiders: `m - 1` copies of `S_{1,2,2}` and one
/// residual spider on `r = (n-1) - 6(m-1)` vertices with legs
/// `(1, ceil((r-2)/2), floor((r-2)/2))`.
pub fn c4_spiders(n: usize) -> Result<Vec<SpiderSpec>> {
    if n < 7 {
        return Err(Error::Precondition(format!("C4 construction needs n >= 7, got {n}")));
    }
    let m = (n - 1) / 6;
    let r = (n - 1) - 6 * (m - 1);
    let mut out = vec![SpiderSpec::new(1, 2, 2)?; m - 1];
    out.push(SpiderSpec::new(1, (r - 2).div_ceil(2), (r - 2) / 2)?);
    Ok(out)
}

/// A universal vertex whose neighborhood induces a disjoint union of spiders.
///
/// Witness: `u`'s edges get distinct colors, numbered along each spider
/// (long leg A from its tip inwards, the center, the short leg, long leg B
/// outwards). Inside a spider the center edges take the colors of
/// `u A1`, `u B1` and `u q` (towards `q`, `A1` and `B1` respectively) and each
/// further leg edge `a_i a_{i+1}` takes the color of `u a_{i-1}`, where
/// `a_0` is the center. For `S_{1,2,2}` this is the six-color pattern drawn
/// for one spider; the palettes of different spiders are disjoint.
pub fn build_c4_construction(n: usize) -> Result<ConstructionResult> {
    let spiders = c4_spiders(n)?;
    let mut b = Builder::default();
    let mut roles = vec![Role::Universal];
    let u = 0;
    let mut next = 1;
    let mut base = 0;
    for (idx, spider) in spiders.iter().enumerate() {
        let [_, la, lb] = spider.legs;
        let center = next;
        let q = next + 1;
        let leg_a: Vec<usize> = (0..la).map(|i| next + 2 + i).collect();
        let leg_b: Vec<usize> = (0..lb).map(|i| next + 2 + la + i).collect();
        next += spider.vertex_count();
        roles.extend(std::iter::repeat_n(Role::Spider(idx + 1), spider.vertex_count()));

        let mut ucolor = BTreeMap::new();
        for (i, &a) in leg_a.iter().rev().enumerate() {
            ucolor.insert(a, base + i);
        }
        ucolor.insert(center, base + la);
        ucolor.insert(q, base + la + 1);
        for (i, &x) in leg_b.iter().enumerate() {
            ucolor.insert(x, base + la + 2 + i);
        }
        base += spider.vertex_count();

        for (&x, &c) in &ucolor {
            b.add(u, x, c);
        }
        b.add(center, q, ucolor[&leg_a[0]]);
        b.add(center, leg_a[0], ucolor[&leg_b[0]]);
        b.add(center, leg_b[0], ucolor[&q]);
        for leg in [&leg_a, &leg_b] {
            for i in 1..leg.len() {
                let before = if i == 1 { center } else { leg[i - 2] };
                b.add(leg[i - 1], leg[i], ucolor[&before]);
            }
        }
    }
    debug_assert_eq!(next, n);
    Ok(b.finish(format!("C4 construction n={n}"), 4, n, roles))
}

/// Two universal vertices plus a maximum matching on the rest.
///
/// Witness: `c(u x_i) = c(v y_i) = 2i - 1`, `c(u y_i) = c(v x_i) = 2i`,
/// `c(uv) = c(x_i y_i) = 0`, and for odd `n`, `c(uz) = n - 2`, `c(vz) = n - 1`.
pub fn build_c5_construction(n: usize) -> Result<ConstructionResult> {
    if n < 8 {
        return Err(Error::Precondition(format!("C5 construction needs n >= 8, got {n}")));
    }
    let (u, v) = (0, 1);
    let pairs = (n - 2) / 2;
    let mut b = Builder::default();
    let mut roles = vec![Role::Universal, Role::Universal];
    b.add(u, v, 0);
    for i in 1..=pairs {
        let (x, y) = (2 * i, 2 * i + 1);
        b.add(u, x, 2 * i - 1);
        b.add(v, y, 2 * i - 1);
        b.add(u, y, 2 * i);
        b.add(v, x, 2 * i);
        b.add(x, y, 0);
        roles.push(Role::Matching(i));
        roles.push(Role::Matching(i));
    }
    if n % 2 == 1 {
        let z = n - 1;
        b.add(u, z, n - 2);
        b.add(v, z, n - 1);
        roles.push(Role::Unmatched);
    }
    Ok(b.finish(format!("C5 construction n={n}"), 5, n, roles))
}

/// The core: `K_8` minus `{v1v3, v2v8, v4v6, v5v7}`, colored by six perfect
/// matchings. Entries are `(v_i, v_j, color)` with 1-based core labels.
pub const CORE_COLORING: [(usize, usize, usize); 24] = [
    (1, 2, 3),
    (1, 4, 1),
    (1, 5, 2),
    (1, 6, 4),
    (1, 7, 5),
    (1, 8, 0),
    (2, 3, 0),
    (2, 4, 5),
    (2, 5, 4),
    (2, 6, 2),
    (2, 7, 1),
    (3, 4, 4),
    (3, 5, 5),
    (3, 6, 1),
    (3, 7, 2),
    (3, 8, 3),
    (4, 5, 0),
    (4, 7, 3),
    (4, 8, 2),
    (5, 6, 3),
    (5, 8, 1),
    (6, 7, 0),
    (6, 8, 5),
    (7, 8, 4),
];

/// Removed core pairs, 1-based.
pub const CORE_NON_EDGES: [(usize, usize); 4] = [(1, 3), (2, 8), (4, 6), (5, 7)];

/// Core plus `triangles` triangles and `extras` extra vertices on `v1, v3`.
///
/// Triangle `T_i` is joined by `v1x_i, v1y_i, v2z_i, v3y_i`, colored
/// `3+3i, 4+3i, 3+3i, 3+3i`, with `y_iz_i = 0`, `x_iz_i = 4+3i`,
/// `x_iy_i = 5+3i`. Extra vertices use fresh colors `A = 6+3t`, `B = 7+3t`:
/// a single extra `s` gets `v1s = A`, `v3s = B`; a pair `s, t` gets
/// `v1s = v3t = A`, `v1t = v3s = B` and `st = 8+3t`.
pub fn core_with(triangles: usize, extras: usize) -> Result<ConstructionResult> {
    if extras > 2 {
        return Err(Error::Precondition("at most two extra vertices".into()));
    }
    let n = 8 + 3 * triangles + extras;
    let mut b = Builder::default();
    for &(i, j, c) in &CORE_COLORING {
        b.add(i - 1, j - 1, c);
    }
    let (v1, v2, v3) = (0, 1, 2);
    let mut roles = vec![Role::Core; 8];
    for i in 1..=triangles {
        let x = 8 + 3 * (i - 1);
        let (y, z) = (x + 1, x + 2);
        b.add(v1, x, 3 + 3 * i);
        b.add(v1, y, 4 + 3 * i);
        b.add(v2, z, 3 + 3 * i);
        b.add(v3, y, 3 + 3 * i);
        b.add(y, z, 0);
        b.add(x, z, 4 + 3 * i);
        b.add(x, y, 5 + 3 * i);
        roles.extend([Role::Triangle(i); 3]);
    }
    let fresh_a = 6 + 3 * triangles;
    let fresh_b = 7 + 3 * triangles;
    let s = 8 + 3 * triangles;
    match extras {
        1 => {
            b.add(v1, s, fresh_a);
            b.add(v3, s, fresh_b);
        }
        2 => {
            let t = s + 1;
            b.add(v1, s, fresh_a);
            b.add(v3, t, fresh_a);
            b.add(v1, t, fresh_b);
            b.add(v3, s, fresh_b);
            b.add(s, t, 8 + 3 * triangles);
        }
        _ => {}
    }
    roles.extend(std::iter::repeat_n(Role::Extra, extras));
    let name = format!("core + {triangles} triangle(s) + {extras} extra");
    Ok(b.finish(name, 6, n, roles))
}

/// `(triangles, extras)` for the `C_6` construction on `n` vertices.
///
/// For `n ≡ 2 (mod 3)` there are `(n-8)/3` triangles and no extras. Otherwise
/// extras are added to the construction on the largest smaller order
/// `≡ 2 (mod 3)`: one extra for `n ≡ 0`, two for `n ≡ 1`.
pub fn c6_shape(n: usize) -> Result<(usize, usize)> {
    if n < 14 {
        return Err(Error::Precondition(format!("C6 construction needs n >= 14, got {n}")));
    }
    let extras = (n + 1) % 3;
    Ok(((n - extras - 8) / 3, extras))
}

pub fn build_c6_construction(n: usize) -> Result<ConstructionResult> {
    let (triangles, extras) = c6_shape(n)?;
    let mut r = core_with(triangles, extras)?;
    r.name = format!("C6 construction n={n}");
    Ok(r)
}

/// The four graphs behind the `C_6` computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    Core,
    CoreT1,
    H,
    F,
}

impl Fixture {
    pub const ALL: [Fixture; 4] = [Fixture::Core, Fixture::CoreT1, Fixture::H, Fixture::F];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Core => "core",
            Fixture::CoreT1 => "core+T1",
            Fixture::H => "H",
            Fixture::F => "F",
        }
    }
}

impl FromStr for Fixture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(Fixture::Core),
            "core+T1" | "core+t1" => Ok(Fixture::CoreT1),
            "H" | "h" => Ok(Fixture::H),
            "F" | "f" => Ok(Fixture::F),
            other => Err(Error::UnknownFixture(other.to_string())),
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn build_named_fixture(name: &str) -> Result<ConstructionResult> {
    build_fixture(name.parse()?)
}

pub fn build_fixture(fixture: Fixture) -> Result<ConstructionResult> {
    let (t, x) = match fixture {
        Fixture::Core => (0, 0),
        Fixture::CoreT1 => (1, 0),
        Fixture::H => (2, 0),
        Fixture::F => (1, 1),
    };
    let mut r = core_with(t, x)?;
    r.name = fixture.name().to_string();
    Ok(r)
}

/// Closed-form edge counts.
pub fn c4_edge_count(n: usize) -> usize {
    2 * (n - 1) - (n - 1) / 6
}

pub fn c5_edge_count(n: usize) -> usize {
    5 * n / 2 - 4
}

pub fn c6_edge_count(n: usize) -> Result<usize> {
    let (t, x) = c6_shape(n)?;
    Ok(24 + 7 * t + [0, 2, 5][x])
}
