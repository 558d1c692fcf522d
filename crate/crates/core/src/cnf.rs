//! CNF encodings of the coloring problems, DIMACS text in and out, and
//! model decoding.
//!
//! Variable `x_e^c` (edge `e` has color `c`) is numbered `e * C + c + 1`
//! where `C` is the palette size. Clause groups are emitted in a fixed
//! order so files are byte-identical across runs:
//! 1. one "has a color" clause per edge;
//! 2. for every incident edge pair `e < f` and color `c`, `-x_e^c -x_f^c`;
//! 3. for every `C_k` copy (walk order of its edges) and every injective
//!    color tuple in lexicographic order, the clause forbidding it;
//! 4. (exact mode) one "color is used" clause per color;
//! 5. (exact mode) for every edge and `c1 < c2`, `-x_e^c1 -x_e^c2`.
//!
//! The literal rainbow block grows like `c^k` per cycle. The compact form
//! replaces it by "two non-adjacent edges of the cycle share a color", with
//! one auxiliary per such edge pair and one per (pair, color). It always
//! carries the at-most-one clauses, and fixes the colors around a vertex of
//! maximum degree to `0, 1, ...` to break color symmetry. Auxiliary
//! variables are numbered after the `x` block.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::coloring::{is_rainbow_free, Color, EdgeColoring};
use crate::cycles::cycle_edge_sets;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Refuse to materialize formulas with more clauses than this.
pub const MAX_CLAUSES: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Encoding {
    Feasibility,
    ExactColors,
}

/// How rainbow copies are excluded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RainbowBlock {
    /// One clause per cycle and injective color tuple.
    #[default]
    Tuples,
    /// Pair-equality auxiliaries; see the module docs.
    PairEquality,
}

/// Number of clauses in each group, counted while emitting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ClauseCounts {
    pub has_color: usize,
    pub proper: usize,
    pub rainbow: usize,
    pub surjective: usize,
    pub at_most_one: usize,
    /// Compact form only: auxiliary definitions.
    pub links: usize,
    /// Compact form only: fixed colors.
    pub symmetry: usize,
}

impl ClauseCounts {
    pub fn total(&self) -> usize {
        self.has_color
            + self.proper
            + self.rainbow
            + self.surjective
            + self.at_most_one
            + self.links
            + self.symmetry
    }
}

#[derive(Debug, Clone)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub palette: usize,
    pub k: usize,
    pub encoding: Encoding,
    pub block: RainbowBlock,
    pub counts: ClauseCounts,
    graph: Graph,
}

impl CnfFormula {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn var(&self, edge: usize, color: usize) -> i32 {
        var_id(self.palette, edge, color)
    }

    /// Number of `x` variables; auxiliaries follow.
    pub fn color_vars(&self) -> usize {
        self.graph.edge_count() * self.palette
    }

    /// `(edge, color)` of a color variable id.
    pub fn var_meaning(&self, var: usize) -> Option<(usize, usize)> {
        (1..=self.color_vars())
            .contains(&var)
            .then(|| ((var - 1) / self.palette, (var - 1) % self.palette))
    }

    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            encoding: self.encoding,
            block: self.block,
            k: self.k,
            palette: self.palette,
            num_vars: self.num_vars,
            counts: self.counts,
            variables: (1..=self.color_vars())
                .map(|v| {
                    let (e, c) = self.var_meaning(v).unwrap();
                    SidecarVar {
                        var: v,
                        edge: e,
                        endpoints: self.graph.edge(e),
                        color: c,
                    }
                })
                .collect(),
        }
    }
}

/// JSON mapping of variable ids to `(edge, color)`.
#[derive(Debug, Clone, Serialize)]
pub struct Sidecar {
    pub encoding: Encoding,
    pub block: RainbowBlock,
    pub k: usize,
    pub palette: usize,
    pub num_vars: usize,
    pub counts: ClauseCounts,
    pub variables: Vec<SidecarVar>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SidecarVar {
    pub var: usize,
    pub edge: usize,
    pub endpoints: (usize, usize),
    pub color: usize,
}

fn var_id(palette: usize, edge: usize, color: usize) -> i32 {
    (edge * palette + color + 1) as i32
}

/// `c (c-1) ... (c-k+1)`, zero when `k > c`.
pub fn falling_factorial(c: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(c.saturating_sub(i) as u64))
}

/// Clause count of [`encode_feasibility`] / [`encode_exact_colors`] without
/// building the formula.
pub fn predicted_counts(g: &Graph, k: usize, c: usize, encoding: Encoding) -> (ClauseCounts, u64) {
    let cycles = crate::cycles::enumerate_cycles(g, k).len() as u64;
    let rainbow = cycles.saturating_mul(falling_factorial(c, k));
    let m = g.edge_count();
    let mut counts = ClauseCounts {
        has_color: m,
        proper: g.incident_pairs().len() * c,
        rainbow: rainbow.min(usize::MAX as u64) as usize,
        ..Default::default()
    };
    if encoding == Encoding::ExactColors {
        counts.surjective = c;
        counts.at_most_one = m * (c * c.saturating_sub(1) / 2);
    }
    let total = counts.has_color as u64
        + counts.proper as u64
        + rainbow
        + counts.surjective as u64
        + counts.at_most_one as u64;
    (counts, total)
}

pub fn encode_feasibility(g: &Graph, k: usize, c: usize) -> Result<CnfFormula> {
    encode(g, k, c, Encoding::Feasibility)
}

pub fn encode_exact_colors(g: &Graph, k: usize, c: usize) -> Result<CnfFormula> {
    encode(g, k, c, Encoding::ExactColors)
}

pub fn encode(g: &Graph, k: usize, c: usize, encoding: Encoding) -> Result<CnfFormula> {
    let m = g.edge_count();
    if c == 0 && m > 0 {
        return Err(Error::Precondition("palette size 0 with a nonempty edge set".into()));
    }
    let (_, total) = predicted_counts(g, k, c, encoding);
    if total > MAX_CLAUSES {
        return Err(Error::TooLarge(format!(
            "formula would have {total} clauses (limit {MAX_CLAUSES})"
        )));
    }
    let x = |e: usize, col: usize| var_id(c, e, col);
    let mut clauses: Vec<Vec<i32>> = Vec::with_capacity(total as usize);
    let mut counts = ClauseCounts::default();

    for e in 0..m {
        clauses.push((0..c).map(|col| x(e, col)).collect());
    }
    counts.has_color = m;

    for (e, f) in g.incident_pairs() {
        for col in 0..c {
            clauses.push(vec![-x(e, col), -x(f, col)]);
        }
    }
    counts.proper = clauses.len() - counts.has_color;

    let before = clauses.len();
    let mut tuple = Vec::with_capacity(k);
    for cycle in cycle_edge_sets(g, k) {
        injective_tuples(c, k, &mut tuple, 0, &mut |t| {
            clauses.push(cycle.iter().zip(t).map(|(&e, &col)| -x(e, col)).collect());
        });
    }
    counts.rainbow = clauses.len() - before;

    if encoding == Encoding::ExactColors {
        for col in 0..c {
            clauses.push((0..m).map(|e| x(e, col)).collect());
        }
        counts.surjective = c;
        let before = clauses.len();
        for e in 0..m {
            for c1 in 0..c {
                for c2 in c1 + 1..c {
                    clauses.push(vec![-x(e, c1), -x(e, c2)]);
                }
            }
        }
        counts.at_most_one = clauses.len() - before;
    }

    Ok(CnfFormula {
        num_vars: m * c,
        clauses,
        palette: c,
        k,
        encoding,
        block: RainbowBlock::Tuples,
        counts,
        graph: g.clone(),
    })
}

/// The compact form. Same `x` numbering; see the module docs.
pub fn encode_compact(g: &Graph, k: usize, c: usize, encoding: Encoding) -> Result<CnfFormula> {
    let m = g.edge_count();
    if c == 0 && m > 0 {
        return Err(Error::Precondition("palette size 0 with a nonempty edge set".into()));
    }
    let x = |e: usize, col: usize| var_id(c, e, col);
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut counts = ClauseCounts::default();

    for e in 0..m {
        clauses.push((0..c).map(|col| x(e, col)).collect());
    }
    counts.has_color = m;
    for e in 0..m {
        for c1 in 0..c {
            for c2 in c1 + 1..c {
                clauses.push(vec![-x(e, c1), -x(e, c2)]);
            }
        }
    }
    counts.at_most_one = m * (c * c.saturating_sub(1) / 2);
    for (e, f) in g.incident_pairs() {
        for col in 0..c {
            clauses.push(vec![-x(e, col), -x(f, col)]);
        }
    }
    counts.proper = g.incident_pairs().len() * c;

    let before = clauses.len();
    if let Some(v) = (0..g.n()).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))) {
        if g.degree(v) <= c {
            for (i, w) in g.neighbors(v).enumerate() {
                clauses.push(vec![x(g.edge_index(v, w).unwrap(), i)]);
            }
        }
    }
    counts.symmetry = clauses.len() - before;

    // non-adjacent edge pairs of each cycle, auxiliaries in first-use order
    let cycles = cycle_edge_sets(g, k);
    let mut pair_var: HashMap<(usize, usize), i32> = HashMap::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut next = (m * c) as i32;
    let mut cycle_clauses = Vec::with_capacity(cycles.len());
    for cycle in &cycles {
        let mut clause = Vec::new();
        for i in 0..k {
            for j in i + 2..k {
                if i == 0 && j == k - 1 {
                    continue;
                }
                let key = (cycle[i].min(cycle[j]), cycle[i].max(cycle[j]));
                let var = *pair_var.entry(key).or_insert_with(|| {
                    pairs.push(key);
                    next += 1;
                    next
                });
                clause.push(var);
            }
        }
        cycle_clauses.push(clause);
    }
    let before = clauses.len();
    for (i, &(e, f)) in pairs.iter().enumerate() {
        let q = (m * c) as i32 + 1 + i as i32;
        let first = next + 1 + (i * c) as i32;
        clauses.push(std::iter::once(-q).chain((0..c).map(|col| first + col as i32)).collect());
        for col in 0..c {
            let y = first + col as i32;
            clauses.push(vec![-y, x(e, col)]);
            clauses.push(vec![-y, x(f, col)]);
        }
    }
    counts.links = clauses.len() - before;
    let num_vars = next as usize + pairs.len() * c;
    counts.rainbow = cycle_clauses.len();
    clauses.extend(cycle_clauses);

    if encoding == Encoding::ExactColors {
        for col in 0..c {
            clauses.push((0..m).map(|e| x(e, col)).collect());
        }
        counts.surjective = c;
    }

    Ok(CnfFormula {
        num_vars,
        clauses,
        palette: c,
        k,
        encoding,
        block: RainbowBlock::PairEquality,
        counts,
        graph: g.clone(),
    })
}

fn injective_tuples(c: usize, k: usize, tuple: &mut Vec<usize>, used: u128, emit: &mut impl FnMut(&[usize])) {
    if tuple.len() == k {
        emit(tuple);
        return;
    }
    for col in 0..c {
        if col < 128 && used >> col & 1 == 1 {
            continue;
        }
        if col >= 128 && tuple.contains(&col) {
            continue;
        }
        tuple.push(col);
        let bit = if col < 128 { 1u128 << col } else { 0 };
        injective_tuples(c, k, tuple, used | bit, emit);
        tuple.pop();
    }
}

/// Standard DIMACS CNF text.
pub fn write_dimacs(num_vars: usize, clauses: &[Vec<i32>]) -> String {
    let mut out = String::with_capacity(16 + clauses.len() * 12);
    let _ = writeln!(out, "p cnf {} {}", num_vars, clauses.len());
    for clause in clauses {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

pub fn formula_to_dimacs(f: &CnfFormula) -> String {
    write_dimacs(f.num_vars, &f.clauses)
}

/// A parsed DIMACS instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dimacs {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

/// Parses DIMACS CNF. Comment lines (`c`) are skipped and clauses may span
/// lines; literals must stay within the declared variable range and the
/// clause count must match the header.
pub fn parse_dimacs(text: &str) -> Result<Dimacs> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last_line = 0;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        let err = |reason: String| Error::Dimacs { line: lineno, reason };
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(err("duplicate header".into()));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts.as_slice() {
                ["cnf", v, c] => {
                    let v = v.parse().map_err(|_| err(format!("bad variable count `{v}`")))?;
                    let c = c.parse().map_err(|_| err(format!("bad clause count `{c}`")))?;
                    header = Some((v, c));
                }
                _ => return Err(err("expected `p cnf <vars> <clauses>`".into())),
            }
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(err("clause before header".into()));
        };
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| err(format!("bad literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > num_vars {
                return Err(err(format!("literal {lit} exceeds {num_vars} variables")));
            } else {
                current.push(lit);
            }
        }
    }
    let Some((num_vars, expected)) = header else {
        return Err(Error::Dimacs {
            line: last_line,
            reason: "missing header".into(),
        });
    };
    if !current.is_empty() {
        return Err(Error::Dimacs {
            line: last_line,
            reason: "last clause is not terminated by 0".into(),
        });
    }
    if clauses.len() != expected {
        return Err(Error::Dimacs {
            line: last_line,
            reason: format!("header declares {expected} clauses, found {}", clauses.len()),
        });
    }
    Ok(Dimacs { num_vars, clauses })
}

/// Signed literals from solver output. Accepts bare integers or `v` lines,
/// across any number of lines; `c` and `s` lines are skipped and `0` is
/// ignored.
pub fn parse_model(text: &str) -> Result<Vec<i32>> {
    let mut lits = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('c') || line.starts_with('s') {
            continue;
        }
        let body = line.strip_prefix('v').unwrap_or(line);
        for tok in body.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| Error::Dimacs {
                line: i + 1,
                reason: format!("bad literal `{tok}` in model"),
            })?;
            if lit != 0 {
                lits.push(lit);
            }
        }
    }
    Ok(lits)
}

/// Reads the coloring off a model and re-verifies it against the formula's
/// predicates. In feasibility mode an edge with several true colors takes
/// the lowest.
pub fn decode_assignment(f: &CnfFormula, model: &[i32]) -> Result<EdgeColoring> {
    let mut value: Vec<Option<bool>> = vec![None; f.num_vars + 1];
    for &lit in model {
        let v = lit.unsigned_abs() as usize;
        if v > f.num_vars {
            return Err(Error::InvalidModel(format!("literal {lit} outside 1..={}", f.num_vars)));
        }
        value[v] = Some(lit > 0);
    }
    if let Some(v) = (1..=f.num_vars).find(|&v| value[v].is_none()) {
        return Err(Error::InvalidModel(format!("variable {v} is unassigned")));
    }
    let g = &f.graph;
    let mut colors = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() {
        let mut true_colors = (0..f.palette).filter(|&c| value[f.var(e, c) as usize] == Some(true));
        let Some(first) = true_colors.next() else {
            return Err(Error::InvalidModel(format!("edge {e} has no color")));
        };
        let single = f.encoding == Encoding::ExactColors || f.block == RainbowBlock::PairEquality;
        if single && true_colors.next().is_some() {
            return Err(Error::InvalidModel(format!("edge {e} has several colors")));
        }
        colors.push(first as Color);
    }
    let coloring = EdgeColoring::new(colors);
    let check = is_rainbow_free(g, &coloring, f.k)?;
    if !check.proper {
        return Err(Error::InvalidModel("decoded coloring is not proper".into()));
    }
    if !check.rainbow_free {
        return Err(Error::InvalidModel(format!(
            "decoded coloring has {} rainbow C_{} copies",
            check.violations.len(),
            f.k
        )));
    }
    if f.encoding == Encoding::ExactColors && coloring.distinct_colors() != f.palette {
        return Err(Error::InvalidModel("decoded coloring misses a color".into()));
    }
    Ok(coloring)
}

/// Model text (`v` lines) that sets exactly the variables of `coloring`.
pub fn model_for(f: &CnfFormula, coloring: &EdgeColoring) -> String {
    assert_eq!(f.block, RainbowBlock::Tuples, "auxiliaries are not derived here");
    let mut out = String::from("v");
    for e in 0..f.graph.edge_count() {
        for c in 0..f.palette {
            let lit = f.var(e, c);
            let lit = if coloring.color(e) as usize == c { lit } else { -lit };
            let _ = write!(out, " {lit}");
        }
    }
    out.push_str(" 0\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_counts_and_header() {
        let f = encode_feasibility(&Graph::complete(3), 6, 3).unwrap();
        assert_eq!((f.counts.has_color, f.counts.proper, f.counts.rainbow), (3, 9, 0));
        assert!(formula_to_dimacs(&f).starts_with("p cnf 9 12\n"));
    }

    #[test]
    fn single_edge() {
        let g = Graph::path(2);
        let f = encode_feasibility(&g, 4, 2).unwrap();
        assert_eq!(f.counts.total(), 1);
        let x = encode_exact_colors(&g, 4, 2).unwrap();
        assert_eq!((x.counts.surjective, x.counts.at_most_one), (2, 1));
    }

    #[test]
    fn c4_rainbow_block() {
        let f = encode_feasibility(&Graph::cycle(4), 4, 4).unwrap();
        assert_eq!(f.counts.rainbow, 24);
        let (pred, total) = predicted_counts(&Graph::cycle(4), 4, 4, Encoding::Feasibility);
        assert_eq!(pred, f.counts);
        assert_eq!(total as usize, f.clauses.len());
    }

    #[test]
    fn empty_formula() {
        assert_eq!(write_dimacs(0, &[]), "p cnf 0 0\n");
        let f = encode_feasibility(&Graph::empty(3), 4, 0).unwrap();
        assert_eq!(formula_to_dimacs(&f), "p cnf 0 0\n");
    }

    #[test]
    fn zero_palette_rejected() {
        assert!(matches!(encode_feasibility(&Graph::path(2), 4, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn parse_roundtrip_and_errors() {
        let f = encode_exact_colors(&Graph::cycle(4), 4, 3).unwrap();
        let d = parse_dimacs(&formula_to_dimacs(&f)).unwrap();
        assert_eq!(d.clauses, f.clauses);
        assert_eq!(d.num_vars, 12);
        assert!(matches!(parse_dimacs("1 2 0\n"), Err(Error::Dimacs { line: 1, .. })));
        assert!(matches!(parse_dimacs("p cnf 1 1\n2 0\n"), Err(Error::Dimacs { line: 2, .. })));
        assert!(parse_dimacs("c hi\np cnf 2 1\n1\n-2 0\n").is_ok());
    }

    #[test]
    fn models() {
        assert_eq!(parse_model("s SATISFIABLE\nv 1 -2\nv 3 0\n").unwrap(), vec![1, -2, 3]);
        let g = Graph::cycle(4);
        let f = encode_feasibility(&g, 4, 4).unwrap();
        let all_false: Vec<i32> = (1..=16).map(|v| -v).collect();
        match decode_assignment(&f, &all_false) {
            Err(Error::InvalidModel(msg)) => assert!(msg.contains("edge 0")),
            other => panic!("{other:?}"),
        }
        let c = EdgeColoring::new(vec![0, 1, 1, 0]);
        assert!(c.is_proper(&g));
        let decoded = decode_assignment(&f, &parse_model(&model_for(&f, &c)).unwrap()).unwrap();
        assert_eq!(decoded, c);
    }

    #[test]
    fn compact_layout() {
        let g = Graph::cycle(4);
        let f = encode_compact(&g, 4, 3, Encoding::Feasibility).unwrap();
        assert_eq!(f.counts.rainbow, 1);
        // two opposite pairs, each with a selector and 3 color links
        assert_eq!(f.counts.links, 2 * (1 + 2 * 3));
        assert_eq!(f.num_vars, 12 + 2 + 2 * 3);
        assert_eq!(f.counts.symmetry, 2);
        assert_eq!(f.counts.total(), f.clauses.len());
        let t = encode_compact(&Graph::complete(3), 3, 3, Encoding::Feasibility).unwrap();
        assert!(t.clauses.contains(&Vec::new()), "a proper triangle is always rainbow");
    }

    #[test]
    fn feasibility_takes_lowest_true_color() {
        let g = Graph::path(3);
        let f = encode_feasibility(&g, 4, 3).unwrap();
        // edge 0 gets colors 1 and 2, edge 1 color 0
        let model = [-1, 2, 3, 4, -5, -6];
        assert_eq!(decode_assignment(&f, &model).unwrap().colors(), &[1, 0]);
        let x = encode_exact_colors(&g, 4, 2).unwrap();
        assert!(decode_assignment(&x, &[1, 2, -3, 4]).is_err());
    }
}
