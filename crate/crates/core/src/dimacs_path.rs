//! Deciding coloring instances through DIMACS text and a CDCL solver.
//!
//! The formula is written to DIMACS, parsed back, solved by CaDiCaL, and
//! the model is rendered as `v` lines and decoded, so the same route serves
//! files produced for or by external solvers.

use std::time::Instant;

use cadical::{Solver, Timeout};

use crate::cnf::{
    decode_assignment, encode, encode_compact, formula_to_dimacs, parse_dimacs, parse_model, Encoding,
    RainbowBlock,
};
use crate::error::Result;
use crate::graph::Graph;
use crate::search::{find_exact_coloring, find_rainbow_free_coloring, Budget, FeasibilityVerdict, Status};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverOutcome {
    /// A full assignment, one signed literal per variable.
    Sat(Vec<i32>),
    Unsat,
    Unknown,
}

/// Solves DIMACS CNF text. A node budget maps to a conflict limit, a time
/// budget to a termination callback.
pub fn solve_dimacs(text: &str, budget: Budget) -> Result<SolverOutcome> {
    let cnf = parse_dimacs(text)?;
    let mut solver: Solver<Timeout> = Solver::new();
    if let Some(ms) = budget.max_millis {
        solver.set_callbacks(Some(Timeout::new(ms as f32 / 1000.0)));
    }
    if let Some(n) = budget.max_nodes {
        let limit = i32::try_from(n).unwrap_or(i32::MAX);
        solver.set_limit("conflicts", limit).expect("conflicts is a valid limit");
    }
    if cnf.num_vars > 0 {
        solver.reserve(cnf.num_vars as i32);
    }
    for clause in &cnf.clauses {
        solver.add_clause(clause.iter().copied());
    }
    Ok(match solver.solve() {
        Some(true) => SolverOutcome::Sat(
            (1..=cnf.num_vars as i32)
                .map(|v| if solver.value(v) == Some(false) { -v } else { v })
                .collect(),
        ),
        Some(false) => SolverOutcome::Unsat,
        None => SolverOutcome::Unknown,
    })
}

/// Model as solver-style `v` lines.
pub fn model_text(model: &[i32]) -> String {
    let mut out = String::new();
    for chunk in model.chunks(16) {
        out.push('v');
        for lit in chunk {
            out.push(' ');
            out.push_str(&lit.to_string());
        }
        out.push('\n');
    }
    out.push_str("v 0\n");
    out
}

/// Encodes, solves and decodes one instance.
pub fn decide_via_dimacs(
    g: &Graph,
    k: usize,
    palette: usize,
    encoding: Encoding,
    block: RainbowBlock,
    budget: Budget,
) -> Result<FeasibilityVerdict> {
    let started = Instant::now();
    let formula = match block {
        RainbowBlock::Tuples => encode(g, k, palette, encoding)?,
        RainbowBlock::PairEquality => encode_compact(g, k, palette, encoding)?,
    };
    let outcome = solve_dimacs(&formula_to_dimacs(&formula), budget)?;
    let (status, witness) = match outcome {
        SolverOutcome::Sat(model) => {
            let coloring = decode_assignment(&formula, &parse_model(&model_text(&model))?)?;
            (Status::Feasible, Some(coloring))
        }
        SolverOutcome::Unsat => (Status::Infeasible, None),
        SolverOutcome::Unknown => (Status::Unknown, None),
    };
    Ok(FeasibilityVerdict {
        status,
        witness,
        nodes_explored: 0,
        elapsed_ms: started.elapsed().as_millis() as u64,
        budget,
    })
}

/// Feasibility over palette `|E(g)|` through the DIMACS route.
pub fn find_rainbow_free_coloring_dimacs(
    g: &Graph,
    k: usize,
    block: RainbowBlock,
    budget: Budget,
) -> Result<FeasibilityVerdict> {
    decide_via_dimacs(g, k, g.edge_count(), Encoding::Feasibility, block, budget)
}

/// Decision procedure for feasibility questions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    #[default]
    Backtrack,
    /// The literal CNF through DIMACS and CaDiCaL.
    Cnf,
    /// The compact CNF through DIMACS and CaDiCaL.
    CompactCnf,
}

impl Engine {
    fn block(self) -> RainbowBlock {
        match self {
            Engine::CompactCnf => RainbowBlock::PairEquality,
            _ => RainbowBlock::Tuples,
        }
    }
}

/// Proper coloring without a rainbow `C_k`, any number of colors.
pub fn decide_feasibility(g: &Graph, k: usize, engine: Engine, budget: Budget) -> Result<FeasibilityVerdict> {
    match engine {
        Engine::Backtrack => find_rainbow_free_coloring(g, k, budget),
        _ => find_rainbow_free_coloring_dimacs(g, k, engine.block(), budget),
    }
}

/// Proper coloring without a rainbow `C_k` using exactly `colors` colors.
pub fn decide_exact(g: &Graph, k: usize, colors: usize, engine: Engine, budget: Budget) -> Result<FeasibilityVerdict> {
    match engine {
        Engine::Backtrack => find_exact_coloring(g, k, colors, budget),
        _ => decide_via_dimacs(g, k, colors, Encoding::ExactColors, engine.block(), budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_verdicts() {
        let u = Budget::UNLIMITED;
        for block in [RainbowBlock::Tuples, RainbowBlock::PairEquality] {
            let status = |g: &Graph, k| find_rainbow_free_coloring_dimacs(g, k, block, u).unwrap().status;
            assert_eq!(status(&Graph::cycle(4), 4), Status::Feasible);
            assert_eq!(status(&Graph::complete(3), 3), Status::Infeasible);
            assert_eq!(status(&Graph::empty(2), 4), Status::Feasible);
            let one_edge = decide_via_dimacs(&Graph::path(2), 4, 2, Encoding::ExactColors, block, u).unwrap();
            assert_eq!(one_edge.status, Status::Infeasible);
        }
    }

    #[test]
    fn model_text_roundtrip() {
        let m: Vec<i32> = (1..40).map(|v| if v % 3 == 0 { -v } else { v }).collect();
        assert_eq!(parse_model(&model_text(&m)).unwrap(), m);
    }
}
