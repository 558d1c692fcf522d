//! The set of color counts admitting a rainbow-free coloring that uses
//! every color.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::dimacs_path::{decide_exact, Engine};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::search::{Budget, FeasibilityVerdict, Status};

#[derive(Debug, Clone, Serialize)]
pub struct ColorCount {
    pub colors: usize,
    pub status: Status,
    /// Set when the verdict follows from `colors < Δ` or `colors > |E|`.
    pub trivial: bool,
    pub verdict: Option<FeasibilityVerdict>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ColorInterval {
    pub k: usize,
    pub c_max: usize,
    /// Counts decided feasible.
    pub members: BTreeSet<usize>,
    /// Counts left undecided by the budget.
    pub unknown: BTreeSet<usize>,
    pub per_count: Vec<ColorCount>,
}

impl ColorInterval {
    /// Exact only when nothing is undecided.
    pub fn is_complete(&self) -> bool {
        self.unknown.is_empty()
    }

    pub fn max(&self) -> Option<usize> {
        self.members.iter().next_back().copied()
    }
}

/// Decides every `c` in `1..=c_max`. The budget applies per count.
pub fn color_interval(g: &Graph, k: usize, c_max: usize, budget: Budget, engine: Engine) -> Result<ColorInterval> {
    let delta = g.max_degree();
    if c_max < delta {
        return Err(Error::Precondition(format!(
            "c_max = {c_max} is below the maximum degree {delta}"
        )));
    }
    let mut out = ColorInterval {
        k,
        c_max,
        members: BTreeSet::new(),
        unknown: BTreeSet::new(),
        per_count: Vec::new(),
    };
    for c in 1..=c_max {
        if c < delta || c > g.edge_count() {
            out.per_count.push(ColorCount {
                colors: c,
                status: Status::Infeasible,
                trivial: true,
                verdict: None,
            });
            continue;
        }
        let verdict = decide_exact(g, k, c, engine, budget)?;
        match verdict.status {
            Status::Feasible => {
                out.members.insert(c);
            }
            Status::Unknown => {
                out.unknown.insert(c);
            }
            Status::Infeasible => {}
        }
        out.per_count.push(ColorCount {
            colors: c,
            status: verdict.status,
            trivial: false,
            verdict: Some(verdict),
        });
    }
    Ok(out)
}
