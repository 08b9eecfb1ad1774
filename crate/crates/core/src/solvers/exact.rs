//! Exhaustive search over all k-subsets of edges.
//!
//! Every candidate is scored from scratch (no incremental updates), so this
//! solver doubles as the reference the greedy pipeline is checked against.
//! Harmonic resistance goes through grounded Cholesky solves and the forest
//! index through `(L + I)^{-1}`, neither of which touches the pseudoinverse
//! update code.

use rayon::prelude::*;

use super::combinations::{advance, binomial, unrank};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::measures::{forest_index, total_harmonic_resistance_grounded, MeasureKind};

/// Default cap on the number of enumerated subsets.
pub const DEFAULT_ENUMERATION_LIMIT: u128 = 100_000_000;

/// Candidates per parallel work unit.
const CHUNK: u128 = 4096;

/// Candidates kept by one chunk: score and edge indices.
type Scored = Vec<(f64, Vec<usize>)>;

#[derive(Clone, Copy, Debug)]
pub struct ExactOptions {
    pub enumeration_limit: u128,
    /// Absolute tolerance under which two objective values count as tied.
    pub tie_tol: f64,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { enumeration_limit: DEFAULT_ENUMERATION_LIMIT, tie_tol: 1e-9 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactSolution {
    pub measure: MeasureKind,
    pub k: usize,
    /// Measure value of the graph after deleting any optimal set.
    pub value: f64,
    /// All optimal sets, each canonical, in lexicographic order.
    pub solutions: Vec<EdgeSet>,
    pub candidates: u128,
}

/// Objective value after deleting the edges at `skip`, oriented so that
/// larger is better for the attacker.
fn attack_score(g: &Graph, skip: &[usize], measure: MeasureKind) -> f64 {
    let h = g.without_edge_indices(skip);
    match measure {
        MeasureKind::TotalHarmonicResistance => -total_harmonic_resistance_grounded(&h),
        MeasureKind::ForestIndex => forest_index(&h),
        MeasureKind::TotalEffectiveResistance => unreachable!("rejected before enumeration"),
    }
}

#[derive(Clone, Debug)]
struct Best {
    score: f64,
    members: Scored,
}

impl Best {
    fn empty() -> Self {
        Best { score: f64::NEG_INFINITY, members: Vec::new() }
    }

    fn offer(&mut self, score: f64, idx: &[usize], tol: f64) {
        if score < self.score - tol {
            return;
        }
        if score > self.score {
            self.score = score;
            self.members.retain(|(s, _)| *s >= score - tol);
        }
        self.members.push((score, idx.to_vec()));
    }
}

/// Enumerates every k-subset of `g`'s edges and returns all optima:
/// minimum harmonic resistance or maximum forest index after deletion.
pub fn exact_solve(g: &Graph, k: usize, measure: MeasureKind, opts: &ExactOptions) -> Result<ExactSolution> {
    if measure == MeasureKind::TotalEffectiveResistance {
        return Err(Error::UnsupportedMeasure(measure.as_str()));
    }
    let m = g.m();
    if k > m {
        return Err(Error::BudgetTooLarge { k, m });
    }
    let total = binomial(m, k);
    if total > opts.enumeration_limit {
        return Err(Error::EnumerationLimit { m, k, limit: opts.enumeration_limit });
    }
    let tol = opts.tie_tol;
    let chunks = total.div_ceil(CHUNK);

    let partials: Vec<(f64, Scored)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut idx = unrank(start, m, k);
            let mut scored = Vec::new();
            let mut best = f64::NEG_INFINITY;
            for rank in start..end {
                let s = attack_score(g, &idx, measure);
                if s >= best - tol {
                    best = best.max(s);
                    scored.push((s, idx.clone()));
                }
                if rank + 1 < end {
                    advance(&mut idx, m);
                }
            }
            scored.retain(|(s, _)| *s >= best - tol);
            (best, scored)
        })
        .collect();

    let best = partials.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let mut solutions: Vec<EdgeSet> = partials
        .into_iter()
        .flat_map(|(_, v)| v)
        .filter(|(s, _)| *s >= best - tol)
        .map(|(_, idx)| EdgeSet::new(idx.into_iter().map(|i| g.edges()[i])))
        .collect();
    solutions.sort();

    let value = if measure.attack_maximizes() { best } else { -best };
    Ok(ExactSolution { measure, k, value, solutions, candidates: total })
}

/// Sequential reference enumeration without chunking; used to cross-check
/// the parallel merge.
#[doc(hidden)]
pub fn exact_solve_sequential(g: &Graph, k: usize, measure: MeasureKind, tol: f64) -> Result<(f64, Vec<EdgeSet>)> {
    let m = g.m();
    if k > m {
        return Err(Error::BudgetTooLarge { k, m });
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut best = Best::empty();
    loop {
        best.offer(attack_score(g, &idx, measure), &idx, tol);
        if !advance(&mut idx, m) {
            break;
        }
    }
    let sets = best
        .members
        .into_iter()
        .map(|(_, idx)| EdgeSet::new(idx.into_iter().map(|i| g.edges()[i])))
        .collect();
    let value = if measure.attack_maximizes() { best.score } else { -best.score };
    Ok((value, sets))
}
