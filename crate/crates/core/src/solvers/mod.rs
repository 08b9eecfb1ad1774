//! Solvers for choosing `k` edges whose deletion hurts robustness most.

pub mod combinations;
pub mod exact;
pub mod greedy;

use crate::graph::Edge;
use crate::measures::MeasureKind;

pub use exact::{exact_solve, ExactOptions, ExactSolution};
pub use greedy::{
    eager_greedy_solve, eager_greedy_solve_with, fi_loss, greedy_solve, greedy_solve_with, thr_loss, thr_loss_explicit,
    GreedyOptions, LazyQueueEntry,
};

/// Record of a greedy run: edges in deletion order with the measure value
/// after each round and the marginal loss that won the round.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveTrace {
    pub measure: MeasureKind,
    pub k: usize,
    pub initial_value: f64,
    pub picked: Vec<Edge>,
    pub value_after: Vec<f64>,
    pub loss: Vec<f64>,
    /// Number of loss evaluations performed.
    pub evaluations: usize,
}

impl SolveTrace {
    pub(crate) fn new(measure: MeasureKind, k: usize, initial_value: f64) -> Self {
        SolveTrace {
            measure,
            k,
            initial_value,
            picked: Vec::with_capacity(k),
            value_after: Vec::with_capacity(k),
            loss: Vec::with_capacity(k),
            evaluations: 0,
        }
    }

    pub(crate) fn push(&mut self, e: Edge, value: f64, loss: f64) {
        self.picked.push(e);
        self.value_after.push(value);
        self.loss.push(loss);
    }

    /// Measure value before round `r` (the initial value for `r == 0`).
    pub fn value_before(&self, r: usize) -> f64 {
        if r == 0 {
            self.initial_value
        } else {
            self.value_after[r - 1]
        }
    }

    pub fn final_value(&self) -> f64 {
        self.value_after.last().copied().unwrap_or(self.initial_value)
    }
}
