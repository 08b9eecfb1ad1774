//! Machine-readable run reports.

use std::collections::BTreeMap;

use grodel::scoring::FamilyScore;
use grodel::solvers::SolveTrace;
use grodel::{Edge, EdgeSet};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphMeta {
    pub n: usize,
    pub m: usize,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub picked: Vec<[usize; 2]>,
    pub value_after: Vec<f64>,
    pub loss: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
    /// Ranking rule used to turn closeness ranks into quantiles.
    pub rule: String,
}

/// Output of `grodel solve`. Edge pairs are canonical (`u < v`) and use the
/// node ids of the input file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub graph: GraphMeta,
    pub measure: String,
    pub algorithm: String,
    pub k: usize,
    pub initial_value: f64,
    /// Measure value after deleting (any) reported solution.
    pub final_value: f64,
    pub solutions: Vec<Vec<[usize; 2]>>,
    pub trace: Option<TraceReport>,
    pub scores: Option<ScoreReport>,
    pub seed: Option<u64>,
    pub tol: f64,
    pub timings_ms: BTreeMap<String, f64>,
}

pub fn pair(e: Edge) -> [usize; 2] {
    [e.0, e.1]
}

pub fn pairs(s: &EdgeSet) -> Vec<[usize; 2]> {
    s.iter().copied().map(pair).collect()
}

impl TraceReport {
    /// `map` translates edges back to input node ids.
    pub fn from_trace(trace: &SolveTrace, map: impl Fn(Edge) -> Edge) -> Self {
        TraceReport {
            picked: trace.picked.iter().map(|&e| pair(map(e))).collect(),
            value_after: trace.value_after.clone(),
            loss: trace.loss.clone(),
        }
    }
}

impl ScoreReport {
    /// Scores are rounded to two decimals for presentation.
    pub fn from_family(score: FamilyScore, rule: &str) -> Self {
        let r = score.rounded();
        ScoreReport { min: r.min, mean: r.mean, max: r.max, rule: rule.to_string() }
    }
}

impl RunReport {
    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string(self)
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Copy with timings cleared, for determinism comparisons.
    pub fn without_timings(&self) -> Self {
        RunReport { timings_ms: BTreeMap::new(), ..self.clone() }
    }
}
