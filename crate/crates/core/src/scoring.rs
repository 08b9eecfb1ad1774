//! Closeness-based centrality scores for edge sets.
//!
//! Nodes are ranked by closeness centrality and each rank is turned into a
//! quantile in `[0, 1]`; an edge scores the mean of its endpoints' quantiles
//! and a set scores the mean over its edges. High scores mean the deleted
//! edges sit in the core of the graph, low scores mean the periphery.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};

/// `(n - 1) / sum of BFS distances` for every node. A single node scores 0.
pub fn closeness_centrality(g: &Graph) -> Result<Vec<f64>> {
    let n = g.n();
    let comps = g.connected_components().num_components();
    if comps > 1 {
        return Err(Error::Disconnected(comps));
    }
    if n < 2 {
        return Ok(vec![0.0; n]);
    }
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    for s in 0..n {
        dist.fill(usize::MAX);
        dist[s] = 0;
        queue.push_back(s);
        let mut total = 0usize;
        while let Some(v) = queue.pop_front() {
            total += dist[v];
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        out.push((n - 1) as f64 / total as f64);
    }
    Ok(out)
}

/// How ranks become quantiles.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum QuantileRule {
    /// Total order by descending closeness, ties by ascending node id;
    /// position `i` scores `(n - 1 - i) / (n - 1)`.
    #[default]
    Strict,
    /// Tied nodes share the mean of the strict quantiles they span.
    Fractional,
    /// Share of nodes that are strictly less central: `#{u : c(u) < c(v)} / n`.
    /// The most central node scores `(n - t) / n` for `t` nodes tied at
    /// the top, the least central node scores 0.
    StrictlyBelow,
}

impl QuantileRule {
    pub fn as_str(self) -> &'static str {
        match self {
            QuantileRule::Strict => "strict",
            QuantileRule::Fractional => "fractional",
            QuantileRule::StrictlyBelow => "below",
        }
    }
}

impl fmt::Display for QuantileRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QuantileRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(QuantileRule::Strict),
            "fractional" => Ok(QuantileRule::Fractional),
            "below" => Ok(QuantileRule::StrictlyBelow),
            other => Err(Error::InvalidParameter(format!(
                "unknown quantile rule {other:?} (expected strict, fractional or below)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CentralityRanking {
    pub closeness: Vec<f64>,
    /// Nodes from most to least central (ties by ascending id).
    pub order: Vec<usize>,
    pub quantile: Vec<f64>,
    pub rule: QuantileRule,
}

impl CentralityRanking {
    pub fn of(g: &Graph, rule: QuantileRule) -> Result<Self> {
        rank_to_quantile(closeness_centrality(g)?, rule)
    }
}

/// Ranks nodes by descending closeness and assigns quantiles by `rule`.
pub fn rank_to_quantile(closeness: Vec<f64>, rule: QuantileRule) -> Result<CentralityRanking> {
    let n = closeness.len();
    if n < 2 {
        return Err(Error::InvalidParameter(format!("ranking needs at least 2 nodes, got {n}")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| match closeness[b].total_cmp(&closeness[a]) {
        Ordering::Equal => a.cmp(&b),
        other => other,
    });
    let top = (n - 1) as f64;
    let mut quantile = vec![0.0; n];
    match rule {
        QuantileRule::Strict => {
            for (i, &v) in order.iter().enumerate() {
                quantile[v] = (top - i as f64) / top;
            }
        }
        QuantileRule::Fractional | QuantileRule::StrictlyBelow => {
            let mut start = 0;
            while start < n {
                let mut end = start + 1;
                while end < n && closeness[order[end]] == closeness[order[start]] {
                    end += 1;
                }
                // positions start..end share one closeness value
                let q = match rule {
                    QuantileRule::Fractional => {
                        let mean_pos = (start + end - 1) as f64 / 2.0;
                        (top - mean_pos) / top
                    }
                    _ => (n - end) as f64 / n as f64,
                };
                for &v in &order[start..end] {
                    quantile[v] = q;
                }
                start = end;
            }
        }
    }
    Ok(CentralityRanking { closeness, order, quantile, rule })
}

/// Mean over edges of the mean endpoint quantile.
pub fn edge_set_score(ranking: &CentralityRanking, s: &EdgeSet) -> Result<f64> {
    if s.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    let n = ranking.quantile.len();
    let mut total = 0.0;
    for e in s {
        if e.1 >= n {
            return Err(Error::NodeOutOfRange { node: e.1, n });
        }
        total += 0.5 * (ranking.quantile[e.0] + ranking.quantile[e.1]);
    }
    Ok(total / s.len() as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyScore {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

impl FamilyScore {
    /// Rounded to two decimals for reporting.
    pub fn rounded(self) -> FamilyScore {
        FamilyScore { min: round2(self.min), mean: round2(self.mean), max: round2(self.max) }
    }
}

/// Scores every set against `g`'s closeness ranking and aggregates.
pub fn score_solution_family(g: &Graph, solutions: &[EdgeSet], rule: QuantileRule) -> Result<FamilyScore> {
    if solutions.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let ranking = CentralityRanking::of(g, rule)?;
    score_family_with(&ranking, solutions)
}

pub fn score_family_with(ranking: &CentralityRanking, solutions: &[EdgeSet]) -> Result<FamilyScore> {
    if solutions.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let scores = solutions
        .iter()
        .map(|s| edge_set_score(ranking, s))
        .collect::<Result<Vec<f64>>>()?;
    let min = scores.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = scores.iter().sum::<f64>() / scores.len() as f64;
    Ok(FamilyScore { min, mean, max })
}
