//! Robustness functionals: total effective resistance, forest index and total
//! harmonic resistance.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{forest_matrix, PseudoinverseState, SymMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    TotalEffectiveResistance,
    ForestIndex,
    TotalHarmonicResistance,
}

impl MeasureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MeasureKind::TotalEffectiveResistance => "rr",
            MeasureKind::ForestIndex => "fi",
            MeasureKind::TotalHarmonicResistance => "thr",
        }
    }

    /// Whether deleting edges is meant to increase (`true`) or decrease the value.
    pub fn attack_maximizes(self) -> bool {
        !matches!(self, MeasureKind::TotalHarmonicResistance)
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rr" => Ok(MeasureKind::TotalEffectiveResistance),
            "fi" => Ok(MeasureKind::ForestIndex),
            "thr" => Ok(MeasureKind::TotalHarmonicResistance),
            other => Err(Error::InvalidParameter(format!("unknown measure {other:?} (expected rr, fi or thr)"))),
        }
    }
}

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(self) -> f64 {
        self.sum + self.carry
    }
}

/// `n * tr(L^+)`; only defined for connected graphs.
pub fn total_effective_resistance(st: &PseudoinverseState) -> Result<f64> {
    let k = st.components().num_components();
    if k > 1 {
        return Err(Error::Disconnected(k));
    }
    Ok(st.dim() as f64 * st.linv().trace())
}

/// `sum_{u<v} r(u, v)`; infinite when the graph is disconnected.
pub fn total_effective_resistance_pairwise(st: &PseudoinverseState) -> f64 {
    if st.components().num_components() > 1 {
        return f64::INFINITY;
    }
    let n = st.dim();
    let mut acc = CompensatedSum::default();
    for u in 0..n {
        for v in u + 1..n {
            acc.add(st.effective_resistance(u, v).expect("u != v"));
        }
    }
    acc.value()
}

/// `sum_{u<v} 1 / r(u, v)` over pairs in the same component; pairs in
/// different components contribute nothing.
pub fn total_harmonic_resistance(st: &PseudoinverseState) -> f64 {
    let mut acc = CompensatedSum::default();
    for members in st.components().all_members() {
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                acc.add(1.0 / st.resistance_unchecked(u, v));
            }
        }
    }
    acc.value()
}

/// Total harmonic resistance computed without the pseudoinverse: each
/// component's Laplacian is grounded at its smallest node and the reduced
/// matrix `M` is inverted by Cholesky, giving `r(g, v) = M[v, v]` and
/// `r(u, v) = M[u, u] + M[v, v] - 2 M[u, v]`.
pub fn total_harmonic_resistance_grounded(g: &Graph) -> f64 {
    let comps = g.connected_components();
    let mut local = vec![usize::MAX; g.n()];
    let mut acc = CompensatedSum::default();
    for members in comps.all_members() {
        let c = members.len();
        if c < 2 {
            continue;
        }
        // ground keeps usize::MAX; everyone else gets a reduced index
        local[members[0]] = usize::MAX;
        for (i, &v) in members[1..].iter().enumerate() {
            local[v] = i;
        }
        let mut reduced = DMatrix::<f64>::zeros(c - 1, c - 1);
        for &v in &members[1..] {
            let i = local[v];
            reduced[(i, i)] = g.degree(v) as f64;
            for &w in g.neighbors(v) {
                if local[w] != usize::MAX {
                    reduced[(i, local[w])] = -1.0;
                }
            }
        }
        let inv = reduced
            .cholesky()
            .expect("grounded Laplacian of a connected component is positive definite")
            .inverse();
        for i in 0..c - 1 {
            acc.add(1.0 / inv[(i, i)]);
            for j in i + 1..c - 1 {
                acc.add(1.0 / (inv[(i, i)] + inv[(j, j)] - 2.0 * inv[(i, j)]));
            }
        }
    }
    acc.value()
}

pub fn forest_distance(omega: &SymMatrix, u: usize, v: usize) -> Result<f64> {
    let n = omega.dim();
    for x in [u, v] {
        if x >= n {
            return Err(Error::NodeOutOfRange { node: x, n });
        }
    }
    if u == v {
        return Err(Error::SameEndpoint(u));
    }
    Ok(omega.get(u, u) + omega.get(v, v) - 2.0 * omega.get(u, v))
}

/// `n * tr((L + I)^{-1}) - n`.
pub fn forest_index(g: &Graph) -> f64 {
    forest_index_from_matrix(&forest_matrix(g))
}

pub fn forest_index_from_matrix(omega: &SymMatrix) -> f64 {
    let n = omega.dim() as f64;
    n * omega.trace() - n
}

/// `sum_{u<v} fd(u, v)`.
pub fn forest_index_pairwise(omega: &SymMatrix) -> f64 {
    let n = omega.dim();
    let mut acc = CompensatedSum::default();
    for u in 0..n {
        for v in u + 1..n {
            acc.add(forest_distance(omega, u, v).expect("u != v"));
        }
    }
    acc.value()
}

/// The graph plus a universal vertex with id `n`.
pub fn augment_graph(g: &Graph) -> Graph {
    g.with_universal_vertex()
}

/// Forest index of the original `n`-node graph from the pseudoinverse of its
/// augmented graph: `n * tr(L*^+) - (n + 1) * L*^+[u*, u*]`.
pub fn forest_index_augmented(st_star: &PseudoinverseState, n: usize) -> Result<f64> {
    if st_star.dim() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, got: st_star.dim() });
    }
    let linv = st_star.linv();
    Ok(n as f64 * linv.trace() - (n as f64 + 1.0) * linv.get(n, n))
}

/// Evaluates `kind` on `g` from scratch.
pub fn measure(g: &Graph, kind: MeasureKind) -> Result<f64> {
    match kind {
        MeasureKind::TotalEffectiveResistance => total_effective_resistance(&PseudoinverseState::new(g)),
        MeasureKind::ForestIndex => Ok(forest_index(g)),
        MeasureKind::TotalHarmonicResistance => Ok(total_harmonic_resistance(&PseudoinverseState::new(g))),
    }
}
