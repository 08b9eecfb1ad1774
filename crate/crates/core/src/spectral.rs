//! Laplacian, forest matrix and Laplacian pseudoinverse, with the two ways of
//! keeping the pseudoinverse current when an edge is deleted:
//!
//! * a rank-one Sherman-Morrison downdate when the edge lies on a cycle, and
//! * a block split when the edge is a bridge. The component holding the edge
//!   falls apart into two blocks whose pseudoinverses are recomputed; every
//!   other block is copied unchanged.
//!
//! The pseudoinverse of a disconnected graph is block diagonal (one block per
//! component, zero across components), which is what [`PseudoinverseState`]
//! stores alongside its [`ComponentMap`].

use std::fmt::Write as _;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::{ComponentMap, Graph};

/// Eigenvalues below this fraction of the largest one count as zero.
pub const EIGEN_CUTOFF: f64 = 1e-10;

/// `|1 - r(a, b)|` below this value marks a bridge for the rank-one downdate.
pub const BRIDGE_DENOMINATOR_TOL: f64 = 1e-9;

/// Symmetric dense matrix, stored in full row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    /// Builds from row-major data; the input must already be symmetric.
    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: data.len() });
        }
        for i in 0..dim {
            for j in 0..i {
                if data[i * dim + j] != data[j * dim + i] {
                    return Err(Error::InvalidParameter(format!("matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(SymMatrix { dim, data })
    }

    /// Symmetrizes `m` by averaging it with its transpose.
    fn from_nalgebra(m: &DMatrix<f64>) -> Self {
        let dim = m.nrows();
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..=i {
                let x = 0.5 * (m[(i, j)] + m[(j, i)]);
                out.data[i * dim + j] = x;
                out.data[j * dim + i] = x;
            }
        }
        out
    }

    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.dim + j] = x;
        self.data[j * self.dim + i] = x;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn as_row_major(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// One row per line, space-separated, 17 significant digits.
    pub fn to_dense_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim {
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{x:.16e}");
            }
            out.push('\n');
        }
        out
    }
}

/// `L = D - A`.
pub fn laplacian(g: &Graph) -> SymMatrix {
    let mut l = SymMatrix::zeros(g.n());
    for v in 0..g.n() {
        l.set(v, v, g.degree(v) as f64);
    }
    for e in g.edges() {
        l.set(e.0, e.1, -1.0);
    }
    l
}

/// `(L + I)^{-1}` via Cholesky; `L + I` is always positive definite.
pub fn forest_matrix(g: &Graph) -> SymMatrix {
    let mut m = laplacian(g).to_nalgebra();
    for i in 0..g.n() {
        m[(i, i)] += 1.0;
    }
    let chol = m.cholesky().expect("L + I is positive definite");
    SymMatrix::from_nalgebra(&chol.inverse())
}

/// Moore-Penrose pseudoinverse of a symmetric PSD matrix through its
/// eigendecomposition.
fn psd_pseudoinverse(m: DMatrix<f64>) -> DMatrix<f64> {
    let dim = m.nrows();
    let eig = SymmetricEigen::new(m);
    let lmax = eig.eigenvalues.iter().cloned().fold(0.0, f64::max);
    let mut out = DMatrix::zeros(dim, dim);
    if lmax <= 0.0 {
        return out;
    }
    let cutoff = EIGEN_CUTOFF * lmax;
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda <= cutoff {
            continue;
        }
        let vk = eig.eigenvectors.column(k);
        out.ger(1.0 / lambda, &vk, &vk, 1.0);
    }
    out
}

/// Writes the pseudoinverse of the Laplacian block over `members` (a whole
/// component, increasing order) into `target`.
fn write_component_block(g: &Graph, members: &[usize], local: &mut [usize], target: &mut SymMatrix) {
    let c = members.len();
    if c < 2 {
        // a singleton's block is the 1x1 zero matrix
        for &v in members {
            target.set(v, v, 0.0);
        }
        return;
    }
    for (i, &v) in members.iter().enumerate() {
        local[v] = i;
    }
    let mut block = DMatrix::zeros(c, c);
    for (i, &v) in members.iter().enumerate() {
        block[(i, i)] = g.degree(v) as f64;
        for &w in g.neighbors(v) {
            block[(i, local[w])] = -1.0;
        }
    }
    let pinv = psd_pseudoinverse(block);
    for (i, &v) in members.iter().enumerate() {
        for (j, &w) in members.iter().enumerate().take(i + 1) {
            target.set(v, w, 0.5 * (pinv[(i, j)] + pinv[(j, i)]));
        }
    }
}

/// Laplacian pseudoinverse of a graph together with its component labels.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoinverseState {
    linv: SymMatrix,
    comps: ComponentMap,
}

impl PseudoinverseState {
    /// Computes the pseudoinverse blockwise, one eigendecomposition per
    /// component.
    pub fn new(g: &Graph) -> Self {
        let comps = g.connected_components();
        let mut linv = SymMatrix::zeros(g.n());
        let mut local = vec![0; g.n()];
        for members in comps.all_members() {
            write_component_block(g, &members, &mut local, &mut linv);
        }
        PseudoinverseState { linv, comps }
    }

    pub fn linv(&self) -> &SymMatrix {
        &self.linv
    }

    pub fn components(&self) -> &ComponentMap {
        &self.comps
    }

    pub fn dim(&self) -> usize {
        self.linv.dim()
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v >= self.dim() {
            return Err(Error::NodeOutOfRange { node: v, n: self.dim() });
        }
        Ok(())
    }

    /// Quadratic form of the pseudoinverse on `e_u - e_v`, without the
    /// component check.
    #[inline]
    pub(crate) fn resistance_unchecked(&self, u: usize, v: usize) -> f64 {
        self.linv.get(u, u) + self.linv.get(v, v) - 2.0 * self.linv.get(u, v)
    }

    /// Effective resistance; infinite across components.
    pub fn effective_resistance(&self, u: usize, v: usize) -> Result<f64> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(Error::SameEndpoint(u));
        }
        if !self.comps.same_component(u, v) {
            return Ok(f64::INFINITY);
        }
        Ok(self.resistance_unchecked(u, v))
    }

    /// `w = L^+ (e_a - e_b)` restricted to the component of `a`, plus
    /// `1 - r(a, b)`.
    pub(crate) fn downdate_direction(&self, a: usize, b: usize, members: &[usize]) -> (Vec<f64>, f64) {
        let ra = self.linv.row(a);
        let rb = self.linv.row(b);
        let w: Vec<f64> = members.iter().map(|&v| ra[v] - rb[v]).collect();
        let r = self.resistance_unchecked(a, b);
        (w, 1.0 - r)
    }

    fn check_edge_endpoints(&self, a: usize, b: usize) -> Result<()> {
        self.check_node(a)?;
        self.check_node(b)?;
        if a == b {
            return Err(Error::SameEndpoint(a));
        }
        Ok(())
    }

    /// Rank-one downdate for deleting the non-bridge edge `(a, b)`:
    /// `L'^+ = L^+ + L^+ d d^T L^+ / (1 - r(a, b))` with `d = e_a - e_b`.
    pub fn sherman_morrison_downdate(&self, a: usize, b: usize) -> Result<PseudoinverseState> {
        let mut next = self.clone();
        next.apply_downdate(a, b)?;
        Ok(next)
    }

    /// In-place form of [`Self::sherman_morrison_downdate`].
    pub fn apply_downdate(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_edge_endpoints(a, b)?;
        if !self.comps.same_component(a, b) {
            return Err(Error::InvalidParameter(format!("nodes {a} and {b} lie in different components")));
        }
        let members = self.comps.members(self.comps.label(a));
        let (w, denom) = self.downdate_direction(a, b, &members);
        if denom.abs() < BRIDGE_DENOMINATOR_TOL {
            return Err(Error::BridgeEdge(a.min(b), a.max(b)));
        }
        let scale = 1.0 / denom;
        for (i, &v) in members.iter().enumerate() {
            let wi = w[i] * scale;
            for (j, &u) in members.iter().enumerate().take(i + 1) {
                let x = self.linv.get(v, u) + wi * w[j];
                self.linv.set(v, u, x);
            }
        }
        Ok(())
    }

    /// Update after deleting the bridge `(a, b)`; `g_after` is the graph
    /// without it. Component labels are recomputed, the two new blocks are
    /// pseudoinverted from scratch and all other blocks are kept.
    pub fn bridge_split_update(&self, g_after: &Graph, a: usize, b: usize) -> Result<PseudoinverseState> {
        let mut next = self.clone();
        next.apply_bridge_split(g_after, a, b)?;
        Ok(next)
    }

    /// In-place form of [`Self::bridge_split_update`]. Returns the sizes of
    /// the two new components (holding `a` and `b` respectively).
    pub fn apply_bridge_split(&mut self, g_after: &Graph, a: usize, b: usize) -> Result<(usize, usize)> {
        self.check_edge_endpoints(a, b)?;
        if g_after.n() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: g_after.n() });
        }
        let comps = g_after.connected_components();
        if comps.same_component(a, b) {
            return Err(Error::NotABridge(a.min(b), a.max(b)));
        }
        let side_a = comps.members(comps.label(a));
        let side_b = comps.members(comps.label(b));
        for &v in &side_a {
            for &u in &side_b {
                self.linv.set(v, u, 0.0);
            }
        }
        let mut local = vec![0; g_after.n()];
        write_component_block(g_after, &side_a, &mut local, &mut self.linv);
        write_component_block(g_after, &side_b, &mut local, &mut self.linv);
        self.comps = comps;
        Ok((side_a.len(), side_b.len()))
    }
}

/// Convenience wrapper for [`PseudoinverseState::new`].
pub fn pseudoinverse(g: &Graph) -> PseudoinverseState {
    PseudoinverseState::new(g)
}

fn matmul(a: &SymMatrix, b: &SymMatrix) -> DMatrix<f64> {
    a.to_nalgebra() * b.to_nalgebra()
}

/// Max-abs residuals of the two Moore-Penrose conditions
/// `L L^+ L = L` and `L^+ L L^+ = L^+`.
pub fn moore_penrose_residuals(l: &SymMatrix, linv: &SymMatrix) -> (f64, f64) {
    let lla = matmul(l, linv) * l.to_nalgebra();
    let all = matmul(linv, l) * linv.to_nalgebra();
    let r1 = (lla - l.to_nalgebra()).amax();
    let r2 = (all - linv.to_nalgebra()).amax();
    (r1, r2)
}
