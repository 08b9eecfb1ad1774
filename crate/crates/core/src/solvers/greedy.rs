//! Greedy edge deletion with lazy (Minoux-style) re-evaluation.
//!
//! Each round deletes the edge with the largest marginal loss. The lazy
//! variant keeps every candidate in a max-priority queue keyed by the loss it
//! had when last evaluated and only re-evaluates entries from earlier rounds
//! while they sit at the top. Neither measure is known to be submodular, so
//! lazy and eager selection can in principle diverge; the eager variant is
//! kept as the reference.
//!
//! Ties (losses within `tie_tol`) go to the lexicographically smallest edge.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;

use super::SolveTrace;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph};
use crate::measures::{forest_index_augmented, total_harmonic_resistance, CompensatedSum, MeasureKind};
use crate::spectral::PseudoinverseState;

#[derive(Clone, Copy, Debug)]
pub struct GreedyOptions {
    /// Absolute tolerance under which two losses count as tied.
    pub tie_tol: f64,
}

impl Default for GreedyOptions {
    fn default() -> Self {
        GreedyOptions { tie_tol: 1e-9 }
    }
}

/// Nodes reachable from `start` without crossing the edge `(start, skip)`.
fn side_of_bridge(g: &Graph, start: usize, skip: usize) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut out = Vec::new();
    while let Some(v) = queue.pop_front() {
        out.push(v);
        for &w in g.neighbors(v) {
            if (v == start && w == skip) || seen[w] {
                continue;
            }
            seen[w] = true;
            queue.push_back(w);
        }
    }
    out
}

/// `R_h(G) - R_h(G - e)` with the bridge status of `e` supplied by the caller.
///
/// For a cycle edge the downdated resistances are
/// `r'(u, v) = r(u, v) + (w_u - w_v)^2 / (1 - r(a, b))` with
/// `w = L^+ (e_a - e_b)`, so each pair contributes
/// `delta / (r (r + delta))` and the candidate matrix is never built. For a
/// bridge, resistances on either side are unchanged and the loss is the sum
/// of `1 / r(u, v)` over pairs split by the cut.
pub(crate) fn thr_loss_classified(st: &PseudoinverseState, g: &Graph, e: Edge, is_bridge: bool) -> f64 {
    let (a, b) = (e.0, e.1);
    let mut acc = CompensatedSum::default();
    if is_bridge {
        let side_a = side_of_bridge(g, a, b);
        let mut on_a = vec![false; g.n()];
        for &v in &side_a {
            on_a[v] = true;
        }
        let comps = st.components();
        let side_b: Vec<usize> = comps
            .members(comps.label(a))
            .into_iter()
            .filter(|&v| !on_a[v])
            .collect();
        for &u in &side_a {
            for &v in &side_b {
                acc.add(1.0 / st.resistance_unchecked(u, v));
            }
        }
        return acc.value();
    }
    let comps = st.components();
    let members = comps.members(comps.label(a));
    let (w, denom) = st.downdate_direction(a, b, &members);
    let scale = 1.0 / denom;
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let r = st.resistance_unchecked(members[i], members[j]);
            let d = w[i] - w[j];
            let delta = d * d * scale;
            acc.add(delta / (r * (r + delta)));
        }
    }
    acc.value()
}

/// Marginal loss of total harmonic resistance when `e` is deleted from `g`,
/// whose pseudoinverse is `st`.
pub fn thr_loss(st: &PseudoinverseState, g: &Graph, e: Edge) -> Result<f64> {
    if !g.has_edge(e) {
        return Err(Error::MissingEdge(e));
    }
    if st.dim() != g.n() {
        return Err(Error::DimensionMismatch { expected: g.n(), got: st.dim() });
    }
    let is_bridge = g.bridges().contains(e);
    Ok(thr_loss_classified(st, g, e, is_bridge))
}

/// Same quantity as [`thr_loss`], computed by materializing the updated
/// pseudoinverse (downdate or bridge split) and differencing the two totals.
/// Returns the loss together with the updated state.
pub fn thr_loss_explicit(st: &PseudoinverseState, g: &Graph, e: Edge) -> Result<(f64, PseudoinverseState)> {
    let after = g.remove_edge(e)?;
    let next = if g.bridges().contains(e) {
        st.bridge_split_update(&after, e.0, e.1)?
    } else {
        st.sherman_morrison_downdate(e.0, e.1)?
    };
    let loss = total_harmonic_resistance(st) - total_harmonic_resistance(&next);
    Ok((loss, next))
}

/// Increase of the forest index when the original edge `(a, b)` is deleted,
/// from the pseudoinverse of the augmented graph (universal vertex `n`):
///
/// `n / (1 - r*(a,b)) * |L*^+[:,a] - L*^+[:,b]|^2
///   - (n + 1) / (1 - r*(a,b)) * (L*^+[u*,a] - L*^+[u*,b])^2`.
pub fn fi_loss(st_star: &PseudoinverseState, a: usize, b: usize, n: usize) -> Result<f64> {
    if st_star.dim() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, got: st_star.dim() });
    }
    for x in [a, b] {
        if x >= n {
            return Err(Error::InvalidParameter(format!("node {x} is the universal vertex or out of range")));
        }
    }
    if a == b {
        return Err(Error::SameEndpoint(a));
    }
    Ok(fi_loss_parts(st_star, a, b, n).0)
}

/// Loss and its denominator `1 - r*(a, b)`.
pub(crate) fn fi_loss_parts(st_star: &PseudoinverseState, a: usize, b: usize, n: usize) -> (f64, f64) {
    let linv = st_star.linv();
    let (ra, rb) = (linv.row(a), linv.row(b));
    let mut norm = CompensatedSum::default();
    for (x, y) in ra.iter().zip(rb) {
        let d = x - y;
        norm.add(d * d);
    }
    let hub = ra[n] - rb[n];
    let denom = 1.0 - st_star.resistance_unchecked(a, b);
    let nf = n as f64;
    ((nf * norm.value() - (nf + 1.0) * hub * hub) / denom, denom)
}

/// Incremental state for one measure: evaluates candidate losses on the
/// current graph and applies deletions.
pub(crate) trait LossModel: Sync {
    fn graph(&self) -> &Graph;
    fn value(&self) -> f64;
    fn loss(&self, e: Edge) -> f64;
    /// Deletes `e` and returns the new measure value.
    fn delete(&mut self, e: Edge) -> Result<f64>;
}

pub(crate) struct HarmonicModel {
    graph: Graph,
    state: PseudoinverseState,
    bridges: EdgeSet,
    value: f64,
}

impl HarmonicModel {
    pub(crate) fn new(g: &Graph) -> Self {
        let state = PseudoinverseState::new(g);
        let value = total_harmonic_resistance(&state);
        HarmonicModel { graph: g.clone(), bridges: g.bridges(), state, value }
    }

    #[cfg(test)]
    pub(crate) fn state(&self) -> &PseudoinverseState {
        &self.state
    }
}

impl LossModel for HarmonicModel {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn value(&self) -> f64 {
        self.value
    }

    fn loss(&self, e: Edge) -> f64 {
        thr_loss_classified(&self.state, &self.graph, e, self.bridges.contains(e))
    }

    fn delete(&mut self, e: Edge) -> Result<f64> {
        let after = self.graph.remove_edge(e)?;
        if self.bridges.contains(e) {
            self.state.apply_bridge_split(&after, e.0, e.1)?;
        } else {
            self.state.apply_downdate(e.0, e.1)?;
        }
        self.bridges = after.bridges();
        self.graph = after;
        self.value = total_harmonic_resistance(&self.state);
        Ok(self.value)
    }
}

/// All state lives on the augmented graph; an original edge always sits on a
/// triangle through the universal vertex, so deletions are never bridges there.
pub(crate) struct ForestModel {
    graph: Graph,
    star: PseudoinverseState,
    value: f64,
}

impl ForestModel {
    pub(crate) fn new(g: &Graph) -> Self {
        let star = PseudoinverseState::new(&g.with_universal_vertex());
        let value = forest_index_augmented(&star, g.n()).expect("augmented dimension");
        ForestModel { graph: g.clone(), star, value }
    }
}

impl LossModel for ForestModel {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn value(&self) -> f64 {
        self.value
    }

    fn loss(&self, e: Edge) -> f64 {
        fi_loss_parts(&self.star, e.0, e.1, self.graph.n()).0
    }

    fn delete(&mut self, e: Edge) -> Result<f64> {
        let after = self.graph.remove_edge(e)?;
        self.star.apply_downdate(e.0, e.1)?;
        self.graph = after;
        self.value = forest_index_augmented(&self.star, self.graph.n())?;
        Ok(self.value)
    }
}

/// Queue entry: the loss of `edge` as evaluated in round `round_stamp`.
#[derive(Clone, Copy, Debug)]
pub struct LazyQueueEntry {
    pub edge: Edge,
    pub cached_loss: f64,
    pub round_stamp: usize,
}

impl PartialEq for LazyQueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for LazyQueueEntry {}

impl PartialOrd for LazyQueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LazyQueueEntry {
    // larger loss first; among equal losses the smaller edge wins
    fn cmp(&self, other: &Self) -> Ordering {
        self.cached_loss
            .total_cmp(&other.cached_loss)
            .then_with(|| other.edge.cmp(&self.edge))
    }
}

fn evaluate_all<M: LossModel>(model: &M, edges: &[Edge]) -> Vec<f64> {
    edges.par_iter().map(|&e| model.loss(e)).collect()
}

/// Smallest edge whose loss is within `tol` of the maximum.
fn pick_with_ties(candidates: &[(Edge, f64)], tol: f64) -> (Edge, f64) {
    let best = candidates.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    candidates
        .iter()
        .filter(|c| c.1 >= best - tol)
        .min_by_key(|c| c.0)
        .copied()
        .expect("at least one candidate")
}

/// Pops the next edge to delete in round `round`; `evaluations` counts loss
/// computations.
fn lazy_select<M: LossModel>(
    model: &M,
    heap: &mut BinaryHeap<LazyQueueEntry>,
    round: usize,
    tol: f64,
    evaluations: &mut usize,
) -> (Edge, f64) {
    'restart: loop {
        while let Some(top) = heap.peek() {
            if top.round_stamp == round {
                break;
            }
            // Refresh the whole group tied with the stale top: cached values of
            // symmetric edges differ only by rounding, and refreshing just one
            // of them would let rounding noise override the edge-order tie-break.
            let level = top.cached_loss;
            let mut group = Vec::new();
            while let Some(next) = heap.peek() {
                if next.cached_loss < level - tol {
                    break;
                }
                group.push(heap.pop().expect("peeked"));
            }
            for entry in group.iter_mut().filter(|e| e.round_stamp != round) {
                entry.cached_loss = model.loss(entry.edge);
                entry.round_stamp = round;
                *evaluations += 1;
            }
            heap.extend(group);
        }
        let best = heap.peek().expect("non-empty queue").cached_loss;
        let mut pulled: Vec<LazyQueueEntry> = Vec::new();
        while let Some(top) = heap.peek() {
            if top.cached_loss < best - tol {
                break;
            }
            let mut entry = heap.pop().expect("peeked");
            if entry.round_stamp != round {
                entry.cached_loss = model.loss(entry.edge);
                entry.round_stamp = round;
                *evaluations += 1;
                if entry.cached_loss > best {
                    pulled.push(entry);
                    heap.extend(pulled);
                    continue 'restart;
                }
            }
            pulled.push(entry);
        }
        let contenders: Vec<(Edge, f64)> = pulled.iter().map(|p| (p.edge, p.cached_loss)).collect();
        let chosen = pick_with_ties(&contenders, tol);
        heap.extend(pulled.into_iter().filter(|p| p.edge != chosen.0));
        return chosen;
    }
}

fn run<M: LossModel>(mut model: M, measure: MeasureKind, k: usize, lazy: bool, opts: &GreedyOptions) -> Result<SolveTrace> {
    let m = model.graph().m();
    if k > m {
        return Err(Error::BudgetTooLarge { k, m });
    }
    let mut trace = SolveTrace::new(measure, k, model.value());
    if k == 0 {
        return Ok(trace);
    }
    let mut heap = BinaryHeap::new();
    if lazy {
        let edges = model.graph().edges().to_vec();
        let losses = evaluate_all(&model, &edges);
        trace.evaluations += edges.len();
        heap.extend(
            edges
                .into_iter()
                .zip(losses)
                .map(|(edge, cached_loss)| LazyQueueEntry { edge, cached_loss, round_stamp: 0 }),
        );
    }
    for round in 0..k {
        let (edge, loss) = if lazy {
            lazy_select(&model, &mut heap, round, opts.tie_tol, &mut trace.evaluations)
        } else {
            let edges = model.graph().edges().to_vec();
            let losses = evaluate_all(&model, &edges);
            trace.evaluations += edges.len();
            let pairs: Vec<(Edge, f64)> = edges.into_iter().zip(losses).collect();
            pick_with_ties(&pairs, opts.tie_tol)
        };
        let value = model.delete(edge)?;
        trace.push(edge, value, loss);
    }
    Ok(trace)
}

fn dispatch(g: &Graph, k: usize, measure: MeasureKind, lazy: bool, opts: &GreedyOptions) -> Result<SolveTrace> {
    match measure {
        MeasureKind::TotalHarmonicResistance => run(HarmonicModel::new(g), measure, k, lazy, opts),
        MeasureKind::ForestIndex => run(ForestModel::new(g), measure, k, lazy, opts),
        MeasureKind::TotalEffectiveResistance => Err(Error::UnsupportedMeasure(measure.as_str())),
    }
}

/// Lazy greedy deletion of `k` edges.
pub fn greedy_solve(g: &Graph, k: usize, measure: MeasureKind) -> Result<SolveTrace> {
    greedy_solve_with(g, k, measure, &GreedyOptions::default())
}

pub fn greedy_solve_with(g: &Graph, k: usize, measure: MeasureKind, opts: &GreedyOptions) -> Result<SolveTrace> {
    dispatch(g, k, measure, true, opts)
}

/// Greedy deletion that re-evaluates every remaining edge each round.
pub fn eager_greedy_solve(g: &Graph, k: usize, measure: MeasureKind) -> Result<SolveTrace> {
    eager_greedy_solve_with(g, k, measure, &GreedyOptions::default())
}

pub fn eager_greedy_solve_with(g: &Graph, k: usize, measure: MeasureKind, opts: &GreedyOptions) -> Result<SolveTrace> {
    dispatch(g, k, measure, false, opts)
}
