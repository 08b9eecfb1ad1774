//! Deterministic generators for the graph families in the exact-solution study.
//!
//! Random families are seeded with ChaCha8 so a `(params, seed)` pair produces
//! the same graph on every platform.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// `rows x cols` 4-neighbor lattice; node `row * cols + col`.
pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter(format!("grid dimensions must be positive, got {rows}x{cols}")));
    }
    let mut edges = Vec::with_capacity(rows * (cols - 1) + cols * (rows - 1));
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                edges.push(Edge(v, v + 1));
            }
            if r + 1 < rows {
                edges.push(Edge(v, v + cols));
            }
        }
    }
    Graph::from_edges(rows * cols, edges)
}

/// Grid with two pendant nodes hanging off the middle row: node `rows*cols`
/// attaches to the leftmost column, node `rows*cols + 1` to the rightmost.
pub fn hotdog(rows: usize, cols: usize) -> Result<Graph> {
    if rows.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("hotdog needs an odd row count, got {rows}")));
    }
    let base = grid(rows, cols)?;
    let n = rows * cols;
    let mid = rows / 2;
    let mut edges = base.edges().to_vec();
    edges.push(Edge::new(mid * cols, n));
    edges.push(Edge::new(mid * cols + cols - 1, n + 1));
    Graph::from_edges(n + 2, edges)
}

/// Preferential attachment: start from a star on `attach + 1` nodes, then
/// each new node links to `attach` distinct targets drawn proportionally to
/// degree.
pub fn barabasi_albert(attach: usize, n: usize, seed: u64) -> Result<Graph> {
    if attach < 1 || n <= attach {
        return Err(Error::InvalidParameter(format!(
            "Barabasi-Albert needs 1 <= attach < n, got attach={attach}, n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<Edge> = (1..=attach).map(|v| Edge(0, v)).collect();
    // one entry per edge endpoint
    let mut repeated: Vec<usize> = Vec::new();
    for v in 1..=attach {
        repeated.push(0);
        repeated.push(v);
    }
    for source in attach + 1..n {
        let mut targets = BTreeSet::new();
        while targets.len() < attach {
            targets.insert(repeated[rng.random_range(0..repeated.len())]);
        }
        for &t in &targets {
            edges.push(Edge::new(t, source));
            repeated.push(t);
            repeated.push(source);
        }
    }
    Graph::from_edges(n, edges)
}

/// Ring lattice where every node links to `deg` neighbors on each side, then
/// each lattice edge `(u, u+j)` is rewired to `(u, w)` with probability `p`.
/// Duplicate ring edges (when `2*deg >= n`) are merged.
pub fn watts_strogatz(n: usize, deg: usize, p: f64, seed: u64) -> Result<Graph> {
    if deg < 1 || n <= deg {
        return Err(Error::InvalidParameter(format!("Watts-Strogatz needs 1 <= deg < n, got n={n}, deg={deg}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("rewiring probability must lie in [0, 1], got {p}")));
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for j in 1..=deg {
        for u in 0..n {
            let v = (u + j) % n;
            if u != v {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for j in 1..=deg {
        for u in 0..n {
            let v = (u + j) % n;
            if rng.random::<f64>() >= p {
                continue;
            }
            if !adj[u].contains(&v) || adj[u].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.random_range(0..n);
                if w != u && !adj[u].contains(&w) {
                    break w;
                }
            };
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, ns)| ns.iter().filter(move |&&w| u < w).map(move |&w| Edge(u, w)));
    Graph::from_edges(n, edges)
}
