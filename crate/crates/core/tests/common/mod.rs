//! Shared graph corpus for the integration tests.
#![allow(dead_code)]

use grodel::generators::{barabasi_albert, grid, hotdog, watts_strogatz};
use grodel::{Edge, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Named {
    pub name: String,
    pub graph: Graph,
}

fn named(name: impl Into<String>, graph: Graph) -> Named {
    Named { name: name.into(), graph }
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn star(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (0, i))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// Uniform labelled tree from a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    assert!(n >= 2);
    if n == 2 {
        return path(2);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, edges).unwrap()
}

/// Vertex-disjoint union, relabelling later parts after earlier ones.
pub fn union(parts: &[&Graph]) -> Graph {
    let mut offset = 0;
    let mut edges: Vec<Edge> = Vec::new();
    for g in parts {
        edges.extend(g.edges().iter().map(|e| Edge(e.0 + offset, e.1 + offset)));
        offset += g.n();
    }
    Graph::from_edges(offset, edges).unwrap()
}

/// 50+ small graphs (n <= 30): every generator family plus paths, cycles,
/// stars, cliques, random trees and disconnected unions.
pub fn corpus() -> Vec<Named> {
    let mut out = Vec::new();
    for (r, c) in [(1, 2), (2, 2), (2, 3), (3, 3), (3, 4), (3, 5), (4, 4), (2, 7), (4, 5), (5, 5), (3, 8), (4, 7)] {
        out.push(named(format!("grid{r}x{c}"), grid(r, c).unwrap()));
    }
    for (r, c) in [(1, 1), (3, 3), (3, 4), (5, 4), (5, 5)] {
        out.push(named(format!("hotdog{r}x{c}"), hotdog(r, c).unwrap()));
    }
    for (a, n, seed) in [(1, 12, 1), (2, 15, 2), (3, 18, 3), (2, 25, 4), (1, 30, 5), (3, 22, 6)] {
        out.push(named(format!("ba{a}_{n}_s{seed}"), barabasi_albert(a, n, seed).unwrap()));
    }
    for (n, d, p, seed) in [(16, 3, 0.7, 1), (12, 2, 0.3, 2), (20, 2, 0.5, 3), (10, 1, 0.0, 4), (24, 3, 0.2, 5), (30, 2, 0.1, 6)]
    {
        out.push(named(format!("ws{n}_{d}_{p}_s{seed}"), watts_strogatz(n, d, p, seed).unwrap()));
    }
    for n in [2, 3, 5, 10] {
        out.push(named(format!("path{n}"), path(n)));
    }
    for n in [4, 8] {
        out.push(named(format!("star{n}"), star(n)));
    }
    for n in [3, 4, 7, 12] {
        out.push(named(format!("cycle{n}"), cycle(n)));
    }
    for n in [3, 4, 6] {
        out.push(named(format!("complete{n}"), complete(n)));
    }
    for (n, seed) in [(6, 11), (10, 12), (15, 13), (20, 14)] {
        out.push(named(format!("tree{n}_s{seed}"), random_tree(n, seed)));
    }
    out.push(named("path3+complete3", union(&[&path(3), &complete(3)])));
    out.push(named("grid2x3+cycle5", union(&[&grid(2, 3).unwrap(), &cycle(5)])));
    out.push(named("complete4+path2+isolated", union(&[&complete(4), &path(2), &Graph::empty(1)])));
    out.push(named("tree8+cycle6", union(&[&random_tree(8, 21), &cycle(6)])));
    out.push(named(
        "ba2_9+ws8",
        union(&[&barabasi_albert(2, 9, 7).unwrap(), &watts_strogatz(8, 2, 0.4, 8).unwrap()]),
    ));
    out.push(named("empty4", Graph::empty(4)));
    out
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}
