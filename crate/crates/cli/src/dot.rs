use std::fmt::Write;

use grodel::{EdgeSet, Graph};

/// Renders `g` as an undirected DOT graph, highlighting `highlight`. With
/// `grid_cols`, nodes get pinned `pos` attributes (`row * cols + col`
/// numbering) for a lattice layout under `neato -n`.
pub fn to_dot(g: &Graph, highlight: &EdgeSet, grid_cols: Option<usize>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle, width=0.3, fontsize=10];\n");
    for v in 0..g.n() {
        match grid_cols {
            Some(cols) if cols > 0 => {
                let (row, col) = (v / cols, v % cols);
                let _ = writeln!(out, "  {v} [pos=\"{},{}!\"];", col * 60, -(row as i64) * 60);
            }
            _ => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for &e in g.edges() {
        if highlight.contains(e) {
            let _ = writeln!(out, "  {} -- {} [color=red, penwidth=3, style=dashed];", e.0, e.1);
        } else {
            let _ = writeln!(out, "  {} -- {};", e.0, e.1);
        }
    }
    out.push_str("}\n");
    out
}
