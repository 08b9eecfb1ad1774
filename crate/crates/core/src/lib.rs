//! Robustness attacks on undirected graphs by edge deletion.
//!
//! Given a budget `k`, pick the `k` edges whose removal degrades the graph's
//! robustness the most, under one of two measures that stay finite on
//! disconnected graphs:
//!
//! * **total harmonic resistance** `R_h = sum_{u<v} 1 / r(u, v)`, where pairs
//!   in different components contribute zero (the attack minimizes it), and
//! * the **forest index** `R_f = sum_{u<v} fd(u, v)`, built on the forest
//!   matrix `(L + I)^{-1}` (the attack maximizes it).
//!
//! Small instances are solved exactly by enumeration ([`solvers::exact_solve`]);
//! larger ones by lazy greedy deletion ([`solvers::greedy_solve`]), which keeps
//! the Laplacian pseudoinverse current through rank-one downdates and
//! bridge splits ([`spectral::PseudoinverseState`]). The forest index is
//! handled through the pseudoinverse of the graph augmented with a universal
//! vertex, where forest distances become effective resistances.
//!
//! ```
//! use grodel::{generators, measures::MeasureKind, solvers};
//!
//! let g = generators::grid(3, 5).unwrap();
//! let trace = solvers::greedy_solve(&g, 2, MeasureKind::TotalHarmonicResistance).unwrap();
//! assert_eq!(trace.picked.len(), 2);
//! assert!(trace.final_value() < trace.initial_value);
//! ```

pub mod error;
pub mod generators;
pub mod graph;
pub mod measures;
pub mod scoring;
pub mod solvers;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{ComponentMap, Edge, EdgeSet, Graph};
pub use measures::MeasureKind;
pub use spectral::{PseudoinverseState, SymMatrix};
