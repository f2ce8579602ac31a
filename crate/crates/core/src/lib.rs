//! Graph bracket polynomials of looped graphs.
//!
//! The crate computes the three-variable graph bracket `[G](A, B, d)` of a
//! looped graph with two independent engines (a GF(2) rank state sum and a
//! local-complementation/pivot recursion), its reduced and Jones
//! specialisations, looped interlacement graphs of signed Gauss codes, the
//! graph Reidemeister moves, and small-graph censuses.

pub mod bracket;
pub mod canon;
pub mod census;
pub mod gf2;
pub mod graph;
pub mod knot;
pub mod poly;
pub mod reidemeister;

pub use bracket::{
    bracket, compute_bracket, jones, reduced_bracket, BracketConfig, BracketError, BracketResult, EngineChoice,
};
pub use canon::{canonical_form, CanonicalForm};
pub use gf2::Gf2Matrix;
pub use graph::{Family, GraphError, LoopedGraph};
pub use poly::{Monomial, MultiPoly, OnePoly, PolyError, QuarterPoly, Var};
