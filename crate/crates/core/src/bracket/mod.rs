//! The graph bracket `[G](A, B, d)` and its specialisations.
//!
//! Two engines compute the bracket and are expected to agree exactly:
//!
//! * [`state_sum_bracket`] sums `A^ν(Δ) B^ρ(Δ) d^ν(A(G)+Δ)` over all `2^n`
//!   diagonal masks `Δ`;
//! * [`RecursiveEngine`] applies the loop rule
//!   `[G] = A⁻¹B[G - {a,a}] + (A - A⁻¹B²)[G^a - a]` and the pivot rule
//!   `[G] = A²[G^{ab}-a-b] + AB[(G^{ab})^a-a-b] + B[G^a-a]`, bottoming out at
//!   `[E_n] = (Ad + B)^n`.
//!
//! For a knot diagram `D`, the three-variable switching steps of the
//! crossing-reduction algorithm are exactly these two rules applied to the
//! looped interlacement graph: a negative crossing is a looped vertex (loop
//! rule), and two interlaced positive crossings are an unlooped edge (pivot
//! rule).

mod closed_form;
mod interlace;
mod recursive;
mod state_sum;
mod structural;
mod universal;

pub use closed_form::{closed_form, ClosedForm};
pub use interlace::{bracket_via_interlace, interlace_q, interlace_via_brackets, INTERLACE_CAP};
pub use recursive::{recursive_bracket, RecursiveEngine, RecursiveStats, DEFAULT_MEMO_CAP};
pub use state_sum::{state_sum_bracket, state_sum_bracket_capped, DEFAULT_STATE_SUM_CAP};
pub use structural::structural_counts;
pub use universal::{edgeless_bracket, universal_coefficients};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{GraphError, LoopedGraph};
use crate::poly::{MultiPoly, OnePoly, PolyError, QuarterPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketError {
    #[error("state sum is capped at {cap} vertices, got {n}")]
    StateSumCap { n: usize, cap: usize },
    #[error("interlace polynomial is capped at {cap} vertices, got {n}")]
    InterlaceCap { n: usize, cap: usize },
    #[error("engines disagree: state sum gives {state_sum}, recursion gives {recursive}")]
    EngineDisagreement { state_sum: String, recursive: String },
    #[error("not a graph bracket: {0}")]
    NotABracket(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error("closed form {kind} is not defined for n = {n}")]
    InvalidN { kind: &'static str, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl BracketError {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            BracketError::EngineDisagreement { .. }
                | BracketError::Invariant(_)
                | BracketError::Poly(PolyError::HalfIntegrality(_))
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    StateSum,
    Recursive,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::StateSum => "state-sum",
            Engine::Recursive => "recursive",
        })
    }
}

/// Which engine(s) to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EngineChoice {
    /// State sum for small graphs, recursion above [`AUTO_STATE_SUM_LIMIT`].
    #[default]
    Auto,
    StateSum,
    Recursive,
    /// Run both and fail on disagreement.
    BothAndCompare,
}

/// Largest graph `Auto` sends to the state sum.
pub const AUTO_STATE_SUM_LIMIT: usize = 14;

impl FromStr for EngineChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(EngineChoice::Auto),
            "state-sum" => Ok(EngineChoice::StateSum),
            "recursive" => Ok(EngineChoice::Recursive),
            "both-and-compare" => Ok(EngineChoice::BothAndCompare),
            _ => Err(format!("unknown engine `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BracketStats {
    /// Diagonal masks visited by the state sum.
    pub masks: u64,
    pub recursion: RecursiveStats,
    pub terms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketResult {
    pub poly: MultiPoly,
    pub engine: Engine,
    pub stats: BracketStats,
}

/// Engine configuration shared by the bracket entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BracketConfig {
    pub engine: EngineChoice,
    pub state_sum_cap: usize,
    pub memo_cap: usize,
}

impl Default for BracketConfig {
    fn default() -> Self {
        Self { engine: EngineChoice::Auto, state_sum_cap: DEFAULT_STATE_SUM_CAP, memo_cap: DEFAULT_MEMO_CAP }
    }
}

pub fn compute_bracket(g: &LoopedGraph, config: &BracketConfig) -> Result<BracketResult, BracketError> {
    let by_state_sum = |g: &LoopedGraph| -> Result<BracketResult, BracketError> {
        let poly = state_sum_bracket_capped(g, config.state_sum_cap)?;
        let stats = BracketStats { masks: 1u64 << g.n(), terms: poly.len(), ..Default::default() };
        Ok(BracketResult { poly, engine: Engine::StateSum, stats })
    };
    let by_recursion = |g: &LoopedGraph| -> BracketResult {
        let mut engine = RecursiveEngine::new(config.memo_cap);
        let poly = engine.bracket(g);
        let stats = BracketStats { recursion: engine.stats(), terms: poly.len(), ..Default::default() };
        BracketResult { poly, engine: Engine::Recursive, stats }
    };
    match config.engine {
        EngineChoice::StateSum => by_state_sum(g),
        EngineChoice::Recursive => Ok(by_recursion(g)),
        EngineChoice::Auto => {
            if g.n() <= AUTO_STATE_SUM_LIMIT.min(config.state_sum_cap) {
                by_state_sum(g)
            } else {
                Ok(by_recursion(g))
            }
        }
        EngineChoice::BothAndCompare => {
            let s = by_state_sum(g)?;
            let r = by_recursion(g);
            if s.poly != r.poly {
                return Err(BracketError::EngineDisagreement {
                    state_sum: s.poly.to_string(),
                    recursive: r.poly.to_string(),
                });
            }
            Ok(s)
        }
    }
}

/// `[G]` with the default configuration.
pub fn bracket(g: &LoopedGraph) -> MultiPoly {
    compute_bracket(g, &BracketConfig::default()).expect("auto engine never exceeds its caps").poly
}

/// `<G>(A) = [G](A, A⁻¹, -A² - A⁻²)`.
pub fn reduced_bracket(g: &LoopedGraph) -> Result<OnePoly, BracketError> {
    Ok(bracket(g).reduce_single()?)
}

/// Graph Jones polynomial `V_G(t)`.
pub fn jones(g: &LoopedGraph) -> Result<QuarterPoly, BracketError> {
    jones_from_bracket(&bracket(g), g.n(), g.loop_count())
}

pub fn jones_from_bracket(p: &MultiPoly, n: usize, loops: usize) -> Result<QuarterPoly, BracketError> {
    Ok(p.reduce_single()?.to_jones(n, loops)?)
}

/// `A d + B`, the bracket of one unlooped isolated vertex.
pub(crate) fn unlooped_vertex() -> MultiPoly {
    &MultiPoly::var(Var::A) * &MultiPoly::var(Var::D) + MultiPoly::var(Var::B)
}

/// `A + B d`, the bracket of one looped isolated vertex.
pub(crate) fn looped_vertex() -> MultiPoly {
    MultiPoly::var(Var::A) + &MultiPoly::var(Var::B) * &MultiPoly::var(Var::D)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn compare_engine_agrees() {
        let g = LoopedGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 3)], &[2, 5]).unwrap();
        let config = BracketConfig { engine: EngineChoice::BothAndCompare, ..Default::default() };
        let r = compute_bracket(&g, &config).unwrap();
        assert_eq!(r.engine, Engine::StateSum);
        assert!(r.poly.is_polynomial());
    }

    #[test]
    fn jones_examples() {
        for n in 0..5 {
            assert!(jones(&LoopedGraph::empty(n).unwrap()).unwrap().is_one());
        }
        let p2 = LoopedGraph::family(Family::Path, 2).unwrap();
        assert_eq!(jones(&p2).unwrap().to_string(), "-t^(5/2) + t^(3/2) + t");
        // u - v with a loop at v, plus an isolated w
        let g1 = LoopedGraph::from_edges(3, &[(0, 1)], &[1]).unwrap();
        assert_eq!(reduced_bracket(&g1).unwrap().to_string(), "-A^3");
        assert!(jones(&g1).unwrap().is_one());
    }

    #[test]
    fn difference_identity() {
        // G1: {u,v}, loop v, isolated w; G2: {u,w}, {v,w}, loop v
        let g1 = LoopedGraph::from_edges(3, &[(0, 1)], &[1]).unwrap();
        let g2 = LoopedGraph::from_edges(3, &[(0, 2), (1, 2)], &[1]).unwrap();
        let diff = &bracket(&g1) - &bracket(&g2);
        assert_eq!(diff, &(&p("d - 1") * &p("A")) * &p("B^2 + A*B*d + A^2"));
    }

    #[test]
    fn state_sum_cap_is_reported() {
        let g = LoopedGraph::empty(5).unwrap();
        let config = BracketConfig { engine: EngineChoice::StateSum, state_sum_cap: 4, ..Default::default() };
        assert_eq!(compute_bracket(&g, &config), Err(BracketError::StateSumCap { n: 5, cap: 4 }));
    }
}
