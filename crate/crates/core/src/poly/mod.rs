//! Exact sparse Laurent polynomials with arbitrary-precision integer coefficients.
//!
//! [`MultiPoly`] carries the bracket variables `A`, `B`, `d` and the auxiliary
//! interlace variables `x`, `y`, `z`. [`OnePoly`] is a Laurent polynomial in `A`
//! alone and [`QuarterPoly`] one in `t^(1/4)`.

mod multi;
mod text;
mod uni;

pub use multi::{Monomial, MultiPoly};
pub use uni::{OnePoly, QuarterPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is not divisible by d: term {0} has no d factor")]
    NotDivisibleByD(String),
    #[error("polynomial is not divisible by {0}")]
    NotDivisible(String),
    #[error("cannot evaluate: {var} = 0 appears with a negative exponent")]
    ZeroAtNegativeExponent { var: char },
    #[error("evaluation is not an integer: {0}")]
    NotIntegral(String),
    #[error("cannot substitute a non-monomial for a negative power of {0}")]
    NonInvertibleSubstitution(char),
    #[error("unexpected variable {0} in a bracket polynomial")]
    UnexpectedVariable(char),
    #[error("Jones exponent {0}/4 is not a multiple of 1/2")]
    HalfIntegrality(i64),
    #[error("cannot parse polynomial at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Variables of [`MultiPoly`], in canonical (serialization) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    A = 0,
    B = 1,
    D = 2,
    X = 3,
    Y = 4,
    Z = 5,
}

pub const NVARS: usize = 6;

impl Var {
    pub const ALL: [Var; NVARS] = [Var::A, Var::B, Var::D, Var::X, Var::Y, Var::Z];

    #[inline]
    pub fn idx(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        match self {
            Var::A => 'A',
            Var::B => 'B',
            Var::D => 'd',
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.symbol() == c)
    }
}
