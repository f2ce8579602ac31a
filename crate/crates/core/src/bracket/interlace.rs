//! The two-variable interlace polynomial and its two bridges to the bracket.

use num_bigint::BigInt;

use super::{BracketError, RecursiveEngine, DEFAULT_MEMO_CAP};
use crate::gf2::rank_words;
use crate::graph::LoopedGraph;
use crate::poly::{Monomial, MultiPoly, Var};

pub const INTERLACE_CAP: usize = 16;

/// Largest graph accepted by [`bracket_via_interlace`]; it costs `4^n` ranks.
const Z_IDENTITY_CAP: usize = 8;

fn shifted(v: Var, c: i64) -> MultiPoly {
    MultiPoly::var(v) + MultiPoly::constant(c)
}

/// `q(G) = Σ_{S ⊆ V} (x-1)^{ρ(A(G[S]))} (y-1)^{ν(A(G[S]))}`, loops on the diagonal.
pub fn interlace_q(g: &LoopedGraph) -> Result<MultiPoly, BracketError> {
    let n = g.n();
    if n > INTERLACE_CAP {
        return Err(BracketError::InterlaceCap { n, cap: INTERLACE_CAP });
    }
    let width = n + 1;
    let mut counts = vec![0u64; width * width];
    let mut rows = Vec::with_capacity(n);
    for s in 0u64..(1 << n) {
        let sub = g.induced_by_mask(s);
        rows.clear();
        rows.extend((0..sub.n()).map(|i| sub.row(i) | (sub.loop_mask() & 1 << i)));
        let rank = rank_words(&mut rows);
        counts[rank * width + (sub.n() - rank)] += 1;
    }
    let xm1 = shifted(Var::X, -1);
    let ym1 = shifted(Var::Y, -1);
    let mut out = MultiPoly::zero();
    for rank in 0..=n {
        for nullity in 0..=n - rank {
            let c = counts[rank * width + nullity];
            if c != 0 {
                out += &(&xm1.pow(rank as u32) * &ym1.pow(nullity as u32)).scale(&BigInt::from(c));
            }
        }
    }
    Ok(out)
}

/// `q(G)` recovered from `Σ_S [G[S]]` under `A ↦ x-1`, `B ↦ 0`,
/// `d ↦ (y-1)/(x-1)`.
///
/// Setting `B = 0` keeps only the `A^{|S|} d^ν` summand of each `[G[S]]`, which
/// maps to `(x-1)^{|S|-ν} (y-1)^ν` without any division. Brackets come from the
/// recursion, so no rank computation is shared with [`interlace_q`].
pub fn interlace_via_brackets(g: &LoopedGraph) -> Result<MultiPoly, BracketError> {
    let n = g.n();
    if n > INTERLACE_CAP {
        return Err(BracketError::InterlaceCap { n, cap: INTERLACE_CAP });
    }
    let mut engine = RecursiveEngine::new(DEFAULT_MEMO_CAP);
    let xm1 = shifted(Var::X, -1);
    let ym1 = shifted(Var::Y, -1);
    let mut out = MultiPoly::zero();
    for s in 0u64..(1 << n) {
        let bracket = engine.bracket(&g.induced_by_mask(s));
        for (m, c) in bracket.terms() {
            if m.exp(Var::B) != 0 {
                continue;
            }
            let (a, k) = (m.exp(Var::A), m.exp(Var::D));
            if a < k {
                return Err(BracketError::Invariant(format!("B-free bracket term A^{a} d^{k} has nullity above size")));
            }
            out += &(&xm1.pow((a - k) as u32) * &ym1.pow(k as u32)).scale(c);
        }
    }
    Ok(out)
}

/// `[G]` recovered from `Σ_Δ z^n A^{ν(Δ)} B^{ρ(Δ)} q(G+Δ)` under
/// `x ↦ z⁻¹ + 1`, `y ↦ d z⁻¹ + 1`, then `z ↦ 0`.
pub fn bracket_via_interlace(g: &LoopedGraph) -> Result<MultiPoly, BracketError> {
    let n = g.n();
    if n > Z_IDENTITY_CAP {
        return Err(BracketError::InterlaceCap { n, cap: Z_IDENTITY_CAP });
    }
    let x_value = MultiPoly::term(1, Monomial::var(Var::Z, -1)) + MultiPoly::one();
    let y_value = MultiPoly::term(1, Monomial([0, 0, 1, 0, 0, -1])) + MultiPoly::one();
    let mut total = MultiPoly::zero();
    for delta in 0u64..(1 << n) {
        let q = interlace_q(&g.toggle_loops_mask(delta))?;
        let q = q.substitute(Var::X, &x_value)?.substitute(Var::Y, &y_value)?;
        let rank = delta.count_ones() as i32;
        total += &q.shift(&Monomial([n as i32 - rank, rank, 0, 0, 0, n as i32]));
    }
    if let Some(min) = total.min_exp(Var::Z) {
        if min < 0 {
            return Err(BracketError::Invariant(format!("negative power z^{min} survives; z -> 0 is undefined")));
        }
    }
    Ok(total.coefficient_of(Var::Z, 0))
}
