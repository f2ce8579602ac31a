use super::{unlooped_vertex, BracketError};
use crate::poly::{Monomial, MultiPoly, Var};

/// `[E_n] = (Ad + B)^n`.
pub fn edgeless_bracket(n: usize) -> MultiPoly {
    unlooped_vertex().pow(n as u32)
}

/// Coefficients `c_0..=c_n` (Laurent in `A`, polynomial in `B`) with
/// `[G] = Σ c_i [E_i]`.
///
/// Extraction is triangular from the top: `[E_i]` has `d`-degree `i` with
/// leading coefficient `A^i`, so `c_i` is `A^{-i}` times the `d^i` coefficient
/// of what remains after the higher terms are removed.
pub fn universal_coefficients(p: &MultiPoly, n: usize) -> Result<Vec<MultiPoly>, BracketError> {
    p.check_bracket_vars()?;
    let mut rest = p.clone();
    let mut coeffs = vec![MultiPoly::zero(); n + 1];
    for i in (0..=n).rev() {
        let ci = rest.coefficient_of(Var::D, i as i32).shift(&Monomial::abd(-(i as i32), 0, 0));
        rest -= &(&ci * &edgeless_bracket(i));
        coeffs[i] = ci;
    }
    if !rest.is_zero() {
        return Err(BracketError::Invariant(format!("universal expansion leaves remainder {rest}")));
    }
    let rebuilt = coeffs.iter().enumerate().fold(MultiPoly::zero(), |acc, (i, c)| acc + c * &edgeless_bracket(i));
    if &rebuilt != p {
        return Err(BracketError::Invariant("universal expansion does not reproduce the bracket".into()));
    }
    Ok(coeffs)
}
