use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::BracketError;
use crate::poly::MultiPoly;

/// Recovers `(n, loops)` from a bracket: `n = log2 [G](1,1,1)` and
/// `6·loops = 3n - (-1)^n · (d<G>/dA)(1)`.
pub fn structural_counts(p: &MultiPoly) -> Result<(usize, usize), BracketError> {
    let not_bracket = |msg: String| BracketError::NotABracket(msg);
    let total = p.eval_abd(1, 1, 1)?;
    if !total.is_positive() || !(&total & (&total - BigInt::one())).is_zero() {
        return Err(not_bracket(format!("[G](1,1,1) = {total} is not a power of two")));
    }
    let n = total.bits() as usize - 1;
    let slope = p.reduce_single()?.derivative().eval_integer(1)?;
    let signed = if n.is_multiple_of(2) { slope } else { -slope };
    let six_loops: BigInt = BigInt::from(3 * n) - signed;
    if !(&six_loops % BigInt::from(6)).is_zero() {
        return Err(not_bracket(format!("loop count {six_loops}/6 is not an integer")));
    }
    let loops = (six_loops / BigInt::from(6)).to_i64().ok_or_else(|| not_bracket("loop count out of range".into()))?;
    if loops < 0 || loops as usize > n {
        return Err(not_bracket(format!("loop count {loops} outside 0..={n}")));
    }
    Ok((n, loops as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::state_sum_bracket;
    use crate::graph::{Family, LoopedGraph};

    #[test]
    fn known_graphs() {
        assert_eq!(structural_counts(&"A + B*d".parse().unwrap()).unwrap(), (1, 1));
        let k3 = state_sum_bracket(&LoopedGraph::family(Family::Complete, 3).unwrap()).unwrap();
        assert_eq!(structural_counts(&k3).unwrap(), (3, 0));
        let ki = state_sum_bracket(&LoopedGraph::family(Family::CompleteLooped, 4).unwrap()).unwrap();
        assert_eq!(structural_counts(&ki).unwrap(), (4, 4));
    }

    #[test]
    fn rejects_non_brackets() {
        assert!(matches!(structural_counts(&"A + B + d".parse().unwrap()), Err(BracketError::NotABracket(_))));
        assert!(matches!(structural_counts(&"A^5 + B".parse().unwrap()), Err(BracketError::NotABracket(_))));
    }
}
