use num_bigint::BigInt;
use rayon::prelude::*;

use super::BracketError;
use crate::gf2::rank_words;
use crate::graph::LoopedGraph;
use crate::poly::{Monomial, MultiPoly};

pub const DEFAULT_STATE_SUM_CAP: usize = 20;

/// Below this size the masks are walked on the calling thread.
const PARALLEL_THRESHOLD: usize = 12;

pub fn state_sum_bracket(g: &LoopedGraph) -> Result<MultiPoly, BracketError> {
    state_sum_bracket_capped(g, DEFAULT_STATE_SUM_CAP)
}

/// `Σ_Δ A^{n-|Δ|} B^{|Δ|} d^{ν(A(G)+Δ)}` over all diagonal masks `Δ`.
///
/// Only the pair `(|Δ|, ν)` matters per mask, so the sum is accumulated as an
/// `(n+1) × (n+1)` table of counts before any polynomial is built.
pub fn state_sum_bracket_capped(g: &LoopedGraph, cap: usize) -> Result<MultiPoly, BracketError> {
    let n = g.n();
    if n > cap || n >= 63 {
        return Err(BracketError::StateSumCap { n, cap: cap.min(62) });
    }
    let width = n + 1;
    let total: u64 = 1 << n;
    let counts = if n < PARALLEL_THRESHOLD {
        count_range(g, 0, total)
    } else {
        let chunks = 256u64.min(total);
        let step = total / chunks;
        (0..chunks).into_par_iter().map(|c| count_range(g, c * step, (c + 1) * step)).reduce(
            || vec![0u64; width * width],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
    };
    let mut out = MultiPoly::zero();
    for popcount in 0..=n {
        for nullity in 0..=n {
            let c = counts[popcount * width + nullity];
            if c != 0 {
                out.add_term(Monomial::abd((n - popcount) as i32, popcount as i32, nullity as i32), BigInt::from(c));
            }
        }
    }
    Ok(out)
}

fn count_range(g: &LoopedGraph, start: u64, end: u64) -> Vec<u64> {
    let n = g.n();
    let width = n + 1;
    let mut counts = vec![0u64; width * width];
    let base: Vec<u64> = (0..n).map(|i| g.row(i) | (g.loop_mask() & 1 << i)).collect();
    let mut scratch = vec![0u64; n];
    for delta in start..end {
        for (i, (s, b)) in scratch.iter_mut().zip(&base).enumerate() {
            *s = b ^ (delta & 1 << i);
        }
        let rank = rank_words(&mut scratch);
        counts[delta.count_ones() as usize * width + (n - rank)] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_brackets() {
        assert_eq!(state_sum_bracket(&LoopedGraph::empty(0).unwrap()).unwrap(), MultiPoly::one());
        assert_eq!(state_sum_bracket(&LoopedGraph::empty(1).unwrap()).unwrap(), p("A*d + B"));
        let loop_v = LoopedGraph::from_edges(2, &[], &[0]).unwrap();
        assert_eq!(state_sum_bracket(&loop_v).unwrap(), p("A^2*d + A*B + A*B*d^2 + B^2*d"));
        let loop_v_edge = LoopedGraph::from_edges(2, &[(0, 1)], &[0]).unwrap();
        assert_eq!(state_sum_bracket(&loop_v_edge).unwrap(), p("A^2 + A*B*d + A*B + B^2"));
        let k2 = LoopedGraph::family(Family::Complete, 2).unwrap();
        assert_eq!(state_sum_bracket(&k2).unwrap(), p("A^2 + 2*A*B + B^2*d"));
    }

    #[test]
    fn parallel_path_matches_sequential() {
        let g = LoopedGraph::family(Family::Path, 13).unwrap();
        let seq = count_range(&g, 0, 1 << 13);
        let par = state_sum_bracket(&g).unwrap();
        let total: u64 = seq.iter().sum();
        assert_eq!(total, 1 << 13);
        assert_eq!(par.eval_abd(1, 1, 1).unwrap(), BigInt::from(1u64 << 13));
    }

    #[test]
    fn cap() {
        let g = LoopedGraph::empty(21).unwrap();
        assert!(matches!(state_sum_bracket(&g), Err(BracketError::StateSumCap { n: 21, cap: 20 })));
    }
}
