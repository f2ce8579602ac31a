use std::num::NonZeroUsize;

use lru::LruCache;

use super::{looped_vertex, unlooped_vertex};
use crate::canon::{canonical_form, DEFAULT_CANON_CAP};
use crate::graph::{low_mask, LoopedGraph};
use crate::poly::{Monomial, MultiPoly};

pub const DEFAULT_MEMO_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RecursiveStats {
    /// Connected subproblems evaluated (memo misses).
    pub nodes: u64,
    pub memo_hits: u64,
    pub loop_rule: u64,
    pub pivot_rule: u64,
}

/// Memoised evaluation of the bracket through the loop and pivot rules.
///
/// Connected components are evaluated separately and multiplied. The memo is
/// keyed on the canonical form for graphs within the canonical-form cap and on
/// the labelled graph otherwise.
pub struct RecursiveEngine {
    memo: LruCache<Vec<u8>, MultiPoly>,
    stats: RecursiveStats,
    a_inv_b: MultiPoly,
    a_minus_a_inv_b2: MultiPoly,
    a2: MultiPoly,
    ab: MultiPoly,
    b: MultiPoly,
}

impl RecursiveEngine {
    pub fn new(memo_cap: usize) -> Self {
        let cap = NonZeroUsize::new(memo_cap.max(1)).unwrap();
        let one = num_bigint::BigInt::from(1);
        Self {
            memo: LruCache::new(cap),
            stats: RecursiveStats::default(),
            a_inv_b: MultiPoly::term(1, Monomial::abd(-1, 1, 0)),
            a_minus_a_inv_b2: MultiPoly::term(1, Monomial::abd(1, 0, 0))
                - MultiPoly::term(one, Monomial::abd(-1, 2, 0)),
            a2: MultiPoly::term(1, Monomial::abd(2, 0, 0)),
            ab: MultiPoly::term(1, Monomial::abd(1, 1, 0)),
            b: MultiPoly::term(1, Monomial::abd(0, 1, 0)),
        }
    }

    pub fn stats(&self) -> RecursiveStats {
        self.stats
    }

    pub fn bracket(&mut self, g: &LoopedGraph) -> MultiPoly {
        let comps = g.components();
        let mut out = MultiPoly::one();
        for comp in comps {
            let part = if comp.count_ones() == 1 {
                let v = comp.trailing_zeros() as usize;
                if g.has_loop(v) {
                    looped_vertex()
                } else {
                    unlooped_vertex()
                }
            } else if comp.count_ones() as usize == g.n() {
                self.connected(g)
            } else {
                self.connected(&g.induced_by_mask(comp))
            };
            out = &out * &part;
        }
        out
    }

    fn key(g: &LoopedGraph) -> Vec<u8> {
        if g.n() <= DEFAULT_CANON_CAP {
            canonical_form(g).expect("within cap").as_bytes().to_vec()
        } else {
            let mut k = Vec::with_capacity(2 + 8 * (g.n() + 1));
            k.push(0xff);
            k.push(g.n() as u8);
            for r in g.rows() {
                k.extend_from_slice(&r.to_le_bytes());
            }
            k.extend_from_slice(&g.loop_mask().to_le_bytes());
            k
        }
    }

    fn connected(&mut self, g: &LoopedGraph) -> MultiPoly {
        let key = Self::key(g);
        if let Some(p) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return p.clone();
        }
        self.stats.nodes += 1;
        let result = match loopless_edge(g) {
            Some((a, b)) => {
                self.stats.pivot_rule += 1;
                let both = (1u64 << a) | (1u64 << b);
                let piv = g.pivot(a, b).expect("valid pair");
                let g1 = piv.delete_mask(both);
                let g2 = piv.local_complement(a).expect("valid vertex").delete_mask(both);
                let g3 = g.local_complement(a).expect("valid vertex").delete_vertex(a).expect("valid vertex");
                let (p1, p2, p3) = (self.bracket(&g1), self.bracket(&g2), self.bracket(&g3));
                &self.a2 * &p1 + &self.ab * &p2 + &self.b * &p3
            }
            None => {
                // A connected graph on two or more vertices without a loopless
                // edge has a looped vertex.
                let a = g.loop_mask().trailing_zeros() as usize;
                self.stats.loop_rule += 1;
                let unlooped = g.toggle_loop(a).expect("valid vertex");
                let reduced = g.local_complement(a).expect("valid vertex").delete_vertex(a).expect("valid vertex");
                let (p1, p2) = (self.bracket(&unlooped), self.bracket(&reduced));
                &self.a_inv_b * &p1 + &self.a_minus_a_inv_b2 * &p2
            }
        };
        self.memo.put(key, result.clone());
        result
    }
}

/// Lexicographically smallest edge `(a, b)`, `a < b`, with both ends unlooped.
fn loopless_edge(g: &LoopedGraph) -> Option<(usize, usize)> {
    let unlooped = !g.loop_mask();
    (0..g.n()).filter(|&a| !g.has_loop(a)).find_map(|a| {
        let higher = g.row(a) & unlooped & !low_mask(a + 1);
        (higher != 0).then(|| (a, higher.trailing_zeros() as usize))
    })
}

/// `[G]` through the recursion with a fresh memo.
pub fn recursive_bracket(g: &LoopedGraph) -> MultiPoly {
    RecursiveEngine::new(DEFAULT_MEMO_CAP).bracket(g)
}
