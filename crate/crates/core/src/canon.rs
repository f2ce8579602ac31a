//! Canonical forms of small looped graphs.
//!
//! The canonical code is the lexicographically least bit string
//! `loop(p0) | loop(p1) adj(p0,p1) | loop(p2) adj(p0,p2) adj(p1,p2) | ...`
//! over all vertex orderings `p` compatible with an isomorphism-invariant
//! vertex partition. Orderings are explored depth first and a branch is cut as
//! soon as its prefix exceeds the best code found so far.

use std::fmt;

use crate::graph::{GraphError, LoopedGraph};

/// Default vertex cap for canonical forms.
pub const DEFAULT_CANON_CAP: usize = 10;
/// Hard limit imposed by the 128-bit code.
pub const MAX_CANON_VERTICES: usize = 15;

/// Byte string that is equal for two graphs iff they are isomorphic as looped graphs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        Self(bytes)
    }

    pub fn n(&self) -> usize {
        self.0.first().copied().unwrap_or(0) as usize
    }

    /// Rebuilds the canonical representative graph.
    pub fn to_graph(&self) -> LoopedGraph {
        let n = self.n();
        let bits = code_len(n);
        let mut code = 0u128;
        for &b in &self.0[1..] {
            code = code << 8 | b as u128;
        }
        code >>= (self.0.len() - 1) * 8 - bits;
        let mut rows = vec![0u64; n];
        let mut loops = 0u64;
        let mut pos = bits;
        for j in 0..n {
            pos -= 1;
            if code >> pos & 1 == 1 {
                loops |= 1 << j;
            }
            for i in 0..j {
                pos -= 1;
                if code >> pos & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
        }
        LoopedGraph::from_rows(rows, loops).expect("canonical code decodes to a valid graph")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex::encode(&self.0))
    }
}

#[inline]
fn code_len(n: usize) -> usize {
    n * (n + 1) / 2
}

pub fn canonical_form(g: &LoopedGraph) -> Result<CanonicalForm, GraphError> {
    canonical_form_capped(g, DEFAULT_CANON_CAP)
}

pub fn canonical_form_capped(g: &LoopedGraph, cap: usize) -> Result<CanonicalForm, GraphError> {
    canonical_labeling(g, cap).map(|(cf, _)| cf)
}

/// Returns the canonical form together with the ordering `order` such that
/// `order[k]` is the vertex of `g` placed at canonical position `k`.
pub fn canonical_labeling(g: &LoopedGraph, cap: usize) -> Result<(CanonicalForm, Vec<usize>), GraphError> {
    let n = g.n();
    let cap = cap.min(MAX_CANON_VERTICES);
    if n > cap {
        return Err(GraphError::CapExceeded { n, cap });
    }
    let keys = refine(g);
    let mut sorted: Vec<u64> = keys.clone();
    sorted.sort_unstable();
    let mut search = Search {
        g,
        keys: &keys,
        slot_keys: &sorted,
        total_bits: code_len(n),
        best: None,
        order: Vec::with_capacity(n),
        best_order: Vec::new(),
    };
    search.descend(0, 0, 0);
    let code = search.best.unwrap_or(0);
    let order = search.best_order;
    let nbytes = code_len(n).div_ceil(8);
    let mut bytes = Vec::with_capacity(1 + nbytes);
    bytes.push(n as u8);
    let aligned = if nbytes == 0 { 0 } else { code << (nbytes * 8 - code_len(n)) };
    for i in (0..nbytes).rev() {
        bytes.push((aligned >> (8 * i)) as u8);
    }
    Ok((CanonicalForm(bytes), order))
}

/// Relabels `g` into its canonical representative.
pub fn canonical_graph(g: &LoopedGraph, cap: usize) -> Result<LoopedGraph, GraphError> {
    let (cf, _) = canonical_labeling(g, cap)?;
    Ok(cf.to_graph())
}

/// Iterated colour refinement; colours are compressed to small ranks so the
/// result is an isomorphism-invariant ordering key per vertex.
fn refine(g: &LoopedGraph) -> Vec<u64> {
    let n = g.n();
    let mut colour: Vec<u64> = (0..n).map(|v| g.has_loop(v) as u64).collect();
    let mut classes = count_classes(&colour);
    loop {
        let sigs: Vec<(u64, Vec<u64>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u64> = Vec::with_capacity(g.degree(v));
                let mut bits = g.row(v);
                while bits != 0 {
                    let u = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    nb.push(colour[u]);
                }
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        let next: Vec<u64> = sigs.iter().map(|s| uniq.binary_search(s).unwrap() as u64).collect();
        let next_classes = uniq.len();
        colour = next;
        if next_classes == classes {
            return colour;
        }
        classes = next_classes;
    }
}

fn count_classes(c: &[u64]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

struct Search<'a> {
    g: &'a LoopedGraph,
    keys: &'a [u64],
    slot_keys: &'a [u64],
    total_bits: usize,
    best: Option<u128>,
    order: Vec<usize>,
    best_order: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, depth: usize, used: u64, prefix: u128) {
        let n = self.g.n();
        if depth == n {
            if self.best.is_none_or(|b| prefix < b) {
                self.best = Some(prefix);
                self.best_order = self.order.clone();
            }
            return;
        }
        let want = self.slot_keys[depth];
        let bits_after = code_len(depth + 1);
        for v in 0..n {
            if used >> v & 1 == 1 || self.keys[v] != want {
                continue;
            }
            let mut code = prefix << 1 | self.g.has_loop(v) as u128;
            for &u in &self.order {
                code = code << 1 | self.g.has_edge(u, v) as u128;
            }
            if let Some(best) = self.best {
                let best_prefix = best >> (self.total_bits - bits_after);
                if code > best_prefix {
                    continue;
                }
            }
            self.order.push(v);
            self.descend(depth + 1, used | 1 << v, code);
            self.order.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn relabelings_of_p3_agree() {
        let p3 = LoopedGraph::family(Family::Path, 3).unwrap();
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let base = canonical_form(&p3).unwrap();
        for p in perms {
            assert_eq!(canonical_form(&p3.permute(&p)).unwrap(), base);
        }
    }

    #[test]
    fn loop_distinguishes() {
        let e1 = LoopedGraph::empty(1).unwrap();
        let l1 = LoopedGraph::family(Family::Lollipop, 1).unwrap();
        assert_ne!(canonical_form(&e1).unwrap(), canonical_form(&l1).unwrap());
    }

    #[test]
    fn cap_enforced() {
        let g = LoopedGraph::empty(11).unwrap();
        assert_eq!(canonical_form(&g), Err(GraphError::CapExceeded { n: 11, cap: 10 }));
        assert!(canonical_form_capped(&g, 12).is_ok());
    }

    #[test]
    fn decode_round_trip() {
        let g = LoopedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)], &[1, 3]).unwrap();
        let cf = canonical_form(&g).unwrap();
        let rep = cf.to_graph();
        assert_eq!(canonical_form(&rep).unwrap(), cf);
        let (_, order) = canonical_labeling(&g, 10).unwrap();
        let mut perm = vec![0; 5];
        for (k, &v) in order.iter().enumerate() {
            perm[v] = k;
        }
        assert_eq!(g.permute(&perm), rep);
    }

    #[test]
    fn empty_graph() {
        let cf = canonical_form(&LoopedGraph::empty(0).unwrap()).unwrap();
        assert_eq!(cf.as_bytes(), &[0]);
        assert_eq!(cf.to_graph().n(), 0);
    }
}
