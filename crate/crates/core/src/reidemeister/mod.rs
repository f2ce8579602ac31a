//! Graph Reidemeister moves.
//!
//! * Ω1 adjoins or removes an isolated vertex, looped or not.
//! * Ω2 adjoins or removes a looped vertex `v` and an unlooped vertex `w` with
//!   the same neighbours outside `{v, w}`; `v` and `w` may or may not be adjacent.
//! * Ω3 toggles the three non-loop adjacencies among `u, v, w` when every outside
//!   vertex sees 0 or 2 of them and the triple, before or after the toggle, is
//!   one of the six configurations in [`CONFIG_TABLE`].

mod config;
mod search;

pub use config::{
    config_pair_survives, derive_config_table, word_correspondence_check, ConfigRef, TriangleConfig, WordCheck,
    CONFIG_TABLE, NUMERALS, TRIANGLE_WORDS,
};
pub use search::{equivalence_search, SearchBounds, SearchOutcome};

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::bracket::BracketError;
use crate::canon::{canonical_form_capped, CanonicalForm, MAX_CANON_VERTICES};
use crate::graph::{low_mask, GraphError, LoopedGraph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReidemeisterError {
    #[error("illegal move {descriptor}: {clause}")]
    Illegal { descriptor: String, clause: String },
    #[error("cannot parse move `{0}`")]
    Parse(String),
    #[error("search bounds: {0}")]
    Bounds(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Bracket(#[from] BracketError),
}

impl ReidemeisterError {
    pub fn is_internal(&self) -> bool {
        match self {
            ReidemeisterError::Invariant(_) => true,
            ReidemeisterError::Bracket(e) => e.is_internal(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Omega1,
    Omega2,
    Omega3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Insert,
    Remove,
    Toggle,
}

/// A single move. New vertices are appended after the existing ones; removals
/// renumber the remaining vertices in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveDescriptor {
    O1Insert {
        looped: bool,
    },
    O1Remove {
        v: usize,
    },
    /// Both new vertices are adjacent to exactly the vertices in `s`.
    O2Insert {
        s: u64,
        adjacent: bool,
        looped_first: bool,
    },
    /// `v` looped, `w` unlooped.
    O2Remove {
        v: usize,
        w: usize,
    },
    O3 {
        u: usize,
        v: usize,
        w: usize,
    },
}

impl MoveDescriptor {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveDescriptor::O1Insert { .. } | MoveDescriptor::O1Remove { .. } => MoveKind::Omega1,
            MoveDescriptor::O2Insert { .. } | MoveDescriptor::O2Remove { .. } => MoveKind::Omega2,
            MoveDescriptor::O3 { .. } => MoveKind::Omega3,
        }
    }

    pub fn direction(&self) -> Direction {
        match self {
            MoveDescriptor::O1Insert { .. } | MoveDescriptor::O2Insert { .. } => Direction::Insert,
            MoveDescriptor::O1Remove { .. } | MoveDescriptor::O2Remove { .. } => Direction::Remove,
            MoveDescriptor::O3 { .. } => Direction::Toggle,
        }
    }

    /// The move that undoes `self` on the graph `apply_move(before, self)`.
    pub fn inverse(&self, before: &LoopedGraph) -> MoveDescriptor {
        let n = before.n();
        match *self {
            MoveDescriptor::O1Insert { .. } => MoveDescriptor::O1Remove { v: n },
            MoveDescriptor::O1Remove { v } => MoveDescriptor::O1Insert { looped: before.has_loop(v) },
            MoveDescriptor::O2Insert { looped_first, .. } => {
                let (v, w) = if looped_first { (n, n + 1) } else { (n + 1, n) };
                MoveDescriptor::O2Remove { v, w }
            }
            MoveDescriptor::O2Remove { v, w } => {
                let outside = before.row(v) & !(1u64 << w);
                MoveDescriptor::O2Insert {
                    s: compress(outside, (1u64 << v) | (1u64 << w)),
                    adjacent: before.has_edge(v, w),
                    looped_first: true,
                }
            }
            m @ MoveDescriptor::O3 { .. } => m,
        }
    }
}

/// Renumbers the bits of `mask` after deleting the vertices in `removed`.
fn compress(mask: u64, removed: u64) -> u64 {
    let mut out = 0u64;
    let mut k = 0;
    for i in 0..64 {
        if removed >> i & 1 == 1 {
            continue;
        }
        out |= (mask >> i & 1) << k;
        k += 1;
    }
    out
}

fn mask_text(s: u64) -> String {
    let members: Vec<String> = (0..64).filter(|i| s >> i & 1 == 1).map(|i| i.to_string()).collect();
    format!("S={{{}}}", members.join(","))
}

impl fmt::Display for MoveDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MoveDescriptor::O1Insert { looped } => write!(f, "O1+ {}", if looped { "looped" } else { "unlooped" }),
            MoveDescriptor::O1Remove { v } => write!(f, "O1- {v}"),
            MoveDescriptor::O2Insert { s, adjacent, looped_first } => write!(
                f,
                "O2+ {} {} {}",
                mask_text(s),
                if adjacent { "adj" } else { "nonadj" },
                if looped_first { "loopedfirst" } else { "unloopedfirst" }
            ),
            MoveDescriptor::O2Remove { v, w } => write!(f, "O2- {v} {w}"),
            MoveDescriptor::O3 { u, v, w } => write!(f, "O3 {u} {v} {w}"),
        }
    }
}

impl FromStr for MoveDescriptor {
    type Err = ReidemeisterError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || ReidemeisterError::Parse(text.to_string());
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let vertex = |t: &str| t.parse::<usize>().map_err(|_| bad());
        match tokens.as_slice() {
            ["O1+", "looped"] => Ok(MoveDescriptor::O1Insert { looped: true }),
            ["O1+", "unlooped"] => Ok(MoveDescriptor::O1Insert { looped: false }),
            ["O1-", v] => Ok(MoveDescriptor::O1Remove { v: vertex(v)? }),
            ["O2+", set, adj, order] => {
                let inner = set.strip_prefix("S={").and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
                let mut s = 0u64;
                for t in inner.split(',').filter(|t| !t.is_empty()) {
                    let i = vertex(t)?;
                    if i >= MAX_VERTICES {
                        return Err(bad());
                    }
                    s |= 1 << i;
                }
                let adjacent = match *adj {
                    "adj" => true,
                    "nonadj" => false,
                    _ => return Err(bad()),
                };
                let looped_first = match *order {
                    "loopedfirst" => true,
                    "unloopedfirst" => false,
                    _ => return Err(bad()),
                };
                Ok(MoveDescriptor::O2Insert { s, adjacent, looped_first })
            }
            ["O2-", v, w] => Ok(MoveDescriptor::O2Remove { v: vertex(v)?, w: vertex(w)? }),
            ["O3", u, v, w] => Ok(MoveDescriptor::O3 { u: vertex(u)?, v: vertex(v)?, w: vertex(w)? }),
            _ => Err(bad()),
        }
    }
}

fn table_forms() -> &'static [CanonicalForm] {
    static FORMS: OnceLock<Vec<CanonicalForm>> = OnceLock::new();
    FORMS.get_or_init(|| {
        CONFIG_TABLE.iter().map(|c| canonical_form_capped(&c.graph(), 3).expect("three vertices")).collect()
    })
}

fn in_table(h: &LoopedGraph) -> bool {
    let cf = canonical_form_capped(h, 3).expect("three vertices");
    table_forms().contains(&cf)
}

fn toggle_triangle(g: &mut LoopedGraph, u: usize, v: usize, w: usize) {
    g.toggle_edge(u, v);
    g.toggle_edge(u, w);
    g.toggle_edge(v, w);
}

fn omega3_clause(g: &LoopedGraph, u: usize, v: usize, w: usize) -> Option<&'static str> {
    let triple = (1u64 << u) | (1u64 << v) | (1u64 << w);
    let outside_ok =
        (0..g.n()).filter(|x| triple >> x & 1 == 0).all(|x| matches!((g.row(x) & triple).count_ones(), 0 | 2));
    if !outside_ok {
        return Some("clause (i): an outside vertex is adjacent to exactly one or all three of the triple");
    }
    let before = g.induced_subgraph(&[u, v, w]).expect("valid triple");
    let mut after = before.clone();
    toggle_triangle(&mut after, 0, 1, 2);
    if !in_table(&before) && !in_table(&after) {
        return Some("clause (ii): neither the initial nor the terminal triple is a listed configuration");
    }
    None
}

fn omega2_clause(g: &LoopedGraph, v: usize, w: usize) -> Option<&'static str> {
    if !g.has_loop(v) {
        return Some("clause (i): v must be looped");
    }
    if g.has_loop(w) {
        return Some("clause (ii): w must be unlooped");
    }
    if g.row(v) & !(1u64 << w) != g.row(w) & !(1u64 << v) {
        return Some("clause (iii): v and w have different outside neighbours");
    }
    None
}

pub fn apply_move(g: &LoopedGraph, m: &MoveDescriptor) -> Result<LoopedGraph, ReidemeisterError> {
    let n = g.n();
    let illegal = |clause: &str| ReidemeisterError::Illegal { descriptor: m.to_string(), clause: clause.to_string() };
    let check_vertex = |x: usize| if x < n { Ok(()) } else { Err(illegal(&format!("vertex {x} out of range 0..{n}"))) };
    match *m {
        MoveDescriptor::O1Insert { looped } => {
            let mut out = g.clone();
            out.add_vertex(0, looped)?;
            Ok(out)
        }
        MoveDescriptor::O1Remove { v } => {
            check_vertex(v)?;
            if g.row(v) != 0 {
                return Err(illegal("Ω1: vertex is not isolated"));
            }
            Ok(g.delete_vertex(v)?)
        }
        MoveDescriptor::O2Insert { s, adjacent, looped_first } => {
            if s & !low_mask(n) != 0 {
                return Err(illegal("Ω2: neighbour set contains a missing vertex"));
            }
            let mut out = g.clone();
            let a = out.add_vertex(s, looped_first)?;
            let b = out.add_vertex(s, !looped_first)?;
            if adjacent {
                out.set_edge(a, b, true);
            }
            Ok(out)
        }
        MoveDescriptor::O2Remove { v, w } => {
            check_vertex(v)?;
            check_vertex(w)?;
            if v == w {
                return Err(illegal("Ω2: v and w must be distinct"));
            }
            if let Some(clause) = omega2_clause(g, v, w) {
                return Err(illegal(clause));
            }
            Ok(g.delete_mask((1u64 << v) | (1u64 << w)))
        }
        MoveDescriptor::O3 { u, v, w } => {
            check_vertex(u)?;
            check_vertex(v)?;
            check_vertex(w)?;
            if u == v || u == w || v == w {
                return Err(illegal("Ω3: vertices must be distinct"));
            }
            if let Some(clause) = omega3_clause(g, u, v, w) {
                return Err(illegal(clause));
            }
            let mut out = g.clone();
            toggle_triangle(&mut out, u, v, w);
            Ok(out)
        }
    }
}

fn inserts(g: &LoopedGraph, insert_budget: usize, max_vertices: usize) -> Vec<MoveDescriptor> {
    let n = g.n();
    let mut out = Vec::new();
    if insert_budget >= 1 && n < max_vertices {
        out.push(MoveDescriptor::O1Insert { looped: false });
        out.push(MoveDescriptor::O1Insert { looped: true });
    }
    if insert_budget >= 2 && n + 2 <= max_vertices {
        for s in 0..=low_mask(n) {
            for adjacent in [false, true] {
                out.push(MoveDescriptor::O2Insert { s, adjacent, looped_first: true });
            }
        }
    }
    out
}

fn removals_and_toggles(g: &LoopedGraph) -> Vec<MoveDescriptor> {
    let n = g.n();
    let mut out: Vec<MoveDescriptor> =
        (0..n).filter(|&v| g.row(v) == 0).map(|v| MoveDescriptor::O1Remove { v }).collect();
    for v in (0..n).filter(|&v| g.has_loop(v)) {
        for w in (0..n).filter(|&w| !g.has_loop(w)) {
            if omega2_clause(g, v, w).is_none() {
                out.push(MoveDescriptor::O2Remove { v, w });
            }
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                if omega3_clause(g, u, v, w).is_none() {
                    out.push(MoveDescriptor::O3 { u, v, w });
                }
            }
        }
    }
    out
}

/// Every legal move on `g`, removals and toggles first, with insertions limited
/// by `insert_budget` (0 none, 1 Ω1 only, 2 or more Ω1 and Ω2) and by `max_vertices`.
pub fn legal_moves(g: &LoopedGraph, insert_budget: usize, max_vertices: usize) -> Vec<MoveDescriptor> {
    let mut out = removals_and_toggles(g);
    out.extend(inserts(g, insert_budget, max_vertices));
    out
}

/// Every legal move on `g` together with its result.
pub fn enumerate_moves(g: &LoopedGraph, insert_budget: usize) -> Vec<(MoveDescriptor, LoopedGraph)> {
    legal_moves(g, insert_budget, MAX_VERTICES)
        .into_iter()
        .map(|m| {
            let h = apply_move(g, &m).expect("enumerated moves are legal");
            (m, h)
        })
        .collect()
}

/// A uniformly chosen move kind and direction among those available, then a
/// uniformly chosen move of that sort.
pub fn random_move<R: Rng + ?Sized>(
    g: &LoopedGraph,
    rng: &mut R,
    insert_budget: usize,
    max_vertices: usize,
) -> Option<(MoveDescriptor, LoopedGraph)> {
    let moves = legal_moves(g, insert_budget, max_vertices);
    let mut sorts: Vec<(MoveKind, bool)> = Vec::new();
    for m in &moves {
        let sort = (m.kind(), m.direction() == Direction::Insert);
        if !sorts.contains(&sort) {
            sorts.push(sort);
        }
    }
    let sort = *sorts.choose(rng)?;
    let pool: Vec<&MoveDescriptor> =
        moves.iter().filter(|m| (m.kind(), m.direction() == Direction::Insert) == sort).collect();
    let m = **pool.choose(rng)?;
    let h = apply_move(g, &m).expect("enumerated moves are legal");
    Some((m, h))
}

pub(crate) fn search_form(g: &LoopedGraph) -> CanonicalForm {
    canonical_form_capped(g, MAX_CANON_VERTICES).expect("search graphs stay within the canonical cap")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::{bracket, jones, reduced_bracket};
    use crate::graph::Family;
    use crate::poly::MultiPoly;
    use rand::SeedableRng;

    #[test]
    fn descriptor_round_trip() {
        for text in [
            "O1+ looped",
            "O1+ unlooped",
            "O1- 3",
            "O2+ S={0,2} adj loopedfirst",
            "O2+ S={} nonadj unloopedfirst",
            "O2- 4 1",
            "O3 0 1 2",
        ] {
            let m: MoveDescriptor = text.parse().unwrap();
            assert_eq!(m.to_string(), text);
        }
        for bad in ["O4 1", "O1+ maybe", "O2+ S=0,2 adj loopedfirst", "O3 1 2", "O1- x"] {
            assert!(bad.parse::<MoveDescriptor>().is_err(), "{bad}");
        }
    }

    #[test]
    fn moves_on_single_vertex() {
        let e1 = LoopedGraph::empty(1).unwrap();
        let moves: Vec<String> = enumerate_moves(&e1, 2).iter().map(|(m, _)| m.to_string()).collect();
        assert_eq!(
            moves,
            [
                "O1- 0",
                "O1+ unlooped",
                "O1+ looped",
                "O2+ S={} nonadj loopedfirst",
                "O2+ S={} adj loopedfirst",
                "O2+ S={0} nonadj loopedfirst",
                "O2+ S={0} adj loopedfirst",
            ]
        );
        let (_, e0) = &enumerate_moves(&e1, 0)[0];
        assert_eq!(e0.n(), 0);
    }

    #[test]
    fn apply_examples() {
        let e0 = LoopedGraph::empty(0).unwrap();
        let l1 = apply_move(&e0, &"O1+ looped".parse().unwrap()).unwrap();
        assert_eq!(l1, LoopedGraph::family(Family::Lollipop, 1).unwrap());

        let e1 = LoopedGraph::empty(1).unwrap();
        let g = apply_move(&e1, &"O2+ S={0} adj loopedfirst".parse().unwrap()).unwrap();
        assert_eq!(g, LoopedGraph::from_edges(3, &[(0, 1), (0, 2), (1, 2)], &[1]).unwrap());
    }

    #[test]
    fn omega2_removal_of_prop5_graph() {
        for n in 0..4 {
            let mut g = LoopedGraph::empty(n).unwrap();
            let all = low_mask(n);
            let v = g.add_vertex(all, true).unwrap();
            let w = g.add_vertex(all, false).unwrap();
            g.set_edge(v, w, true);
            let moves = enumerate_moves(&g, 0);
            let removal = moves.iter().find(|(m, _)| *m == MoveDescriptor::O2Remove { v, w }).expect("legal removal");
            assert_eq!(removal.1, LoopedGraph::empty(n).unwrap());
        }
    }

    #[test]
    fn illegal_moves_name_their_clause() {
        let g = LoopedGraph::from_edges(3, &[(0, 1)], &[]).unwrap();
        let err = apply_move(&g, &"O2- 0 1".parse().unwrap()).unwrap_err();
        assert!(err.to_string().contains("clause (i)"), "{err}");
        let err = apply_move(&g, &"O1- 0".parse().unwrap()).unwrap_err();
        assert!(err.to_string().contains("not isolated"), "{err}");
        let star = LoopedGraph::from_edges(4, &[(0, 3)], &[]).unwrap();
        let err = apply_move(&star, &"O3 0 1 2".parse().unwrap()).unwrap_err();
        assert!(err.to_string().contains("clause (i)"), "{err}");
    }

    #[test]
    fn edge_and_cherry_differ_by_omega3() {
        let g1 = LoopedGraph::from_edges(3, &[(0, 1)], &[1]).unwrap();
        let g2 = LoopedGraph::from_edges(3, &[(0, 2), (1, 2)], &[1]).unwrap();
        let found = enumerate_moves(&g1, 0).into_iter().any(|(m, h)| m.kind() == MoveKind::Omega3 && h == g2);
        assert!(found);
    }

    #[test]
    fn inverses_return_isomorphic_graphs() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let mut g = LoopedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)], &[1]).unwrap();
        for _ in 0..200 {
            let (m, h) = random_move(&g, &mut rng, 2, 7).unwrap();
            let back = apply_move(&h, &m.inverse(&g)).unwrap();
            assert_eq!(search_form(&back), search_form(&g), "{m}");
            g = h;
        }
    }

    #[test]
    fn omega1_factors() {
        let g = LoopedGraph::from_edges(3, &[(0, 1), (1, 2)], &[2]).unwrap();
        let base = reduced_bracket(&g).unwrap();
        let unlooped = apply_move(&g, &MoveDescriptor::O1Insert { looped: false }).unwrap();
        let looped = apply_move(&g, &MoveDescriptor::O1Insert { looped: true }).unwrap();
        assert_eq!(reduced_bracket(&unlooped).unwrap(), &base * &"-A^3".parse().unwrap());
        assert_eq!(reduced_bracket(&looped).unwrap(), &base * &"-A^-3".parse().unwrap());
    }

    #[test]
    fn random_moves_preserve_jones() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for start in 0..20u64 {
            let g = LoopedGraph::from_rows(vec![0b0110, 0b1001, 0b1001, 0b0110], start % 16).unwrap();
            let (m, h) = random_move(&g, &mut rng, 2, 7).unwrap();
            assert_eq!(jones(&h).unwrap(), jones(&g).unwrap(), "{m}");
            if m.kind() != MoveKind::Omega1 {
                assert_eq!(reduced_bracket(&h).unwrap(), reduced_bracket(&g).unwrap(), "{m}");
            }
        }
    }

    #[test]
    fn joined_hubs_match_split_hubs() {
        for m in 1..=4usize {
            let rim = |count: usize| -> Vec<(usize, usize)> { (2..2 + count).flat_map(|i| [(0, i), (1, i)]).collect() };
            let mut gamma_edges = rim(m - 1);
            gamma_edges.push((0, 1));
            let gamma = LoopedGraph::from_edges(m + 1, &gamma_edges, &[]).unwrap();
            let gamma_prime = LoopedGraph::from_edges(m + 2, &rim(m), &[]).unwrap();
            assert_eq!(jones(&gamma).unwrap(), jones(&gamma_prime).unwrap(), "m = {m}");
            assert_ne!(bracket(&gamma), MultiPoly::zero());
        }
    }
}
