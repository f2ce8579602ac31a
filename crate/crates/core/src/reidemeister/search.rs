use std::collections::HashMap;

use rayon::prelude::*;

use super::{apply_move, legal_moves, search_form, MoveDescriptor, ReidemeisterError};
use crate::canon::{CanonicalForm, MAX_CANON_VERTICES};
use crate::graph::LoopedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_vertices: usize,
    pub max_expansions: usize,
}

impl SearchBounds {
    pub fn for_pair(g1: &LoopedGraph, g2: &LoopedGraph) -> Self {
        Self { max_vertices: (g1.n().max(g2.n()) + 4).min(MAX_CANON_VERTICES), max_expansions: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Applying `path` to `G1` gives a graph isomorphic to `G2`.
    Found { path: Vec<MoveDescriptor>, expansions: usize },
    /// No path within the bounds. This says nothing about inequivalence.
    NotFound { expansions: usize },
}

struct Side {
    parent: HashMap<CanonicalForm, Option<CanonicalForm>>,
    frontier: Vec<(CanonicalForm, LoopedGraph)>,
}

impl Side {
    fn new(g: &LoopedGraph) -> Self {
        let cf = search_form(g);
        Side { parent: HashMap::from([(cf.clone(), None)]), frontier: vec![(cf, g.clone())] }
    }

    fn chain(&self, from: &CanonicalForm) -> Vec<CanonicalForm> {
        let mut out = vec![from.clone()];
        while let Some(Some(p)) = self.parent.get(out.last().expect("non-empty")) {
            out.push(p.clone());
        }
        out
    }
}

enum Level {
    Met(CanonicalForm),
    Exhausted,
    Budget,
    Continue,
}

fn expand(side: &mut Side, other: &Side, budget: usize, bounds: &SearchBounds, expansions: &mut usize) -> Level {
    let frontier = std::mem::take(&mut side.frontier);
    for (cf, g) in frontier {
        if *expansions >= bounds.max_expansions {
            return Level::Budget;
        }
        *expansions += 1;
        let children: Vec<(CanonicalForm, LoopedGraph)> = legal_moves(&g, budget, bounds.max_vertices)
            .par_iter()
            .map(|m| {
                let h = apply_move(&g, m).expect("enumerated moves are legal");
                (search_form(&h), h)
            })
            .collect();
        for (child, h) in children {
            if side.parent.contains_key(&child) {
                continue;
            }
            side.parent.insert(child.clone(), Some(cf.clone()));
            if other.parent.contains_key(&child) {
                return Level::Met(child);
            }
            side.frontier.push((child, h));
        }
    }
    if side.frontier.is_empty() {
        Level::Exhausted
    } else {
        Level::Continue
    }
}

/// Bidirectional breadth-first search over isomorphism classes.
///
/// Runs in stages of increasing insertion freedom (none, Ω1 only, all), all
/// sharing one expansion budget; a later stage is only reached when the
/// previous one exhausts its search space.
pub fn equivalence_search(
    g1: &LoopedGraph,
    g2: &LoopedGraph,
    bounds: SearchBounds,
) -> Result<SearchOutcome, ReidemeisterError> {
    let largest = g1.n().max(g2.n());
    if bounds.max_vertices < largest {
        return Err(ReidemeisterError::Bounds(format!(
            "max_vertices {} is below the input size {largest}",
            bounds.max_vertices
        )));
    }
    if bounds.max_vertices > MAX_CANON_VERTICES {
        return Err(ReidemeisterError::Bounds(format!(
            "max_vertices {} exceeds {MAX_CANON_VERTICES}",
            bounds.max_vertices
        )));
    }
    let target = search_form(g2);
    if search_form(g1) == target {
        return Ok(SearchOutcome::Found { path: Vec::new(), expansions: 0 });
    }
    let mut expansions = 0;
    for budget in 0..=2 {
        let mut left = Side::new(g1);
        let mut right = Side::new(g2);
        loop {
            let expand_left = left.frontier.len() <= right.frontier.len();
            let level = if expand_left {
                expand(&mut left, &right, budget, &bounds, &mut expansions)
            } else {
                expand(&mut right, &left, budget, &bounds, &mut expansions)
            };
            match level {
                Level::Met(meet) => {
                    let mut forms = left.chain(&meet);
                    forms.reverse();
                    forms.extend(right.chain(&meet).into_iter().skip(1));
                    let path = replay(g1, &forms, bounds.max_vertices)?;
                    return Ok(SearchOutcome::Found { path, expansions });
                }
                Level::Budget => return Ok(SearchOutcome::NotFound { expansions }),
                Level::Exhausted => break,
                Level::Continue => {}
            }
        }
    }
    Ok(SearchOutcome::NotFound { expansions })
}

/// Turns a chain of canonical forms into concrete moves starting at `g1`.
fn replay(
    g1: &LoopedGraph,
    forms: &[CanonicalForm],
    max_vertices: usize,
) -> Result<Vec<MoveDescriptor>, ReidemeisterError> {
    let mut current = g1.clone();
    let mut path = Vec::with_capacity(forms.len().saturating_sub(1));
    for next in &forms[1..] {
        let step = legal_moves(&current, 2, max_vertices).into_par_iter().find_first(|m| {
            let h = apply_move(&current, m).expect("enumerated moves are legal");
            search_form(&h) == *next
        });
        let m = step.ok_or_else(|| ReidemeisterError::Invariant("no move realises a step of the found path".into()))?;
        current = apply_move(&current, &m)?;
        path.push(m);
    }
    Ok(path)
}
