//! Signed Gauss codes and their looped interlacement graphs.
//!
//! A code is a whitespace-separated word of tokens `<label><sign>`, optionally
//! prefixed by `O` (over) or `U` (under). Every label occurs exactly twice; the
//! sign may be omitted on one of the two passages. A negative crossing becomes a
//! looped vertex. With the opposite handedness convention every knot is
//! replaced by its mirror image.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bracket::{bracket, jones_from_bracket, BracketError};
use crate::graph::LoopedGraph;
use crate::poly::{MultiPoly, QuarterPoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("malformed token `{0}`")]
    Malformed(String),
    #[error("label `{label}` appears {count} time(s), expected 2")]
    Count { label: String, count: usize },
    #[error("label `{0}` has conflicting signs")]
    SignConflict(String),
    #[error("label `{0}` has no sign on either passage")]
    Unsigned(String),
    #[error("label `{0}` needs one over and one under passage")]
    Decoration(String),
    #[error("too many crossings: {0}")]
    TooManyCrossings(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// A validated signed double-occurrence word. Labels are numbered in order of
/// first appearance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussCode {
    labels: Vec<String>,
    word: Vec<usize>,
    signs: Vec<Sign>,
}

#[derive(Default)]
struct Passages {
    count: usize,
    sign: Option<Sign>,
    over: usize,
    under: usize,
}

fn split_token(token: &str) -> Result<(Option<char>, &str, Option<Sign>), GaussError> {
    let malformed = || GaussError::Malformed(token.to_string());
    let (body, sign) = match token.chars().last() {
        Some('+') => (&token[..token.len() - 1], Some(Sign::Positive)),
        Some('-') => (&token[..token.len() - 1], Some(Sign::Negative)),
        _ => (token, None),
    };
    let (decoration, label) = match body.chars().next() {
        Some(c @ ('O' | 'U')) if body.len() > 1 => (Some(c), &body[1..]),
        _ => (None, body),
    };
    if label.is_empty() || !label.chars().all(|c| c.is_ascii_alphanumeric()) {
        return Err(malformed());
    }
    Ok((decoration, label, sign))
}

pub fn parse_gauss(text: &str) -> Result<GaussCode, GaussError> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut word = Vec::new();
    let mut passages: Vec<Passages> = Vec::new();
    for token in text.split_whitespace() {
        let (decoration, label, sign) = split_token(token)?;
        let i = *index.entry(label.to_string()).or_insert_with(|| {
            labels.push(label.to_string());
            passages.push(Passages::default());
            labels.len() - 1
        });
        let p = &mut passages[i];
        p.count += 1;
        match decoration {
            Some('O') => p.over += 1,
            Some(_) => p.under += 1,
            None => {}
        }
        if let Some(s) = sign {
            if p.sign.is_some_and(|prev| prev != s) {
                return Err(GaussError::SignConflict(label.to_string()));
            }
            p.sign = Some(s);
        }
        word.push(i);
    }
    if labels.len() > crate::graph::MAX_VERTICES {
        return Err(GaussError::TooManyCrossings(labels.len()));
    }
    let mut signs = Vec::with_capacity(labels.len());
    for (label, p) in labels.iter().zip(&passages) {
        if p.count != 2 {
            return Err(GaussError::Count { label: label.clone(), count: p.count });
        }
        if p.over + p.under != 0 && (p.over != 1 || p.under != 1) {
            return Err(GaussError::Decoration(label.clone()));
        }
        signs.push(p.sign.ok_or_else(|| GaussError::Unsigned(label.clone()))?);
    }
    Ok(GaussCode { labels, word, signs })
}

impl FromStr for GaussCode {
    type Err = GaussError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gauss(s)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &i) in self.word.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", self.labels[i], self.signs[i].symbol())?;
        }
        Ok(())
    }
}

impl GaussCode {
    pub fn crossings(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn sign(&self, crossing: usize) -> Sign {
        self.signs[crossing]
    }

    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Negative).count()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings() as i64 - 2 * self.negative_count() as i64
    }

    /// The same code read from a different starting point.
    pub fn rotated(&self, k: usize) -> GaussCode {
        let mut out = self.clone();
        if !out.word.is_empty() {
            let k = k % out.word.len();
            out.word.rotate_left(k);
        }
        out
    }

    /// The same code read in the opposite direction.
    pub fn reversed(&self) -> GaussCode {
        let mut out = self.clone();
        out.word.reverse();
        out
    }

    /// The code with one crossing switched.
    pub fn switched(&self, crossing: usize) -> GaussCode {
        let mut out = self.clone();
        out.signs[crossing] = out.signs[crossing].flipped();
        out
    }
}

/// Vertex per crossing, an edge for each interlaced pair, a loop at each
/// negative crossing. Vertex labels are the crossing labels.
pub fn interlacement_graph(code: &GaussCode) -> LoopedGraph {
    let n = code.crossings();
    let mut first = vec![usize::MAX; n];
    let mut second = vec![0; n];
    for (pos, &i) in code.word.iter().enumerate() {
        if first[i] == usize::MAX {
            first[i] = pos;
        } else {
            second[i] = pos;
        }
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let inside = |p: usize| first[a] < p && p < second[a];
            if inside(first[b]) != inside(second[b]) {
                edges.push((a, b));
            }
        }
    }
    let loops: Vec<usize> = (0..n).filter(|&i| code.signs[i] == Sign::Negative).collect();
    LoopedGraph::from_edges(n, &edges, &loops).expect("indices in range").with_labels(code.labels.clone())
}

/// Jones polynomial of a diagram as the image of
/// `(-A³)^ℓ (-B³)^{n-ℓ} [L(D)]` under `A ↦ t^{-1/4}`, `B ↦ t^{1/4}`,
/// `d ↦ -t^{-1/2} - t^{1/2}`.
pub fn diagram_jones(p: &MultiPoly, n: usize, negatives: usize) -> Result<QuarterPoly, BracketError> {
    p.check_bracket_vars()?;
    let d_image = QuarterPoly::from_terms([(-2, -1), (2, -1)]);
    let mut out = QuarterPoly::zero();
    for (m, c) in p.terms() {
        let a = m.exp(Var::A) + 3 * negatives as i32;
        let b = m.exp(Var::B) + 3 * (n - negatives) as i32;
        let k = m.exp(Var::D);
        if k < 0 {
            return Err(BracketError::NotABracket("negative power of d".into()));
        }
        out.add_scaled_shift(&d_image.pow(k as u32), c, i64::from(b - a));
    }
    if n % 2 == 1 {
        out = -&out;
    }
    if !out.is_half_integral() {
        return Err(BracketError::Poly(crate::poly::PolyError::HalfIntegrality(out.max_exp().unwrap_or(0))));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotInvariants {
    pub graph: LoopedGraph,
    pub bracket: MultiPoly,
    pub jones: QuarterPoly,
}

/// Bracket and Jones polynomial of a diagram. The Jones polynomial is computed
/// both from the reduced graph bracket and from the diagram normalisation; a
/// mismatch is reported as an internal error.
pub fn knot_invariants(code: &GaussCode) -> Result<KnotInvariants, BracketError> {
    let graph = interlacement_graph(code);
    let p = bracket(&graph);
    let via_graph = jones_from_bracket(&p, code.crossings(), code.negative_count())?;
    let via_diagram = diagram_jones(&p, code.crossings(), code.negative_count())?;
    if via_graph != via_diagram {
        return Err(BracketError::Invariant(format!(
            "Jones routes disagree: graph gives {via_graph}, diagram gives {via_diagram}"
        )));
    }
    Ok(KnotInvariants { graph, bracket: p, jones: via_graph })
}

/// Every vertex has even non-loop degree.
pub fn eulerian_check(g: &LoopedGraph) -> bool {
    (0..g.n()).all(|v| g.degree(v).is_multiple_of(2))
}
