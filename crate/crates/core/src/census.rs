//! Isomorphism-class censuses of small graphs and how well the bracket
//! separates them.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bracket::{bracket, jones_from_bracket, structural_counts, BracketError};
use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::{low_mask, LoopedGraph};
use crate::poly::MultiPoly;

pub const MAX_CENSUS_VERTICES: usize = 7;
pub const MAX_TREE_VERTICES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("census is limited to {cap} vertices, got {n}")]
    CapExceeded { n: usize, cap: usize },
    #[error("cache mismatch: {0}")]
    Cache(String),
    #[error(transparent)]
    Bracket(#[from] BracketError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Looped,
    Simple,
}

impl FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "looped" => Ok(GraphKind::Looped),
            "simple" => Ok(GraphKind::Simple),
            _ => Err(format!("unknown graph kind `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Full,
    OneVariable,
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Variant::Full),
            "one-var" | "one-variable" => Ok(Variant::OneVariable),
            _ => Err(format!("unknown variant `{s}`")),
        }
    }
}

/// One representative per isomorphism class, as canonical graphs sorted by
/// canonical form.
///
/// Classes on `n` vertices are generated by attaching a new vertex in every
/// possible way to each class on `n - 1` vertices, which reaches every class
/// because deleting any vertex of an `n`-vertex graph leaves some smaller class.
pub fn enumerate_classes(n: usize, kind: GraphKind) -> Result<Vec<LoopedGraph>, CensusError> {
    if n > MAX_CENSUS_VERTICES {
        return Err(CensusError::CapExceeded { n, cap: MAX_CENSUS_VERTICES });
    }
    let mut level: Vec<CanonicalForm> =
        vec![canonical_form(&LoopedGraph::empty(0).expect("empty graph")).expect("small")];
    let flags: &[bool] = match kind {
        GraphKind::Looped => &[false, true],
        GraphKind::Simple => &[false],
    };
    for k in 1..=n {
        let children: Vec<HashSet<CanonicalForm>> = level
            .par_iter()
            .map(|cf| {
                let base = cf.to_graph();
                let mut out = HashSet::new();
                for nbhd in 0..=low_mask(k - 1) {
                    for &looped in flags {
                        let mut g = base.clone();
                        g.add_vertex(nbhd, looped).expect("small graph");
                        out.insert(canonical_form(&g).expect("within cap"));
                    }
                }
                out
            })
            .collect();
        let mut next: Vec<CanonicalForm> = children.into_iter().flatten().collect::<HashSet<_>>().into_iter().collect();
        next.sort();
        level = next;
    }
    Ok(level.iter().map(CanonicalForm::to_graph).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub form: CanonicalForm,
    pub n: usize,
    pub loops: usize,
    pub connected: bool,
    pub bracket: MultiPoly,
    /// `[G](A, 1, A)`.
    pub one_variable: MultiPoly,
}

impl CensusRecord {
    pub fn key(&self, variant: Variant) -> String {
        match variant {
            Variant::Full => self.bracket.to_string(),
            Variant::OneVariable => self.one_variable.to_string(),
        }
    }
}

pub fn census_records(n: usize, kind: GraphKind) -> Result<Vec<CensusRecord>, CensusError> {
    enumerate_classes(n, kind)?
        .par_iter()
        .map(|g| {
            let p = bracket(g);
            let one_variable = p.one_variable().map_err(BracketError::from)?;
            Ok(CensusRecord {
                form: canonical_form(g).expect("within cap"),
                n: g.n(),
                loops: g.loop_count(),
                connected: g.is_connected(),
                bracket: p,
                one_variable,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub classes: usize,
    pub distinct: usize,
    /// Groups of two or more classes sharing a polynomial, keyed by it.
    pub collisions: Vec<(String, Vec<CanonicalForm>)>,
}

pub fn summarize(records: &[CensusRecord], variant: Variant) -> CensusReport {
    let mut groups: BTreeMap<String, Vec<CanonicalForm>> = BTreeMap::new();
    for r in records {
        groups.entry(r.key(variant)).or_default().push(r.form.clone());
    }
    let distinct = groups.len();
    let collisions = groups.into_iter().filter(|(_, forms)| forms.len() > 1).collect();
    CensusReport { classes: records.len(), distinct, collisions }
}

pub fn bracket_census(n: usize, kind: GraphKind, variant: Variant) -> Result<CensusReport, CensusError> {
    Ok(summarize(&census_records(n, kind)?, variant))
}

/// Colliding pairs (under the full bracket) with one connected and one
/// disconnected member.
pub fn mixed_connectivity_collisions(records: &[CensusRecord]) -> Vec<(CanonicalForm, CanonicalForm)> {
    let connected: BTreeMap<&CanonicalForm, bool> = records.iter().map(|r| (&r.form, r.connected)).collect();
    let mut out = Vec::new();
    for (_, forms) in summarize(records, Variant::Full).collisions {
        for (i, a) in forms.iter().enumerate() {
            for b in &forms[i + 1..] {
                if connected[a] != connected[b] {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
    }
    out
}

/// Records whose bracket does not give back their vertex and loop counts.
pub fn structural_mismatches(records: &[CensusRecord]) -> Vec<CanonicalForm> {
    records
        .iter()
        .filter(|r| structural_counts(&r.bracket).ok() != Some((r.n, r.loops)))
        .map(|r| r.form.clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeReport {
    pub n: usize,
    pub trees: usize,
    pub distinct_brackets: usize,
    pub distinct_jones: usize,
    /// Pairs of trees told apart by their Jones polynomials.
    pub jones_separated_pairs: usize,
}

pub fn tree_census(n: usize) -> Result<TreeReport, CensusError> {
    if n == 0 || n > MAX_TREE_VERTICES {
        return Err(CensusError::CapExceeded { n, cap: MAX_TREE_VERTICES });
    }
    let trees: Vec<LoopedGraph> = enumerate_classes(n, GraphKind::Simple)?
        .into_iter()
        .filter(|g| g.is_connected() && g.edge_count() == n - 1)
        .collect();
    let brackets: Vec<MultiPoly> = trees.iter().map(bracket).collect();
    let jones: Vec<String> =
        brackets.iter().map(|p| jones_from_bracket(p, n, 0).map(|v| v.to_string())).collect::<Result<_, _>>()?;
    let distinct_brackets = brackets.iter().map(|p| p.to_string()).collect::<HashSet<_>>().len();
    let distinct_jones = jones.iter().collect::<HashSet<_>>().len();
    let mut separated = 0;
    for i in 0..jones.len() {
        for j in i + 1..jones.len() {
            if jones[i] != jones[j] {
                separated += 1;
            }
        }
    }
    Ok(TreeReport { n, trees: trees.len(), distinct_brackets, distinct_jones, jones_separated_pairs: separated })
}

const HASH_PREFIX: &str = "# sha256 ";

/// Tab-separated census: canonical form, n, loops, connectivity, bracket and
/// one-variable specialisation, sorted by canonical form, under a header line
/// carrying the SHA-256 of the body.
pub fn to_tsv(records: &[CensusRecord]) -> String {
    let mut sorted: Vec<&CensusRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.form.cmp(&b.form));
    let mut body = String::new();
    for r in sorted {
        writeln!(
            body,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.form,
            r.n,
            r.loops,
            u8::from(r.connected),
            r.bracket,
            r.one_variable
        )
        .expect("writing to a string");
    }
    format!("{HASH_PREFIX}{}\n{body}", hex::encode(Sha256::digest(body.as_bytes())))
}

/// Checks a stored census against its own header and against fresh records.
pub fn verify_tsv(stored: &str, records: &[CensusRecord]) -> Result<(), CensusError> {
    let (header, body) = stored.split_once('\n').ok_or_else(|| CensusError::Cache("missing header".into()))?;
    let claimed = header.strip_prefix(HASH_PREFIX).ok_or_else(|| CensusError::Cache("malformed header".into()))?;
    if claimed != hex::encode(Sha256::digest(body.as_bytes())) {
        return Err(CensusError::Cache("body does not match its hash".into()));
    }
    if stored != to_tsv(records) {
        return Err(CensusError::Cache("stored census differs from the recomputation".into()));
    }
    Ok(())
}
