//! The six three-vertex configurations admitted by Ω3.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::ReidemeisterError;
use crate::bracket::bracket;
use crate::canon::{canonical_form_capped, CanonicalForm};
use crate::graph::LoopedGraph;
use crate::knot::{interlacement_graph, parse_gauss};

/// A looped graph on `u = 0`, `v = 1`, `w = 2`. Edge bits are `uv`, `uw`, `vw`;
/// loop bits are `u`, `v`, `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleConfig {
    pub edges: u8,
    pub loops: u8,
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

impl TriangleConfig {
    pub const fn new(edges: u8, loops: u8) -> Self {
        Self { edges: edges & 7, loops: loops & 7 }
    }

    pub fn graph(&self) -> LoopedGraph {
        let edges: Vec<(usize, usize)> =
            PAIRS.iter().enumerate().filter(|(i, _)| self.edges >> i & 1 == 1).map(|(_, &p)| p).collect();
        let loops: Vec<usize> = (0..3).filter(|i| self.loops >> i & 1 == 1).collect();
        LoopedGraph::from_edges(3, &edges, &loops).expect("three vertices")
    }

    /// All three non-loop adjacencies toggled.
    pub fn toggled(&self) -> Self {
        Self::new(self.edges ^ 7, self.loops)
    }

    /// All three loops toggled.
    pub fn loop_toggled(&self) -> Self {
        Self::new(self.edges, self.loops ^ 7)
    }

    pub fn edge_count(&self) -> u32 {
        self.edges.count_ones()
    }

    fn form(&self) -> CanonicalForm {
        canonical_form_capped(&self.graph(), 3).expect("three vertices")
    }
}

/// Entries in the order `i` to `vi`. `i`/`ii`, `iii`/`iv` and `v`/`vi` are the
/// loop-toggle pairs coming from the two triangle orientations.
pub const CONFIG_TABLE: [TriangleConfig; 6] = [
    // i: path u-v-w, all loops
    TriangleConfig::new(0b101, 0b111),
    // ii: path u-v-w, no loops
    TriangleConfig::new(0b101, 0b000),
    // iii: path centred at u, loops at u and v
    TriangleConfig::new(0b011, 0b011),
    // iv: path centred at u, loop at w
    TriangleConfig::new(0b011, 0b100),
    // v: triangle, loops at v and w
    TriangleConfig::new(0b111, 0b110),
    // vi: triangle, loop at u
    TriangleConfig::new(0b111, 0b001),
];

pub const NUMERALS: [&str; 6] = ["i", "ii", "iii", "iv", "v", "vi"];

/// Every ambient graph in which a vertex outside the triple `{0, 1, 2}`
/// attaches to none or exactly two of it, with up to `max_outside` outside
/// vertices.
fn extensions(h: &LoopedGraph, max_outside: usize) -> Vec<LoopedGraph> {
    const ATTACH: [u64; 4] = [0b000, 0b011, 0b101, 0b110];
    let mut out = Vec::new();
    for k in 1..=max_outside {
        let outside_pairs = k * (k - 1) / 2;
        let choices = 8usize.pow(k as u32);
        for c in 0..choices {
            for inner in 0u64..(1 << outside_pairs) {
                let mut g = h.clone();
                let mut code = c;
                let mut bit = 0;
                for j in 0..k {
                    let (attach, looped) = (ATTACH[code % 4], (code / 4) % 2 == 1);
                    code /= 8;
                    let mut nbhd = attach;
                    for prev in 0..j {
                        if inner >> bit & 1 == 1 {
                            nbhd |= 1 << (3 + prev);
                        }
                        bit += 1;
                    }
                    g.add_vertex(nbhd, looped).expect("at most six vertices");
                }
                out.push(g);
            }
        }
    }
    out
}

fn same_reduced(a: &LoopedGraph, b: &LoopedGraph) -> bool {
    let ra = bracket(a).reduce_single().expect("bracket variables");
    let rb = bracket(b).reduce_single().expect("bracket variables");
    ra == rb
}

/// Whether `<G> = <G'>` for `h` against its toggle, bare and inside every
/// extension with at most `max_outside` outside vertices.
pub fn config_pair_survives(h: TriangleConfig, max_outside: usize) -> bool {
    let g = h.graph();
    let mut t = g.clone();
    for (a, b) in PAIRS {
        t.toggle_edge(a, b);
    }
    if !same_reduced(&g, &t) {
        return false;
    }
    let ext_g = extensions(&g, max_outside);
    let ext_t = extensions(&t, max_outside);
    ext_g.par_iter().zip(ext_t.par_iter()).all(|(x, y)| same_reduced(x, y))
}

/// Number of outside vertices used by [`derive_config_table`].
pub const ORACLE_OUTSIDE: usize = 3;

/// Reconstructs the Ω3 table from scratch: every isomorphism class of looped
/// three-vertex graphs is paired with its edge toggle, and a pair survives when
/// the reduced bracket cannot tell the two apart, bare or inside any ambient
/// graph satisfying the 0-or-2 attachment rule. The survivors must be exactly
/// the pairs generated by [`CONFIG_TABLE`].
pub fn derive_config_table() -> Result<Vec<TriangleConfig>, ReidemeisterError> {
    let mut reps: Vec<TriangleConfig> = Vec::new();
    let mut seen = BTreeSet::new();
    for edges in 0..8u8 {
        for loops in 0..8u8 {
            let c = TriangleConfig::new(edges, loops);
            if seen.insert(c.form()) {
                reps.push(c);
            }
        }
    }
    if reps.len() != 20 {
        return Err(ReidemeisterError::Invariant(format!("expected 20 three-vertex classes, found {}", reps.len())));
    }
    let mut pairs = BTreeSet::new();
    for c in &reps {
        let (a, b) = (c.form(), c.toggled().form());
        pairs.insert(if a <= b { (a, b, *c) } else { (b, a, c.toggled()) });
    }
    let mut dedup = BTreeSet::new();
    let pairs: Vec<TriangleConfig> =
        pairs.into_iter().filter(|(a, b, _)| dedup.insert((a.clone(), b.clone()))).map(|(_, _, c)| c).collect();
    if pairs.len() != 10 {
        return Err(ReidemeisterError::Invariant(format!("expected 10 toggle pairs, found {}", pairs.len())));
    }
    let survivors: Vec<TriangleConfig> =
        pairs.into_iter().filter(|&c| config_pair_survives(c, ORACLE_OUTSIDE)).collect();
    if survivors.len() != 6 {
        return Err(ReidemeisterError::Invariant(format!(
            "{} toggle pairs survive the oracle, expected 6",
            survivors.len()
        )));
    }
    let pair_key = |c: &TriangleConfig| {
        let (a, b) = (c.form(), c.toggled().form());
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    };
    let found: BTreeSet<_> = survivors.iter().map(pair_key).collect();
    let expected: BTreeSet<_> = CONFIG_TABLE.iter().map(pair_key).collect();
    if found != expected {
        return Err(ReidemeisterError::Invariant("surviving toggle pairs differ from the configuration table".into()));
    }
    Ok(CONFIG_TABLE.to_vec())
}

/// Index into [`CONFIG_TABLE`] and whether the configuration is edge-toggled.
pub type ConfigRef = (usize, bool);

/// The eight Gauss-word patterns of a Reidemeister triangle, each with the
/// configuration it produces for a positive and for a negative triangle
/// (table index, toggled?).
pub const TRIANGLE_WORDS: [(&str, ConfigRef, ConfigRef); 8] = [
    ("ABACBC", (2, false), (3, false)),
    ("ABACCB", (1, true), (0, true)),
    ("ABBCAC", (2, true), (3, true)),
    ("ABBCCA", (4, true), (5, true)),
    ("ABCABC", (4, false), (5, false)),
    ("ABCACB", (2, false), (3, false)),
    ("ABCBAC", (1, false), (0, false)),
    ("ABCBCA", (2, true), (3, true)),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordCheck {
    pub word: String,
    pub transposed: String,
    pub edges: u32,
    pub expected_edges: u32,
    pub transposed_edges: u32,
}

fn chord_edges(word: &str) -> u32 {
    let text: Vec<String> = word.chars().map(|c| format!("{c}+")).collect();
    let code = parse_gauss(&text.join(" ")).expect("double-occurrence word");
    interlacement_graph(&code).edge_count() as u32
}

fn transpose(word: &str) -> String {
    let chars: Vec<char> = word.chars().collect();
    chars.chunks(2).flat_map(|p| p.iter().rev()).collect()
}

fn expected_edges((index, toggled): (usize, bool)) -> u32 {
    let c = CONFIG_TABLE[index];
    if toggled {
        c.toggled().edge_count()
    } else {
        c.edge_count()
    }
}

/// Checks that each word's chord interlacement has the shape of its listed
/// configuration and that transposing letter pairs toggles that shape. On three
/// vertices the shape is determined by the edge count.
pub fn word_correspondence_check() -> Result<Vec<WordCheck>, ReidemeisterError> {
    let mut report = Vec::new();
    for (word, positive, negative) in TRIANGLE_WORDS {
        let edges = chord_edges(word);
        let transposed = transpose(word);
        let transposed_edges = chord_edges(&transposed);
        let expected = expected_edges(positive);
        if edges != expected || expected_edges(negative) != expected || transposed_edges != 3 - expected {
            return Err(ReidemeisterError::Invariant(format!(
                "word {word}: {edges} chord edges, expected {expected}; transposed {transposed} has {transposed_edges}"
            )));
        }
        report.push(WordCheck {
            word: word.to_string(),
            transposed,
            edges,
            expected_edges: expected,
            transposed_edges,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_closed_under_loop_toggling() {
        let forms: BTreeSet<_> = CONFIG_TABLE.iter().map(|c| c.form()).collect();
        for c in CONFIG_TABLE {
            assert!(forms.contains(&c.loop_toggled().form()));
        }
        assert_eq!(forms.len(), 6);
    }

    #[test]
    fn words() {
        let report = word_correspondence_check().unwrap();
        assert_eq!(report.len(), 8);
        let find = |w: &str| report.iter().find(|r| r.word == w).unwrap().edges;
        assert_eq!(find("ABCABC"), 3);
        assert_eq!(find("ABACBC"), 2);
        assert_eq!(find("ABBCCA"), 0);
    }

    #[test]
    fn unlisted_configuration_fails() {
        // path with a single loop at its centre
        assert!(!config_pair_survives(TriangleConfig::new(0b101, 0b010), ORACLE_OUTSIDE));
    }

    #[test]
    fn oracle_reproduces_table() {
        assert_eq!(derive_config_table().unwrap(), CONFIG_TABLE);
    }

    #[test]
    fn labelled_survivors() {
        // twelve classes, each counted with its distinct labellings
        let survivors = (0..8u8)
            .flat_map(|e| (0..8u8).map(move |l| TriangleConfig::new(e, l)))
            .filter(|&c| config_pair_survives(c, 2))
            .count();
        assert_eq!(survivors, 48);
    }

    #[test]
    fn extension_count() {
        let g = CONFIG_TABLE[0].graph();
        assert_eq!(extensions(&g, 2).len(), 8 + 128);
    }
}
