//! Looped graphs: a simple adjacency relation plus one loop flag per vertex.
//!
//! Adjacency is stored as one `u64` bit-row per vertex, the same layout the
//! GF(2) module uses, so `A(G) + Δ` is a row copy followed by a diagonal XOR.
//! Loops never appear in the rows; they live in a separate bit mask.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest vertex count a [`LoopedGraph`] can hold (one machine word per row).
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("pivot needs two distinct vertices, got {0} twice")]
    SameVertex(usize),
    #[error("graphs are limited to {MAX_VERTICES} vertices, got {0}")]
    TooManyVertices(usize),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: duplicate loop at {v}")]
    DuplicateLoop { line: usize, v: usize },
    #[error("invalid vertex set: {0}")]
    InvalidSet(String),
    #[error("canonical form is capped at {cap} vertices, got {n}")]
    CapExceeded { n: usize, cap: usize },
    #[error("family {kind} is not defined for n = {n}")]
    InvalidFamily { kind: &'static str, n: usize },
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A finite looped graph on the dense vertex set `0..n`.
#[derive(Clone)]
pub struct LoopedGraph {
    n: usize,
    rows: Vec<u64>,
    loops: u64,
    labels: Option<Vec<String>>,
}

impl PartialEq for LoopedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows && self.loops == other.loops
    }
}

impl Eq for LoopedGraph {}

impl std::hash::Hash for LoopedGraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.rows.hash(state);
        self.loops.hash(state);
    }
}

impl fmt::Debug for LoopedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LoopedGraph(n={}, edges={:?}, loops={:?})", self.n, self.edges(), self.loop_vertices())
    }
}

impl LoopedGraph {
    /// The edgeless, loopless graph `E_n`.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Self { n, rows: vec![0; n], loops: 0, labels: None })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)], loops: &[usize]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.check(u)?;
            g.check(v)?;
            if u == v {
                return Err(GraphError::SameVertex(u));
            }
            g.set_edge(u, v, true);
        }
        for &v in loops {
            g.check(v)?;
            g.set_loop(v, true);
        }
        Ok(g)
    }

    /// Builds a graph from raw bit-rows and a loop mask. Rows must be symmetric
    /// with a zero diagonal.
    pub fn from_rows(rows: Vec<u64>, loops: u64) -> Result<Self, GraphError> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mask = low_mask(n);
        for (i, &r) in rows.iter().enumerate() {
            if r & !mask != 0 || r >> i & 1 == 1 {
                return Err(GraphError::InvalidSet(format!("row {i} has bits outside the off-diagonal range")));
            }
            let mut bits = r;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if rows[j] >> i & 1 == 0 {
                    return Err(GraphError::InvalidSet(format!("rows {i} and {j} are not symmetric")));
                }
            }
        }
        Ok(Self { n, rows, loops: loops & mask, labels: None })
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Neighbourhood of `v` as a bit mask (never contains `v` itself).
    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn loop_mask(&self) -> u64 {
        self.loops
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        self.loops >> v & 1 == 1
    }

    pub fn loop_count(&self) -> usize {
        self.loops.count_ones() as usize
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as sorted pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let mut bits = self.rows[u] & !low_mask(u + 1);
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out.push((u, v));
            }
        }
        out
    }

    pub fn loop_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.has_loop(v)).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.n {
            self.labels = Some(labels);
        }
        self
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        debug_assert_ne!(u, v);
        if on {
            self.rows[u] |= 1 << v;
            self.rows[v] |= 1 << u;
        } else {
            self.rows[u] &= !(1 << v);
            self.rows[v] &= !(1 << u);
        }
    }

    pub(crate) fn toggle_edge(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        self.rows[u] ^= 1 << v;
        self.rows[v] ^= 1 << u;
    }

    pub(crate) fn set_loop(&mut self, v: usize, on: bool) {
        if on {
            self.loops |= 1 << v;
        } else {
            self.loops &= !(1 << v);
        }
    }

    /// Local complementation `G^a`: toggles every adjacency `{x, y}` with
    /// `x, y ∈ N(a)`, including loops when `x = y`.
    pub fn local_complement(&self, a: usize) -> Result<Self, GraphError> {
        self.check(a)?;
        let mut g = self.clone();
        let nbhd = self.rows[a];
        let mut bits = nbhd;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            g.rows[x] ^= nbhd & !(1 << x);
        }
        g.loops ^= nbhd;
        Ok(g)
    }

    /// Pivot `G^{ab}`: toggles `{x, y}` for `x, y ∉ {a, b}`, `x ∈ N(a)`,
    /// `y ∈ N(b)`, unless both `x ∈ N(b)` and `y ∈ N(a)`. Loops never change.
    pub fn pivot(&self, a: usize, b: usize) -> Result<Self, GraphError> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(GraphError::SameVertex(a));
        }
        let outside = !((1u64 << a) | (1u64 << b));
        let na = self.rows[a] & outside;
        let nb = self.rows[b] & outside;
        let both = na & nb;
        let only_a = na & !nb;
        let only_b = nb & !na;
        let mut g = self.clone();
        // Cross-class pairs among the three neighbour classes.
        let mut bits = na | nb;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let xb = 1u64 << x;
            let toggle = if both & xb != 0 {
                only_a | only_b
            } else if only_a & xb != 0 {
                both | only_b
            } else {
                both | only_a
            };
            g.rows[x] ^= toggle;
        }
        Ok(g)
    }

    /// Removes `v` and reindexes the remaining vertices densely.
    pub fn delete_vertex(&self, v: usize) -> Result<Self, GraphError> {
        self.check(v)?;
        Ok(self.delete_mask(1 << v))
    }

    /// Removes every vertex in `mask`.
    pub fn delete_mask(&self, mask: u64) -> Self {
        let keep = low_mask(self.n) & !mask;
        self.induced_by_mask(keep)
    }

    pub fn toggle_loop(&self, v: usize) -> Result<Self, GraphError> {
        self.check(v)?;
        let mut g = self.clone();
        g.loops ^= 1 << v;
        Ok(g)
    }

    /// `G + I`: every loop flag flipped.
    pub fn toggle_all_loops(&self) -> Self {
        let mut g = self.clone();
        g.loops ^= low_mask(self.n);
        g
    }

    /// `G + Δ` for a diagonal mask `Δ`.
    pub fn toggle_loops_mask(&self, mask: u64) -> Self {
        let mut g = self.clone();
        g.loops ^= mask & low_mask(self.n);
        g
    }

    /// Disjoint union; `other`'s vertices are appended after `self`'s.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let shift = self.n;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << shift));
        let loops = self.loops | (other.loops << shift);
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Ok(Self { n, rows, loops, labels })
    }

    /// Induced subgraph `G[S]`, vertices kept in increasing order.
    pub fn induced_subgraph(&self, set: &[usize]) -> Result<Self, GraphError> {
        let mut mask = 0u64;
        for &v in set {
            self.check(v)?;
            if mask >> v & 1 == 1 {
                return Err(GraphError::InvalidSet(format!("vertex {v} listed twice")));
            }
            mask |= 1 << v;
        }
        Ok(self.induced_by_mask(mask))
    }

    pub fn induced_by_mask(&self, mask: u64) -> Self {
        let mask = mask & low_mask(self.n);
        let kept: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        let rows = kept.iter().map(|&v| compress(self.rows[v], mask)).collect();
        let loops = compress(self.loops, mask);
        let labels = self.labels.as_ref().map(|l| kept.iter().map(|&v| l[v].clone()).collect());
        Self { n: kept.len(), rows, loops, labels }
    }

    /// Appends a vertex with the given neighbourhood and loop flag; returns its index.
    pub fn add_vertex(&mut self, nbhd: u64, looped: bool) -> Result<usize, GraphError> {
        if self.n >= MAX_VERTICES {
            return Err(GraphError::TooManyVertices(self.n + 1));
        }
        let nbhd = nbhd & low_mask(self.n);
        let v = self.n;
        self.n += 1;
        self.rows.push(nbhd);
        let mut bits = nbhd;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            self.rows[x] |= 1 << v;
        }
        if looped {
            self.loops |= 1 << v;
        }
        self.labels = None;
        Ok(v)
    }

    /// Relabels by `perm`: vertex `v` of `self` becomes vertex `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u64; self.n];
        let mut loops = 0u64;
        for u in 0..self.n {
            let mut bits = self.rows[u];
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                rows[perm[u]] |= 1 << perm[v];
            }
            if self.has_loop(u) {
                loops |= 1 << perm[u];
            }
        }
        Self { n: self.n, rows, loops, labels: None }
    }

    /// Connected components (loops ignored), each as a vertex mask, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                let mut bits = frontier;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    next |= self.rows[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn family(kind: Family, n: usize) -> Result<Self, GraphError> {
        let invalid = || GraphError::InvalidFamily { kind: kind.name(), n };
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut g = Self::empty(n)?;
        match kind {
            Family::Edgeless => {}
            Family::Complete | Family::CompleteLooped => {
                for u in 0..n {
                    g.rows[u] = low_mask(n) & !(1 << u);
                }
                if kind == Family::CompleteLooped {
                    g.loops = low_mask(n);
                }
            }
            Family::Path | Family::Lollipop => {
                if kind == Family::Lollipop && n == 0 {
                    return Err(invalid());
                }
                for u in 1..n {
                    g.set_edge(u - 1, u, true);
                }
                if kind == Family::Lollipop {
                    g.set_loop(0, true);
                }
            }
        }
        Ok(g)
    }
}

#[inline]
fn compress(bits: u64, mask: u64) -> u64 {
    // Software PEXT: gathers the bits of `bits` selected by `mask` into the low end.
    let mut out = 0u64;
    let mut m = mask;
    let mut k = 0;
    while m != 0 {
        let i = m.trailing_zeros();
        m &= m - 1;
        out |= (bits >> i & 1) << k;
        k += 1;
    }
    out
}

/// Named graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `E_n`
    Edgeless,
    /// `K_n`
    Complete,
    /// `P_n`, the simple path on `n` vertices.
    Path,
    /// `L_n`: `P_n` with a loop on one end vertex.
    Lollipop,
    /// `K_n + I`: complete graph with every vertex looped.
    CompleteLooped,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Edgeless => "E",
            Family::Complete => "K",
            Family::Path => "P",
            Family::Lollipop => "L",
            Family::CompleteLooped => "K+I",
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "E" => Ok(Family::Edgeless),
            "K" => Ok(Family::Complete),
            "P" => Ok(Family::Path),
            "L" => Ok(Family::Lollipop),
            "K+I" | "KI" => Ok(Family::CompleteLooped),
            _ => Err(format!("unknown graph family `{s}`")),
        }
    }
}

/// Parses the `.lg` text format:
///
/// ```text
/// lg <n>
/// e <u> <v>
/// l <v>
/// ```
///
/// `#` starts a comment; edge and loop lines may come in any order.
pub fn parse_graph(text: &str) -> Result<LoopedGraph, GraphError> {
    let mut graph: Option<LoopedGraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |msg: &str| GraphError::Syntax { line: line_no, msg: msg.to_string() };
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap_or_default();
        let nums: Vec<usize> = toks
            .map(|t| t.parse::<usize>().map_err(|_| syntax(&format!("expected a vertex index, found `{t}`"))))
            .collect::<Result<_, _>>()?;
        match (head, graph.as_mut()) {
            ("lg", None) => {
                let [n] = nums[..] else {
                    return Err(syntax("header must be `lg <n>`"));
                };
                if n > MAX_VERTICES {
                    return Err(GraphError::TooManyVertices(n));
                }
                graph = Some(LoopedGraph::empty(n)?);
            }
            ("lg", Some(_)) => return Err(syntax("duplicate `lg` header")),
            (_, None) => return Err(syntax("missing `lg <n>` header")),
            ("e", Some(g)) => {
                let [u, v] = nums[..] else {
                    return Err(syntax("edge line must be `e <u> <v>`"));
                };
                g.check(u).and(g.check(v)).map_err(|e| syntax(&e.to_string()))?;
                if u == v {
                    return Err(syntax("edge endpoints must differ; use `l <v>` for loops"));
                }
                if g.has_edge(u, v) {
                    return Err(GraphError::DuplicateEdge { line: line_no, u: u.min(v), v: u.max(v) });
                }
                g.set_edge(u, v, true);
            }
            ("l", Some(g)) => {
                let [v] = nums[..] else {
                    return Err(syntax("loop line must be `l <v>`"));
                };
                g.check(v).map_err(|e| syntax(&e.to_string()))?;
                if g.has_loop(v) {
                    return Err(GraphError::DuplicateLoop { line: line_no, v });
                }
                g.set_loop(v, true);
            }
            (other, Some(_)) => return Err(syntax(&format!("unknown directive `{other}`"))),
        }
    }
    graph.ok_or(GraphError::Syntax { line: 0, msg: "empty input".into() })
}

/// Canonical `.lg` text: header, sorted edges, sorted loops.
pub fn print_graph(g: &LoopedGraph) -> String {
    let mut out = format!("lg {}\n", g.n);
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    for v in g.loop_vertices() {
        out.push_str(&format!("l {v}\n"));
    }
    out
}

impl fmt::Display for LoopedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_graph(self))
    }
}

impl FromStr for LoopedGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_graph(s)
    }
}
