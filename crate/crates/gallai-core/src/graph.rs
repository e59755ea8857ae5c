//! Colored complete graphs, digraphs, vertex partitions, and edit transcripts.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// 1-based color index.
pub type Color = u8;

/// Errors raised by graph construction, mutation, and counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// Vertex count below the operation's minimum.
    TooFewVertices { n: usize, need: usize },
    /// Color count k outside the supported range for construction (k ≥ 2).
    BadColorCount { k: Color },
    /// Operation requires exactly 3 colors.
    UnsupportedColorCount { k: Color },
    /// Color table length does not match n(n-1)/2.
    TableSize { expected: usize, got: usize },
    ColorOutOfRange { color: Color, k: Color },
    VertexOutOfRange { v: usize, n: usize },
    SelfPair { v: usize },
    DuplicateEdge { u: usize, v: usize },
    MissingEdge { u: usize, v: usize },
    /// A pair occurs twice in one transcript.
    DuplicatePair { u: usize, v: usize },
    /// Transcript's recorded old color disagrees with the host at apply time.
    StaleEdit { u: usize, v: usize, expected: Color, found: Color },
    EmptyPart,
    OverlappingParts { v: usize },
    IncompleteCover { missing: usize },
    /// Two structures that must agree on vertex count do not.
    SizeMismatch { expected: usize, got: usize },
    /// Generator or config parameters that cannot produce anything.
    DegenerateParams { reason: &'static str },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::TooFewVertices { n, need } => {
                write!(f, "need at least {need} vertices, got {n}")
            }
            GraphError::BadColorCount { k } => write!(f, "color count {k} not supported (k >= 2)"),
            GraphError::UnsupportedColorCount { k } => {
                write!(f, "operation requires exactly 3 colors, graph has {k}")
            }
            GraphError::TableSize { expected, got } => {
                write!(f, "color table has {got} entries, expected {expected}")
            }
            GraphError::ColorOutOfRange { color, k } => {
                write!(f, "color {color} outside [1..{k}]")
            }
            GraphError::VertexOutOfRange { v, n } => write!(f, "vertex {v} outside [0..{n})"),
            GraphError::SelfPair { v } => write!(f, "self pair at vertex {v}"),
            GraphError::DuplicateEdge { u, v } => write!(f, "duplicate edge ({u},{v})"),
            GraphError::MissingEdge { u, v } => write!(f, "edge ({u},{v}) not present"),
            GraphError::DuplicatePair { u, v } => {
                write!(f, "pair {{{u},{v}}} recorded twice in transcript")
            }
            GraphError::StaleEdit { u, v, expected, found } => write!(
                f,
                "edit on pair {{{u},{v}}} expected old color {expected}, host has {found}"
            ),
            GraphError::EmptyPart => write!(f, "partition contains an empty part"),
            GraphError::OverlappingParts { v } => {
                write!(f, "vertex {v} appears in more than one part")
            }
            GraphError::IncompleteCover { missing } => {
                write!(f, "vertex {missing} not covered by any part")
            }
            GraphError::SizeMismatch { expected, got } => {
                write!(f, "vertex count mismatch: expected {expected}, got {got}")
            }
            GraphError::DegenerateParams { reason } => write!(f, "degenerate parameters: {reason}"),
        }
    }
}

impl core::error::Error for GraphError {}

/// Index of the unordered pair {u,v} with u < v < n in the row-major
/// upper-triangle layout: u·n − u(u+1)/2 + (v − u − 1).
#[inline]
pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Complete graph on n vertices whose every unordered pair carries a color
/// in [1..k], stored as a dense upper-triangle table.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredCompleteGraph {
    n: usize,
    k: Color,
    colors: Vec<Color>,
}

impl fmt::Debug for ColoredCompleteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredCompleteGraph(n={}, k={})", self.n, self.k)
    }
}

impl ColoredCompleteGraph {
    pub fn from_colors(n: usize, k: Color, colors: Vec<Color>) -> Result<Self, GraphError> {
        if n < 1 {
            return Err(GraphError::TooFewVertices { n, need: 1 });
        }
        if k < 2 {
            return Err(GraphError::BadColorCount { k });
        }
        let expected = n * (n - 1) / 2;
        if colors.len() != expected {
            return Err(GraphError::TableSize { expected, got: colors.len() });
        }
        if let Some(&c) = colors.iter().find(|&&c| c < 1 || c > k) {
            return Err(GraphError::ColorOutOfRange { color: c, k });
        }
        Ok(ColoredCompleteGraph { n, k, colors })
    }

    /// All pairs colored `c`.
    pub fn uniform(n: usize, k: Color, c: Color) -> Result<Self, GraphError> {
        if c < 1 || c > k {
            return Err(GraphError::ColorOutOfRange { color: c, k });
        }
        Self::from_colors(n, k, vec![c; n * (n - 1) / 2])
    }

    /// Builds the table by calling `f(u, v)` for every pair u < v.
    pub fn from_fn(
        n: usize,
        k: Color,
        mut f: impl FnMut(usize, usize) -> Color,
    ) -> Result<Self, GraphError> {
        if n < 1 {
            return Err(GraphError::TooFewVertices { n, need: 1 });
        }
        let mut colors = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                colors.push(f(u, v));
            }
        }
        Self::from_colors(n, k, colors)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        assert!(u != v, "self pair at vertex {u}");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.colors[pair_index(self.n, a, b)]
    }

    pub(crate) fn set_color(&mut self, u: usize, v: usize, c: Color) {
        debug_assert!(c >= 1 && c <= self.k);
        assert!(u != v, "self pair at vertex {u}");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let idx = pair_index(self.n, a, b);
        self.colors[idx] = c;
    }

    /// d_c(x): number of pairs at `x` colored `c`.
    pub fn color_degree(&self, x: usize, c: Color) -> usize {
        (0..self.n).filter(|&y| y != x && self.color(x, y) == c).count()
    }

    /// Edge count of each color; index c−1.
    pub fn edge_color_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.k as usize];
        for &c in &self.colors {
            counts[c as usize - 1] += 1;
        }
        counts
    }

    /// Induced colored complete graph on `verts`; vertex i of the result is
    /// `verts[i]`. Vertices must be distinct and in range.
    pub fn induced(&self, verts: &[usize]) -> Result<Self, GraphError> {
        if verts.is_empty() {
            return Err(GraphError::TooFewVertices { n: 0, need: 1 });
        }
        let mut seen = vec![false; self.n];
        for &v in verts {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { v, n: self.n });
            }
            if seen[v] {
                return Err(GraphError::OverlappingParts { v });
            }
            seen[v] = true;
        }
        Self::from_fn(verts.len(), self.k, |u, v| self.color(verts[u], verts[v]))
    }
}

/// Directed graph; anti-parallel pairs allowed, parallel edges are not.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    words: usize,
    out: Vec<u64>,
    m: usize,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, m={})", self.n, self.m)
    }
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Digraph { n, words, out: vec![0; n * words], m: 0 }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut d = Digraph::new(n);
        for &(u, v) in edges {
            d.add_edge(u, v)?;
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfPair { v: u });
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge { u, v });
        }
        self.out[u * self.words + v / 64] |= 1u64 << (v % 64);
        self.m += 1;
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.out[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Replaces edge (u,v) by (v,u). Fails if (v,u) already exists, because
    /// that would create a parallel pair.
    pub fn reverse_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge { u, v });
        }
        if self.has_edge(v, u) {
            return Err(GraphError::DuplicateEdge { u: v, v: u });
        }
        self.out[u * self.words + v / 64] &= !(1u64 << (v % 64));
        self.m -= 1;
        self.add_edge(v, u)
    }

    /// Edges sorted by (source, target).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Induced subdigraph on `verts`; vertex i of the result is `verts[i]`.
    pub fn induced(&self, verts: &[usize]) -> Result<Self, GraphError> {
        let mut seen = vec![false; self.n];
        for &v in verts {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { v, n: self.n });
            }
            if seen[v] {
                return Err(GraphError::OverlappingParts { v });
            }
            seen[v] = true;
        }
        let mut d = Digraph::new(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if i != j && self.has_edge(u, v) {
                    d.add_edge(i, j)?;
                }
            }
        }
        Ok(d)
    }
}

/// C(D): the 3-colored complete graph whose pair {u,v} records how many
/// directed edges join u and v (0, 1, or 2 mapped to colors 1, 2, 3).
pub fn color_projection(d: &Digraph) -> Result<ColoredCompleteGraph, GraphError> {
    ColoredCompleteGraph::from_fn(d.n(), 3, |u, v| {
        1 + d.has_edge(u, v) as Color + d.has_edge(v, u) as Color
    })
}

/// One recoloring of an unordered pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edit {
    pub u: usize,
    pub v: usize,
    pub old: Color,
    pub new: Color,
}

/// Ordered list of pair recolorings; each pair appears at most once.
#[derive(Clone, Debug, Default)]
pub struct EditTranscript {
    edits: Vec<Edit>,
    seen: BTreeSet<(usize, usize)>,
}

impl PartialEq for EditTranscript {
    fn eq(&self, other: &Self) -> bool {
        self.edits == other.edits
    }
}

impl Eq for EditTranscript {}

impl EditTranscript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, u: usize, v: usize, old: Color, new: Color) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfPair { v: u });
        }
        let key = if u < v { (u, v) } else { (v, u) };
        if !self.seen.insert(key) {
            return Err(GraphError::DuplicatePair { u: key.0, v: key.1 });
        }
        self.edits.push(Edit { u: key.0, v: key.1, old, new });
        Ok(())
    }

    pub fn edits(&self) -> &[Edit] {
        &self.edits
    }

    pub fn len(&self) -> usize {
        self.edits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edits.is_empty()
    }

    /// Number of entries that actually change the color.
    pub fn cost(&self) -> u64 {
        self.edits.iter().filter(|e| e.old != e.new).count() as u64
    }

    /// Transcript undoing this one when applied to the edited graph.
    pub fn inverted(&self) -> EditTranscript {
        let mut inv = EditTranscript::new();
        for e in self.edits.iter().rev() {
            inv.record(e.u, e.v, e.new, e.old).expect("pairs unique by construction");
        }
        inv
    }

    /// Appends all edits of `other`; pairs must stay disjoint.
    pub fn extend(&mut self, other: &EditTranscript) -> Result<(), GraphError> {
        for e in other.edits() {
            self.record(e.u, e.v, e.old, e.new)?;
        }
        Ok(())
    }
}

/// Applies the transcript in order, checking every recorded old color against
/// the host. Returns the edited graph; the host is unchanged.
pub fn apply_edits(
    g: &ColoredCompleteGraph,
    t: &EditTranscript,
) -> Result<ColoredCompleteGraph, GraphError> {
    let mut out = g.clone();
    for e in t.edits() {
        if e.u >= out.n() || e.v >= out.n() {
            return Err(GraphError::VertexOutOfRange { v: e.u.max(e.v), n: out.n() });
        }
        let found = out.color(e.u, e.v);
        if found != e.old {
            return Err(GraphError::StaleEdit { u: e.u, v: e.v, expected: e.old, found });
        }
        if e.new < 1 || e.new > out.k() {
            return Err(GraphError::ColorOutOfRange { color: e.new, k: out.k() });
        }
        out.set_color(e.u, e.v, e.new);
    }
    Ok(out)
}

/// Ordered list of disjoint nonempty vertex sets covering [0..n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    n: usize,
    parts: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let mut seen = vec![false; n];
        let mut covered = 0usize;
        for part in &parts {
            if part.is_empty() {
                return Err(GraphError::EmptyPart);
            }
            for &v in part {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { v, n });
                }
                if seen[v] {
                    return Err(GraphError::OverlappingParts { v });
                }
                seen[v] = true;
                covered += 1;
            }
        }
        if covered != n {
            let missing = seen.iter().position(|&s| !s).unwrap_or(n);
            return Err(GraphError::IncompleteCover { missing });
        }
        let mut parts = parts;
        for part in &mut parts {
            part.sort_unstable();
        }
        Ok(VertexPartition { n, parts })
    }

    pub fn singletons(n: usize) -> Self {
        VertexPartition { n, parts: (0..n).map(|v| vec![v]).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn part_sizes(&self) -> Vec<u64> {
        self.parts.iter().map(|p| p.len() as u64).collect()
    }

    /// Lookup table: part index of each vertex.
    pub fn part_of(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.n];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                out[v] = i;
            }
        }
        out
    }

    /// e(P) = Σ_{i<j} |V_i||V_j|.
    pub fn cross_pair_count(&self) -> u64 {
        let total = cross_pairs_of_sizes(&self.part_sizes());
        debug_assert!(total <= u64::MAX as u128);
        total as u64
    }
}

/// Σ_{i<j} a_i a_j computed as (m² − Σ a_i²)/2 in wide arithmetic.
pub fn cross_pairs_of_sizes(sizes: &[u64]) -> u128 {
    let m: u128 = sizes.iter().map(|&s| s as u128).sum();
    let sq: u128 = sizes.iter().map(|&s| (s as u128) * (s as u128)).sum();
    (m * m - sq) / 2
}
