//! Exact structure of rainbow-triangle-free 3-colorings: monochromatic
//! partitions, decomposition trees, composition, and instance generation.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting::find_rainbow_triangle;
use crate::graph::{pair_index, Color, ColoredCompleteGraph, GraphError, VertexPartition};

/// Finds an (a,b)-monochromatic partition with at least two parts: every
/// cross bipartite graph between two parts is entirely color a or entirely
/// color b. Returns `None` when no such partition exists for any color pair,
/// which can only happen when the graph has a rainbow triangle.
///
/// Candidate excluded colors c are tried in ascending order; the first that
/// works wins. For each c, parts are seeded as the connected components of
/// the color-c graph and violating part pairs (cross graph not monochromatic)
/// are merged, lowest-indexed pair first, until stable.
pub fn monochromatic_partition(
    g: &ColoredCompleteGraph,
) -> Result<Option<(Color, Color, VertexPartition)>, GraphError> {
    if g.k() != 3 {
        return Err(GraphError::UnsupportedColorCount { k: g.k() });
    }
    if g.n() < 2 {
        return Err(GraphError::TooFewVertices { n: g.n(), need: 2 });
    }
    for c in 1..=3 {
        if let Some(parts) = partition_excluding(g, c) {
            let (a, b) = match c {
                1 => (2, 3),
                2 => (1, 3),
                _ => (1, 2),
            };
            return Ok(Some((a, b, VertexPartition::new(g.n(), parts)?)));
        }
    }
    Ok(None)
}

/// Seeds parts as color-c components, then merges until every cross pair is
/// monochromatic. Cross edges never carry color c after seeding, so a stable
/// state is monochromatic in one of the other two colors per pair.
fn partition_excluding(g: &ColoredCompleteGraph, c: Color) -> Option<Vec<Vec<usize>>> {
    let n = g.n();
    let mut comp = vec![usize::MAX; n];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = parts.len();
        comp[start] = id;
        let mut stack = vec![start];
        let mut members = vec![start];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if v != u && comp[v] == usize::MAX && g.color(u, v) == c {
                    comp[v] = id;
                    stack.push(v);
                    members.push(v);
                }
            }
        }
        members.sort_unstable();
        parts.push(members);
    }
    if parts.len() < 2 {
        return None;
    }

    // cross[i][j] = Some(color) when the (i,j) cross graph is monochromatic.
    let p0 = parts.len();
    let mut cross: Vec<Vec<Option<Color>>> = vec![vec![None; p0]; p0];
    for i in 0..p0 {
        for j in i + 1..p0 {
            cross[i][j] = cross_color(g, &parts[i], &parts[j]);
            cross[j][i] = cross[i][j];
        }
    }

    loop {
        let p = parts.len();
        let mut violating: Option<(usize, usize)> = None;
        'scan: for i in 0..p {
            for j in i + 1..p {
                if cross[i][j].is_none() {
                    violating = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((i, j)) = violating else {
            return Some(parts);
        };
        // Merge j into i. A merged cross stays monochromatic only when both
        // halves agree.
        let pj = parts.remove(j);
        parts[i].extend(pj);
        parts[i].sort_unstable();
        for l in 0..p {
            if l != i && l != j {
                cross[i][l] = match (cross[i][l], cross[j][l]) {
                    (Some(x), Some(y)) if x == y => Some(x),
                    _ => None,
                };
                cross[l][i] = cross[i][l];
            }
        }
        for row in cross.iter_mut() {
            row.remove(j);
        }
        cross.remove(j);
        if parts.len() < 2 {
            return None;
        }
    }
}

fn cross_color(g: &ColoredCompleteGraph, a: &[usize], b: &[usize]) -> Option<Color> {
    let c0 = g.color(a[0], b[0]);
    for &u in a {
        for &v in b {
            if g.color(u, v) != c0 {
                return None;
            }
        }
    }
    Some(c0)
}

/// Recursive decomposition of a rainbow-triangle-free coloring: an internal
/// node carries a color pair (a,b), at least two child subtrees, and one
/// cross color c_{i,j} ∈ {a,b} for each child pair; leaves carry vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GallaiTree {
    Leaf { vertex: usize },
    Node {
        pair: (Color, Color),
        children: Vec<GallaiTree>,
        /// Flat upper triangle over child indexes: entry for (i,j), i<j, at
        /// pair_index(children.len(), i, j).
        cross: Vec<Color>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeError {
    TooFewChildren { got: usize },
    BadColorPair { a: Color, b: Color },
    CrossColorOutsidePair { color: Color, a: Color, b: Color },
    CrossTableSize { expected: usize, got: usize },
    DuplicateLeaf { vertex: usize },
    /// Leaves must be exactly 0..n-1.
    LeafGap { missing: usize },
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::TooFewChildren { got } => {
                write!(f, "internal node has {got} children, need at least 2")
            }
            TreeError::BadColorPair { a, b } => write!(f, "invalid color pair ({a},{b})"),
            TreeError::CrossColorOutsidePair { color, a, b } => {
                write!(f, "cross color {color} outside node pair ({a},{b})")
            }
            TreeError::CrossTableSize { expected, got } => {
                write!(f, "cross table has {got} entries, expected {expected}")
            }
            TreeError::DuplicateLeaf { vertex } => write!(f, "vertex {vertex} appears twice"),
            TreeError::LeafGap { missing } => {
                write!(f, "leaves do not cover vertex {missing}")
            }
        }
    }
}

impl core::error::Error for TreeError {}

impl GallaiTree {
    pub fn leaf_count(&self) -> usize {
        match self {
            GallaiTree::Leaf { .. } => 1,
            GallaiTree::Node { children, .. } => children.iter().map(|c| c.leaf_count()).sum(),
        }
    }

    /// Leaf vertices in subtree order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.leaf_count());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            GallaiTree::Leaf { vertex } => out.push(*vertex),
            GallaiTree::Node { children, .. } => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    /// Checks all structural invariants; returns the vertex count.
    pub fn validate(&self) -> Result<usize, TreeError> {
        self.validate_shape()?;
        let mut leaves = self.leaves();
        leaves.sort_unstable();
        for (i, &v) in leaves.iter().enumerate() {
            if v < i {
                return Err(TreeError::DuplicateLeaf { vertex: v });
            }
            if v > i {
                return Err(TreeError::LeafGap { missing: i });
            }
        }
        Ok(leaves.len())
    }

    fn validate_shape(&self) -> Result<(), TreeError> {
        let GallaiTree::Node { pair: (a, b), children, cross } = self else {
            return Ok(());
        };
        let (a, b) = (*a, *b);
        if children.len() < 2 {
            return Err(TreeError::TooFewChildren { got: children.len() });
        }
        if a == b || !(1..=3).contains(&a) || !(1..=3).contains(&b) {
            return Err(TreeError::BadColorPair { a, b });
        }
        let expected = children.len() * (children.len() - 1) / 2;
        if cross.len() != expected {
            return Err(TreeError::CrossTableSize { expected, got: cross.len() });
        }
        if let Some(&c) = cross.iter().find(|&&c| c != a && c != b) {
            return Err(TreeError::CrossColorOutsidePair { color: c, a, b });
        }
        for child in children {
            child.validate_shape()?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecomposeError {
    /// The input is not rainbow-triangle-free; carries the first witness.
    RainbowTriangle { witness: (usize, usize, usize) },
    Graph(GraphError),
}

impl fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecomposeError::RainbowTriangle { witness: (u, v, w) } => {
                write!(f, "graph has a rainbow triangle on vertices ({u},{v},{w})")
            }
            DecomposeError::Graph(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for DecomposeError {}

impl From<GraphError> for DecomposeError {
    fn from(e: GraphError) -> Self {
        DecomposeError::Graph(e)
    }
}

/// Decomposes a rainbow-triangle-free 3-coloring by recursively applying
/// `monochromatic_partition` down to single vertices.
pub fn decompose(g: &ColoredCompleteGraph) -> Result<GallaiTree, DecomposeError> {
    if let Some(witness) = find_rainbow_triangle(g)? {
        return Err(DecomposeError::RainbowTriangle { witness });
    }
    let ids: Vec<usize> = (0..g.n()).collect();
    decompose_rec(g, &ids)
}

fn decompose_rec(g: &ColoredCompleteGraph, ids: &[usize]) -> Result<GallaiTree, DecomposeError> {
    if ids.len() == 1 {
        return Ok(GallaiTree::Leaf { vertex: ids[0] });
    }
    let sub = g.induced(ids)?;
    // A rainbow-free graph always admits a partition: induced subgraphs of a
    // rainbow-free graph are rainbow-free, and the finder is complete.
    let Some((a, b, partition)) = monochromatic_partition(&sub)? else {
        let witness = find_rainbow_triangle(&sub)?
            .map(|(u, v, w)| (ids[u], ids[v], ids[w]))
            .unwrap_or((0, 0, 0));
        return Err(DecomposeError::RainbowTriangle { witness });
    };
    let parts = partition.parts();
    let mut children = Vec::with_capacity(parts.len());
    for part in parts {
        let orig: Vec<usize> = part.iter().map(|&i| ids[i]).collect();
        children.push(decompose_rec(g, &orig)?);
    }
    let mut cross = Vec::with_capacity(parts.len() * (parts.len() - 1) / 2);
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            // Partition validity makes any representative pair exact.
            cross.push(sub.color(parts[i][0], parts[j][0]));
        }
    }
    Ok(GallaiTree::Node { pair: (a, b), children, cross })
}

/// Paints the coloring a tree describes: cross pairs between child i and
/// child j of a node get color c_{i,j}. The output never contains a rainbow
/// triangle.
pub fn compose(t: &GallaiTree) -> Result<ColoredCompleteGraph, TreeError> {
    let n = t.validate()?;
    let mut colors = vec![0 as Color; n * (n - 1) / 2];
    paint(t, n, &mut colors);
    debug_assert!(colors.iter().all(|&c| (1..=3).contains(&c)) || n == 1);
    ColoredCompleteGraph::from_colors(n, 3, colors)
        .map_err(|_| TreeError::LeafGap { missing: n })
}

fn paint(t: &GallaiTree, n: usize, colors: &mut [Color]) -> Vec<usize> {
    match t {
        GallaiTree::Leaf { vertex } => vec![*vertex],
        GallaiTree::Node { children, cross, .. } => {
            let sets: Vec<Vec<usize>> = children.iter().map(|c| paint(c, n, colors)).collect();
            let b = children.len();
            for i in 0..b {
                for j in i + 1..b {
                    let c = cross[pair_index(b, i, j)];
                    for &u in &sets[i] {
                        for &v in &sets[j] {
                            let (x, y) = if u < v { (u, v) } else { (v, u) };
                            colors[pair_index(n, x, y)] = c;
                        }
                    }
                }
            }
            let mut all = Vec::with_capacity(sets.iter().map(|s| s.len()).sum());
            for s in sets {
                all.extend(s);
            }
            all
        }
    }
}

/// Knobs of the random tree generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeParams {
    /// Child count of each internal node is drawn from [2..=max_children].
    pub max_children: usize,
    /// Relative weights of the node color pairs (1,2), (1,3), (2,3).
    pub pair_weights: [u32; 3],
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams { max_children: 4, pair_weights: [1, 1, 1] }
    }
}

/// Uniformly seeded generator of valid decomposition trees on n vertices.
/// Identical inputs produce identical trees.
pub fn random_gallai_tree(
    n: usize,
    params: &TreeParams,
    seed: u64,
) -> Result<GallaiTree, GraphError> {
    if n < 1 {
        return Err(GraphError::TooFewVertices { n, need: 1 });
    }
    if params.max_children < 2 {
        return Err(GraphError::DegenerateParams { reason: "max_children below 2" });
    }
    if params.pair_weights.iter().all(|&w| w == 0) {
        return Err(GraphError::DegenerateParams { reason: "all color-pair weights zero" });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        ids.swap(i, j);
    }
    Ok(build_tree(&mut rng, params, &ids))
}

fn build_tree(rng: &mut ChaCha8Rng, params: &TreeParams, ids: &[usize]) -> GallaiTree {
    if ids.len() == 1 {
        return GallaiTree::Leaf { vertex: ids[0] };
    }
    let b = rng.gen_range(2..=params.max_children.min(ids.len()));
    // Random composition of |ids| into b nonempty blocks: b−1 distinct cuts.
    let mut cuts: Vec<usize> = (1..ids.len()).collect();
    for i in 0..b - 1 {
        let j = rng.gen_range(i..cuts.len());
        cuts.swap(i, j);
    }
    let mut chosen = cuts[..b - 1].to_vec();
    chosen.sort_unstable();
    chosen.push(ids.len());

    let mut children = Vec::with_capacity(b);
    let mut start = 0;
    for &end in &chosen {
        children.push(build_tree(rng, params, &ids[start..end]));
        start = end;
    }

    let pairs = [(1, 2), (1, 3), (2, 3)];
    let total: u32 = params.pair_weights.iter().sum();
    let mut roll = rng.gen_range(0..total);
    let mut chosen_pair = pairs[2];
    for (idx, &w) in params.pair_weights.iter().enumerate() {
        if roll < w {
            chosen_pair = pairs[idx];
            break;
        }
        roll -= w;
    }
    let (a, bc) = chosen_pair;
    let cross = (0..b * (b - 1) / 2)
        .map(|_| if rng.gen_bool(0.5) { a } else { bc })
        .collect();
    GallaiTree::Node { pair: (a, bc), children, cross }
}

/// Minimal number of cross-edge recolorings making P monochromatic per part
/// pair in color a or color b, together with the per-pair chosen targets
/// (flat upper triangle over part indexes). Ties resolve to color a.
pub fn closeness_cost(
    g: &ColoredCompleteGraph,
    p: &VertexPartition,
    a: Color,
    b: Color,
) -> Result<(u64, Vec<Color>), GraphError> {
    if a < 1 || a > g.k() {
        return Err(GraphError::ColorOutOfRange { color: a, k: g.k() });
    }
    if b < 1 || b > g.k() {
        return Err(GraphError::ColorOutOfRange { color: b, k: g.k() });
    }
    if a == b {
        return Err(GraphError::DegenerateParams { reason: "target colors must differ" });
    }
    if p.n() != g.n() {
        return Err(GraphError::SizeMismatch { expected: g.n(), got: p.n() });
    }
    let parts = p.parts();
    let m = parts.len();
    let mut targets = Vec::with_capacity(m * (m - 1) / 2);
    let mut cost = 0u64;
    for i in 0..m {
        for j in i + 1..m {
            let mut not_a = 0u64;
            let mut not_b = 0u64;
            for &u in &parts[i] {
                for &v in &parts[j] {
                    let c = g.color(u, v);
                    if c != a {
                        not_a += 1;
                    }
                    if c != b {
                        not_b += 1;
                    }
                }
            }
            if not_b < not_a {
                cost += not_b;
                targets.push(b);
            } else {
                cost += not_a;
                targets.push(a);
            }
        }
    }
    Ok((cost, targets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_rainbow_triangles;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Brute-force oracle: tries every set partition (and every color pair)
    /// of a small graph, returning whether ANY (a,b)-monochromatic partition
    /// with ≥ 2 parts exists.
    fn oracle_has_partition(g: &ColoredCompleteGraph) -> bool {
        let n = g.n();
        // Enumerate set partitions via restricted growth strings.
        let mut rgs = vec![0usize; n];
        loop {
            let blocks = rgs.iter().copied().max().unwrap_or(0) + 1;
            if blocks >= 2 {
                let mut parts = vec![Vec::new(); blocks];
                for (v, &b) in rgs.iter().enumerate() {
                    parts[b].push(v);
                }
                for (a, b) in [(1, 2), (1, 3), (2, 3)] {
                    if partition_is_monochromatic(g, &parts, a, b) {
                        return true;
                    }
                }
            }
            // next restricted growth string
            let mut i = n;
            loop {
                if i == 1 {
                    return false;
                }
                i -= 1;
                let cap = rgs[..i].iter().copied().max().unwrap() + 1;
                if rgs[i] < cap {
                    rgs[i] += 1;
                    for v in rgs.iter_mut().skip(i + 1) {
                        *v = 0;
                    }
                    break;
                }
            }
        }
    }

    fn partition_is_monochromatic(
        g: &ColoredCompleteGraph,
        parts: &[Vec<usize>],
        a: Color,
        b: Color,
    ) -> bool {
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let c0 = g.color(parts[i][0], parts[j][0]);
                if c0 != a && c0 != b {
                    return false;
                }
                for &u in &parts[i] {
                    for &v in &parts[j] {
                        if g.color(u, v) != c0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn check_partition_sound(g: &ColoredCompleteGraph) {
        let (a, b, p) = monochromatic_partition(g).unwrap().expect("partition");
        assert!(p.part_count() >= 2);
        let (cost, _) = closeness_cost(g, &p, a, b).unwrap();
        assert_eq!(cost, 0, "returned partition must be exactly monochromatic");
    }

    #[test]
    fn k2_has_partition_containing_edge_color() {
        for c in 1..=3 {
            let g = ColoredCompleteGraph::uniform(2, 3, c).unwrap();
            let (a, b, p) = monochromatic_partition(&g).unwrap().unwrap();
            assert_eq!(p.part_count(), 2);
            assert!(a == c || b == c, "pair ({a},{b}) must contain edge color {c}");
        }
    }

    #[test]
    fn rainbow_k3_has_no_partition() {
        let g = ColoredCompleteGraph::from_colors(3, 3, vec![1, 2, 3]).unwrap();
        assert!(monochromatic_partition(&g).unwrap().is_none());
        assert!(!oracle_has_partition(&g));
    }

    #[test]
    fn finder_matches_oracle_on_all_k4_colorings() {
        // All 3^6 colorings of K_4; K_5 exhaustion runs in the acceptance suite.
        let mut table = vec![1 as Color; 6];
        loop {
            let g = ColoredCompleteGraph::from_colors(4, 3, table.clone()).unwrap();
            let found = monochromatic_partition(&g).unwrap();
            let oracle = oracle_has_partition(&g);
            assert_eq!(found.is_some(), oracle);
            let rainbow_free = count_rainbow_triangles(&g).unwrap() == 0;
            if rainbow_free {
                assert!(found.is_some(), "rainbow-free graphs always admit a partition");
            }
            if found.is_some() {
                check_partition_sound(&g);
            }
            // next coloring
            let mut i = 0;
            loop {
                if i == table.len() {
                    return;
                }
                if table[i] < 3 {
                    table[i] += 1;
                    break;
                }
                table[i] = 1;
                i += 1;
            }
        }
    }

    #[test]
    fn monochromatic_k4_decomposes_to_singletons() {
        let g = ColoredCompleteGraph::uniform(4, 3, 1).unwrap();
        let t = decompose(&g).unwrap();
        assert_eq!(t.validate().unwrap(), 4);
        assert_eq!(compose(&t).unwrap(), g);
        if let GallaiTree::Node { children, .. } = &t {
            assert_eq!(children.len(), 4);
        } else {
            panic!("single vertex tree for n=4");
        }
    }

    #[test]
    fn decompose_rejects_rainbow_input_with_witness() {
        let g = ColoredCompleteGraph::from_colors(3, 3, vec![1, 2, 3]).unwrap();
        assert_eq!(
            decompose(&g),
            Err(DecomposeError::RainbowTriangle { witness: (0, 1, 2) })
        );
    }

    #[test]
    fn compose_of_tiny_trees() {
        let leaf = GallaiTree::Leaf { vertex: 0 };
        let k1 = compose(&leaf).unwrap();
        assert_eq!(k1.n(), 1);

        let k2 = GallaiTree::Node {
            pair: (1, 2),
            children: vec![GallaiTree::Leaf { vertex: 0 }, GallaiTree::Leaf { vertex: 1 }],
            cross: vec![1],
        };
        let g = compose(&k2).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.color(0, 1), 1);
    }

    #[test]
    fn compose_validates_trees() {
        let bad_children = GallaiTree::Node {
            pair: (1, 2),
            children: vec![GallaiTree::Leaf { vertex: 0 }],
            cross: vec![],
        };
        assert_eq!(compose(&bad_children), Err(TreeError::TooFewChildren { got: 1 }));

        let bad_cross = GallaiTree::Node {
            pair: (1, 2),
            children: vec![GallaiTree::Leaf { vertex: 0 }, GallaiTree::Leaf { vertex: 1 }],
            cross: vec![3],
        };
        assert_eq!(
            compose(&bad_cross),
            Err(TreeError::CrossColorOutsidePair { color: 3, a: 1, b: 2 })
        );

        let dup = GallaiTree::Node {
            pair: (1, 2),
            children: vec![GallaiTree::Leaf { vertex: 0 }, GallaiTree::Leaf { vertex: 0 }],
            cross: vec![1],
        };
        assert_eq!(compose(&dup), Err(TreeError::DuplicateLeaf { vertex: 0 }));
    }

    #[test]
    fn random_trees_roundtrip() {
        let params = TreeParams::default();
        for seed in 0..40u64 {
            let n = 1 + (seed as usize * 7) % 60;
            let t = random_gallai_tree(n, &params, seed).unwrap();
            assert_eq!(t.validate().unwrap(), n);
            let g = compose(&t).unwrap();
            assert_eq!(count_rainbow_triangles(&g).unwrap(), 0);
            if n >= 2 {
                let t2 = decompose(&g).unwrap();
                assert_eq!(compose(&t2).unwrap(), g, "seed {seed}");
            }
        }
    }

    #[test]
    fn same_seed_same_tree() {
        let params = TreeParams::default();
        let t1 = random_gallai_tree(50, &params, 7).unwrap();
        let t2 = random_gallai_tree(50, &params, 7).unwrap();
        assert_eq!(t1, t2);
        let t3 = random_gallai_tree(50, &params, 8).unwrap();
        assert_ne!(t1, t3);
    }

    #[test]
    fn single_vertex_tree() {
        let t = random_gallai_tree(1, &TreeParams::default(), 0).unwrap();
        assert_eq!(t, GallaiTree::Leaf { vertex: 0 });
    }

    #[test]
    fn generator_rejects_degenerate_params() {
        let mut p = TreeParams::default();
        p.max_children = 1;
        assert!(random_gallai_tree(5, &p, 0).is_err());
        let mut q = TreeParams::default();
        q.pair_weights = [0, 0, 0];
        assert!(random_gallai_tree(5, &q, 0).is_err());
    }

    #[test]
    fn closeness_cost_zero_on_returned_partitions() {
        let t = random_gallai_tree(30, &TreeParams::default(), 3).unwrap();
        let g = compose(&t).unwrap();
        check_partition_sound(&g);
    }

    #[test]
    fn closeness_cost_counts_minimal_recolorings() {
        // K_2 split into singletons, edge color 3, targets (1,2): cost 1,
        // tie resolves to color a = 1.
        let g = ColoredCompleteGraph::uniform(2, 3, 3).unwrap();
        let p = VertexPartition::singletons(2);
        let (cost, targets) = closeness_cost(&g, &p, 1, 2).unwrap();
        assert_eq!(cost, 1);
        assert_eq!(targets, vec![1]);
    }

    #[test]
    fn corrupted_compose_cost_bounded_by_noise() {
        let t = random_gallai_tree(100, &TreeParams::default(), 9).unwrap();
        let g = compose(&t).unwrap();
        let (a, b, p) = monochromatic_partition(&g).unwrap().unwrap();
        // Recolor 50 random cross pairs, then the partition's cost is at most 50.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut noisy = g.clone();
        let part_of = p.part_of();
        let mut corrupted = 0;
        while corrupted < 50 {
            let u = rng.gen_range(0..100);
            let v = rng.gen_range(0..100);
            if u != v && part_of[u] != part_of[v] {
                noisy.set_color(u, v, rng.gen_range(1..=3) as Color);
                corrupted += 1;
            }
        }
        let (cost, _) = closeness_cost(&noisy, &p, a, b).unwrap();
        assert!(cost <= 50, "cost {cost} exceeds the 50 recolored pairs");
    }
}
