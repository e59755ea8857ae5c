//! Lower-bound constructions: hosts densely planted with pair-disjoint
//! pattern copies while the host-wide total stays small, blowups that scale
//! them up, and the lifting of a 3-colored graph to a digraph whose
//! pair-count projection reproduces it. Every instance carries its claims
//! and the verification status alongside the raw graphs.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::copies::{
    enumerate_colored_copies, enumerate_induced_copies, verify_pair_disjoint, CopyFamily,
    EnumError, EnumLimits,
};
use crate::counting::triangles_avoiding_color;
use crate::design::{design_family, DesignError};
use crate::equations::{avoiding_set, EquationError, EquationFamily, SetMethod};
use crate::graph::{
    color_projection, pair_index, Color, ColoredCompleteGraph, Digraph, GraphError,
};

/// Constructions refuse beyond this many vertices; the colored pair table
/// is quadratic in it.
pub const MAX_CONSTRUCTION_VERTICES: usize = 10_000;

/// Exhaustive re-counts are skipped (claims left unmeasured) beyond roughly
/// this many elementary scan steps.
const VERIFY_STEP_BUDGET: u64 = 200_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum HardnessError {
    Graph(GraphError),
    Enumeration(EnumError),
    Design(DesignError),
    Equation(EquationError),
    /// The pattern has no triangle whose edges all avoid the color.
    NoQualifyingTriangle { avoided: Color },
    /// blowup_n must be a positive multiple of the host vertex count.
    BadBlowupTotal { total: usize, host: usize },
    TooLarge { vertices: usize, cap: usize },
    /// A construction-time consistency check failed.
    Integrity { reason: &'static str },
    /// A supplied copy family does not fit the graph or pattern.
    BadFamily { copy: usize, reason: &'static str },
    NotPairDisjoint { first: usize, second: usize },
}

impl fmt::Display for HardnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HardnessError::Graph(e) => write!(f, "{e}"),
            HardnessError::Enumeration(e) => write!(f, "{e}"),
            HardnessError::Design(e) => write!(f, "{e}"),
            HardnessError::Equation(e) => write!(f, "{e}"),
            HardnessError::NoQualifyingTriangle { avoided } => {
                write!(f, "no triangle avoids color {avoided}")
            }
            HardnessError::BadBlowupTotal { total, host } => {
                write!(f, "blowup size {total} is not a positive multiple of host size {host}")
            }
            HardnessError::TooLarge { vertices, cap } => {
                write!(f, "construction needs {vertices} vertices, cap is {cap}")
            }
            HardnessError::Integrity { reason } => write!(f, "integrity check failed: {reason}"),
            HardnessError::BadFamily { copy, reason } => write!(f, "copy {copy}: {reason}"),
            HardnessError::NotPairDisjoint { first, second } => {
                write!(f, "copies {first} and {second} share a vertex pair")
            }
        }
    }
}

impl core::error::Error for HardnessError {}

impl From<GraphError> for HardnessError {
    fn from(e: GraphError) -> Self {
        HardnessError::Graph(e)
    }
}
impl From<EnumError> for HardnessError {
    fn from(e: EnumError) -> Self {
        HardnessError::Enumeration(e)
    }
}
impl From<DesignError> for HardnessError {
    fn from(e: DesignError) -> Self {
        HardnessError::Design(e)
    }
}
impl From<EquationError> for HardnessError {
    fn from(e: EquationError) -> Self {
        HardnessError::Equation(e)
    }
}

/// A colored complete graph or a digraph, whichever the construction builds.
#[derive(Clone, Debug, PartialEq)]
pub enum Host {
    Colored(ColoredCompleteGraph),
    Directed(Digraph),
}

impl Host {
    pub fn n(&self) -> usize {
        match self {
            Host::Colored(g) => g.n(),
            Host::Directed(d) => d.n(),
        }
    }
}

/// What blowup classes look like on the inside.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InsideRule {
    Color(Color),
    TransitiveTournament,
}

/// The numbers a hardness instance stakes its value on, re-derivable from
/// the raw graphs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Claims {
    /// Copies planted in the host: m·|S| by construction.
    pub planted_host_count: u64,
    /// Copies planted in the blowup.
    pub planted_blown_count: u64,
    /// Claimed host-wide total: an upper bound f⁴m² for the
    /// triangle construction, the exact value m·|S| for the others.
    pub host_total_bound: u64,
    /// Measured host-wide total, when the exhaustive scan fit the budget.
    pub host_total_count: Option<u64>,
    /// Both planted families verified pairwise vertex-pair-disjoint.
    pub pair_disjoint: bool,
    /// ε implied by the planted family: |S| / (4·f⁴·m).
    pub implied_epsilon: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HardnessInstance {
    pub host: Host,
    pub blown: Host,
    /// Host vertex blocks V_1..V_f as (start, len), laid out consecutively.
    pub blocks: Vec<(usize, usize)>,
    pub host_family: CopyFamily,
    pub blown_family: CopyFamily,
    pub m: usize,
    /// The avoiding set S the copies are spaced by.
    pub avoiding: Vec<u64>,
    pub pattern_vertices: usize,
    pub factor: usize,
    pub claims: Claims,
}

fn check_size(n: usize) -> Result<(), HardnessError> {
    if n > MAX_CONSTRUCTION_VERTICES {
        return Err(HardnessError::TooLarge { vertices: n, cap: MAX_CONSTRUCTION_VERTICES });
    }
    Ok(())
}

/// Greedy sets are denser at small m; the digit construction scales.
fn pick_method(m: u64) -> SetMethod {
    if m <= 4096 {
        SetMethod::ExhaustiveGreedy
    } else {
        SetMethod::Behrend
    }
}

/// Blocks V_1..V_f with |V_i| = i·m, consecutive from 0.
fn triangular_blocks(f: usize, m: usize) -> Vec<(usize, usize)> {
    let mut blocks = Vec::with_capacity(f);
    let mut start = 0;
    for i in 1..=f {
        blocks.push((start, i * m));
        start += i * m;
    }
    blocks
}

fn automorphism_count<F>(enumerate_self: F) -> Result<u64, HardnessError>
where
    F: FnOnce(&EnumLimits) -> Result<CopyFamily, EnumError>,
{
    let limits = EnumLimits { max_pattern_vertices: 8, max_nodes: 50_000_000 };
    Ok(enumerate_self(&limits)?.automorphisms)
}

fn require_disjoint(fam: &CopyFamily) -> Result<(), HardnessError> {
    let report = verify_pair_disjoint(fam);
    match report.violations.first() {
        None => Ok(()),
        Some(&(first, second)) => Err(HardnessError::NotPairDisjoint { first, second }),
    }
}

/// Plants each host copy into the blowup's classes: through a modular design
/// family over class members when factor ≥ 2d (p² lifted copies per host
/// copy), otherwise one diagonal copy per member index. Either way two
/// lifted copies share at most one vertex when the host copies do.
pub fn blowup_family(host_fam: &CopyFamily, factor: usize) -> Result<CopyFamily, HardnessError> {
    if factor == 0 {
        return Err(GraphError::DegenerateParams { reason: "blowup factor must be positive" }
            .into());
    }
    let d = host_fam.pattern_vertices;
    let mut copies: Vec<Vec<usize>> = Vec::new();
    if d >= 2 && factor >= 2 * d {
        let design = design_family(factor, d)?;
        for tuple in &host_fam.copies {
            for dt in &design.tuples {
                copies.push(
                    (0..d).map(|i| tuple[i] * factor + (dt[i] as usize - 1)).collect(),
                );
            }
        }
    } else {
        for tuple in &host_fam.copies {
            for j in 0..factor {
                copies.push(tuple.iter().map(|&v| v * factor + j).collect());
            }
        }
    }
    let injections = copies.len() as u64 * host_fam.automorphisms;
    Ok(CopyFamily {
        pattern_vertices: d,
        copies,
        injections,
        automorphisms: host_fam.automorphisms,
    })
}

/// Blows a colored host up by `factor`: each vertex becomes a class, cross
/// pairs inherit the host color, inside pairs take the given color.
pub fn blowup_colored(
    g: &ColoredCompleteGraph,
    factor: usize,
    inside: Color,
) -> Result<ColoredCompleteGraph, HardnessError> {
    if factor == 0 {
        return Err(GraphError::DegenerateParams { reason: "blowup factor must be positive" }
            .into());
    }
    if inside < 1 || inside > g.k() {
        return Err(GraphError::ColorOutOfRange { color: inside, k: g.k() }.into());
    }
    let n = g
        .n()
        .checked_mul(factor)
        .ok_or(HardnessError::TooLarge { vertices: usize::MAX, cap: MAX_CONSTRUCTION_VERTICES })?;
    check_size(n)?;
    Ok(ColoredCompleteGraph::from_fn(n, g.k(), |u, v| {
        let (cu, cv) = (u / factor, v / factor);
        if cu == cv {
            inside
        } else {
            g.color(cu, cv)
        }
    })?)
}

/// Blows a digraph up by `factor`: cross pairs inherit the host pair's edge
/// set, classes span transitive tournaments directed low id to high id.
pub fn blowup_digraph(d: &Digraph, factor: usize) -> Result<Digraph, HardnessError> {
    if factor == 0 {
        return Err(GraphError::DegenerateParams { reason: "blowup factor must be positive" }
            .into());
    }
    let n = d
        .n()
        .checked_mul(factor)
        .ok_or(HardnessError::TooLarge { vertices: usize::MAX, cap: MAX_CONSTRUCTION_VERTICES })?;
    check_size(n)?;
    let mut out = Digraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let (cu, cv) = (u / factor, v / factor);
            if cu == cv {
                out.add_edge(u, v)?;
            } else {
                if d.has_edge(cu, cv) {
                    out.add_edge(u, v)?;
                }
                if d.has_edge(cv, cu) {
                    out.add_edge(v, u)?;
                }
            }
        }
    }
    Ok(out)
}

/// One blowup entry point over both host kinds. Colored hosts need an inside
/// color, digraphs an inside tournament.
pub fn blowup(host: &Host, factor: usize, rule: InsideRule) -> Result<Host, HardnessError> {
    match (host, rule) {
        (Host::Colored(g), InsideRule::Color(c)) => Ok(Host::Colored(blowup_colored(g, factor, c)?)),
        (Host::Directed(d), InsideRule::TransitiveTournament) => {
            Ok(Host::Directed(blowup_digraph(d, factor)?))
        }
        _ => Err(HardnessError::Integrity { reason: "inside rule does not fit the host kind" }),
    }
}

fn split_factor(blowup_n: usize, host_n: usize) -> Result<usize, HardnessError> {
    if blowup_n == 0 || blowup_n % host_n != 0 {
        return Err(HardnessError::BadBlowupTotal { total: blowup_n, host: host_n });
    }
    Ok(blowup_n / host_n)
}

/// Counts pattern copies taking role i's vertex from block i, for all roles.
/// Plain DFS with pairwise color checks; the structured quadruple scans of
/// the exact-count claims run through here.
pub fn count_copies_one_per_block(
    host: &ColoredCompleteGraph,
    pattern: &ColoredCompleteGraph,
    blocks: &[(usize, usize)],
) -> u64 {
    fn rec(
        host: &ColoredCompleteGraph,
        pattern: &ColoredCompleteGraph,
        blocks: &[(usize, usize)],
        assign: &mut Vec<usize>,
    ) -> u64 {
        let role = assign.len();
        if role == blocks.len() {
            return 1;
        }
        let (start, len) = blocks[role];
        let mut total = 0;
        'cand: for v in start..start + len {
            for (r, &u) in assign.iter().enumerate() {
                if host.color(u, v) != pattern.color(r, role) {
                    continue 'cand;
                }
            }
            assign.push(v);
            total += rec(host, pattern, blocks, assign);
            assign.pop();
        }
        total
    }
    debug_assert_eq!(pattern.n(), blocks.len());
    rec(host, pattern, blocks, &mut Vec::with_capacity(blocks.len()))
}

struct PaintedHost {
    host: ColoredCompleteGraph,
    copies: Vec<Vec<usize>>,
}

/// Lays out the triangular blocks, plants a copy at positions x + (i−1)·s
/// for every x ∈ [1..m], s ∈ S, painting pattern colors over a `background`
/// default. Any doubly painted pair is a planted-copy conflict.
fn paint_host(
    pattern: &ColoredCompleteGraph,
    background: Color,
    m: usize,
    s_set: &[u64],
    blocks: &[(usize, usize)],
) -> Result<PaintedHost, HardnessError> {
    let f = pattern.n();
    let n_h = blocks.last().map(|&(s, l)| s + l).unwrap_or(0);
    check_size(n_h)?;
    let mut colors: Vec<Color> = vec![background; n_h * (n_h - 1) / 2];
    let mut painted = vec![false; colors.len()];
    let mut copies = Vec::with_capacity(m * s_set.len());
    for x in 1..=m {
        for &s in s_set {
            let s = s as usize;
            // role i at block position x + i·s, 1-based; fits since
            // x + i·s ≤ m + i·m = (i+1)·m = |V_{i+1}|
            let tuple: Vec<usize> = (0..f).map(|i| blocks[i].0 + x + i * s - 1).collect();
            for i in 0..f {
                for j in i + 1..f {
                    let idx = pair_index(n_h, tuple[i], tuple[j]);
                    if painted[idx] {
                        return Err(HardnessError::Integrity {
                            reason: "two planted copies share a pair",
                        });
                    }
                    painted[idx] = true;
                    colors[idx] = pattern.color(i, j);
                }
            }
            copies.push(tuple);
        }
    }
    Ok(PaintedHost { host: ColoredCompleteGraph::from_colors(n_h, pattern.k(), colors)?, copies })
}

fn implied_epsilon(s_len: usize, f: usize, m: usize) -> f64 {
    let f4 = (f * f * f * f) as f64;
    s_len as f64 / (4.0 * f4 * m as f64)
}

/// Plants m·|S| copies of a pattern containing a triangle that avoids one
/// color, with every unplanted pair taking exactly that color. Few triangles
/// avoid the color overall, yet the planted copies are pair-disjoint, so
/// removal needs many edits while copy counts stay low.
pub fn triangle_hardness(
    pattern: &ColoredCompleteGraph,
    avoided: Color,
    m: usize,
    blowup_n: usize,
) -> Result<HardnessInstance, HardnessError> {
    let f = pattern.n();
    let k = pattern.k();
    if f < 3 {
        return Err(GraphError::TooFewVertices { n: f, need: 3 }.into());
    }
    if avoided < 1 || avoided > k {
        return Err(GraphError::ColorOutOfRange { color: avoided, k }.into());
    }
    if m == 0 {
        return Err(GraphError::DegenerateParams { reason: "m must be positive" }.into());
    }
    let mut qualifying = false;
    'find: for u in 0..f {
        for v in u + 1..f {
            for w in v + 1..f {
                if pattern.color(u, v) != avoided
                    && pattern.color(u, w) != avoided
                    && pattern.color(v, w) != avoided
                {
                    qualifying = true;
                    break 'find;
                }
            }
        }
    }
    if !qualifying {
        return Err(HardnessError::NoQualifyingTriangle { avoided });
    }

    let fam = EquationFamily::weighted_means(f)?;
    let s_set = avoiding_set(m as u64, &fam, pick_method(m as u64));
    let blocks = triangular_blocks(f, m);
    let painted = paint_host(pattern, avoided, m, &s_set, &blocks)?;
    let n_h = painted.host.n();

    let automorphisms =
        automorphism_count(|l| enumerate_colored_copies(pattern, pattern, l))?;
    let injections = painted.copies.len() as u64 * automorphisms;
    let host_family =
        CopyFamily { pattern_vertices: f, copies: painted.copies, injections, automorphisms };
    require_disjoint(&host_family)?;

    let bound = (f as u64).pow(4) * (m as u64).pow(2);
    // Bit-kernel triple scan is ~n³/6 masked word operations.
    let measured = if (n_h as u64).pow(3) / 6 <= VERIFY_STEP_BUDGET {
        let t = triangles_avoiding_color(&painted.host, avoided)?;
        if t > bound {
            return Err(HardnessError::Integrity { reason: "avoided-color triangle bound failed" });
        }
        Some(t)
    } else {
        None
    };

    let factor = split_factor(blowup_n, n_h)?;
    let blown = blowup_colored(&painted.host, factor, avoided)?;
    let blown_family = blowup_family(&host_family, factor)?;
    require_disjoint(&blown_family)?;

    let claims = Claims {
        planted_host_count: host_family.copies.len() as u64,
        planted_blown_count: blown_family.copies.len() as u64,
        host_total_bound: bound,
        host_total_count: measured,
        pair_disjoint: true,
        implied_epsilon: implied_epsilon(s_set.len(), f, m),
    };
    Ok(HardnessInstance {
        host: Host::Colored(painted.host),
        blown: Host::Colored(blown),
        blocks,
        host_family,
        blown_family,
        m,
        avoiding: s_set,
        pattern_vertices: f,
        factor,
        claims,
    })
}

/// The 4-vertex pattern whose three color classes are perfect matchings:
/// color 1 on {0,1},{2,3}; color 2 on {0,3},{1,2}; color 3 on {0,2},{1,3}.
pub fn f4_pattern() -> ColoredCompleteGraph {
    ColoredCompleteGraph::from_fn(4, 3, |u, v| match (u, v) {
        (0, 1) | (2, 3) => 1,
        (0, 3) | (1, 2) => 2,
        _ => 3,
    })
    .expect("static pattern")
}

/// Plants m·|S| copies of the matching-colored K₄ with color 3 everywhere
/// else; the copy count in the host is exactly m·|S|.
pub fn f4_hardness(m: usize, blowup_n: usize) -> Result<HardnessInstance, HardnessError> {
    if m == 0 {
        return Err(GraphError::DegenerateParams { reason: "m must be positive" }.into());
    }
    let pattern = f4_pattern();
    let f = 4;
    let s_set = avoiding_set(m as u64, &EquationFamily::triple_mean(), pick_method(m as u64));
    let blocks = triangular_blocks(f, m);
    let painted = paint_host(&pattern, 3, m, &s_set, &blocks)?;
    let host = painted.host;

    // The pattern's (0,2) and (1,3) pairs carry color 3 like the background,
    // so the V₁–V₃ and V₂–V₄ bipartite blocks must be uniformly 3.
    for &(bi, bj) in &[(0usize, 2usize), (1, 3)] {
        let (si, li) = blocks[bi];
        let (sj, lj) = blocks[bj];
        for u in si..si + li {
            for v in sj..sj + lj {
                if host.color(u, v) != 3 {
                    return Err(HardnessError::Integrity {
                        reason: "cross block expected to be uniformly color 3",
                    });
                }
            }
        }
    }

    let automorphisms =
        automorphism_count(|l| enumerate_colored_copies(&pattern, &pattern, l))?;
    let injections = painted.copies.len() as u64 * automorphisms;
    let host_family =
        CopyFamily { pattern_vertices: f, copies: painted.copies, injections, automorphisms };
    require_disjoint(&host_family)?;

    let exact = host_family.copies.len() as u64;
    // Structured scan space is m·2m·3m·4m = 24·m⁴ quadruples.
    let measured = if 24u64.saturating_mul((m as u64).pow(4)) <= VERIFY_STEP_BUDGET {
        let c = count_copies_one_per_block(&host, &pattern, &blocks);
        if c != exact {
            return Err(HardnessError::Integrity { reason: "host copy count is not m·|S|" });
        }
        Some(c)
    } else {
        None
    };

    let factor = split_factor(blowup_n, host.n())?;
    let blown = blowup_colored(&host, factor, 3)?;
    let blown_family = blowup_family(&host_family, factor)?;
    require_disjoint(&blown_family)?;

    let claims = Claims {
        planted_host_count: exact,
        planted_blown_count: blown_family.copies.len() as u64,
        host_total_bound: exact,
        host_total_count: measured,
        pair_disjoint: true,
        implied_epsilon: implied_epsilon(s_set.len(), f, m),
    };
    Ok(HardnessInstance {
        host: Host::Colored(host),
        blown: Host::Colored(blown),
        blocks,
        host_family,
        blown_family,
        m,
        avoiding: s_set,
        pattern_vertices: f,
        factor,
        claims,
    })
}

/// The 3-vertex digraph with edges (0,2), (1,2), (2,1): one pair empty, one
/// single, one doubled, so its pair-count projection is a rainbow triangle.
pub fn d3_pattern() -> Digraph {
    Digraph::from_edges(3, &[(0, 2), (1, 2), (2, 1)]).expect("static pattern")
}

/// Digraph host with blocks of sizes m, 2m, 3m, planting m·|S| induced
/// copies of the 3-vertex pattern. Unplanted V₁–V₃ pairs point from V₃ back
/// to V₁, so a V₁→V₃ edge exists only inside copies; every other unplanted
/// pair, block-internal ones included, points low id to high id.
pub fn d3_hardness(m: usize, blowup_n: usize) -> Result<HardnessInstance, HardnessError> {
    if m == 0 {
        return Err(GraphError::DegenerateParams { reason: "m must be positive" }.into());
    }
    let pattern = d3_pattern();
    let s_set = avoiding_set(m as u64, &EquationFamily::three_ap(), pick_method(m as u64));
    let blocks = vec![(0, m), (m, 2 * m), (3 * m, 3 * m)];
    let n_h = 6 * m;
    check_size(n_h)?;

    let mut owner: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    let mut copies: Vec<Vec<usize>> = Vec::with_capacity(m * s_set.len());
    for x in 1..=m {
        for &s in &s_set {
            let s = s as usize;
            let tuple = [x - 1, m + (x + s) - 1, 3 * m + (x + 2 * s) - 1];
            for i in 0..3 {
                for j in i + 1..3 {
                    if owner.insert((tuple[i], tuple[j]), (i, j)).is_some() {
                        return Err(HardnessError::Integrity {
                            reason: "two planted copies share a pair",
                        });
                    }
                }
            }
            copies.push(tuple.to_vec());
        }
    }

    let block_of = |v: usize| if v < m { 0 } else if v < 3 * m { 1 } else { 2 };
    let mut host = Digraph::new(n_h);
    for u in 0..n_h {
        for v in u + 1..n_h {
            if let Some(&(i, j)) = owner.get(&(u, v)) {
                // Tuples ascend with role, so u plays role i.
                if pattern.has_edge(i, j) {
                    host.add_edge(u, v)?;
                }
                if pattern.has_edge(j, i) {
                    host.add_edge(v, u)?;
                }
            } else if block_of(u) == 0 && block_of(v) == 2 {
                host.add_edge(v, u)?;
            } else {
                host.add_edge(u, v)?;
            }
        }
    }

    let automorphisms =
        automorphism_count(|l| enumerate_induced_copies(&pattern, &pattern, l))?;
    let injections = copies.len() as u64 * automorphisms;
    let host_family = CopyFamily { pattern_vertices: 3, copies, injections, automorphisms };
    require_disjoint(&host_family)?;

    let exact = host_family.copies.len() as u64;
    let limits = EnumLimits { max_pattern_vertices: 5, max_nodes: VERIFY_STEP_BUDGET };
    let measured = match enumerate_induced_copies(&host, &pattern, &limits) {
        Ok(found) => {
            if found.copies.len() as u64 != exact {
                return Err(HardnessError::Integrity {
                    reason: "host induced-copy count is not m·|S|",
                });
            }
            Some(found.copies.len() as u64)
        }
        Err(EnumError::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };

    let factor = split_factor(blowup_n, n_h)?;
    let blown = blowup_digraph(&host, factor)?;
    let blown_family = blowup_family(&host_family, factor)?;
    require_disjoint(&blown_family)?;

    let claims = Claims {
        planted_host_count: exact,
        planted_blown_count: blown_family.copies.len() as u64,
        host_total_bound: exact,
        host_total_count: measured,
        pair_disjoint: true,
        implied_epsilon: implied_epsilon(s_set.len(), 3, m),
    };
    Ok(HardnessInstance {
        host: Host::Directed(host),
        blown: Host::Directed(blown),
        blocks,
        host_family,
        blown_family,
        m,
        avoiding: s_set,
        pattern_vertices: 3,
        factor,
        claims,
    })
}

/// Builds a digraph whose pair-count projection is exactly `g`. Count-2
/// pairs get both edges; a count-1 pair inside a planted copy follows the
/// pattern's role map (well defined because the family is pair-disjoint);
/// every other count-1 pair points low id to high id. Each planted tuple
/// becomes an induced copy of the pattern.
pub fn lift_to_digraph(
    g: &ColoredCompleteGraph,
    d: &Digraph,
    fam: &CopyFamily,
) -> Result<Digraph, HardnessError> {
    if g.k() != 3 {
        return Err(GraphError::UnsupportedColorCount { k: g.k() }.into());
    }
    let f = d.n();
    if fam.pattern_vertices != f {
        return Err(HardnessError::BadFamily { copy: 0, reason: "pattern size mismatch" });
    }
    let proj = color_projection(d)?;
    let n = g.n();
    for (ci, tuple) in fam.copies.iter().enumerate() {
        if tuple.len() != f {
            return Err(HardnessError::BadFamily { copy: ci, reason: "tuple arity mismatch" });
        }
        for &v in tuple {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n }.into());
            }
        }
        for i in 0..f {
            for j in i + 1..f {
                if tuple[i] == tuple[j] {
                    return Err(HardnessError::BadFamily { copy: ci, reason: "repeated vertex" });
                }
                if g.color(tuple[i], tuple[j]) != proj.color(i, j) {
                    return Err(HardnessError::BadFamily {
                        copy: ci,
                        reason: "tuple coloring differs from the pattern projection",
                    });
                }
            }
        }
    }
    require_disjoint(fam)?;

    let mut orient: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for tuple in &fam.copies {
        for i in 0..f {
            for j in i + 1..f {
                let (u, v, ru, rv) = if tuple[i] < tuple[j] {
                    (tuple[i], tuple[j], i, j)
                } else {
                    (tuple[j], tuple[i], j, i)
                };
                orient.insert((u, v), (ru, rv));
            }
        }
    }

    let mut out = Digraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            match g.color(u, v) {
                1 => {}
                3 => {
                    out.add_edge(u, v)?;
                    out.add_edge(v, u)?;
                }
                2 => {
                    if let Some(&(ru, rv)) = orient.get(&(u, v)) {
                        if d.has_edge(ru, rv) {
                            out.add_edge(u, v)?;
                        } else {
                            out.add_edge(v, u)?;
                        }
                    } else {
                        out.add_edge(u, v)?;
                    }
                }
                c => return Err(GraphError::ColorOutOfRange { color: c, k: 3 }.into()),
            }
        }
    }
    Ok(out)
}
