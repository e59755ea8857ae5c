//! Exhaustive enumeration of small pattern copies in a host graph.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{ColoredCompleteGraph, Digraph};

/// Caps on the exhaustive search. When exceeded the enumeration refuses
/// rather than returning a truncated count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumLimits {
    pub max_pattern_vertices: usize,
    pub max_nodes: u64,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { max_pattern_vertices: 5, max_nodes: 1_000_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumError {
    PatternTooLarge { vertices: usize, cap: usize },
    BudgetExceeded { nodes: u64 },
    EmptyPattern,
}

impl fmt::Display for EnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumError::PatternTooLarge { vertices, cap } => {
                write!(f, "pattern has {vertices} vertices, cap is {cap}")
            }
            EnumError::BudgetExceeded { nodes } => {
                write!(f, "enumeration budget exceeded after {nodes} search nodes")
            }
            EnumError::EmptyPattern => write!(f, "pattern has no vertices"),
        }
    }
}

impl core::error::Error for EnumError {}

/// All copies of a pattern in a host. Each copy is an ordered tuple: position
/// i plays pattern vertex i. Tuples are canonical representatives, one per
/// unordered occurrence (lexicographic minimum over the pattern's
/// automorphism group); `injections` counts every color/edge preserving
/// injection, so injections = copies.len() × automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopyFamily {
    pub pattern_vertices: usize,
    pub copies: Vec<Vec<usize>>,
    pub injections: u64,
    pub automorphisms: u64,
}

/// Pairwise intersection report for a copy family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDisjointReport {
    pub ok: bool,
    /// Copy index pairs sharing at least two vertices.
    pub violations: Vec<(usize, usize)>,
}

/// The fixed 3-colored triangle: colors 1, 2, 3 on pairs (0,1), (0,2), (1,2).
pub fn rainbow_k3() -> ColoredCompleteGraph {
    ColoredCompleteGraph::from_colors(3, 3, vec![1, 2, 3]).expect("static pattern")
}

trait PairConsistent {
    fn n(&self) -> usize;
    /// May the partial map `assign` be extended by host vertex `h` playing
    /// pattern vertex `assign.len()`?
    fn consistent(&self, host_pairs: &Self, assign: &[usize], h: usize) -> bool;
}

impl PairConsistent for ColoredCompleteGraph {
    fn n(&self) -> usize {
        ColoredCompleteGraph::n(self)
    }

    fn consistent(&self, host: &Self, assign: &[usize], h: usize) -> bool {
        let d = assign.len();
        assign
            .iter()
            .enumerate()
            .all(|(j, &hj)| host.color(hj, h) == self.color(j, d))
    }
}

impl PairConsistent for Digraph {
    fn n(&self) -> usize {
        Digraph::n(self)
    }

    fn consistent(&self, host: &Self, assign: &[usize], h: usize) -> bool {
        let d = assign.len();
        assign.iter().enumerate().all(|(j, &hj)| {
            host.has_edge(hj, h) == self.has_edge(j, d)
                && host.has_edge(h, hj) == self.has_edge(d, j)
        })
    }
}

struct Search<'p, P: PairConsistent> {
    host: &'p P,
    pattern: &'p P,
    nodes: u64,
    max_nodes: u64,
}

impl<P: PairConsistent> Search<'_, P> {
    /// Depth-first extension of partial injections; calls `sink` with every
    /// complete injection tuple.
    fn run(
        &mut self,
        assign: &mut Vec<usize>,
        used: &mut [bool],
        sink: &mut impl FnMut(&[usize]),
    ) -> Result<(), EnumError> {
        if assign.len() == self.pattern.n() {
            sink(assign);
            return Ok(());
        }
        for h in 0..self.host.n() {
            if used[h] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(EnumError::BudgetExceeded { nodes: self.nodes });
            }
            if self.pattern.consistent(self.host, assign, h) {
                assign.push(h);
                used[h] = true;
                self.run(assign, used, sink)?;
                assign.pop();
                used[h] = false;
            }
        }
        Ok(())
    }
}

fn enumerate<P: PairConsistent>(
    host: &P,
    pattern: &P,
    limits: &EnumLimits,
) -> Result<CopyFamily, EnumError> {
    let p = pattern.n();
    if p == 0 {
        return Err(EnumError::EmptyPattern);
    }
    if p > limits.max_pattern_vertices {
        return Err(EnumError::PatternTooLarge { vertices: p, cap: limits.max_pattern_vertices });
    }

    // Automorphisms first: enumerate the pattern in itself. Cheap for p ≤ 5.
    let mut auts: Vec<Vec<usize>> = Vec::new();
    {
        let mut search =
            Search { host: pattern, pattern, nodes: 0, max_nodes: limits.max_nodes };
        let mut assign = Vec::with_capacity(p);
        let mut used = vec![false; p];
        search.run(&mut assign, &mut used, &mut |tuple| auts.push(tuple.to_vec()))?;
    }
    debug_assert!(auts.iter().any(|a| a.iter().enumerate().all(|(i, &x)| i == x)));

    let mut copies: Vec<Vec<usize>> = Vec::new();
    let mut injections = 0u64;
    {
        let mut search = Search { host, pattern, nodes: 0, max_nodes: limits.max_nodes };
        let mut assign = Vec::with_capacity(p);
        let mut used = vec![false; host.n()];
        let mut orbit_image = vec![0usize; p];
        search.run(&mut assign, &mut used, &mut |tuple| {
            injections += 1;
            // Keep the tuple only if it is the lexicographic minimum of its
            // automorphism orbit; exactly one member of each orbit is.
            let canonical = auts.iter().all(|sigma| {
                for i in 0..p {
                    orbit_image[i] = tuple[sigma[i]];
                }
                tuple <= &orbit_image[..]
            });
            if canonical {
                copies.push(tuple.to_vec());
            }
        })?;
    }

    debug_assert_eq!(injections, copies.len() as u64 * auts.len() as u64);
    Ok(CopyFamily {
        pattern_vertices: p,
        copies,
        injections,
        automorphisms: auts.len() as u64,
    })
}

/// All copies of a colored pattern in a colored host: injections preserving
/// every pair color. On complete hosts these are automatically induced.
pub fn enumerate_colored_copies(
    host: &ColoredCompleteGraph,
    pattern: &ColoredCompleteGraph,
    limits: &EnumLimits,
) -> Result<CopyFamily, EnumError> {
    enumerate(host, pattern, limits)
}

/// All induced copies of a digraph pattern: injections preserving both the
/// presence and the absence of every ordered edge.
pub fn enumerate_induced_copies(
    host: &Digraph,
    pattern: &Digraph,
    limits: &EnumLimits,
) -> Result<CopyFamily, EnumError> {
    enumerate(host, pattern, limits)
}

/// Checks that every two copies share at most one vertex.
pub fn verify_pair_disjoint(fam: &CopyFamily) -> PairDisjointReport {
    // Map each vertex pair inside a tuple to the copies containing it; any
    // pair owned by two copies is a violation.
    let mut owners: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (idx, tuple) in fam.copies.iter().enumerate() {
        for i in 0..tuple.len() {
            for j in i + 1..tuple.len() {
                let key = if tuple[i] < tuple[j] {
                    (tuple[i], tuple[j])
                } else {
                    (tuple[j], tuple[i])
                };
                owners.entry(key).or_default().push(idx);
            }
        }
    }
    let mut violations: Vec<(usize, usize)> = Vec::new();
    for copies in owners.values() {
        for a in 0..copies.len() {
            for b in a + 1..copies.len() {
                let pair = (copies[a].min(copies[b]), copies[a].max(copies[b]));
                if pair.0 != pair.1 {
                    violations.push(pair);
                }
            }
        }
    }
    violations.sort_unstable();
    violations.dedup();
    PairDisjointReport { ok: violations.is_empty(), violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_rainbow_triangles;
    use crate::graph::Color;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rainbow_pattern_in_itself() {
        let pat = rainbow_k3();
        let fam = enumerate_colored_copies(&pat, &pat, &EnumLimits::default()).unwrap();
        assert_eq!(fam.copies.len(), 1);
        assert_eq!(fam.automorphisms, 1);
        assert_eq!(fam.injections, 1);
        assert_eq!(fam.copies[0], vec![0, 1, 2]);
    }

    #[test]
    fn occurrences_match_rainbow_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g =
            ColoredCompleteGraph::from_fn(18, 3, |_, _| rng.gen_range(1..=3) as Color).unwrap();
        let fam = enumerate_colored_copies(&g, &rainbow_k3(), &EnumLimits::default()).unwrap();
        assert_eq!(fam.copies.len() as u64, count_rainbow_triangles(&g).unwrap());
        assert_eq!(fam.injections, fam.copies.len() as u64 * fam.automorphisms);
    }

    #[test]
    fn monochromatic_triangle_has_six_automorphisms() {
        let pat = ColoredCompleteGraph::uniform(3, 3, 2).unwrap();
        let host = ColoredCompleteGraph::uniform(5, 3, 2).unwrap();
        let fam = enumerate_colored_copies(&host, &pat, &EnumLimits::default()).unwrap();
        assert_eq!(fam.automorphisms, 6);
        assert_eq!(fam.copies.len(), 10); // C(5,3)
        assert_eq!(fam.injections, 60);
    }

    #[test]
    fn induced_digraph_copies_respect_absence() {
        // Pattern: single directed edge 0→1 on two vertices.
        let pat = Digraph::from_edges(2, &[(0, 1)]).unwrap();
        // Host: path 0→1→2 plus anti-parallel pair (0,2),(2,0).
        let host = Digraph::from_edges(3, &[(0, 1), (1, 2), (0, 2), (2, 0)]).unwrap();
        let fam = enumerate_induced_copies(&host, &pat, &EnumLimits::default()).unwrap();
        // (0,1) and (1,2) qualify; (0,2) does not, the reverse edge exists.
        assert_eq!(fam.copies, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(fam.automorphisms, 1);
    }

    #[test]
    fn budget_refusal_is_explicit() {
        let host = ColoredCompleteGraph::uniform(30, 3, 1).unwrap();
        let pat = ColoredCompleteGraph::uniform(3, 3, 1).unwrap();
        let limits = EnumLimits { max_pattern_vertices: 5, max_nodes: 100 };
        assert!(matches!(
            enumerate_colored_copies(&host, &pat, &limits),
            Err(EnumError::BudgetExceeded { .. })
        ));
        let big = ColoredCompleteGraph::uniform(6, 3, 1).unwrap();
        assert!(matches!(
            enumerate_colored_copies(&host, &big, &EnumLimits::default()),
            Err(EnumError::PatternTooLarge { vertices: 6, cap: 5 })
        ));
    }

    #[test]
    fn pair_disjoint_detects_shared_pairs() {
        let fam = CopyFamily {
            pattern_vertices: 3,
            copies: vec![vec![0, 1, 2], vec![3, 4, 5], vec![1, 2, 6]],
            injections: 3,
            automorphisms: 1,
        };
        let report = verify_pair_disjoint(&fam);
        assert!(!report.ok);
        assert_eq!(report.violations, vec![(0, 2)]);

        let fam2 = CopyFamily {
            pattern_vertices: 3,
            copies: vec![vec![0, 1, 2], vec![2, 3, 4]],
            injections: 2,
            automorphisms: 1,
        };
        assert!(verify_pair_disjoint(&fam2).ok);
    }
}
