//! Linear-equation families over integer sets, an exhaustive verifier, and
//! two constructions of avoiding sets: an ascending greedy scan and a
//! carry-free digit (sphere-shell) construction filtered through the
//! verifier. Every returned set is verified, so both constructions are sound
//! independently of the arithmetic that motivates them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

/// One forbidden linear pattern over values drawn from the set. In both
/// shapes the variables range over the set independently and only the
/// all-equal assignment is exempt; every other solution is a violation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// Forbid p·s₁ + q·s₂ = (p+q)·s₃ unless s₁ = s₂ = s₃. Two equal
    /// variables force the third equal here, so every violation has three
    /// pairwise distinct values.
    WeightedMean { p: u64, q: u64 },
    /// Forbid s₁ + s₂ + s₃ = 3·s₄ unless all four are equal. Values may
    /// repeat: 1 + 1 + 4 = 3·2 is a violation of {1, 2, 4}.
    TripleMean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquationError {
    /// Weighted-mean coefficients must be at least 1.
    ZeroCoefficient,
    /// weighted_means(f) needs f ≥ 2 to have any coefficients.
    RangeTooSmall { f: usize },
}

impl fmt::Display for EquationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquationError::ZeroCoefficient => write!(f, "coefficients must be positive"),
            EquationError::RangeTooSmall { f: got } => {
                write!(f, "coefficient range needs f >= 2, got {got}")
            }
        }
    }
}

impl core::error::Error for EquationError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationFamily {
    constraints: Vec<Constraint>,
}

impl EquationFamily {
    pub fn new(constraints: Vec<Constraint>) -> Result<Self, EquationError> {
        for c in &constraints {
            if let Constraint::WeightedMean { p, q } = c {
                if *p == 0 || *q == 0 {
                    return Err(EquationError::ZeroCoefficient);
                }
            }
        }
        Ok(EquationFamily { constraints })
    }

    /// s₁ + s₂ = 2·s₃: three-term arithmetic progressions.
    pub fn three_ap() -> Self {
        EquationFamily { constraints: alloc::vec![Constraint::WeightedMean { p: 1, q: 1 }] }
    }

    /// All p·s₁ + q·s₂ = (p+q)·s₃ with 1 ≤ p, q ≤ f−1.
    pub fn weighted_means(f: usize) -> Result<Self, EquationError> {
        if f < 2 {
            return Err(EquationError::RangeTooSmall { f });
        }
        let mut constraints = Vec::new();
        for p in 1..f as u64 {
            for q in 1..f as u64 {
                constraints.push(Constraint::WeightedMean { p, q });
            }
        }
        Ok(EquationFamily { constraints })
    }

    /// s₁ + s₂ + s₃ = 3·s₄.
    pub fn triple_mean() -> Self {
        EquationFamily { constraints: alloc::vec![Constraint::TripleMean] }
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Largest coefficient sum on either side of any constraint; governs the
    /// carry-free digit base.
    pub fn max_coefficient_sum(&self) -> u64 {
        self.constraints
            .iter()
            .map(|c| match c {
                Constraint::WeightedMean { p, q } => p + q,
                Constraint::TripleMean => 3,
            })
            .max()
            .unwrap_or(0)
    }
}

/// A concrete solution found inside a set, in role order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    WeightedMean { p: u64, q: u64, s1: u64, s2: u64, s3: u64 },
    TripleMean { s1: u64, s2: u64, s3: u64, s4: u64 },
}

fn contains(sorted: &[u64], v: u64) -> bool {
    sorted.binary_search(&v).is_ok()
}

/// Exhaustively checks every constraint instance, exempting only all-equal
/// assignments. None means the set avoids the whole family. The witness is
/// the first solution in a fixed deterministic scan order.
pub fn verify_avoiding_set(set: &[u64], fam: &EquationFamily) -> Option<Violation> {
    let mut s: Vec<u64> = set.to_vec();
    s.sort_unstable();
    s.dedup();
    for c in &fam.constraints {
        match *c {
            Constraint::WeightedMean { p, q } => {
                for &s1 in &s {
                    for &s2 in &s {
                        if s1 == s2 {
                            continue;
                        }
                        let num = p * s1 + q * s2;
                        if num % (p + q) != 0 {
                            continue;
                        }
                        let s3 = num / (p + q);
                        if s3 != s1 && s3 != s2 && contains(&s, s3) {
                            return Some(Violation::WeightedMean { p, q, s1, s2, s3 });
                        }
                    }
                }
            }
            Constraint::TripleMean => {
                // Pair-sum index over s1 ≤ s2 (repeats included) keeps this
                // quadratic instead of cubic.
                let mut sums: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
                for (i, &s1) in s.iter().enumerate() {
                    for &s2 in &s[i..] {
                        sums.entry(s1 + s2).or_default().push((s1, s2));
                    }
                }
                for &s4 in &s {
                    for &s3 in &s {
                        if 3 * s4 < s3 {
                            continue;
                        }
                        if let Some(pairs) = sums.get(&(3 * s4 - s3)) {
                            for &(s1, s2) in pairs {
                                if !(s1 == s2 && s2 == s3 && s3 == s4) {
                                    return Some(Violation::TripleMean { s1, s2, s3, s4 });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Any solution that uses candidate `x` together with elements of the
/// (sorted, x-free) set. With the set inductively clean, this is the whole
/// incremental check.
fn check_with(set: &[u64], x: u64, fam: &EquationFamily) -> bool {
    for c in &fam.constraints {
        match *c {
            Constraint::WeightedMean { p, q } => {
                let whole = p + q;
                // x as s1 or s2.
                for &y in set {
                    let n1 = p * x + q * y;
                    if n1 % whole == 0 {
                        let s3 = n1 / whole;
                        if s3 != x && s3 != y && contains(set, s3) {
                            return true;
                        }
                    }
                    let n2 = p * y + q * x;
                    if n2 % whole == 0 {
                        let s3 = n2 / whole;
                        if s3 != x && s3 != y && contains(set, s3) {
                            return true;
                        }
                    }
                    // x as s3.
                    let rhs = whole * x;
                    if rhs > p * y && (rhs - p * y) % q == 0 {
                        let s2 = (rhs - p * y) / q;
                        if s2 != y && s2 != x && contains(set, s2) {
                            return true;
                        }
                    }
                }
            }
            Constraint::TripleMean => {
                // Work over the set with x inserted: left-hand variables may
                // repeat values, x included.
                let pos = set.partition_point(|&v| v < x);
                let mut t: Vec<u64> = Vec::with_capacity(set.len() + 1);
                t.extend_from_slice(&set[..pos]);
                t.push(x);
                t.extend_from_slice(&set[pos..]);
                // x as the mean: s1 + s2 + s3 = 3x, all-equal exempt.
                for (i, &s1) in t.iter().enumerate() {
                    for &s2 in &t[i..] {
                        if s1 + s2 > 3 * x {
                            break;
                        }
                        let s3 = 3 * x - s1 - s2;
                        if s3 < s2 {
                            break;
                        }
                        if contains(&t, s3) && !(s1 == s2 && s2 == s3 && s3 == x) {
                            return true;
                        }
                    }
                }
                // x on the left, mean from the set: x ≠ s4 rules out the
                // all-equal assignment, so any hit is a violation.
                for &s4 in set {
                    let target = 3 * s4;
                    if target <= x {
                        continue;
                    }
                    let rem = target - x;
                    for &s2 in &t {
                        if 2 * s2 > rem {
                            break;
                        }
                        if contains(&t, rem - s2) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetMethod {
    /// Scan 1..m ascending, keeping every element that preserves avoidance.
    ExhaustiveGreedy,
    /// Carry-free digit vectors of one squared-norm shell, shifted into
    /// [1..m], filtered through the verifier, then greedily topped up for
    /// small m.
    Behrend,
}

/// Builds a subset of [1..m] avoiding every constraint of the family. Both
/// methods feed candidates through the same incremental filter, so the
/// result always passes `verify_avoiding_set`.
pub fn avoiding_set(m: u64, fam: &EquationFamily, method: SetMethod) -> Vec<u64> {
    let mut set: Vec<u64> = Vec::new();
    match method {
        SetMethod::ExhaustiveGreedy => {
            for x in 1..=m {
                if !check_with(&set, x, fam) {
                    set.push(x);
                }
            }
        }
        SetMethod::Behrend => {
            for x in behrend_candidates(m, fam) {
                if !check_with(&set, x, fam) {
                    set.push(x); // candidates ascend, so push keeps order
                }
            }
            // Greedy top-up: worthwhile and affordable only at small m.
            if m <= 4096 {
                for x in 1..=m {
                    if contains(&set, x) {
                        continue;
                    }
                    if !check_with(&set, x, fam) {
                        let pos = set.partition_point(|&v| v < x);
                        set.insert(pos, x);
                    }
                }
            }
        }
    }
    debug_assert!(verify_avoiding_set(&set, fam).is_none());
    set
}

/// Digit construction: base B = C·(D−1)+1 admits no carries when a
/// constraint with coefficient sum ≤ C is evaluated digit-wise, and on a
/// fixed squared-norm shell the triangle inequality is tight only when all
/// left-hand points coincide with the mean point, which is exactly the
/// exempt all-equal assignment. The +1 shift into [1..m] is invariant for
/// every constraint because both sides carry the same coefficient sum.
fn behrend_candidates(m: u64, fam: &EquationFamily) -> Vec<u64> {
    if m == 0 {
        return Vec::new();
    }
    let c = fam.max_coefficient_sum();
    if c == 0 {
        // No constraints: everything qualifies.
        return (1..=m).collect();
    }
    let cap: u128 = c as u128 * (m as u128 - 1) + 1;

    // Pick digit count and digit range maximizing the densest shell.
    let mut best: Option<(u64, usize, usize, usize)> = None; // (count, d, nd, r)
    for d in 2usize..=64 {
        let base = c as u128 * (d as u128 - 1) + 1;
        let mut nd = 0usize;
        let mut power: u128 = 1;
        while power <= cap / base {
            power *= base;
            nd += 1;
        }
        if nd == 0 {
            continue;
        }
        // counts[s] = digit vectors of length nd with squared norm s
        let max_norm = nd * (d - 1) * (d - 1);
        let mut counts: Vec<u64> = alloc::vec![0; max_norm + 1];
        counts[0] = 1;
        for _ in 0..nd {
            let mut next: Vec<u64> = alloc::vec![0; max_norm + 1];
            for (s, &cnt) in counts.iter().enumerate() {
                if cnt == 0 {
                    continue;
                }
                for digit in 0..d {
                    let ns = s + digit * digit;
                    if ns <= max_norm {
                        next[ns] = next[ns].saturating_add(cnt);
                    }
                }
            }
            counts = next;
        }
        for (r, &cnt) in counts.iter().enumerate() {
            let better = match best {
                None => cnt > 0,
                Some((bc, _, _, _)) => cnt > bc,
            };
            if better {
                best = Some((cnt, d, nd, r));
            }
        }
    }
    let Some((_, d, nd, r)) = best else {
        return Vec::new();
    };
    let base = c * (d as u64 - 1) + 1;

    // Enumerate the shell, most significant digit first: values ascend.
    let mut values: Vec<u64> = Vec::new();
    let mut digits: Vec<usize> = alloc::vec![0; nd];
    enumerate_shell(d, nd, r, 0, &mut digits, &mut values, base, m);
    values
}

fn enumerate_shell(
    d: usize,
    nd: usize,
    remaining: usize,
    pos: usize,
    digits: &mut Vec<usize>,
    out: &mut Vec<u64>,
    base: u64,
    m: u64,
) {
    if pos == nd {
        if remaining == 0 {
            let mut v: u64 = 0;
            for &dg in digits.iter() {
                v = v * base + dg as u64;
            }
            if v + 1 <= m {
                out.push(v + 1);
            }
        }
        return;
    }
    let slots_left = nd - pos - 1;
    let max_rest = slots_left * (d - 1) * (d - 1);
    for digit in 0..d {
        let sq = digit * digit;
        if sq > remaining || remaining - sq > max_rest {
            continue;
        }
        digits[pos] = digit;
        enumerate_shell(d, nd, remaining - sq, pos + 1, digits, out, base, m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_on_smallest_ap() {
        let fam = EquationFamily::three_ap();
        assert_eq!(
            verify_avoiding_set(&[1, 2, 3], &fam),
            Some(Violation::WeightedMean { p: 1, q: 1, s1: 1, s2: 3, s3: 2 })
        );
    }

    #[test]
    fn two_elements_avoid_everything() {
        for fam in [
            EquationFamily::three_ap(),
            EquationFamily::weighted_means(4).unwrap(),
            EquationFamily::triple_mean(),
        ] {
            assert_eq!(verify_avoiding_set(&[1, 2], &fam), None);
            assert_eq!(avoiding_set(2, &fam, SetMethod::ExhaustiveGreedy), alloc::vec![1, 2]);
        }
    }

    #[test]
    fn greedy_matches_hand_run_at_nine() {
        // Scan of 1..9: 3 kills (1,3,2); 6 kills (2,6,4); 7 kills (1,7,4);
        // 8 kills (2,8,5); 9 kills (1,9,5).
        let fam = EquationFamily::three_ap();
        let s = avoiding_set(9, &fam, SetMethod::ExhaustiveGreedy);
        assert_eq!(s, alloc::vec![1, 2, 4, 5]);
        assert_eq!(verify_avoiding_set(&s, &fam), None);
    }

    #[test]
    fn greedy_verified_for_all_small_ranges() {
        let fams = [
            EquationFamily::three_ap(),
            EquationFamily::weighted_means(3).unwrap(),
            EquationFamily::triple_mean(),
        ];
        for fam in &fams {
            for m in [1u64, 5, 17, 64] {
                let s = avoiding_set(m, fam, SetMethod::ExhaustiveGreedy);
                assert!(verify_avoiding_set(&s, fam).is_none());
                assert!(s.iter().all(|&x| 1 <= x && x <= m));
                assert!(!s.is_empty() || m == 0);
            }
        }
    }

    #[test]
    fn behrend_verified_and_dense_enough() {
        let fam = EquationFamily::three_ap();
        let s = avoiding_set(10_000, &fam, SetMethod::Behrend);
        assert!(verify_avoiding_set(&s, &fam).is_none());
        assert!(s.len() >= 16, "suspiciously sparse: {}", s.len());
        assert!(s.iter().all(|&x| 1 <= x && x <= 10_000));
        let s2 = avoiding_set(10_000, &fam, SetMethod::Behrend);
        assert_eq!(s, s2);
    }

    #[test]
    fn behrend_handles_other_families() {
        for fam in [EquationFamily::weighted_means(4).unwrap(), EquationFamily::triple_mean()] {
            let s = avoiding_set(2000, &fam, SetMethod::Behrend);
            assert!(verify_avoiding_set(&s, &fam).is_none());
            assert!(!s.is_empty());
        }
    }

    #[test]
    fn weighted_family_shape() {
        let fam = EquationFamily::weighted_means(3).unwrap();
        assert_eq!(
            fam.constraints(),
            &[
                Constraint::WeightedMean { p: 1, q: 1 },
                Constraint::WeightedMean { p: 1, q: 2 },
                Constraint::WeightedMean { p: 2, q: 1 },
                Constraint::WeightedMean { p: 2, q: 2 },
            ]
        );
        assert_eq!(fam.max_coefficient_sum(), 4);
        assert!(EquationFamily::weighted_means(1).is_err());
        assert!(EquationFamily::new(alloc::vec![Constraint::WeightedMean { p: 0, q: 1 }])
            .is_err());
    }

    #[test]
    fn triple_mean_detects_solutions() {
        // 1 + 2 + 6 = 9 = 3·3, all four distinct.
        let fam = EquationFamily::triple_mean();
        assert!(verify_avoiding_set(&[1, 2, 3, 6], &fam).is_some());
        // 1 + 4 + 1 = 6 = 3·2: repeated values count, so 4 is a violation
        // even though no four distinct elements solve the equation.
        assert_eq!(
            verify_avoiding_set(&[1, 2, 3, 4, 5], &fam),
            Some(Violation::TripleMean { s1: 1, s2: 4, s3: 1, s4: 2 })
        );
        assert_eq!(verify_avoiding_set(&[1, 2, 5, 6], &fam), None);
        assert_eq!(
            avoiding_set(6, &fam, SetMethod::ExhaustiveGreedy),
            alloc::vec![1, 2, 5, 6]
        );
    }
}
