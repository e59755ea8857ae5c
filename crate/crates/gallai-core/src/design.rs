//! Families of d-tuples over [1..p], any two agreeing in at most one
//! coordinate, built from arithmetic progressions modulo a prime. Used to
//! plant many pair-disjoint pattern copies inside a blowup.

use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DesignError {
    /// Needs d ≥ 2 and r ≥ 2d.
    RangeTooSmall { r: usize, d: usize },
    /// Tuple entries are u16; r beyond that is out of scope.
    RangeTooLarge { r: usize },
    /// No prime in (r/2, r]. Cannot happen for r ≥ 2; defensive.
    NoPrime { r: usize },
    /// Two tuples agreeing in two coordinates. Never fires for d ≤ p.
    Integrity { first: usize, second: usize },
}

impl fmt::Display for DesignError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignError::RangeTooSmall { r, d } => {
                write!(f, "need d >= 2 and r >= 2d, got r={r}, d={d}")
            }
            DesignError::RangeTooLarge { r } => write!(f, "range {r} exceeds u16"),
            DesignError::NoPrime { r } => write!(f, "no prime in ({}, {r}]", r / 2),
            DesignError::Integrity { first, second } => {
                write!(f, "tuples {first} and {second} agree in two coordinates")
            }
        }
    }
}

impl core::error::Error for DesignError {}

/// p² tuples over [1..p] ⊆ [1..r], pairwise agreeing in at most one
/// coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignFamily {
    pub r: usize,
    pub d: usize,
    pub p: usize,
    /// Tuple (a,b) at index a·p + b has entries ((a + i·b) mod p) + 1.
    pub tuples: Vec<Vec<u16>>,
}

fn is_prime(x: usize) -> bool {
    if x < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= x {
        if x % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

/// Builds the modular-progression family for range r and arity d. The prime
/// is the smallest one in (r/2, r], so p² > (r/2)², and d ≤ r/2 < p keeps
/// the progression indexes distinct mod p, which is exactly the at-most-one
/// agreement property.
pub fn design_family(r: usize, d: usize) -> Result<DesignFamily, DesignError> {
    if d < 2 || r < 2 * d {
        return Err(DesignError::RangeTooSmall { r, d });
    }
    if r > u16::MAX as usize {
        return Err(DesignError::RangeTooLarge { r });
    }
    let p = (r / 2 + 1..=r).find(|&x| is_prime(x)).ok_or(DesignError::NoPrime { r })?;

    let mut tuples = Vec::with_capacity(p * p);
    for a in 0..p {
        for b in 0..p {
            let tuple: Vec<u16> = (0..d).map(|i| ((a + i * b) % p + 1) as u16).collect();
            tuples.push(tuple);
        }
    }

    if p <= 200 {
        verify_agreement(&tuples, d)?;
    }
    Ok(DesignFamily { r, d, p, tuples })
}

/// Exhaustive agreement check, organized per coordinate pair: two tuples
/// agree in coordinates i and j iff their (value_i, value_j) projections
/// collide, so scanning every coordinate pair for a projection collision
/// covers every tuple pair.
fn verify_agreement(tuples: &[Vec<u16>], d: usize) -> Result<(), DesignError> {
    for i in 0..d {
        for j in i + 1..d {
            let mut seen: Vec<(u16, u16, usize)> =
                tuples.iter().enumerate().map(|(t, tup)| (tup[i], tup[j], t)).collect();
            seen.sort_unstable();
            for w in seen.windows(2) {
                if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                    return Err(DesignError::Integrity { first: w[0].2, second: w[1].2 });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_agreement(fam: &DesignFamily) -> usize {
        let mut worst = 0;
        for i in 0..fam.tuples.len() {
            for j in i + 1..fam.tuples.len() {
                let agree = fam.tuples[i]
                    .iter()
                    .zip(&fam.tuples[j])
                    .filter(|(x, y)| x == y)
                    .count();
                worst = worst.max(agree);
            }
        }
        worst
    }

    #[test]
    fn smallest_example() {
        let fam = design_family(4, 2).unwrap();
        assert_eq!(fam.p, 3);
        assert_eq!(fam.tuples.len(), 9);
        assert!(fam.tuples.len() >= (4 / 2) * (4 / 2));
        assert!(max_agreement(&fam) <= 1);
    }

    #[test]
    fn arity_three_example() {
        let fam = design_family(8, 3).unwrap();
        assert_eq!(fam.p, 5);
        assert_eq!(fam.tuples.len(), 25);
        assert!(fam.tuples.len() >= 16);
        assert!(max_agreement(&fam) <= 1);
    }

    #[test]
    fn precondition_rejected() {
        assert_eq!(design_family(3, 2), Err(DesignError::RangeTooSmall { r: 3, d: 2 }));
        assert_eq!(design_family(10, 1), Err(DesignError::RangeTooSmall { r: 10, d: 1 }));
    }

    #[test]
    fn entries_stay_in_range() {
        let fam = design_family(20, 4).unwrap();
        assert_eq!(fam.p, 11);
        for t in &fam.tuples {
            assert_eq!(t.len(), 4);
            assert!(t.iter().all(|&v| 1 <= v && v as usize <= fam.p));
        }
    }

    #[test]
    fn direct_pairwise_oracle_on_medium_sizes() {
        for (r, d) in [(6, 2), (10, 3), (12, 5), (16, 8)] {
            let fam = design_family(r, d).unwrap();
            assert!(max_agreement(&fam) <= 1, "r={r} d={d}");
            assert!(fam.tuples.len() * 4 >= r * r, "p² ≥ (r/2)² for r={r}");
        }
    }
}
