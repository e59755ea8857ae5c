//! Bit-matrix rows backing the triangle-counting kernels.

use alloc::vec;
use alloc::vec::Vec;

/// Square 0/1 matrix stored as 64-bit words, one row per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitRows {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitRows { n, words, data: vec![0; n * words] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize) {
        debug_assert!(r < self.n && c < self.n);
        self.data[r * self.words + c / 64] |= 1u64 << (c % 64);
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.n && c < self.n);
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        debug_assert!(r < self.n);
        &self.data[r * self.words..(r + 1) * self.words]
    }
}

/// Number of positions strictly above `from` that are set in both rows.
#[inline]
pub fn and_count_above(a: &[u64], b: &[u64], from: usize) -> u64 {
    debug_assert_eq!(a.len(), b.len());
    let lo = from + 1;
    let w0 = lo / 64;
    if w0 >= a.len() {
        return 0;
    }
    let first_mask = !0u64 << (lo % 64);
    let mut total = (a[w0] & b[w0] & first_mask).count_ones() as u64;
    for w in w0 + 1..a.len() {
        total += (a[w] & b[w]).count_ones() as u64;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_roundtrip() {
        let mut m = BitRows::new(130);
        m.set(0, 0);
        m.set(5, 129);
        m.set(129, 64);
        assert!(m.get(0, 0));
        assert!(m.get(5, 129));
        assert!(m.get(129, 64));
        assert!(!m.get(0, 1));
        assert!(!m.get(129, 63));
    }

    #[test]
    fn and_count_respects_threshold() {
        let mut a = BitRows::new(200);
        let mut b = BitRows::new(200);
        for c in [3usize, 64, 65, 127, 199] {
            a.set(0, c);
            b.set(1, c);
        }
        b.set(1, 4); // only in b
        assert_eq!(and_count_above(a.row(0), b.row(1), 0), 5);
        assert_eq!(and_count_above(a.row(0), b.row(1), 3), 4);
        assert_eq!(and_count_above(a.row(0), b.row(1), 64), 3);
        assert_eq!(and_count_above(a.row(0), b.row(1), 198), 1);
        assert_eq!(and_count_above(a.row(0), b.row(1), 199), 0);
    }
}
