//! Bit-level storage for subsets and binary relations over carriers of at
//! most [`MAX_ELEMENTS`] elements.
//!
//! A subset is a single `u64` mask; a relation is one mask per row, so that
//! row `x` holds `{ y : (x, y) ∈ R }`.

use smallvec::SmallVec;

/// Largest carrier the kernel accepts.
pub const MAX_ELEMENTS: usize = 64;

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bit positions of `mask` in ascending order.
#[inline]
pub fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

#[inline]
pub fn has(mask: u64, i: usize) -> bool {
    mask >> i & 1 == 1
}

/// Square boolean matrix stored row-major as bitmasks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    rows: SmallVec<[u64; 8]>,
}

impl BitMatrix {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "matrix dimension {n} exceeds {MAX_ELEMENTS}");
        BitMatrix {
            n,
            rows: SmallVec::from_elem(0, n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut m = Self::empty(n);
        let all = full_mask(n);
        m.rows.iter_mut().for_each(|r| *r = all);
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::empty(n);
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        m
    }

    pub fn from_rows(n: usize, rows: &[u64]) -> Self {
        assert_eq!(rows.len(), n);
        let all = full_mask(n);
        BitMatrix {
            n,
            rows: rows.iter().map(|r| r & all).collect(),
        }
    }

    /// Builds a matrix from a flat bit pattern where bit `i * n + j` is the
    /// entry `(i, j)`. Only valid for `n * n <= 64`.
    pub fn from_flat(n: usize, bits: u64) -> Self {
        debug_assert!(n * n <= 64);
        let mut m = Self::empty(n);
        let row = full_mask(n);
        for i in 0..n {
            m.rows[i] = (bits >> (i * n)) & row;
        }
        m
    }

    /// Inverse of [`BitMatrix::from_flat`].
    pub fn to_flat(&self) -> u64 {
        debug_assert!(self.n * self.n <= 64);
        self.rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, r)| acc | (r << (i * self.n)))
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = Self::empty(n);
        for (i, j) in pairs {
            m.set(i, j, true);
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        has(self.rows[i], j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    #[inline]
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    #[inline]
    pub fn set_row(&mut self, i: usize, row: u64) {
        self.rows[i] = row & full_mask(self.n);
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| has(**r, j))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::empty(self.n);
        for (i, j) in self.pairs() {
            t.set(j, i, true);
        }
        t
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| ones(*r).map(move |j| (i, j)))
    }

    pub fn count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| *r == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        let all = full_mask(self.n);
        BitMatrix {
            n: self.n,
            rows: self.rows.iter().map(|r| !r & all).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// First pair of `self` missing from `other`.
    pub fn first_outside(&self, other: &Self) -> Option<(usize, usize)> {
        self.difference(other).pairs().next()
    }

    /// Relational composition: `(x, z)` iff some `y` has `(x, y)` in `self`
    /// and `(y, z)` in `other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::empty(self.n);
        for i in 0..self.n {
            out.rows[i] = ones(self.rows[i]).fold(0, |acc, y| acc | other.rows[y]);
        }
        out
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.n, other.n);
        BitMatrix {
            n: self.n,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| f(*a, *b)).collect(),
        }
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ones_iterates_in_order() {
        assert_eq!(ones(0b1011_0000).collect::<Vec<_>>(), vec![4, 5, 7]);
        assert_eq!(ones(0).count(), 0);
        assert_eq!(ones(u64::MAX).count(), 64);
    }

    #[test]
    fn full_mask_edges() {
        assert_eq!(full_mask(0), 0);
        assert_eq!(full_mask(3), 0b111);
        assert_eq!(full_mask(64), u64::MAX);
    }

    #[test]
    fn compose_matches_definition() {
        let r = BitMatrix::from_pairs(3, [(0, 1), (1, 2)]);
        assert_eq!(r.compose(&r), BitMatrix::from_pairs(3, [(0, 2)]));
    }

    proptest! {
        #[test]
        fn flat_roundtrip(n in 1usize..=8, bits in any::<u64>()) {
            let bits = if n * n == 64 { bits } else { bits & ((1u64 << (n * n)) - 1) };
            prop_assert_eq!(BitMatrix::from_flat(n, bits).to_flat(), bits);
        }

        #[test]
        fn transpose_is_involution(n in 1usize..=8, bits in any::<u64>()) {
            let m = BitMatrix::from_flat(n, bits & if n * n == 64 { u64::MAX } else { (1u64 << (n * n)) - 1 });
            prop_assert_eq!(m.transpose().transpose(), m.clone());
            for j in 0..n {
                prop_assert_eq!(m.transpose().row(j), m.column(j));
            }
        }
    }
}
