use std::fmt;

use serde::{Serialize, Serializer};

/// A subset of a ground set of at most 64 elements, stored as a bit mask.
///
/// The derived order is not the lexicographic order on sorted index lists;
/// use [`ElementSet::lex_cmp`] for that.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const MAX_ELEMENTS: usize = 64;

    pub const fn empty() -> Self {
        ElementSet(0)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= Self::MAX_ELEMENTS);
        if n == 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        ElementSet(1u64 << e)
    }

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_indices(it: impl IntoIterator<Item = usize>) -> Self {
        it.into_iter().fold(Self::empty(), |s, e| s.with(e))
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> Self {
        ElementSet(self.0 | 1u64 << e)
    }

    pub fn without(self, e: usize) -> Self {
        ElementSet(self.0 & !(1u64 << e))
    }

    pub fn insert(&mut self, e: usize) {
        *self = self.with(e);
    }

    pub fn remove(&mut self, e: usize) {
        *self = self.without(e);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest element plus one, or zero for the empty set.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the sorted index lists.
    pub fn lex_cmp(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElementSet::from_indices(iter)
    }
}
