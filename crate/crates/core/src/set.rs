//! Element indices and bit-vector element sets.

use std::fmt;

use fixedbitset::FixedBitSet;

/// An element of a finite ring, identified by its dense carrier index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, serde::Serialize)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl From<u32> for Elem {
    fn from(v: u32) -> Self {
        Elem(v)
    }
}

/// A subset of a ring's carrier stored as a bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet { bits: FixedBitSet::with_capacity(universe) }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElementSet { bits }
    }

    pub fn from_iter_in(universe: usize, it: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty(universe);
        for e in it {
            s.insert(e);
        }
        s
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.bits.contains(e.idx())
    }

    #[inline]
    pub fn insert(&mut self, e: Elem) -> bool {
        !self.bits.put(e.idx())
    }

    #[inline]
    pub fn remove(&mut self, e: Elem) {
        self.bits.set(e.idx(), false);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.ones().map(|i| Elem(i as u32))
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn first(&self) -> Option<Elem> {
        self.bits.ones().next().map(|i| Elem(i as u32))
    }

    /// Raw block view, used for hashing and deduplication of ideals.
    pub fn blocks(&self) -> &[fixedbitset::Block] {
        self.bits.as_slice()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|e| e.0)).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_len() {
        let mut s = ElementSet::empty(10);
        assert!(s.insert(Elem(3)));
        assert!(!s.insert(Elem(3)));
        s.insert(Elem(7));
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_vec(), vec![Elem(3), Elem(7)]);
        assert!(s.is_subset(&ElementSet::full(10)));
        s.remove(Elem(3));
        assert_eq!(s.first(), Some(Elem(7)));
    }
}
