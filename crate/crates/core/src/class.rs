//! Map classes and object sets over a fixed lattice.
//!
//! Both are plain bitsets. A [`MapClass`] is indexed by the lattice's
//! canonical enumeration of comparable pairs, an [`ObjectSet`] by object
//! index. Neither carries a reference to its lattice; the lattice that
//! produced a class is the one that interprets it.

use std::cmp::Ordering;
use std::fmt;

use crate::bitset::{BitSet, Iter};

macro_rules! bitset_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, Hash)]
        pub struct $name(BitSet);

        impl $name {
            pub fn empty(domain: usize) -> Self {
                Self(BitSet::empty(domain))
            }

            pub fn full(domain: usize) -> Self {
                Self(BitSet::full(domain))
            }

            pub fn from_indices(domain: usize, indices: impl IntoIterator<Item = usize>) -> Self {
                Self(BitSet::from_indices(domain, indices))
            }

            pub fn from_mask(domain: usize, mask: u64) -> Self {
                Self(BitSet::from_mask(domain, mask))
            }

            #[inline]
            pub fn domain(&self) -> usize {
                self.0.domain()
            }

            #[inline]
            pub fn contains(&self, i: usize) -> bool {
                self.0.contains(i)
            }

            #[inline]
            pub fn insert(&mut self, i: usize) {
                self.0.insert(i)
            }

            #[inline]
            pub fn remove(&mut self, i: usize) {
                self.0.remove(i)
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn is_subset(&self, other: &Self) -> bool {
                self.0.is_subset(&other.0)
            }

            pub fn union(&self, other: &Self) -> Self {
                Self(self.0.union(&other.0))
            }

            pub fn intersection(&self, other: &Self) -> Self {
                Self(self.0.intersection(&other.0))
            }

            pub fn difference(&self, other: &Self) -> Self {
                Self(self.0.difference(&other.0))
            }

            pub fn complement(&self) -> Self {
                Self(self.0.complement())
            }

            pub fn intersect_with(&mut self, other: &Self) {
                self.0.intersect_with(&other.0)
            }

            pub fn union_with(&mut self, other: &Self) {
                self.0.union_with(&other.0)
            }

            pub fn first(&self) -> Option<usize> {
                self.0.first()
            }

            pub fn iter(&self) -> Iter<'_> {
                self.0.iter()
            }

            /// Lexicographic order on the membership bit string.
            pub fn lex_cmp(&self, other: &Self) -> Ordering {
                self.0.lex_cmp(&other.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Debug::fmt(&self.0, f)
            }
        }

        impl<'a> IntoIterator for &'a $name {
            type Item = usize;
            type IntoIter = Iter<'a>;

            fn into_iter(self) -> Iter<'a> {
                self.0.iter()
            }
        }
    };
}

bitset_newtype!(
    /// A set of maps (comparable pairs) of one lattice, indexed by map index.
    MapClass
);

bitset_newtype!(
    /// A set of objects of one lattice, indexed by object index.
    ObjectSet
);
