//! Fixed-domain bitsets used for map classes and object sets.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

const WORD_BITS: usize = 64;

type Words = SmallVec<[u64; 2]>;

/// A set of indices `0..domain` packed into 64-bit words.
///
/// Two bitsets compare equal only when they share a domain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    domain: usize,
    words: Words,
}

impl BitSet {
    pub fn empty(domain: usize) -> Self {
        Self {
            domain,
            words: SmallVec::from_elem(0, domain.div_ceil(WORD_BITS)),
        }
    }

    pub fn full(domain: usize) -> Self {
        let mut set = Self::empty(domain);
        for (i, word) in set.words.iter_mut().enumerate() {
            let lo = i * WORD_BITS;
            let n = (domain - lo).min(WORD_BITS);
            *word = if n == WORD_BITS { !0 } else { (1u64 << n) - 1 };
        }
        set
    }

    pub fn from_indices(domain: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(domain);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Builds the set whose members are the set bits of `mask`, for domains up to 64.
    pub fn from_mask(domain: usize, mask: u64) -> Self {
        assert!(domain <= WORD_BITS, "from_mask needs a domain of at most 64");
        let mut set = Self::empty(domain);
        if domain > 0 {
            set.words[0] = mask & Self::full(domain).words[0];
        }
        set
    }

    #[inline]
    pub fn domain(&self) -> usize {
        self.domain
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.domain);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.domain, "index {i} outside domain {}", self.domain);
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        assert!(i < self.domain, "index {i} outside domain {}", self.domain);
        self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_domain(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_domain(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check_domain(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    pub fn complement(&self) -> Self {
        Self::full(self.domain).difference(self)
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_domain(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_domain(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Lexicographic order on the bit string `b0 b1 b2 ...` (with `0 < 1`).
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.check_domain(other);
        for (a, b) in self.words.iter().zip(&other.words) {
            if a != b {
                return a.reverse_bits().cmp(&b.reverse_bits());
            }
        }
        Ordering::Equal
    }

    #[inline]
    fn check_domain(&self, other: &Self) {
        assert_eq!(
            self.domain, other.domain,
            "bitset domains differ ({} vs {})",
            self.domain, other.domain
        );
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl<'a> IntoIterator for &'a BitSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}
