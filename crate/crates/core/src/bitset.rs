//! Bit-mask sets used for member sets (over ground elements) and index sets
//! (over member positions).

use smallvec::SmallVec;
use std::fmt;

const WORD: usize = 64;

/// A set of ground elements stored as a bit-mask.
///
/// Ground sets of up to 64 elements fit in a single inline word; larger ground
/// sets spill into additional words on the heap.
#[derive(Clone, Default)]
pub struct ElementSet {
    words: SmallVec<[u64; 1]>,
}

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        let n = bits.div_ceil(WORD).max(1);
        ElementSet {
            words: SmallVec::from_elem(0, n),
        }
    }

    pub fn from_word(word: u64) -> Self {
        let mut words = SmallVec::new();
        words.push(word);
        ElementSet { words }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        let mut set = ElementSet::new();
        for x in elements {
            set.insert(x);
        }
        set
    }

    /// The single-word representation, when every element is below 64.
    #[inline]
    pub fn as_word(&self) -> Option<u64> {
        match self.words.split_first() {
            None => Some(0),
            Some((&w, rest)) if rest.iter().all(|&r| r == 0) => Some(w),
            _ => None,
        }
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.words
            .get(x / WORD)
            .is_some_and(|w| w >> (x % WORD) & 1 == 1)
    }

    pub fn insert(&mut self, x: usize) -> bool {
        let (wi, bit) = (x / WORD, x % WORD);
        if self.words.len() <= wi {
            self.words.resize(wi + 1, 0);
        }
        let was = self.words[wi] >> bit & 1 == 1;
        self.words[wi] |= 1 << bit;
        !was
    }

    pub fn remove(&mut self, x: usize) -> bool {
        let (wi, bit) = (x / WORD, x % WORD);
        match self.words.get_mut(wi) {
            Some(w) if *w >> bit & 1 == 1 => {
                *w &= !(1 << bit);
                true
            }
            _ => false,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| BitIter(w).map(move |b| wi * WORD + b))
    }

    /// Set-equality that ignores trailing zero words.
    pub fn same_elements(&self, other: &ElementSet) -> bool {
        let n = self.words.len().max(other.words.len());
        (0..n).all(|i| {
            self.words.get(i).copied().unwrap_or(0) == other.words.get(i).copied().unwrap_or(0)
        })
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.same_elements(other)
    }
}

impl Eq for ElementSet {}

impl std::hash::Hash for ElementSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let used = self
            .words
            .iter()
            .rposition(|&w| w != 0)
            .map_or(0, |p| p + 1);
        self.words[..used].hash(state);
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        ElementSet::from_elements(iter)
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// Maximum number of members a family may have; index sets are one word.
pub const MAX_MEMBERS: usize = 64;

/// A subset of member positions `[0, n)`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet(pub u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            IndexSet(u64::MAX)
        } else {
            IndexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        IndexSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        IndexSet(indices.into_iter().fold(0, |acc, i| acc | 1 << i))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 & !other.0)
    }

    /// Complement within `[0, n)`.
    #[inline]
    pub fn complement(self, n: usize) -> IndexSet {
        IndexSet(!self.0 & IndexSet::full(n).0)
    }

    #[inline]
    pub fn is_subset(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        BitIter(self.0)
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
