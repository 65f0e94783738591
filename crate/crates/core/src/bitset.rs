//! Fixed-capacity bit sets over dense `usize` ids.

use std::fmt;

const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A set of ids drawn from `0..capacity`, stored one bit per id.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    capacity: usize,
}

impl BitSet {
    pub fn new(capacity: usize) -> Self {
        BitSet {
            words: vec![0; words_for(capacity)],
            capacity,
        }
    }

    /// The set `{0, .., capacity - 1}`.
    pub fn full(capacity: usize) -> Self {
        let mut set = BitSet::new(capacity);
        for id in 0..capacity {
            set.insert(id);
        }
        set
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(capacity: usize, ids: I) -> Self {
        let mut set = BitSet::new(capacity);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Inserts `id`, returning `true` if it was absent.
    ///
    /// Panics if `id >= capacity`.
    pub fn insert(&mut self, id: usize) -> bool {
        assert!(id < self.capacity, "id {id} out of range {}", self.capacity);
        let (w, b) = (id / WORD, id % WORD);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, id: usize) -> bool {
        if id >= self.capacity {
            return false;
        }
        let (w, b) = (id / WORD, id % WORD);
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        present
    }

    #[inline]
    pub fn contains(&self, id: usize) -> bool {
        id < self.capacity && self.words[id / WORD] & (1 << (id % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones::new(&self.words)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// `|self ∩ other|`; the sets may have different capacities.
    pub fn intersection_count(&self, other: &BitSet) -> usize {
        count_common(&self.words, &other.words)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == 0)
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub(crate) fn count_common(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

/// Iterator over the set bits of a word slice, ascending.
pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl<'a> Ones<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        Ones {
            words,
            index: 0,
            current: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}
