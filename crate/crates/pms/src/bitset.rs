//! Fixed-capacity vertex sets backed by machine words.
//!
//! Solvers in this crate are dominated by "how many neighbors of `v` lie in
//! set `S`" queries, so sets are plain `[u64; 8]` bitsets (up to 512
//! vertices) that are `Copy` and cheap to intersect. Graphs larger than the
//! word budget are rejected at construction time with a capacity error.

/// Number of 64-bit words in a [`VertexSet`].
pub const WORDS: usize = 8;

/// Largest vertex count representable by a [`VertexSet`].
pub const MAX_VERTICES: usize = WORDS * 64;

/// A set of vertex ids in `0..MAX_VERTICES`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet { words: [0; WORDS] };

    #[inline]
    pub fn new() -> Self {
        Self::EMPTY
    }

    /// Set containing all of `0..n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        let mut s = Self::EMPTY;
        for v in 0..n {
            s.insert(v as u32);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut s = Self::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, v: u32) {
        debug_assert!((v as usize) < MAX_VERTICES);
        self.words[(v / 64) as usize] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: u32) {
        debug_assert!((v as usize) < MAX_VERTICES);
        self.words[(v / 64) as usize] &= !(1u64 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: u32) -> bool {
        debug_assert!((v as usize) < MAX_VERTICES);
        self.words[(v / 64) as usize] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for i in 0..WORDS {
            out.words[i] |= other.words[i];
        }
        out
    }

    #[inline]
    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for i in 0..WORDS {
            out.words[i] &= other.words[i];
        }
        out
    }

    #[inline]
    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for i in 0..WORDS {
            out.words[i] &= !other.words[i];
        }
        out
    }

    /// Number of elements shared with `other`, without materializing the set.
    #[inline]
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        let mut n = 0usize;
        for i in 0..WORDS {
            n += (self.words[i] & other.words[i]).count_ones() as usize;
        }
        n
    }

    #[inline]
    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    /// The low 64 bits; the whole set when all elements are below 64.
    #[inline]
    pub fn low_word(&self) -> u64 {
        self.words[0]
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(&self) -> Option<u32> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i as u32 * 64 + w.trailing_zeros());
            }
        }
        None
    }

    /// Ascending iterator over elements.
    pub fn iter(&self) -> VertexSetIter {
        VertexSetIter {
            set: *self,
            word: 0,
        }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        VertexSet::from_iter(iter)
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct VertexSetIter {
    set: VertexSet,
    word: usize,
}

impl Iterator for VertexSetIter {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        while self.word < WORDS {
            let w = self.set.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros();
                self.set.words[self.word] &= w - 1;
                return Some(self.word as u32 * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

impl IntoIterator for VertexSet {
    type Item = u32;
    type IntoIter = VertexSetIter;

    fn into_iter(self) -> VertexSetIter {
        self.iter()
    }
}

impl IntoIterator for &VertexSet {
    type Item = u32;
    type IntoIter = VertexSetIter;

    fn into_iter(self) -> VertexSetIter {
        self.iter()
    }
}
