//! Fixed-universe bit set used for product sets and search masks.
//!
//! Bits past `len` are kept at zero so popcounts never need masking.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitSet {
    len: u64,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: u64) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(64) as usize],
        }
    }

    /// Sets bit `i`; returns true when it was previously clear.
    pub fn insert(&mut self, i: u64) -> bool {
        debug_assert!(i < self.len);
        let (w, b) = (i as usize / 64, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, i: u64) {
        debug_assert!(i < self.len);
        self.words[i as usize / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: u64) -> bool {
        debug_assert!(i < self.len);
        self.words[i as usize / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn or_assign(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Number of bits set in `self` but clear in `other`.
    pub fn count_not_in(&self, other: &BitSet) -> u64 {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & !b).count_ones() as u64)
            .sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }

    pub fn zeros(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).filter(move |&i| !self.contains(i))
    }
}
