//! Packed bitsets over a fixed universe `0..len`.

use std::fmt;

pub(crate) const WORD_BITS: usize = 64;

/// Number of 64-bit words needed to hold `nbits` bits.
#[inline]
pub(crate) const fn words_for(nbits: usize) -> usize {
    nbits.div_ceil(WORD_BITS)
}

/// Mask of the valid bits in the last word of an `nbits`-wide set.
#[inline]
pub(crate) fn tail_mask(nbits: usize) -> u64 {
    match nbits % WORD_BITS {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

#[inline]
pub(crate) fn low_mask(nbits: usize) -> u64 {
    if nbits >= WORD_BITS {
        u64::MAX
    } else {
        (1u64 << nbits) - 1
    }
}

#[inline]
pub(crate) fn count_words(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub(crate) fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// A set of indices in `0..len`, stored as little-endian packed words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitset {
    len: usize,
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset { len, words: vec![0; words_for(len)] }
    }

    pub fn full(len: usize) -> Self {
        let mut words = vec![u64::MAX; words_for(len)];
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        Bitset { len, words }
    }

    /// Builds a set from indices; returns the first out-of-range index as error.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Result<Self, usize> {
        let mut b = Bitset::new(len);
        for i in indices {
            if i >= len {
                return Err(i);
            }
            b.insert(i);
        }
        Ok(b)
    }

    /// Wraps raw words. Bits beyond `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        Bitset { len, words }
    }

    /// Universe size.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range 0..{}", self.len);
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
        }
    }

    pub fn count_ones(&self) -> usize {
        count_words(&self.words)
    }

    pub fn intersection_count(&self, other: &Bitset) -> usize {
        and_count(&self.words, &other.words)
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones { words: &self.words, idx: 0, cur: self.words.first().copied().unwrap_or(0) }
    }
}

impl fmt::Debug for Bitset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the set bits of a word slice, ascending.
pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> Ones<'a> {
    pub(crate) fn over(words: &'a [u64]) -> Self {
        Ones { words, idx: 0, cur: words.first().copied().unwrap_or(0) }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD_BITS + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Iterates all `k`-subsets of `0..n` (n <= 64) as masks, in increasing numeric order.
pub(crate) struct Combinations {
    cur: u64,
    limit: u64,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        assert!(n <= 64);
        if k > n {
            return Combinations { cur: 0, limit: 0, done: true };
        }
        let cur = low_mask(k);
        let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Combinations { cur, limit, done: false }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let out = self.cur;
        if out == 0 {
            self.done = true;
            return Some(0);
        }
        // Gosper's hack
        let c = out & out.wrapping_neg();
        let r = out.wrapping_add(c);
        if r == 0 || r & !self.limit != 0 {
            self.done = true;
        } else {
            self.cur = (((r ^ out) >> 2) / c) | r;
            if self.cur & !self.limit != 0 {
                self.done = true;
                return Some(out);
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_masks_tail() {
        let b = Bitset::full(70);
        assert_eq!(b.count_ones(), 70);
        assert_eq!(b.words().len(), 2);
        assert!(b.contains(69));
        assert!(!b.contains(70));
    }

    #[test]
    fn ones_iterates_ascending() {
        let b = Bitset::from_indices(130, [0, 5, 64, 127, 129]).unwrap();
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 5, 64, 127, 129]);
        assert_eq!(Bitset::from_indices(3, [3]), Err(3));
    }

    #[test]
    fn combinations_count_binomials() {
        for n in 0..=10usize {
            for k in 0..=n {
                let all: Vec<u64> = Combinations::new(n, k).collect();
                let expect = (0..(1u64 << n)).filter(|x| x.count_ones() as usize == k).count();
                assert_eq!(all.len(), expect, "n={n} k={k}");
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                assert!(all.iter().all(|x| x.count_ones() as usize == k && *x >> n == 0));
            }
        }
        assert_eq!(Combinations::new(64, 64).collect::<Vec<_>>(), vec![u64::MAX]);
        assert_eq!(Combinations::new(3, 4).count(), 0);
    }
}
