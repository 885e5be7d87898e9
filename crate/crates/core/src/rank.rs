//! Plain bit vector with constant-time exclusive rank.

use crate::error::{Error, Result};

const WORD: usize = 64;
const BLOCK_WORDS: usize = 8; // 512-bit blocks

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MarkBits {
    words: Vec<u64>,
    len: usize,
    ones: usize,
}

impl MarkBits {
    pub fn new(len: usize) -> Self {
        MarkBits { words: vec![0; len.div_ceil(WORD)], len, ones: 0 }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn ones(&self) -> usize {
        self.ones
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        let w = &mut self.words[i / WORD];
        let mask = 1u64 << (i % WORD);
        if *w & mask == 0 {
            *w |= mask;
            self.ones += 1;
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut b = MarkBits::new(bits.len());
        for (i, _) in bits.iter().enumerate().filter(|(_, &x)| x) {
            b.set(i);
        }
        b
    }

    /// Bytes held by the bit storage.
    pub fn size_in_bytes(&self) -> usize {
        self.words.len() * 8
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// [`MarkBits`] plus a directory of cumulative popcounts, one `u32` per
/// 512-bit block.
#[derive(Clone, Debug)]
pub struct RankSupport {
    bits: MarkBits,
    dir: Vec<u32>,
}

pub fn build_rank(bits: MarkBits) -> RankSupport {
    let mut dir = Vec::with_capacity(bits.words.len() / BLOCK_WORDS + 1);
    let mut acc = 0u32;
    for block in bits.words.chunks(BLOCK_WORDS) {
        dir.push(acc);
        acc += block.iter().map(|w| w.count_ones()).sum::<u32>();
    }
    dir.push(acc);
    RankSupport { bits, dir }
}

impl RankSupport {
    pub fn bits(&self) -> &MarkBits {
        &self.bits
    }

    #[inline]
    pub fn ones(&self) -> usize {
        self.bits.ones
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    /// Number of set bits in `bits[0..j]`.
    pub fn rank1_excl(&self, j: usize) -> Result<usize> {
        if j > self.bits.len {
            return Err(Error::OutOfRange { index: j, len: self.bits.len });
        }
        Ok(self.rank1_unchecked(j))
    }

    #[inline]
    pub(crate) fn rank1_unchecked(&self, j: usize) -> usize {
        let w = j / WORD;
        let block = w / BLOCK_WORDS;
        let mut r = self.dir[block] as usize;
        for word in &self.bits.words[block * BLOCK_WORDS..w] {
            r += word.count_ones() as usize;
        }
        let rem = j % WORD;
        if rem != 0 {
            r += (self.bits.words[w] & ((1u64 << rem) - 1)).count_ones() as usize;
        }
        r
    }

    /// Directory plus bit storage, in bytes.
    pub fn size_in_bytes(&self) -> usize {
        self.bits.size_in_bytes() + self.dir.len() * 4
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_marks() {
        let mut b = MarkBits::new(19);
        for p in [12, 14, 13] {
            b.set(p);
        }
        let r = build_rank(b);
        assert_eq!(r.ones(), 3);
        assert_eq!(r.rank1_excl(12).unwrap(), 0);
        assert_eq!(r.rank1_excl(13).unwrap(), 1);
        assert_eq!(r.rank1_excl(14).unwrap(), 2);
        assert_eq!(r.rank1_excl(19).unwrap(), 3);
    }

    #[test]
    fn trivial_vectors() {
        let r = build_rank(MarkBits::new(100));
        assert_eq!(r.ones(), 0);
        assert_eq!(r.rank1_excl(0).unwrap(), 0);
        assert_eq!(r.rank1_excl(100).unwrap(), 0);

        let r = build_rank(MarkBits::from_bools(&[true; 8]));
        assert_eq!(r.ones(), 8);
        assert_eq!(r.rank1_excl(5).unwrap(), 5);

        let r = build_rank(MarkBits::new(0));
        assert_eq!(r.rank1_excl(0).unwrap(), 0);
    }

    #[test]
    fn out_of_range() {
        let r = build_rank(MarkBits::new(10));
        assert!(matches!(r.rank1_excl(11), Err(Error::OutOfRange { index: 11, len: 10 })));
    }

    proptest::proptest! {
        #[test]
        fn rank_matches_naive_popcount(bits in proptest::collection::vec(proptest::bool::weighted(0.3), 0..5000)) {
            let r = build_rank(MarkBits::from_bools(&bits));
            let mut naive = 0;
            for j in 0..=bits.len() {
                proptest::prop_assert_eq!(r.rank1_excl(j).unwrap(), naive);
                if j < bits.len() && bits[j] {
                    naive += 1;
                }
            }
            proptest::prop_assert_eq!(r.ones(), naive);
        }
    }
}
