//! Range-minimum stack over the already-finalized prefix of the LCP array.

use crate::error::{Error, Result};

/// Per-symbol start of the next range-minimum query: `lastocc[c] + 1`,
/// where `lastocc[c]` is the previous BWT position holding `c` (or -1).
#[derive(Clone, Debug)]
pub struct LastOcc {
    start: [u32; 256],
}

impl Default for LastOcc {
    fn default() -> Self {
        LastOcc { start: [0; 256] }
    }
}

impl LastOcc {
    pub fn new() -> Self {
        Self::default()
    }

    /// `lastocc[c]`, `-1` if `c` has not been seen.
    pub fn get(&self, c: u8) -> i64 {
        self.start[c as usize] as i64 - 1
    }

    #[inline]
    pub fn query_start(&self, c: u8) -> u32 {
        self.start[c as usize]
    }

    #[inline]
    pub fn set(&mut self, c: u8, i: u32) {
        self.start[c as usize] = i + 1;
    }
}

/// Stack of `(index, lcp)` pairs, strictly increasing in both components
/// from bottom to top. Holds at most `2σ` entries when maintained through
/// [`RmqStack::push_maintained`].
#[derive(Clone, Debug)]
pub struct RmqStack {
    entries: Vec<(u32, i32)>,
    alphabet: Vec<u8>,
    pushes: usize,
    trims: u64,
}

impl RmqStack {
    /// Empty stack for a text over `alphabet` (the distinct symbols present).
    pub fn new(alphabet: Vec<u8>) -> Self {
        assert!(!alphabet.is_empty());
        let cap = 2 * alphabet.len() + 1;
        RmqStack { entries: Vec::with_capacity(cap), alphabet, pushes: 0, trims: 0 }
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    pub fn entries(&self) -> &[(u32, i32)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn trims(&self) -> u64 {
        self.trims
    }

    pub fn size_in_bytes(&self) -> usize {
        self.entries.capacity() * std::mem::size_of::<(u32, i32)>()
    }

    /// Pops every entry whose value is `>= v`, then pushes `(i, v)`.
    #[inline]
    pub fn push(&mut self, i: u32, v: i32) {
        while let Some(&(_, top)) = self.entries.last() {
            if top < v {
                break;
            }
            self.entries.pop();
        }
        debug_assert!(self.entries.last().is_none_or(|&(j, _)| j < i));
        self.entries.push((i, v));
    }

    /// [`push`](Self::push), then a [`trim`](Self::trim) after every σ-th
    /// push.
    #[inline]
    pub fn push_maintained(&mut self, i: u32, v: i32, lastocc: &LastOcc) {
        self.push(i, v);
        self.pushes += 1;
        if self.pushes == self.alphabet.len() {
            self.pushes = 0;
            self.trim(lastocc);
        }
        assert!(self.entries.len() <= 2 * self.alphabet.len());
    }

    /// The entry with the smallest index `>= x`; its value is the minimum of
    /// the LCP entries from `x` up to the most recent push.
    #[inline]
    pub fn query(&self, x: u32) -> Result<(u32, i32)> {
        let e = &self.entries;
        // runs in the BWT query from the top
        if let Some(&top) = e.last() {
            if e.len() == 1 || e[e.len() - 2].0 < x {
                return if top.0 >= x { Ok(top) } else { Err(Error::NotFound(x)) };
            }
        }
        let k = e.partition_point(|&(j, _)| j < x);
        e.get(k).copied().ok_or(Error::NotFound(x))
    }

    /// Keeps only entries that can still answer a query: for every symbol
    /// `c`, the entry with the smallest index `>= lastocc[c] + 1`. Does
    /// nothing while the stack holds at most σ entries.
    pub fn trim(&mut self, lastocc: &LastOcc) {
        if self.entries.len() <= self.alphabet.len() {
            return;
        }
        let mut keep = vec![false; self.entries.len()];
        for &c in &self.alphabet {
            let x = lastocc.query_start(c);
            let k = self.entries.partition_point(|&(j, _)| j < x);
            if k < keep.len() {
                keep[k] = true;
            }
        }
        let mut k = 0;
        self.entries.retain(|_| {
            k += 1;
            keep[k - 1]
        });
        self.trims += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stack(entries: &[(u32, i32)], alphabet: &[u8]) -> RmqStack {
        let mut s = RmqStack::new(alphabet.to_vec());
        for &(i, v) in entries {
            s.push(i, v);
        }
        assert_eq!(s.entries(), entries);
        s
    }

    #[test]
    fn push_pops_greater_or_equal() {
        let mut s = stack(&[(0, -1)], b"ab");
        s.push(1, 0);
        assert_eq!(s.entries(), &[(0, -1), (1, 0)]);

        let mut s = stack(&[(0, -1), (3, 0), (4, 5)], b"ab");
        s.push(5, 0);
        assert_eq!(s.entries(), &[(0, -1), (5, 0)]);

        let mut s = RmqStack::new(b"a".to_vec());
        s.push(0, -1);
        assert_eq!(s.entries(), &[(0, -1)]);
    }

    #[test]
    fn query_finds_smallest_index_at_or_after() {
        let s = stack(&[(0, -1), (3, 0), (4, 5)], b"ab");
        assert_eq!(s.query(4).unwrap(), (4, 5));
        assert_eq!(s.query(1).unwrap(), (3, 0));
        assert_eq!(s.query(0).unwrap(), (0, -1));
        assert!(matches!(s.query(5), Err(Error::NotFound(5))));

        let s = stack(&[(0, -1)], b"a");
        assert_eq!(s.query(0).unwrap(), (0, -1));
    }

    #[test]
    fn trim_keeps_only_candidates() {
        // σ = 2, queries start at 5 and 7
        let mut s = stack(&[(0, -1), (2, 0), (5, 1), (7, 3)], b"xy");
        let mut lo = LastOcc::new();
        lo.set(b'x', 4);
        lo.set(b'y', 6);
        s.trim(&lo);
        assert_eq!(s.entries(), &[(5, 1), (7, 3)]);
    }

    #[test]
    fn trim_is_a_no_op_up_to_sigma() {
        let mut s = stack(&[(0, -1), (2, 0)], b"xyz");
        s.trim(&LastOcc::new());
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn trim_with_no_symbol_seen_keeps_bottom() {
        let mut s = stack(&[(0, -1), (1, 0), (2, 1), (3, 2)], b"xy");
        s.trim(&LastOcc::new());
        assert_eq!(s.entries(), &[(0, -1)]);
    }

    #[test]
    fn last_occ_defaults_to_minus_one() {
        let mut lo = LastOcc::new();
        assert_eq!(lo.get(b'a'), -1);
        lo.set(b'a', 9);
        assert_eq!(lo.get(b'a'), 9);
        assert_eq!(lo.query_start(b'a'), 10);
    }
}
