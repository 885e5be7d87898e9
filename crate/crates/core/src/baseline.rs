//! Reference LCP constructions: direct comparison, Kasai et al., and the
//! Φ-algorithm (permuted LCP in text order, then reordered).

use crate::mem::{filled, prefetch};
use crate::metrics::Instruments;
use crate::sarray::{InverseSuffixArray, SuffixArray};
use crate::text::Text;

/// `lcp[i]` for `0 <= i <= n`, with `lcp[0] = lcp[n] = -1` and
/// `lcp[i] = lcp(S[sa[i-1]..], S[sa[i]..])` otherwise.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct LcpArray {
    lcp: Vec<i32>,
}

impl LcpArray {
    /// Wraps `lcp` (length `n + 1`) without validation.
    pub fn from_vec(lcp: Vec<i32>) -> Self {
        debug_assert!(!lcp.is_empty());
        LcpArray { lcp }
    }

    /// All `n + 1` entries, boundaries included.
    #[inline]
    pub fn as_slice(&self) -> &[i32] {
        &self.lcp
    }

    /// Text length `n`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.lcp.len() - 1
    }

    /// Entries `1..n`.
    pub fn interior(&self) -> &[i32] {
        let n = self.len();
        if n <= 1 {
            &[]
        } else {
            &self.lcp[1..n]
        }
    }

    pub fn into_vec(self) -> Vec<i32> {
        self.lcp
    }
}

impl std::ops::Index<usize> for LcpArray {
    type Output = i32;

    #[inline]
    fn index(&self, i: usize) -> &i32 {
        &self.lcp[i]
    }
}

/// Dense Φ and PLCP arrays, both in text order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlcpArray {
    /// `phi[sa[i]] = sa[i-1]`; at `sa[0]` it holds `n - 1`.
    pub phi: Vec<u32>,
    /// `plcp[sa[i]] = lcp[i]` for `i >= 1`; `plcp[sa[0]] = 0`.
    pub plcp: Vec<u32>,
}

/// How far ahead of the scan the random accesses are requested.
const PREFETCH_DISTANCE: usize = 32;

/// Length of the common prefix of `s[a..]` and `s[b..]` for `a != b`, where
/// `s` ends with a unique sentinel. Counts every comparison.
#[inline]
pub(crate) fn extend_match(s: &[u8], a: usize, b: usize, mut l: usize, ins: &mut Instruments) -> usize {
    let c = &mut ins.counters;
    loop {
        c.char_comparisons += 1;
        c.text_accesses += 2;
        if s[a + l] != s[b + l] {
            return l;
        }
        l += 1;
    }
}

/// Compares every pair of adjacent suffixes from scratch.
pub fn lcp_bruteforce(t: &Text, sa: &SuffixArray) -> LcpArray {
    let s = t.bytes();
    let n = t.len();
    let mut lcp = filled(n + 1, -1i32);
    for i in 1..n {
        let (a, b) = (&s[sa[i - 1] as usize..], &s[sa[i] as usize..]);
        lcp[i] = a.iter().zip(b).take_while(|(x, y)| x == y).count() as i32;
    }
    LcpArray { lcp }
}

/// [`lcp_bruteforce`] with instrumentation.
pub fn lcp_bruteforce_with(t: &Text, sa: &SuffixArray, ins: &mut Instruments) -> LcpArray {
    let n = t.len();
    ins.ledger.hold("text", n);
    ins.ledger.hold("sa", 4 * n);
    ins.ledger.hold("lcp", 4 * (n + 1));
    let s = t.bytes();
    let mut lcp = filled(n + 1, -1i32);
    for i in 1..n {
        lcp[i] = extend_match(s, sa[i - 1] as usize, sa[i] as usize, 0, ins) as i32;
    }
    LcpArray { lcp }
}

pub fn lcp_kasai(t: &Text, sa: &SuffixArray, isa: &InverseSuffixArray) -> LcpArray {
    lcp_kasai_with(t, sa, isa, &mut Instruments::new())
}

/// Kasai et al.: visit suffixes in text order, keeping `h - 1` matched
/// symbols from the previous position.
pub fn lcp_kasai_with(
    t: &Text,
    sa: &SuffixArray,
    isa: &InverseSuffixArray,
    ins: &mut Instruments,
) -> LcpArray {
    let s = t.bytes();
    let n = t.len();
    ins.ledger.hold("text", n);
    ins.ledger.hold("sa", 4 * n);
    ins.ledger.hold("isa", 4 * n);
    ins.ledger.hold("lcp", 4 * (n + 1));

    let mut lcp = filled(n + 1, -1i32);
    let mut h = 0usize;
    for j in 0..n {
        if j + PREFETCH_DISTANCE < n {
            let r = isa[j + PREFETCH_DISTANCE] as usize;
            if r > 0 {
                let k = sa[r - 1] as usize;
                prefetch(&s[k]);
                prefetch(&lcp[r]);
            }
        }
        if j + 2 * PREFETCH_DISTANCE < n {
            let r = isa[j + 2 * PREFETCH_DISTANCE] as usize;
            if r > 0 {
                prefetch(&sa[r - 1]);
            }
        }
        let r = isa[j] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let k = sa[r - 1] as usize;
        h = extend_match(s, j, k, h, ins);
        lcp[r] = h as i32;
        h = h.saturating_sub(1);
    }
    lcp[0] = -1;
    LcpArray { lcp }
}

/// Φ-algorithm, first half: the dense Φ array and PLCP in text order.
pub fn plcp_phi(t: &Text, sa: &SuffixArray, ins: &mut Instruments) -> PlcpArray {
    let s = t.bytes();
    let n = t.len();
    ins.ledger.hold("phi", 4 * n);
    let mut phi = filled(n, 0u32);
    phi[sa[0] as usize] = (n - 1) as u32;
    for w in sa.as_slice().windows(2) {
        phi[w[1] as usize] = w[0];
    }

    ins.ledger.hold("plcp", 4 * n);
    let mut plcp = filled(n, 0u32);
    let first = sa[0] as usize;
    let mut l = 0usize;
    for j in 0..n {
        if j == first {
            // sentinel suffix: no predecessor
            l = 0;
            continue;
        }
        l = extend_match(s, j, phi[j] as usize, l, ins);
        plcp[j] = l as u32;
        l = l.saturating_sub(1);
    }
    PlcpArray { phi, plcp }
}

pub fn lcp_phi(t: &Text, sa: &SuffixArray) -> LcpArray {
    lcp_phi_with(t, sa, &mut Instruments::new())
}

pub fn lcp_phi_with(t: &Text, sa: &SuffixArray, ins: &mut Instruments) -> LcpArray {
    let n = t.len();
    ins.ledger.hold("text", n);
    ins.ledger.hold("sa", 4 * n);
    let PlcpArray { phi, plcp } = plcp_phi(t, sa, ins);
    drop(phi);
    ins.ledger.release("phi");

    ins.ledger.hold("lcp", 4 * (n + 1));
    let mut lcp = filled(n + 1, -1i32);
    for i in 1..n {
        lcp[i] = plcp[sa[i] as usize] as i32;
    }
    LcpArray { lcp }
}
