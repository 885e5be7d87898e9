//! Burrows-Wheeler transform, occurrence counting and the LF-mapping.

use crate::sarray::SuffixArray;
use crate::text::{CArray, Text, SENTINEL};

/// Last column of the sorted suffixes: `l[i] = S[sa[i] - 1]`, or the
/// sentinel where `sa[i] == 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bwt {
    l: Vec<u8>,
}

impl Bwt {
    pub fn from_vec(l: Vec<u8>) -> Self {
        Bwt { l }
    }

    #[inline]
    pub fn as_slice(&self) -> &[u8] {
        &self.l
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.l.len()
    }
}

/// Last-to-first column mapping.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LfMapping {
    lf: Vec<u32>,
}

impl LfMapping {
    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.lf
    }
}

impl std::ops::Index<usize> for LfMapping {
    type Output = u32;

    #[inline]
    fn index(&self, i: usize) -> &u32 {
        &self.lf[i]
    }
}

/// Running per-symbol counts over a left-to-right BWT scan.
///
/// Before [`OccCounter::step`] is called for position `i`, `occ(c)` is the
/// number of occurrences of `c` in `l[0..i]` (position `i` excluded).
#[derive(Clone, Debug)]
pub struct OccCounter {
    cnt: [u32; 256],
}

impl Default for OccCounter {
    fn default() -> Self {
        OccCounter { cnt: [0; 256] }
    }
}

impl OccCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn occ(&self, c: u8) -> u32 {
        self.cnt[c as usize]
    }

    /// Returns `C[c] + occ(c)` for `c = l[i]`, i.e. `LF[i]`, then counts `c`.
    #[inline]
    pub fn step(&mut self, c: u8, carr: &CArray) -> u32 {
        let lf = carr.start(c) + self.cnt[c as usize];
        self.cnt[c as usize] += 1;
        lf
    }
}

pub fn build_bwt(t: &Text, sa: &SuffixArray) -> Bwt {
    let s = t.bytes();
    let l = crate::mem::collect(
        sa.as_slice().iter().map(|&p| if p == 0 { SENTINEL } else { s[p as usize - 1] }),
    );
    Bwt { l }
}

/// `LF[i] = C[c] + occ(c, i)` with `c = l[i]`, where `occ` counts the
/// occurrences of `c` in `l[0..i]`, excluding position `i` itself. That is
/// the convention under which the formula agrees with
/// `LF[i] = ISA[SA[i] - 1]`; since the sentinel is `0x00` and unique, the
/// sentinel row comes out as `C[0x00] + 0 = 0` with no special case.
pub fn build_lf(b: &Bwt, c: &CArray) -> LfMapping {
    let mut occ = OccCounter::new();
    let lf = crate::mem::collect(b.as_slice().iter().map(|&x| occ.step(x, c)));
    LfMapping { lf }
}

/// Number of maximal runs of equal symbols in the BWT.
pub fn bwt_run_count(b: &Bwt) -> usize {
    let l = b.as_slice();
    if l.is_empty() {
        return 0;
    }
    1 + l.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Rebuilds the raw text (sentinel excluded) by walking LF backwards from the
/// row whose suffix is the whole text.
pub fn invert_bwt(b: &Bwt, lf: &LfMapping) -> Vec<u8> {
    let n = b.len();
    let l = b.as_slice();
    // row 0 holds the sentinel suffix; its BWT symbol is the last raw byte
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    let mut i = 0usize;
    for _ in 1..n {
        out.push(l[i]);
        i = lf[i] as usize;
    }
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sarray::{build_suffix_array, invert};
    use crate::text::{build_c_array, load_text};

    pub(crate) const GOLDEN_LF: [u32; 19] =
        [15, 11, 5, 1, 18, 12, 0, 16, 17, 13, 14, 6, 7, 8, 2, 9, 3, 4, 10];

    fn prepare(raw: &[u8]) -> (Text, SuffixArray, Bwt, LfMapping) {
        let t = load_text(raw).unwrap();
        let sa = build_suffix_array(&t);
        let b = build_bwt(&t, &sa);
        let lf = build_lf(&b, &build_c_array(&t));
        (t, sa, b, lf)
    }

    #[test]
    fn golden_columns() {
        let (_, _, b, lf) = prepare(b"el_anele_lepanelen");
        assert_eq!(b.as_slice(), b"nle_pl\0nnlleee_eaae");
        assert_eq!(lf.as_slice(), &GOLDEN_LF);
        assert_eq!(bwt_run_count(&b), 14);
    }

    #[test]
    fn sentinel_only() {
        let (_, _, b, lf) = prepare(b"");
        assert_eq!(b.as_slice(), &[0]);
        assert_eq!(lf.as_slice(), &[0]);
        assert_eq!(bwt_run_count(&b), 1);
    }

    #[test]
    fn banana() {
        let (_, _, b, lf) = prepare(b"banana");
        assert_eq!(b.as_slice(), b"annb\0aa");
        assert_eq!(lf.as_slice(), &[1, 5, 6, 4, 0, 2, 3]);
        assert_eq!(bwt_run_count(&b), 5);
        assert_eq!(bwt_run_count(&Bwt::from_vec(vec![b'x'; 9])), 1);
    }

    #[test]
    fn lf_matches_isa_definition() {
        let (_, sa, _, lf) = prepare(b"mississippi_missouri");
        let isa = invert(&sa);
        for i in 0..sa.len() {
            let expect = if sa[i] == 0 { 0 } else { isa[sa[i] as usize - 1] };
            assert_eq!(lf[i], expect);
        }
    }

    proptest::proptest! {
        #[test]
        fn lf_is_a_single_cycle_that_inverts_the_text(
            raw in proptest::collection::vec(1u8..=26, 0..2000)
        ) {
            let (t, _, b, lf) = prepare(&raw);
            let mut sorted_bwt = b.as_slice().to_vec();
            let mut sorted_text = t.bytes().to_vec();
            sorted_bwt.sort_unstable();
            sorted_text.sort_unstable();
            proptest::prop_assert_eq!(sorted_bwt, sorted_text);

            let n = t.len();
            let mut seen = vec![false; n];
            let mut i = 0usize;
            for _ in 0..n {
                proptest::prop_assert!(!seen[i]);
                seen[i] = true;
                i = lf[i] as usize;
            }
            proptest::prop_assert_eq!(i, 0);
            proptest::prop_assert_eq!(invert_bwt(&b, &lf), raw);

            // order preserving inside each symbol class
            let mut last = [None::<u32>; 256];
            for (i, &c) in b.as_slice().iter().enumerate() {
                if let Some(p) = last[c as usize] {
                    proptest::prop_assert!(p < lf[i]);
                }
                last[c as usize] = Some(lf[i]);
            }
        }
    }
}
