//! Suffix-array construction by induced sorting, inversion and verification.

use crate::text::Text;

/// Lexicographic order of all suffixes of a [`Text`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuffixArray {
    sa: Vec<u32>,
}

impl SuffixArray {
    /// Wraps `sa` without validation; see [`verify_suffix_array`].
    pub fn from_vec(sa: Vec<u32>) -> Self {
        SuffixArray { sa }
    }

    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.sa
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.sa
    }
}

impl std::ops::Index<usize> for SuffixArray {
    type Output = u32;

    #[inline]
    fn index(&self, i: usize) -> &u32 {
        &self.sa[i]
    }
}

/// Rank of every suffix: `isa[sa[i]] == i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InverseSuffixArray {
    isa: Vec<u32>,
}

impl InverseSuffixArray {
    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.isa
    }
}

impl std::ops::Index<usize> for InverseSuffixArray {
    type Output = u32;

    #[inline]
    fn index(&self, i: usize) -> &u32 {
        &self.isa[i]
    }
}

pub fn build_suffix_array(t: &Text) -> SuffixArray {
    let s: Vec<usize> = t.bytes().iter().map(|&b| b as usize).collect();
    let sa = sa_is(&s, 255);
    SuffixArray { sa: crate::mem::collect(sa.into_iter().map(|x| x as u32)) }
}

pub fn invert(sa: &SuffixArray) -> InverseSuffixArray {
    const AHEAD: usize = 32;
    let sa = sa.as_slice();
    let mut isa = crate::mem::filled(sa.len(), 0u32);
    for (i, &p) in sa.iter().enumerate() {
        if let Some(&q) = sa.get(i + AHEAD) {
            crate::mem::prefetch(&isa[q as usize]);
        }
        isa[p as usize] = i as u32;
    }
    InverseSuffixArray { isa }
}

/// Checks that `sa` is a permutation of `0..n` listing the suffixes of `t`
/// in strictly increasing order. Compares suffixes directly, so the worst
/// case is quadratic.
pub fn verify_suffix_array(t: &Text, sa: &SuffixArray) -> bool {
    let n = t.len();
    if sa.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in sa.as_slice() {
        let p = p as usize;
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    let s = t.bytes();
    sa.as_slice()
        .windows(2)
        .all(|w| s[w[0] as usize..] < s[w[1] as usize..])
}

const NONE: usize = usize::MAX;

// SA-IS over an integer alphabet `0..=upper`.
fn sa_is(s: &[usize], upper: usize) -> Vec<usize> {
    let n = s.len();
    match n {
        0 => return vec![],
        1 => return vec![0],
        2 => return if s[0] < s[1] { vec![0, 1] } else { vec![1, 0] },
        _ => {}
    }

    // ls[i]: suffix i is S-type
    let mut ls = vec![false; n];
    for i in (0..n - 1).rev() {
        ls[i] = if s[i] == s[i + 1] { ls[i + 1] } else { s[i] < s[i + 1] };
    }

    // bucket starts for L-type (sum_l) and S-type (sum_s) entries
    let mut sum_l = vec![0usize; upper + 1];
    let mut sum_s = vec![0usize; upper + 1];
    for i in 0..n {
        if !ls[i] {
            sum_s[s[i]] += 1;
        } else {
            sum_l[s[i] + 1] += 1;
        }
    }
    for i in 0..=upper {
        sum_s[i] += sum_l[i];
        if i < upper {
            sum_l[i + 1] += sum_s[i];
        }
    }

    let mut sa = vec![NONE; n];
    let induce = |lms: &[usize], sa: &mut [usize]| {
        sa.fill(NONE);
        let mut buf = sum_s.clone();
        for &d in lms {
            if d == n {
                continue;
            }
            sa[buf[s[d]]] = d;
            buf[s[d]] += 1;
        }
        buf.copy_from_slice(&sum_l);
        sa[buf[s[n - 1]]] = n - 1;
        buf[s[n - 1]] += 1;
        for i in 0..n {
            let v = sa[i];
            if v != NONE && v >= 1 && !ls[v - 1] {
                sa[buf[s[v - 1]]] = v - 1;
                buf[s[v - 1]] += 1;
            }
        }
        buf.copy_from_slice(&sum_l);
        for i in (0..n).rev() {
            let v = sa[i];
            if v != NONE && v >= 1 && ls[v - 1] {
                buf[s[v - 1] + 1] -= 1;
                sa[buf[s[v - 1] + 1]] = v - 1;
            }
        }
    };

    let mut lms_map = vec![NONE; n + 1];
    let mut lms = Vec::new();
    for i in 1..n {
        if !ls[i - 1] && ls[i] {
            lms_map[i] = lms.len();
            lms.push(i);
        }
    }
    let m = lms.len();

    induce(&lms, &mut sa);

    if m > 0 {
        let mut sorted_lms: Vec<usize> =
            sa.iter().copied().filter(|&v| lms_map[v] != NONE).collect();
        let mut rec_s = vec![0usize; m];
        let mut rec_upper = 0;
        rec_s[lms_map[sorted_lms[0]]] = 0;
        for i in 1..m {
            let (mut l, mut r) = (sorted_lms[i - 1], sorted_lms[i]);
            let end_l = if lms_map[l] + 1 < m { lms[lms_map[l] + 1] } else { n };
            let end_r = if lms_map[r] + 1 < m { lms[lms_map[r] + 1] } else { n };
            let mut same = true;
            if end_l - l != end_r - r {
                same = false;
            } else {
                while l < end_l {
                    if s[l] != s[r] {
                        break;
                    }
                    l += 1;
                    r += 1;
                }
                if l == n || s[l] != s[r] {
                    same = false;
                }
            }
            if !same {
                rec_upper += 1;
            }
            rec_s[lms_map[sorted_lms[i]]] = rec_upper;
        }

        let rec_sa = sa_is(&rec_s, rec_upper);
        for (slot, &r) in sorted_lms.iter_mut().zip(&rec_sa) {
            *slot = lms[r];
        }
        induce(&sorted_lms, &mut sa);
    }
    sa
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::text::load_text;

    pub(crate) const GOLDEN_SA: [u32; 19] =
        [18, 2, 8, 3, 12, 7, 0, 5, 14, 16, 10, 1, 6, 15, 9, 17, 4, 13, 11];

    fn brute_force_sa(s: &[u8]) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..s.len() as u32).collect();
        sa.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
        sa
    }

    #[test]
    fn golden_suffix_array() {
        let t = load_text(b"el_anele_lepanelen").unwrap();
        let sa = build_suffix_array(&t);
        assert_eq!(sa.as_slice(), &GOLDEN_SA);
        assert!(verify_suffix_array(&t, &sa));
        let isa = invert(&sa);
        assert_eq!((isa[18], isa[2], isa[0]), (0, 1, 6));
    }

    #[test]
    fn sentinel_only() {
        let t = load_text(b"").unwrap();
        let sa = build_suffix_array(&t);
        assert_eq!(sa.as_slice(), &[0]);
        assert_eq!(invert(&sa).as_slice(), &[0]);
    }

    #[test]
    fn banana() {
        let t = load_text(b"banana").unwrap();
        let sa = build_suffix_array(&t);
        assert_eq!(sa.as_slice(), brute_force_sa(t.bytes()).as_slice());
        assert_eq!(sa.as_slice(), &[6, 5, 3, 1, 0, 4, 2]);
        assert_eq!(invert(&sa).as_slice(), &[4, 3, 6, 2, 5, 1, 0]);
    }

    #[test]
    fn verify_rejects_bad_orders() {
        let t = load_text(b"el_anele_lepanelen").unwrap();
        let id = SuffixArray::from_vec((0..19).collect());
        assert!(!verify_suffix_array(&t, &id));

        let t = load_text(b"banana").unwrap();
        assert!(!verify_suffix_array(&t, &SuffixArray::from_vec(vec![6, 5, 3, 1, 0, 2, 4])));
        assert!(!verify_suffix_array(&t, &SuffixArray::from_vec(vec![6, 5, 3, 1, 0, 4, 4])));
        assert!(!verify_suffix_array(&t, &SuffixArray::from_vec(vec![6, 5, 3, 1, 0, 4])));
    }

    #[test]
    fn matches_brute_force_on_random_texts() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for &sigma in &[2u8, 4, 26, 255] {
            for _ in 0..20 {
                let n = rng.gen_range(0..2000);
                let raw: Vec<u8> = (0..n).map(|_| rng.gen_range(1..=sigma)).collect();
                let t = load_text(&raw).unwrap();
                let sa = build_suffix_array(&t);
                assert_eq!(sa.as_slice(), brute_force_sa(t.bytes()).as_slice());
            }
        }
        let t = load_text(&crate::gen::ab_repeat(5000)).unwrap();
        assert_eq!(build_suffix_array(&t).as_slice(), brute_force_sa(t.bytes()).as_slice());
    }

    proptest::proptest! {
        #[test]
        fn output_is_a_sorted_permutation(raw in proptest::collection::vec(1u8..=4, 0..400)) {
            let t = load_text(&raw).unwrap();
            let sa = build_suffix_array(&t);
            proptest::prop_assert!(verify_suffix_array(&t, &sa));
            proptest::prop_assert_eq!(sa[0] as usize, t.len() - 1);
            let isa = invert(&sa);
            for i in 0..sa.len() {
                proptest::prop_assert_eq!(isa[sa[i] as usize] as usize, i);
            }
        }
    }
}
