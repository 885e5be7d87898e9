//! Two-phase LCP construction.
//!
//! Phase 1 runs the BWT scan of [`crate::go`] with every value capped at
//! `m + 1`, so each entry fits in one byte: entries `<= m` are exact and
//! `m + 1` means "larger than `m`". Phase 2 resolves the marked entries in
//! text order through a sparse Φ array that only covers the marked
//! positions, skipping character comparisons at reducible entries.

use std::path::Path;

use crate::baseline::{extend_match, LcpArray};
use crate::bwt::{Bwt, LfMapping};
use crate::error::{Error, Result};
use crate::go::{is_defined, LastOcc, RmqStack, UndefCounters};
use crate::io::{self, pull, ArraySource, InMemory, LcpSink, Stream};
use crate::metrics::Instruments;
use crate::rank::{build_rank, MarkBits, RankSupport};
use crate::sarray::SuffixArray;
use crate::text::{build_c_array, Text};

pub const DEFAULT_M: u8 = 254;

/// LCP values capped at `m + 1`, one byte each. Entry 0 is stored as 0 and
/// stands for the `-1` boundary.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ByteLcp {
    vals: Vec<u8>,
    m: u8,
}

impl ByteLcp {
    pub fn from_parts(vals: Vec<u8>, m: u8) -> Result<Self> {
        check_threshold(m)?;
        if let Some(p) = vals.iter().position(|&v| v > m + 1) {
            return Err(Error::InconsistentInputs(format!("byte LCP value at {p} exceeds m + 1")));
        }
        Ok(ByteLcp { vals, m })
    }

    #[inline]
    pub fn m(&self) -> u8 {
        self.m
    }

    #[inline]
    pub fn marker(&self) -> u8 {
        self.m + 1
    }

    #[inline]
    pub fn as_slice(&self) -> &[u8] {
        &self.vals
    }

    /// Number of entries marked as exceeding `m`.
    pub fn marked(&self) -> usize {
        let mk = self.marker();
        self.vals.iter().filter(|&&v| v == mk).count()
    }

    /// Exact value at `i`, or `None` where the entry is marked.
    pub fn exact(&self, i: usize) -> Option<i32> {
        if i == 0 {
            Some(-1)
        } else if self.vals[i] == self.marker() {
            None
        } else {
            Some(self.vals[i] as i32)
        }
    }
}

fn check_threshold(m: u8) -> Result<()> {
    if (1..=254).contains(&m) {
        Ok(())
    } else {
        Err(Error::InvalidThreshold(m as u32))
    }
}

/// Phase 1 over in-memory arrays. `lf` must belong to `b`; it is recomputed
/// during the scan and compared against the given mapping.
pub fn phase1(
    t: &Text,
    sa: &SuffixArray,
    b: &Bwt,
    lf: &LfMapping,
    m: u8,
) -> Result<(ByteLcp, MarkBits)> {
    let mut marks = MarkBits::new(t.len());
    let lcp8 = phase1_scan(
        t,
        &InMemory { sa, bwt: b },
        m,
        Some(&mut marks),
        Some(lf.as_slice()),
        &mut Instruments::new(),
    )?;
    Ok((lcp8, marks))
}

/// Phase 1 scan streaming the suffix array and the BWT. The byte LCP array
/// is the only array besides the text accessed at random. When `marks` is
/// given, `marks[sa[i]]` is set for every marked `i`.
pub fn phase1_scan(
    t: &Text,
    src: &dyn ArraySource,
    m: u8,
    mut marks: Option<&mut MarkBits>,
    check_lf: Option<&[u32]>,
    ins: &mut Instruments,
) -> Result<ByteLcp> {
    check_threshold(m)?;
    let s = t.bytes();
    let n = t.len();
    if src.len() != n {
        return Err(Error::InconsistentInputs(format!(
            "text has {n} symbols but the arrays have {}",
            src.len()
        )));
    }
    let cap = m as usize + 1;
    ins.ledger.hold("text", n);
    ins.ledger.hold("byte lcp", n);
    if let Some(mk) = &marks {
        ins.ledger.hold("marks", mk.size_in_bytes());
    }
    let mut vals = crate::mem::filled(n, 0u8);
    if n == 1 {
        return Ok(ByteLcp { vals, m });
    }

    let carr = build_c_array(t);
    let mut stack = RmqStack::new(carr.alphabet().collect());
    ins.ledger.hold("stack", 2 * stack.sigma() * 8);
    ins.ledger.hold("scan state", 2 * 256 * 4 + 257 * 4);
    let mut lastocc = LastOcc::new();
    let mut undef = UndefCounters::new();
    let mut first_col = carr.first_column();
    let mut sa_s = src.sa()?;
    let mut bwt_s = src.bwt()?;

    let mut prev_sa = pull(&mut sa_s)?;
    let mut prev_c = pull(&mut bwt_s)?;
    first_col.next();
    let lf0 = undef.advance(prev_c, &carr);
    if let Some(lf) = check_lf {
        check_lf_entry(lf, 0, lf0)?;
    }
    vals[lf0 as usize] = 0;
    ins.counters.forward_writes += 1;
    stack.push(0, -1);
    lastocc.set(prev_c, 0);

    for i in 1..n {
        let sai = pull(&mut sa_s)?;
        let c = pull(&mut bwt_s)?;
        let fi = first_col.next().unwrap();
        let defined = is_defined(i as u32, fi, &carr, &undef);
        let lfi = undef.advance(c, &carr) as usize;
        if let Some(lf) = check_lf {
            check_lf_entry(lf, i, lfi as u32)?;
        }

        if !defined {
            let mut ell = 0usize;
            let mut known = false;
            if lfi < i {
                ell = (vals[lfi] as usize).saturating_sub(1);
                // an inherited m says only "at least m": compare once more
                known = c == prev_c && ell < m as usize;
            }
            if !known {
                ell = extend_capped(s, sai as usize, prev_sa as usize, ell, cap, ins);
            }
            vals[i] = ell as u8;
            ins.counters.home_writes += 1;
        }
        let v = vals[i];
        if v as usize == cap {
            if let Some(mk) = marks.as_deref_mut() {
                mk.set(sai as usize);
            }
        }

        stack.push_maintained(i as u32, v as i32, &lastocc);
        ins.counters.max_stack_len = ins.counters.max_stack_len.max(stack.len() as u64);
        if lfi > i {
            let (_, q) = stack.query(lastocc.query_start(c))?;
            vals[lfi] = ((q + 1) as usize).min(cap) as u8;
            ins.counters.forward_writes += 1;
        }
        lastocc.set(c, i as u32);
        prev_sa = sai;
        prev_c = c;
    }
    ins.counters.stack_trims += stack.trims();
    Ok(ByteLcp { vals, m })
}

fn check_lf_entry(lf: &[u32], i: usize, got: u32) -> Result<()> {
    if lf.get(i) != Some(&got) {
        return Err(Error::InconsistentInputs(format!("LF mapping disagrees with the BWT at {i}")));
    }
    Ok(())
}

#[inline]
fn extend_capped(s: &[u8], a: usize, b: usize, mut l: usize, cap: usize, ins: &mut Instruments) -> usize {
    let c = &mut ins.counters;
    while l < cap {
        c.char_comparisons += 1;
        c.text_accesses += 2;
        if s[a + l] != s[b + l] {
            break;
        }
        l += 1;
    }
    l
}

/// Sequential reader of a byte LCP array, in memory or on disk.
pub trait ByteLcpSource {
    fn m(&self) -> u8;
    fn stream(&self) -> Result<Stream<'_, u8>>;
}

impl ByteLcpSource for ByteLcp {
    fn m(&self) -> u8 {
        self.m
    }

    fn stream(&self) -> Result<Stream<'_, u8>> {
        Ok(Box::new(self.vals.iter().map(|&v| Ok(v))))
    }
}

/// A byte LCP file written by [`io::write_byte_lcp`].
pub struct ByteLcpFile {
    path: std::path::PathBuf,
    m: u8,
}

impl ByteLcpFile {
    pub fn open(path: &Path) -> Result<Self> {
        let (m, _) = io::open_byte_lcp(path)?;
        Ok(ByteLcpFile { path: path.to_path_buf(), m })
    }
}

impl ByteLcpSource for ByteLcpFile {
    fn m(&self) -> u8 {
        self.m
    }

    fn stream(&self) -> Result<Stream<'_, u8>> {
        Ok(Box::new(io::open_byte_lcp(&self.path)?.1))
    }
}

/// Builds the mark bits from streams of the suffix array and the byte LCP:
/// `marks[sa[i]] = 1` iff entry `i` is marked.
pub fn marks_from_streams(
    src: &dyn ArraySource,
    lcp8: &dyn ByteLcpSource,
    ins: &mut Instruments,
) -> Result<MarkBits> {
    let n = src.len();
    let mut marks = MarkBits::new(n);
    ins.ledger.hold("marks", marks.size_in_bytes());
    let marker = lcp8.m() + 1;
    let mut sa_s = src.sa()?;
    let mut l8 = lcp8.stream()?;
    for _ in 0..n {
        let p = pull(&mut sa_s)?;
        if pull(&mut l8)? == marker {
            marks.set(p as usize);
        }
    }
    Ok(marks)
}

/// Sparse Φ entry marking a reducible position. `n - 1` is the position of
/// the sentinel suffix, which only ever precedes row 1, and row 1 always
/// has lcp 0 and is never marked.
#[inline]
fn bottom(n: usize) -> u32 {
    (n - 1) as u32
}

/// Result of the sparse text-order sweep, exposed for inspection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseArrays {
    /// Text positions of the marked entries, ascending.
    pub positions: Vec<u32>,
    /// Sparse Φ; `None` where the entry is reducible.
    pub phi: Vec<Option<u32>>,
    pub plcp: Vec<u32>,
}

/// Phase 2: fills in every marked entry of `lcp8` and writes the complete
/// array `lcp[0..n]` to `out`.
#[allow(clippy::too_many_arguments)]
pub fn phase2(
    t: &Text,
    src: &dyn ArraySource,
    lcp8: &dyn ByteLcpSource,
    rank: &RankSupport,
    out: &mut dyn LcpSink,
    ins: &mut Instruments,
) -> Result<()> {
    let (phi, plcp) = sparse_sweep(t, src, lcp8, rank, ins)?;
    drop(phi);
    ins.ledger.release("sparse phi");
    scatter(src, lcp8, rank, &plcp, out)
}

/// Phase 2 up to (not including) the final scatter; returns the sparse Φ
/// and PLCP arrays indexed by `rank1_excl(text position)`.
pub fn sparse_phase2(
    t: &Text,
    src: &dyn ArraySource,
    lcp8: &dyn ByteLcpSource,
    rank: &RankSupport,
    ins: &mut Instruments,
) -> Result<SparseArrays> {
    let (phi, plcp) = sparse_sweep(t, src, lcp8, rank, ins)?;
    let bot = bottom(t.len());
    Ok(SparseArrays {
        positions: rank.bits().iter_ones().map(|p| p as u32).collect(),
        phi: phi.into_iter().map(|p| (p != bot).then_some(p)).collect(),
        plcp,
    })
}

fn sparse_sweep(
    t: &Text,
    src: &dyn ArraySource,
    lcp8: &dyn ByteLcpSource,
    rank: &RankSupport,
    ins: &mut Instruments,
) -> Result<(Vec<u32>, Vec<u32>)> {
    let s = t.bytes();
    let n = t.len();
    let m = lcp8.m();
    check_threshold(m)?;
    let marker = m + 1;
    if src.len() != n || rank.bits().len() != n {
        return Err(Error::InconsistentInputs("phase-2 inputs differ in length".into()));
    }
    let sparse_len = rank.ones();
    let bot = bottom(n);
    ins.ledger.hold("text", n);
    ins.ledger.hold("marks + rank", rank.size_in_bytes());

    // sparse Φ over irreducible marked entries; reducible ones stay ⊥
    ins.ledger.hold("sparse phi", 4 * sparse_len);
    let mut phi = vec![bot; sparse_len];
    {
        let mut sa_s = src.sa()?;
        let mut bwt_s = src.bwt()?;
        let mut l8 = lcp8.stream()?;
        let mut prev: Option<(u32, u8)> = None;
        let mut seen = 0usize;
        for i in 0..n {
            let p = pull(&mut sa_s)?;
            let c = pull(&mut bwt_s)?;
            let v = pull(&mut l8)?;
            let marked = v == marker;
            if marked != rank.get(p as usize) {
                return Err(Error::InconsistentInputs(format!(
                    "mark bit at text position {p} disagrees with byte LCP entry {i}"
                )));
            }
            if marked {
                seen += 1;
                let (psa, pc) = prev.ok_or_else(|| {
                    Error::InconsistentInputs("row 0 cannot be marked".into())
                })?;
                if c != pc {
                    if psa == bot {
                        return Err(Error::InconsistentInputs(format!("marked entry {i} follows the sentinel suffix")));
                    }
                    phi[rank.rank1_unchecked(p as usize)] = psa;
                }
            }
            prev = Some((p, c));
        }
        if seen != sparse_len {
            return Err(Error::InconsistentInputs(format!(
                "{seen} marked entries but {sparse_len} mark bits"
            )));
        }
    }

    // text-order sweep over the marked positions
    ins.ledger.hold("sparse plcp", 4 * sparse_len);
    let mut plcp = vec![0u32; sparse_len];
    let mut ell = m as usize + 1;
    let mut prev_pos: Option<usize> = None;
    for (k, j) in rank.bits().iter_ones().enumerate() {
        let chained = j > 0 && prev_pos == Some(j - 1);
        if chained {
            // at least ell - 1 symbols match
            ell -= 1;
        } else {
            // at least m + 1 symbols match, known from phase 1
            ell = m as usize + 1;
        }
        let q = phi[k];
        if q != bot {
            let before = ins.counters.char_comparisons;
            ell = extend_match(s, j, q as usize, ell, ins);
            ins.counters.phase2_irreducible_comparisons += ins.counters.char_comparisons - before;
        } else if !chained {
            // a reducible entry is one less than its text predecessor, which
            // therefore exceeds m as well and must be marked
            return Err(Error::InconsistentInputs(format!(
                "reducible marked position {j} without a marked predecessor"
            )));
        }
        plcp[k] = ell as u32;
        prev_pos = Some(j);
    }
    Ok((phi, plcp))
}

fn scatter(
    src: &dyn ArraySource,
    lcp8: &dyn ByteLcpSource,
    rank: &RankSupport,
    plcp: &[u32],
    out: &mut dyn LcpSink,
) -> Result<()> {
    let marker = lcp8.m() + 1;
    let mut sa_s = src.sa()?;
    let mut l8 = lcp8.stream()?;
    for i in 0..src.len() {
        let p = pull(&mut sa_s)?;
        let v = pull(&mut l8)?;
        let full = if i == 0 {
            -1
        } else if v == marker {
            plcp[rank.rank1_unchecked(p as usize)] as i32
        } else {
            v as i32
        };
        out.put(full)?;
    }
    Ok(())
}

/// Both phases in memory.
pub fn lcp_hybrid(t: &Text, sa: &SuffixArray, b: &Bwt, m: u8) -> Result<LcpArray> {
    lcp_hybrid_with(t, sa, b, m, &mut Instruments::new())
}

pub fn lcp_hybrid_with(
    t: &Text,
    sa: &SuffixArray,
    b: &Bwt,
    m: u8,
    ins: &mut Instruments,
) -> Result<LcpArray> {
    let src = InMemory { sa, bwt: b };
    ins.ledger.hold("sa", 4 * t.len());
    ins.ledger.hold("bwt", t.len());
    ins.ledger.begin_phase("phase 1");
    let mut marks = MarkBits::new(t.len());
    let lcp8 = phase1_scan(t, &src, m, Some(&mut marks), None, ins)?;
    ins.ledger.release("stack");
    ins.ledger.release("scan state");
    ins.ledger.release("marks");
    ins.ledger.end_phase();

    ins.ledger.begin_phase("phase 2");
    let rank = build_rank(marks);
    let mut out = Vec::with_capacity(t.len() + 1);
    ins.ledger.hold("lcp", 4 * (t.len() + 1));
    phase2(t, &src, &lcp8, &rank, &mut out, ins)?;
    ins.ledger.end_phase();
    out.push(-1);
    Ok(LcpArray::from_vec(out))
}

/// Semi-external pipeline. Phase 1 holds only the text and the byte LCP
/// array; the latter is then written to `work_dir` and streamed back. The
/// mark bits are derived from the streamed byte LCP at the start of
/// phase 2, so they are never resident during phase 1.
pub fn lcp_hybrid_external(
    t: &Text,
    src: &dyn ArraySource,
    m: u8,
    work_dir: &Path,
    out: &mut dyn LcpSink,
    ins: &mut Instruments,
) -> Result<()> {
    ins.ledger.begin_phase("phase 1");
    let lcp8 = phase1_scan(t, src, m, None, None, ins)?;
    ins.ledger.release("stack");
    ins.ledger.release("scan state");
    let tmp = tempfile::Builder::new().prefix("lcpkit-l8").tempdir_in(work_dir)?;
    let path = tmp.path().join("lcp8");
    io::write_byte_lcp(&path, &lcp8)?;
    drop(lcp8);
    ins.ledger.release("byte lcp");
    ins.ledger.end_phase();

    ins.ledger.begin_phase("phase 2");
    let file = ByteLcpFile::open(&path)?;
    let marks = marks_from_streams(src, &file, ins)?;
    ins.ledger.release("marks");
    let rank = build_rank(marks);
    phase2(t, src, &file, &rank, out, ins)?;
    ins.ledger.end_phase();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::lcp_bruteforce;
    use crate::bwt::{build_bwt, build_lf};
    use crate::sarray::build_suffix_array;
    use crate::text::load_text;

    const GOLDEN_LCP: [i32; 20] = [-1, 0, 1, 0, 5, 0, 1, 2, 3, 1, 1, 0, 1, 2, 2, 0, 1, 4, 0, -1];

    fn prepare(raw: &[u8]) -> (Text, SuffixArray, Bwt, LfMapping) {
        let t = load_text(raw).unwrap();
        let sa = build_suffix_array(&t);
        let b = build_bwt(&t, &sa);
        let lf = build_lf(&b, &build_c_array(&t));
        (t, sa, b, lf)
    }

    #[test]
    fn golden_phase1_uncapped() {
        let (t, sa, b, lf) = prepare(b"el_anele_lepanelen");
        let (l8, marks) = phase1(&t, &sa, &b, &lf, 254).unwrap();
        for i in 1..19 {
            assert_eq!(l8.as_slice()[i] as i32, GOLDEN_LCP[i]);
        }
        assert_eq!(marks.ones(), 0);
        assert_eq!(l8.marked(), 0);
    }

    #[test]
    fn golden_phase1_m2() {
        let (t, sa, b, lf) = prepare(b"el_anele_lepanelen");
        let (l8, marks) = phase1(&t, &sa, &b, &lf, 2).unwrap();
        let marked: Vec<usize> = (0..19).filter(|&i| l8.as_slice()[i] == 3).collect();
        assert_eq!(marked, [4, 8, 17]);
        for i in 1..19 {
            if !marked.contains(&i) {
                assert_eq!(l8.exact(i), Some(GOLDEN_LCP[i]));
            }
        }
        assert_eq!(marks.iter_ones().collect::<Vec<_>>(), [12, 13, 14]);
    }

    #[test]
    fn golden_phase2_m2() {
        let (t, sa, b, lf) = prepare(b"el_anele_lepanelen");
        let (l8, marks) = phase1(&t, &sa, &b, &lf, 2).unwrap();
        let rank = build_rank(marks);
        let src = InMemory { sa: &sa, bwt: &b };
        let mut ins = Instruments::new();
        let sp = sparse_phase2(&t, &src, &l8, &rank, &mut ins).unwrap();
        assert_eq!(sp.positions, [12, 13, 14]);
        assert_eq!(sp.phi, [Some(3), None, None]);
        assert_eq!(sp.plcp, [5, 4, 3]);
        assert_eq!(ins.counters.phase2_reducible_comparisons, 0);

        let mut out = Vec::new();
        phase2(&t, &src, &l8, &rank, &mut out, &mut Instruments::new()).unwrap();
        out.push(-1);
        assert_eq!(out, GOLDEN_LCP);
    }

    #[test]
    fn no_marks_means_plain_conversion() {
        let (t, sa, b, lf) = prepare(b"banana");
        let (l8, marks) = phase1(&t, &sa, &b, &lf, 254).unwrap();
        let mut out = Vec::new();
        let mut ins = Instruments::new();
        phase2(&t, &InMemory { sa: &sa, bwt: &b }, &l8, &build_rank(marks), &mut out, &mut ins).unwrap();
        assert_eq!(out, [-1, 0, 1, 3, 0, 0, 2]);
        assert_eq!(ins.counters.char_comparisons, 0);
    }

    #[test]
    fn sentinel_only() {
        let (t, sa, b, lf) = prepare(b"");
        let (l8, marks) = phase1(&t, &sa, &b, &lf, 3).unwrap();
        assert_eq!(l8.as_slice(), &[0]);
        assert_eq!(marks.ones(), 0);
        assert_eq!(lcp_hybrid(&t, &sa, &b, 1).unwrap().as_slice(), &[-1, -1]);
    }

    #[test]
    fn threshold_bounds() {
        let (t, sa, b, _) = prepare(b"abc");
        assert!(matches!(lcp_hybrid(&t, &sa, &b, 0), Err(Error::InvalidThreshold(0))));
        assert!(matches!(lcp_hybrid(&t, &sa, &b, 255), Err(Error::InvalidThreshold(255))));
    }

    #[test]
    fn phase2_rejects_disagreeing_marks() {
        let (t, sa, b, lf) = prepare(b"el_anele_lepanelen");
        let (l8, mut marks) = phase1(&t, &sa, &b, &lf, 2).unwrap();
        marks.set(0);
        let r = phase2(
            &t,
            &InMemory { sa: &sa, bwt: &b },
            &l8,
            &build_rank(marks),
            &mut Vec::new(),
            &mut Instruments::new(),
        );
        assert!(matches!(r, Err(Error::InconsistentInputs(_))));
    }

    #[test]
    fn ab_repeats_many_large_values() {
        let (t, sa, b, _) = prepare(&crate::gen::ab_repeat(500));
        let oracle = lcp_bruteforce(&t, &sa);
        let mut ins = Instruments::new();
        assert_eq!(lcp_hybrid_with(&t, &sa, &b, 8, &mut ins).unwrap(), oracle);
        assert_eq!(ins.counters.phase2_reducible_comparisons, 0);
        // linear: far fewer comparisons than the sum of lcp values
        let sum: i64 = oracle.interior().iter().map(|&v| v as i64).sum();
        assert!((ins.counters.char_comparisons as i64) < sum / 10);
    }

    #[test]
    fn external_pipeline_matches() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let mut raw = crate::gen::dna_like(&mut rng, 5000);
        raw.extend_from_within(1000..3000);
        let (t, sa, b, _) = prepare(&raw);
        let dir = tempfile::tempdir().unwrap();
        let mut out = Vec::new();
        let mut ins = Instruments::new();
        lcp_hybrid_external(&t, &InMemory { sa: &sa, bwt: &b }, 4, dir.path(), &mut out, &mut ins).unwrap();
        out.push(-1);
        assert_eq!(out, lcp_bruteforce(&t, &sa).into_vec());
        let p1 = ins.ledger.phase_peak("phase 1").unwrap();
        assert!(p1 >= 2 * t.len() && p1 - 2 * t.len() < 4096, "phase 1 peak {p1}");
    }

    proptest::proptest! {
        #[test]
        fn independent_of_threshold(raw in proptest::collection::vec(1u8..=2, 0..300), m in 1u8..=254) {
            let (t, sa, b, lf) = prepare(&raw);
            let oracle = lcp_bruteforce(&t, &sa);
            proptest::prop_assert_eq!(&lcp_hybrid(&t, &sa, &b, m).unwrap(), &oracle);
            let (l8, marks) = phase1(&t, &sa, &b, &lf, m).unwrap();
            for i in 1..t.len() {
                let v = l8.as_slice()[i] as i32;
                if v <= m as i32 {
                    proptest::prop_assert_eq!(v, oracle[i]);
                } else {
                    proptest::prop_assert!(oracle[i] > m as i32);
                    proptest::prop_assert!(marks.get(sa[i] as usize));
                }
            }
        }
    }
}
