//! LCP construction from the BWT scan: every value `lcp[LF[i]]` is derived
//! from a range minimum over `lcp[prev(i)+1 ..= i]`, where `prev(i)` is the
//! previous BWT position with the same symbol. The range minimum is answered
//! by a stack of O(σ) entries.
//!
//! [`lcp_go`] keeps the whole LCP array in memory. [`lcp_go2`] streams the
//! suffix array and the BWT, keeps only the text resident, and parks values
//! destined for other positions in per-symbol queues.

mod queues;
mod stack;

use std::path::PathBuf;

pub use queues::{CharQueues, DEFAULT_QUEUE_BUF};
pub use stack::{LastOcc, RmqStack};

use crate::baseline::{extend_match, LcpArray};
use crate::bwt::{Bwt, LfMapping};
use crate::error::{Error, Result};
use crate::io::{pull, ArraySource, LcpSink};
use crate::metrics::Instruments;
use crate::sarray::SuffixArray;
use crate::text::{build_c_array, CArray, Text};

/// Running symbol counts over the BWT: before position `i` is processed,
/// `occ(c)` counts `c` in `bwt[0..i]`.
#[derive(Clone, Debug)]
pub struct UndefCounters {
    cnt: [u32; 256],
}

impl Default for UndefCounters {
    fn default() -> Self {
        UndefCounters { cnt: [0; 256] }
    }
}

impl UndefCounters {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn occ(&self, c: u8) -> u32 {
        self.cnt[c as usize]
    }

    /// `LF[i] = C[c] + occ(c)` for `c = bwt[i]`; counts `c`.
    #[inline]
    pub fn advance(&mut self, c: u8, carr: &CArray) -> u32 {
        let lf = carr.start(c) + self.cnt[c as usize];
        self.cnt[c as usize] += 1;
        lf
    }
}

/// Whether `lcp[i]` was already produced ahead of the scan, i.e. whether
/// the position `j < i` with `LF[j] = i` has been passed.
///
/// `F[i] = fi` is the `(i - C[fi])`-th occurrence of `fi` in the first
/// column, so its LF-preimage is the `(i - C[fi])`-th occurrence of `fi`
/// in the BWT; that occurrence lies before `i` iff
/// `i < C[fi] + occ(fi, bwt[0..i])`. The symbol counted is `F[i]`, not
/// `bwt[i]`.
#[inline]
pub fn is_defined(i: u32, fi: u8, c: &CArray, u: &UndefCounters) -> bool {
    i < c.start(fi) + u.occ(fi)
}

#[derive(Clone, Debug, Default)]
pub struct GoOptions {
    /// Check every stack answer against a naive range minimum over the LCP
    /// array, and every ⊥ test against the array itself. Quadratic; for
    /// tests only.
    pub shadow_checks: bool,
}

const UNDEF: i32 = i32::MIN;

pub fn lcp_go(t: &Text, sa: &SuffixArray, b: &Bwt, lf: &LfMapping) -> LcpArray {
    lcp_go_with(t, sa, b, lf, &GoOptions::default(), &mut Instruments::new())
}

pub fn lcp_go_with(
    t: &Text,
    sa: &SuffixArray,
    b: &Bwt,
    lf: &LfMapping,
    opts: &GoOptions,
    ins: &mut Instruments,
) -> LcpArray {
    LcpArray::from_vec(go_scan(t, sa, b, lf, opts, None, ins))
}

/// State of the LCP array after the scan has finished position
/// `last` (`None` = not computed yet). Position 0 is the initialization.
pub fn lcp_go_snapshot(
    t: &Text,
    sa: &SuffixArray,
    b: &Bwt,
    lf: &LfMapping,
    last: usize,
) -> Vec<Option<i32>> {
    let lcp = go_scan(t, sa, b, lf, &GoOptions::default(), Some(last), &mut Instruments::new());
    lcp.into_iter().map(|v| (v != UNDEF).then_some(v)).collect()
}

fn go_scan(
    t: &Text,
    sa: &SuffixArray,
    b: &Bwt,
    lf: &LfMapping,
    opts: &GoOptions,
    stop_after: Option<usize>,
    ins: &mut Instruments,
) -> Vec<i32> {
    let s = t.bytes();
    let l = b.as_slice();
    let n = t.len();
    ins.ledger.hold("text", n);
    ins.ledger.hold("sa", 4 * n);
    ins.ledger.hold("bwt", n);
    ins.ledger.hold("lf", 4 * n);
    ins.ledger.hold("lcp", 4 * (n + 1));

    let mut lcp = crate::mem::filled(n + 1, UNDEF);
    lcp[0] = -1;
    lcp[n] = -1;
    if n == 1 {
        return lcp;
    }

    let carr = build_c_array(t);
    let mut stack = RmqStack::new(carr.alphabet().collect());
    ins.ledger.hold("stack", 2 * stack.sigma() * 8);
    let mut lastocc = LastOcc::new();
    let mut undef = UndefCounters::new();
    let mut first_col = carr.first_column();

    // position 0: prev(0) = -1, so lcp[LF[0]] = 0
    lcp[lf[0] as usize] = 0;
    ins.counters.forward_writes += 1;
    stack.push(0, -1);
    lastocc.set(l[0], 0);
    undef.advance(l[0], &carr);
    first_col.next();

    let end = stop_after.map_or(n, |last| (last + 1).min(n));
    for i in 1..end {
        let c = l[i];
        let lfi = lf[i] as usize;
        let fi = first_col.next().unwrap();

        if opts.shadow_checks {
            assert_eq!(
                lcp[i] != UNDEF,
                is_defined(i as u32, fi, &carr, &undef),
                "undefined-entry test disagrees at {i}"
            );
        }

        if lcp[i] == UNDEF {
            let mut ell = 0usize;
            let mut known = false;
            if lfi < i {
                ell = (lcp[lfi] - 1).max(0) as usize;
                // same symbol as the predecessor row: prev(i) = i - 1, and
                // lcp[LF[i]] - 1 is exactly lcp[i]
                known = c == l[i - 1];
            }
            if !known {
                ell = extend_match(s, sa[i] as usize, sa[i - 1] as usize, ell, ins);
            }
            lcp[i] = ell as i32;
            ins.counters.home_writes += 1;
        }

        stack.push_maintained(i as u32, lcp[i], &lastocc);
        ins.counters.max_stack_len = ins.counters.max_stack_len.max(stack.len() as u64);

        if lfi > i {
            let x = lastocc.query_start(c);
            let (_, v) = stack.query(x).expect("stack invariant violated");
            if opts.shadow_checks {
                let naive = *lcp[x as usize..=i].iter().min().unwrap();
                assert_eq!(v, naive, "stack answer differs from naive minimum at {i}");
            }
            lcp[lfi] = v + 1;
            ins.counters.forward_writes += 1;
        }
        lastocc.set(c, i as u32);
        undef.advance(c, &carr);
    }
    ins.counters.stack_trims += stack.trims();
    lcp
}

/// Configuration of the streaming variant.
#[derive(Clone, Debug)]
pub struct Go2Config {
    /// In-memory budget per symbol queue, in bytes.
    pub queue_buf: usize,
    /// Parent directory for spill files; the system temp dir if unset.
    pub tmp_dir: Option<PathBuf>,
}

impl Default for Go2Config {
    fn default() -> Self {
        Go2Config { queue_buf: DEFAULT_QUEUE_BUF, tmp_dir: None }
    }
}

/// Streaming variant of [`lcp_go`]. The suffix array and the BWT are read
/// once, front to back; `LF` is recomputed on the fly from the same running
/// counts that drive the undefined-entry test. Only the text is accessed at
/// random. Values `lcp[0..n]` are handed to `out` in index order.
///
/// Each value of the interval of symbol `c` passes through queue `Q_c`
/// exactly once: it is enqueued when first computed (ahead of the scan at
/// `LF[i] > i`, or at its own index otherwise) and dequeued when next
/// needed (at its own index, or at the position `i` with `LF[i] = j < i`).
pub fn lcp_go2(
    t: &Text,
    src: &dyn ArraySource,
    cfg: &Go2Config,
    out: &mut dyn LcpSink,
    ins: &mut Instruments,
) -> Result<()> {
    let s = t.bytes();
    let n = t.len();
    if src.len() != n {
        return Err(Error::InconsistentInputs(format!(
            "text has {n} symbols but the arrays have {}",
            src.len()
        )));
    }
    ins.ledger.hold("text", n);
    out.put(-1)?;
    if n == 1 {
        return Ok(());
    }

    let carr = build_c_array(t);
    let mut queues = CharQueues::new(carr.alphabet(), cfg.queue_buf, cfg.tmp_dir.as_deref());
    ins.ledger.hold("queues", queues.resident_bytes());
    let mut stack = RmqStack::new(carr.alphabet().collect());
    ins.ledger.hold("stack", 2 * stack.sigma() * 8);
    ins.ledger.hold("scan state", 3 * 256 * 4 + 257 * 4);
    let mut lastocc = LastOcc::new();
    let mut undef = UndefCounters::new();
    let mut first_col = carr.first_column();

    let mut sa_s = src.sa()?;
    let mut bwt_s = src.bwt()?;

    let mut prev_sa = pull(&mut sa_s)?;
    let mut prev_c = pull(&mut bwt_s)?;
    let f0 = first_col.next().unwrap();
    // lcp[0] = -1 is read back at the row holding the sentinel in the BWT
    queues.enqueue(f0, -1)?;
    let lf0 = undef.advance(prev_c, &carr);
    debug_assert!(lf0 > 0);
    queues.enqueue(prev_c, 0)?;
    ins.counters.forward_writes += 1;
    ins.counters.enqueues += 2;
    stack.push(0, -1);
    lastocc.set(prev_c, 0);

    for i in 1..n as u32 {
        let sai = pull(&mut sa_s)?;
        let c = pull(&mut bwt_s)?;
        let fi = first_col.next().unwrap();
        let defined = is_defined(i, fi, &carr, &undef);
        let lfi = undef.advance(c, &carr);

        let v = if defined {
            if lfi < i {
                // lcp[LF[i]] is not needed, but it was queued for this row
                queues.dequeue(c)?;
                ins.counters.dequeues += 1;
            }
            ins.counters.dequeues += 1;
            queues.dequeue(fi)?
        } else {
            let mut ell = 0usize;
            let mut known = false;
            if lfi < i {
                let back = queues.dequeue(c)?;
                ins.counters.dequeues += 1;
                ell = (back - 1).max(0) as usize;
                known = c == prev_c;
            }
            if !known {
                ell = extend_match(s, sai as usize, prev_sa as usize, ell, ins);
            }
            let v = ell as i32;
            queues.enqueue(fi, v)?;
            ins.counters.enqueues += 1;
            ins.counters.home_writes += 1;
            v
        };
        out.put(v)?;

        stack.push_maintained(i, v, &lastocc);
        ins.counters.max_stack_len = ins.counters.max_stack_len.max(stack.len() as u64);
        if lfi > i {
            let (_, m) = stack.query(lastocc.query_start(c))?;
            queues.enqueue(c, m + 1)?;
            ins.counters.enqueues += 1;
            ins.counters.forward_writes += 1;
        }
        lastocc.set(c, i);
        prev_sa = sai;
        prev_c = c;
    }
    if sa_s.next().is_some() || bwt_s.next().is_some() {
        return Err(Error::InconsistentInputs("arrays longer than the text".into()));
    }
    // the home values of rows whose LF-preimage comes later were dequeued
    // there; everything else was consumed at home
    queues.ensure_drained()?;
    ins.counters.stack_trims += stack.trims();
    ins.counters.max_queue_buffered_bytes =
        ins.counters.max_queue_buffered_bytes.max(queues.peak_buffered_bytes() as u64);
    Ok(())
}

/// [`lcp_go2`] over in-memory arrays, collecting the result.
pub fn lcp_go2_in_memory(
    t: &Text,
    sa: &SuffixArray,
    b: &Bwt,
    cfg: &Go2Config,
    ins: &mut Instruments,
) -> Result<LcpArray> {
    let mut out = Vec::with_capacity(t.len() + 1);
    lcp_go2(t, &crate::io::InMemory { sa, bwt: b }, cfg, &mut out, ins)?;
    out.push(-1);
    Ok(LcpArray::from_vec(out))
}
