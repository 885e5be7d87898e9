//! Lightweight LCP-array construction.
//!
//! Besides the classical baselines ([`baseline`]: direct comparison,
//! Kasai et al., Φ), the crate provides
//!
//! * [`go`]: a scan over the BWT that derives `lcp[LF[i]]` from a range
//!   minimum answered by an O(σ) stack, in an in-memory and a
//!   semi-external, queue-streaming form;
//! * [`hybrid`]: a two-phase construction that computes all small values
//!   with a byte-capped version of that scan and resolves the rest through
//!   a sparse permuted-LCP pass in linear time.
//!
//! Texts are byte strings with an appended `0x00` sentinel ([`text`]).

pub mod algo;
pub mod baseline;
pub mod bwt;
pub mod error;
pub mod gen;
pub mod go;
pub mod hybrid;
pub mod io;
mod mem;
pub mod metrics;
pub mod rank;
pub mod sarray;
pub mod stats;
pub mod text;

pub use algo::{construct, Algo, BuildParams};
pub use baseline::{lcp_bruteforce, lcp_kasai, lcp_phi, plcp_phi, LcpArray, PlcpArray};
pub use bwt::{build_bwt, build_lf, bwt_run_count, Bwt, LfMapping, OccCounter};
pub use error::{Error, Result};
pub use go::{is_defined, lcp_go, lcp_go2, CharQueues, Go2Config, LastOcc, RmqStack, UndefCounters};
pub use hybrid::{lcp_hybrid, lcp_hybrid_external, phase1, phase2, ByteLcp, DEFAULT_M};
pub use metrics::{Counters, Instruments, SpaceLedger};
pub use rank::{build_rank, MarkBits, RankSupport};
pub use sarray::{build_suffix_array, invert, verify_suffix_array, InverseSuffixArray, SuffixArray};
pub use stats::{corpus_stats, CorpusStats};
pub use text::{build_c_array, load_text, CArray, Text, SENTINEL};
