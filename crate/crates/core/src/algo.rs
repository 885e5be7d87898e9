//! Uniform entry point over all construction algorithms.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::baseline::{lcp_bruteforce_with, lcp_kasai_with, lcp_phi_with, LcpArray};
use crate::bwt::{build_bwt, build_lf, Bwt};
use crate::error::Result;
use crate::go::{lcp_go2_in_memory, lcp_go_with, Go2Config, GoOptions, DEFAULT_QUEUE_BUF};
use crate::hybrid::{lcp_hybrid_with, DEFAULT_M};
use crate::metrics::Instruments;
use crate::sarray::{invert, SuffixArray};
use crate::text::{build_c_array, Text};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algo {
    Brute,
    Kasai,
    Phi,
    Go,
    Go2,
    Hybrid,
}

impl Algo {
    pub const ALL: [Algo; 6] = [Algo::Brute, Algo::Kasai, Algo::Phi, Algo::Go, Algo::Go2, Algo::Hybrid];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Brute => "brute",
            Algo::Kasai => "kasai",
            Algo::Phi => "phi",
            Algo::Go => "go",
            Algo::Go2 => "go2",
            Algo::Hybrid => "hybrid",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}` (expected one of brute, kasai, phi, go, go2, hybrid)"))
    }
}

#[derive(Clone, Debug)]
pub struct BuildParams {
    /// Phase-1 threshold of the hybrid algorithm.
    pub m: u8,
    /// Per-queue memory budget of go2.
    pub queue_buf: usize,
    pub tmp_dir: Option<PathBuf>,
}

impl Default for BuildParams {
    fn default() -> Self {
        BuildParams { m: DEFAULT_M, queue_buf: DEFAULT_QUEUE_BUF, tmp_dir: None }
    }
}

/// Runs `algo` over in-memory inputs. `bwt` is built on demand when the
/// algorithm needs it and none is given.
pub fn construct(
    algo: Algo,
    t: &Text,
    sa: &SuffixArray,
    bwt: Option<&Bwt>,
    params: &BuildParams,
    ins: &mut Instruments,
) -> Result<LcpArray> {
    let owned;
    let bwt = match bwt {
        Some(b) => b,
        None if matches!(algo, Algo::Go | Algo::Go2 | Algo::Hybrid) => {
            owned = build_bwt(t, sa);
            &owned
        }
        None => {
            owned = Bwt::from_vec(Vec::new());
            &owned
        }
    };
    Ok(match algo {
        Algo::Brute => lcp_bruteforce_with(t, sa, ins),
        Algo::Kasai => {
            let isa = invert(sa);
            lcp_kasai_with(t, sa, &isa, ins)
        }
        Algo::Phi => lcp_phi_with(t, sa, ins),
        Algo::Go => {
            let lf = build_lf(bwt, &build_c_array(t));
            lcp_go_with(t, sa, bwt, &lf, &GoOptions::default(), ins)
        }
        Algo::Go2 => {
            let cfg = Go2Config { queue_buf: params.queue_buf, tmp_dir: params.tmp_dir.clone() };
            lcp_go2_in_memory(t, sa, bwt, &cfg, ins)?
        }
        Algo::Hybrid => lcp_hybrid_with(t, sa, bwt, params.m, ins)?,
    })
}
