//! Corpus statistics that drive the running time of the BWT-based
//! constructions: BWT runs, irreducible PLCP entries and the share of large
//! LCP values.

use crate::baseline::{plcp_phi, LcpArray};
use crate::bwt::{bwt_run_count, Bwt};
use crate::metrics::Instruments;
use crate::sarray::SuffixArray;
use crate::text::{build_c_array, Text};

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusStats {
    pub n: usize,
    pub sigma_effective: usize,
    pub bwt_runs: usize,
    pub irreducible_count: usize,
    /// `(m, share of interior LCP entries greater than m)`.
    pub fraction_lcp_above_m: Vec<(u32, f64)>,
    pub max_lcp: i32,
    pub mean_lcp: f64,
}

/// Computes the statistics. Irreducible entries are counted straight from
/// the text and Φ, independently of the BWT run count.
pub fn corpus_stats(t: &Text, sa: &SuffixArray, b: &Bwt, lcp: &LcpArray, ms: &[u32]) -> CorpusStats {
    let n = t.len();
    let s = t.bytes();
    let phi = plcp_phi(t, sa, &mut Instruments::new()).phi;
    let sentinel_suffix = sa[0] as usize;
    let irreducible_count = (0..n)
        .filter(|&j| {
            if j == 0 || j == sentinel_suffix {
                return true;
            }
            let q = phi[j] as usize;
            // S[-1] reads as the sentinel, matching the BWT convention
            let before_q = if q == 0 { s[n - 1] } else { s[q - 1] };
            s[j - 1] != before_q
        })
        .count();

    let interior = lcp.interior();
    let denom = interior.len().max(1) as f64;
    let fraction_lcp_above_m = ms
        .iter()
        .map(|&m| (m, interior.iter().filter(|&&v| v as i64 > m as i64).count() as f64 / denom))
        .collect();
    let mean_lcp = if interior.is_empty() {
        0.0
    } else {
        interior.iter().map(|&v| v as f64).sum::<f64>() / interior.len() as f64
    };

    CorpusStats {
        n,
        sigma_effective: build_c_array(t).sigma(),
        bwt_runs: bwt_run_count(b),
        irreducible_count,
        fraction_lcp_above_m,
        max_lcp: interior.iter().copied().max().unwrap_or(0),
        mean_lcp,
    }
}
