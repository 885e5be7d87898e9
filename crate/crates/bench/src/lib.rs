//! Inputs shared by the criterion benchmarks.

use lcpkit::{build_bwt, build_c_array, build_lf, build_suffix_array, gen, load_text, Bwt, LfMapping, SuffixArray, Text};
use rand::SeedableRng;

/// A text with its suffix array, BWT and LF-mapping, built once per
/// benchmark so that only the LCP construction is timed.
pub struct Fixture {
    pub name: String,
    pub text: Text,
    pub sa: SuffixArray,
    pub bwt: Bwt,
    pub lf: LfMapping,
}

impl Fixture {
    pub fn new(name: impl Into<String>, raw: &[u8]) -> Self {
        let text = load_text(raw).expect("generated text contains no 0x00");
        let sa = build_suffix_array(&text);
        let bwt = build_bwt(&text, &sa);
        let lf = build_lf(&bwt, &build_c_array(&text));
        Fixture { name: name.into(), text, sa, bwt, lf }
    }
}

pub fn dna(n: usize, seed: u64) -> Fixture {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    Fixture::new(format!("dna-{n}"), &gen::dna_like(&mut rng, n))
}

/// Random DNA with a long duplicated block, so many LCP values exceed the
/// default hybrid threshold.
pub fn repetitive(n: usize, seed: u64) -> Fixture {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut raw = gen::dna_like(&mut rng, n / 2);
    raw.extend_from_within(..n / 2);
    Fixture::new(format!("repetitive-{n}"), &raw)
}

pub fn ab(k: usize) -> Fixture {
    Fixture::new(format!("ab-{k}"), &gen::ab_repeat(k))
}
