//! Synthetic corpora for tests and benchmarks. All generators emit bytes in
//! `1..=255`, so their output is always a valid raw input for
//! [`load_text`](crate::text::load_text).

use rand::Rng;

/// Uniform random bytes over the `sigma` symbols `1..=sigma`.
pub fn uniform<R: Rng + ?Sized>(rng: &mut R, n: usize, sigma: u8) -> Vec<u8> {
    assert!(sigma >= 1);
    (0..n).map(|_| rng.gen_range(1..=sigma)).collect()
}

/// Random text over `ACGT`.
pub fn dna_like<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<u8> {
    const ACGT: &[u8; 4] = b"ACGT";
    (0..n).map(|_| ACGT[rng.gen_range(0..4)]).collect()
}

/// `"ab"` repeated `k` times.
pub fn ab_repeat(k: usize) -> Vec<u8> {
    b"ab".repeat(k)
}

/// `n` copies of `a`.
pub fn unary(n: usize) -> Vec<u8> {
    vec![b'a'; n]
}

/// De Bruijn sequence B(k, order) over the letters `a..`, truncated or
/// cycled to length `len`.
pub fn de_bruijn(k: u8, order: usize, len: usize) -> Vec<u8> {
    assert!((1..=26).contains(&k) && order >= 1);
    let k = k as usize;
    let mut a = vec![0usize; k * order];
    let mut seq = Vec::new();
    // standard Lyndon-word construction
    fn db(t: usize, p: usize, k: usize, n: usize, a: &mut [usize], seq: &mut Vec<usize>) {
        if t > n {
            if n.is_multiple_of(p) {
                seq.extend_from_slice(&a[1..=p]);
            }
        } else {
            a[t] = a[t - p];
            db(t + 1, p, k, n, a, seq);
            for j in a[t - p] + 1..k {
                a[t] = j;
                db(t + 1, t, k, n, a, seq);
            }
        }
    }
    a.resize(order + 1, 0);
    db(1, 1, k, order, &mut a, &mut seq);
    if seq.is_empty() {
        return Vec::new();
    }
    seq.iter().cycle().take(len).map(|&x| b'a' + x as u8).collect()
}

/// Prefix of length `len` of the Fibonacci word over `{a, b}`.
pub fn fibonacci(len: usize) -> Vec<u8> {
    let (mut prev, mut cur) = (b"b".to_vec(), b"a".to_vec());
    while cur.len() < len {
        let next = [cur.as_slice(), prev.as_slice()].concat();
        prev = cur;
        cur = next;
    }
    cur.truncate(len);
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn de_bruijn_contains_every_window_once() {
        let s = de_bruijn(3, 3, 27);
        assert_eq!(s.len(), 27);
        let cyc: Vec<u8> = s.iter().chain(&s[..2]).copied().collect();
        let mut windows: Vec<&[u8]> = cyc.windows(3).collect();
        windows.sort();
        windows.dedup();
        assert_eq!(windows.len(), 27);
    }

    #[test]
    fn fibonacci_prefix() {
        assert_eq!(fibonacci(8), b"abaababa");
    }
}
