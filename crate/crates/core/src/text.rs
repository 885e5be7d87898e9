//! Text loading, the sentinel convention and the `C` array.
//!
//! Every text handled by this crate ends with the byte `0x00`, which occurs
//! nowhere else and is therefore the unique smallest symbol.

use crate::error::{Error, Result};

/// The sentinel byte appended to every text.
pub const SENTINEL: u8 = 0x00;

/// Largest text length including the sentinel; keeps indices in `u32` and
/// the `-1` boundary values in `i32`.
pub const MAX_LEN: usize = (1 << 32) - 2;

/// Largest accepted raw input length.
pub const MAX_RAW_LEN: usize = MAX_LEN - 1;

/// A byte string terminated by the sentinel.
#[derive(Clone, PartialEq, Eq)]
pub struct Text {
    bytes: Vec<u8>,
}

impl Text {
    /// Text bytes including the trailing sentinel.
    #[inline]
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Length including the sentinel (always at least 1).
    #[inline]
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    /// The original input, without the sentinel.
    pub fn raw(&self) -> &[u8] {
        &self.bytes[..self.bytes.len() - 1]
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }
}

impl std::fmt::Debug for Text {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Text")
            .field("n", &self.len())
            .field("bytes", &String::from_utf8_lossy(&self.bytes[..self.len().min(64)]))
            .finish()
    }
}

/// Appends the sentinel to `raw`, rejecting inputs that already contain it.
pub fn load_text(raw: &[u8]) -> Result<Text> {
    if raw.len() > MAX_RAW_LEN {
        return Err(Error::TooLarge(raw.len()));
    }
    if let Some(pos) = raw.iter().position(|&b| b == SENTINEL) {
        return Err(Error::EmbeddedSentinel(pos));
    }
    let mut bytes = crate::mem::reserve(raw.len() + 1);
    bytes.extend_from_slice(raw);
    bytes.push(SENTINEL);
    Ok(Text { bytes })
}

/// Cumulative symbol counts: `c[x]` is the number of text positions holding
/// a byte strictly smaller than `x`, for `x` in `0..=256`.
#[derive(Clone, PartialEq, Eq)]
pub struct CArray {
    c: [u32; 257],
}

impl CArray {
    #[inline]
    pub fn get(&self, x: usize) -> u32 {
        self.c[x]
    }

    /// Start of the suffix-array interval of suffixes beginning with `x`.
    #[inline]
    pub fn start(&self, x: u8) -> u32 {
        self.c[x as usize]
    }

    /// Frequency of `x` in the text.
    #[inline]
    pub fn count(&self, x: u8) -> u32 {
        self.c[x as usize + 1] - self.c[x as usize]
    }

    pub fn as_slice(&self) -> &[u32; 257] {
        &self.c
    }

    /// Number of distinct bytes present, sentinel included.
    pub fn sigma(&self) -> usize {
        (0..256).filter(|&x| self.c[x + 1] > self.c[x]).count()
    }

    /// The bytes present in the text, ascending.
    pub fn alphabet(&self) -> impl Iterator<Item = u8> + '_ {
        (0..=255u8).filter(move |&x| self.count(x) > 0)
    }

    /// Iterates `F[i]` (first column of the sorted suffixes) for
    /// `i = 0..n` without touching the text.
    pub fn first_column(&self) -> FirstColumn<'_> {
        FirstColumn { c: self, sym: 0, i: 0 }
    }
}

impl std::fmt::Debug for CArray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut m = f.debug_map();
        for x in self.alphabet() {
            m.entry(&x, &self.c[x as usize]);
        }
        m.finish()
    }
}

/// Sequential reader of the `F` column derived from a [`CArray`].
#[derive(Debug, Clone)]
pub struct FirstColumn<'a> {
    c: &'a CArray,
    sym: usize,
    i: u32,
}

impl Iterator for FirstColumn<'_> {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        if self.i >= self.c.c[256] {
            return None;
        }
        while self.c.c[self.sym + 1] <= self.i {
            self.sym += 1;
        }
        self.i += 1;
        Some(self.sym as u8)
    }
}

pub fn build_c_array(t: &Text) -> CArray {
    let mut freq = [0u32; 256];
    for &b in t.bytes() {
        freq[b as usize] += 1;
    }
    let mut c = [0u32; 257];
    for x in 0..256 {
        c[x + 1] = c[x] + freq[x];
    }
    CArray { c }
}
