//! On-disk array formats and sequential readers over them.
//!
//! Every file starts with an 8-byte magic followed by the element count `n`
//! as a little-endian `u64`, then `n` little-endian elements:
//!
//! | magic      | payload                                           |
//! |------------|---------------------------------------------------|
//! | `LCPFSA01` | suffix array, `u32` each                          |
//! | `LCPFBW01` | BWT, one byte each, sentinel stored as `0x00`     |
//! | `LCPFLC01` | `lcp[0..n]` as `i32` (the `lcp[n] = -1` is implied) |
//! | `LCPFL801` | capped byte LCP; one extra byte `m` precedes `n`  |

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::marker::PhantomData;
use std::path::{Path, PathBuf};

use crate::baseline::LcpArray;
use crate::bwt::Bwt;
use crate::error::{Error, Result};
use crate::hybrid::ByteLcp;
use crate::sarray::SuffixArray;

pub const SA_MAGIC: &[u8; 8] = b"LCPFSA01";
pub const BWT_MAGIC: &[u8; 8] = b"LCPFBW01";
pub const LCP_MAGIC: &[u8; 8] = b"LCPFLC01";
pub const LCP8_MAGIC: &[u8; 8] = b"LCPFL801";

const IO_BUF: usize = 1 << 16;

/// Fixed-width little-endian array element.
pub trait Elem: Copy {
    const WIDTH: usize;
    fn decode(b: &[u8]) -> Self;
    fn encode(self, out: &mut impl Write) -> std::io::Result<()>;
}

impl Elem for u8 {
    const WIDTH: usize = 1;
    fn decode(b: &[u8]) -> Self {
        b[0]
    }
    fn encode(self, out: &mut impl Write) -> std::io::Result<()> {
        out.write_all(&[self])
    }
}

impl Elem for u32 {
    const WIDTH: usize = 4;
    fn decode(b: &[u8]) -> Self {
        u32::from_le_bytes(b[..4].try_into().unwrap())
    }
    fn encode(self, out: &mut impl Write) -> std::io::Result<()> {
        out.write_all(&self.to_le_bytes())
    }
}

impl Elem for i32 {
    const WIDTH: usize = 4;
    fn decode(b: &[u8]) -> Self {
        i32::from_le_bytes(b[..4].try_into().unwrap())
    }
    fn encode(self, out: &mut impl Write) -> std::io::Result<()> {
        out.write_all(&self.to_le_bytes())
    }
}

/// Sequential reader over one array file. Yields exactly `n` elements.
pub struct ArrayReader<R, T> {
    inner: BufReader<R>,
    remaining: u64,
    n: u64,
    _elem: PhantomData<T>,
}

impl<R: Read, T: Elem> ArrayReader<R, T> {
    fn after_header(inner: BufReader<R>, n: u64) -> Self {
        ArrayReader { inner, remaining: n, n, _elem: PhantomData }
    }

    pub fn len(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

impl<R: Read, T: Elem> Iterator for ArrayReader<R, T> {
    type Item = Result<T>;

    fn next(&mut self) -> Option<Result<T>> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let mut buf = [0u8; 8];
        let buf = &mut buf[..T::WIDTH];
        Some(match self.inner.read_exact(buf) {
            Ok(()) => Ok(T::decode(buf)),
            Err(e) => Err(Error::Format(format!("truncated array payload: {e}"))),
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

fn read_header<R: Read>(r: &mut R, magic: &[u8; 8]) -> Result<u64> {
    let mut m = [0u8; 8];
    r.read_exact(&mut m).map_err(|_| Error::Format("file too short for header".into()))?;
    if &m != magic {
        return Err(Error::Format(format!(
            "expected magic {:?}, found {:?}",
            String::from_utf8_lossy(magic),
            String::from_utf8_lossy(&m)
        )));
    }
    let mut n = [0u8; 8];
    r.read_exact(&mut n).map_err(|_| Error::Format("file too short for length".into()))?;
    Ok(u64::from_le_bytes(n))
}

fn open_array<T: Elem>(path: &Path, magic: &[u8; 8]) -> Result<ArrayReader<File, T>> {
    let mut r = BufReader::with_capacity(IO_BUF, File::open(path)?);
    let n = read_header(&mut r, magic)?;
    let expect = 16 + n * T::WIDTH as u64;
    let actual = std::fs::metadata(path)?.len();
    if actual != expect {
        return Err(Error::Format(format!(
            "{}: size {actual} does not match header (expected {expect})",
            path.display()
        )));
    }
    Ok(ArrayReader::after_header(r, n))
}

fn write_array<T: Elem>(
    path: &Path,
    magic: &[u8; 8],
    extra: &[u8],
    items: impl ExactSizeIterator<Item = T>,
) -> Result<()> {
    let mut w = BufWriter::with_capacity(IO_BUF, File::create(path)?);
    w.write_all(magic)?;
    w.write_all(extra)?;
    w.write_all(&(items.len() as u64).to_le_bytes())?;
    for x in items {
        x.encode(&mut w)?;
    }
    w.flush()?;
    Ok(())
}

pub type SaReader = ArrayReader<File, u32>;
pub type BwtReader = ArrayReader<File, u8>;
pub type LcpReader = ArrayReader<File, i32>;
pub type ByteLcpReader = ArrayReader<File, u8>;

pub fn open_sa(path: &Path) -> Result<SaReader> {
    open_array(path, SA_MAGIC)
}

pub fn open_bwt(path: &Path) -> Result<BwtReader> {
    open_array(path, BWT_MAGIC)
}

pub fn open_lcp(path: &Path) -> Result<LcpReader> {
    open_array(path, LCP_MAGIC)
}

/// Opens a byte-LCP file, returning its threshold `m` and a reader.
pub fn open_byte_lcp(path: &Path) -> Result<(u8, ByteLcpReader)> {
    let mut r = BufReader::with_capacity(IO_BUF, File::open(path)?);
    let mut magic = [0u8; 9];
    r.read_exact(&mut magic).map_err(|_| Error::Format("file too short for header".into()))?;
    if &magic[..8] != LCP8_MAGIC {
        return Err(Error::Format("not a byte-LCP file".into()));
    }
    let m = magic[8];
    let mut n = [0u8; 8];
    r.read_exact(&mut n).map_err(|_| Error::Format("file too short for length".into()))?;
    Ok((m, ArrayReader::after_header(r, u64::from_le_bytes(n))))
}

pub fn write_sa(path: &Path, sa: &SuffixArray) -> Result<()> {
    write_array(path, SA_MAGIC, &[], sa.as_slice().iter().copied())
}

pub fn read_sa(path: &Path) -> Result<SuffixArray> {
    Ok(SuffixArray::from_vec(open_sa(path)?.collect::<Result<_>>()?))
}

pub fn write_bwt(path: &Path, b: &Bwt) -> Result<()> {
    write_array(path, BWT_MAGIC, &[], b.as_slice().iter().copied())
}

pub fn read_bwt(path: &Path) -> Result<Bwt> {
    Ok(Bwt::from_vec(open_bwt(path)?.collect::<Result<_>>()?))
}

/// Writes `lcp[0..n]`; the trailing boundary is not stored.
pub fn write_lcp(path: &Path, lcp: &LcpArray) -> Result<()> {
    let s = lcp.as_slice();
    write_array(path, LCP_MAGIC, &[], s[..s.len() - 1].iter().copied())
}

pub fn read_lcp(path: &Path) -> Result<LcpArray> {
    let mut v: Vec<i32> = open_lcp(path)?.collect::<Result<_>>()?;
    v.push(-1);
    Ok(LcpArray::from_vec(v))
}

pub fn write_byte_lcp(path: &Path, b: &ByteLcp) -> Result<()> {
    write_array(path, LCP8_MAGIC, &[b.m()], b.as_slice().iter().copied())
}

pub fn read_byte_lcp(path: &Path) -> Result<ByteLcp> {
    let (m, r) = open_byte_lcp(path)?;
    let vals = r.collect::<Result<Vec<u8>>>()?;
    ByteLcp::from_parts(vals, m)
}

/// Receives LCP values `lcp[0], lcp[1], ..., lcp[n-1]` in index order.
pub trait LcpSink {
    fn put(&mut self, v: i32) -> Result<()>;
}

impl LcpSink for Vec<i32> {
    #[inline]
    fn put(&mut self, v: i32) -> Result<()> {
        self.push(v);
        Ok(())
    }
}

/// Streams an LCP file to disk as values arrive.
pub struct LcpWriter {
    w: BufWriter<File>,
    expected: u64,
    written: u64,
}

impl LcpWriter {
    pub fn create(path: &Path, n: usize) -> Result<Self> {
        let mut w = BufWriter::with_capacity(IO_BUF, File::create(path)?);
        w.write_all(LCP_MAGIC)?;
        w.write_all(&(n as u64).to_le_bytes())?;
        Ok(LcpWriter { w, expected: n as u64, written: 0 })
    }

    pub fn finish(mut self) -> Result<()> {
        if self.written != self.expected {
            return Err(Error::InconsistentInputs(format!(
                "LCP stream wrote {} of {} values",
                self.written, self.expected
            )));
        }
        self.w.flush()?;
        Ok(())
    }
}

impl LcpSink for LcpWriter {
    #[inline]
    fn put(&mut self, v: i32) -> Result<()> {
        self.written += 1;
        v.encode(&mut self.w)?;
        Ok(())
    }
}

pub type Stream<'a, T> = Box<dyn Iterator<Item = Result<T>> + 'a>;

/// Something that can hand out fresh sequential passes over the suffix
/// array and the BWT.
pub trait ArraySource {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn sa(&self) -> Result<Stream<'_, u32>>;
    fn bwt(&self) -> Result<Stream<'_, u8>>;
}

/// Arrays already in memory.
pub struct InMemory<'a> {
    pub sa: &'a SuffixArray,
    pub bwt: &'a Bwt,
}

impl ArraySource for InMemory<'_> {
    fn len(&self) -> usize {
        self.sa.len()
    }

    fn sa(&self) -> Result<Stream<'_, u32>> {
        Ok(Box::new(self.sa.as_slice().iter().map(|&x| Ok(x))))
    }

    fn bwt(&self) -> Result<Stream<'_, u8>> {
        Ok(Box::new(self.bwt.as_slice().iter().map(|&x| Ok(x))))
    }
}

/// Arrays streamed from their files.
#[derive(Clone, Debug)]
pub struct OnDisk {
    pub sa_path: PathBuf,
    pub bwt_path: PathBuf,
    n: usize,
}

impl OnDisk {
    pub fn open(sa_path: impl Into<PathBuf>, bwt_path: impl Into<PathBuf>) -> Result<Self> {
        let sa_path = sa_path.into();
        let bwt_path = bwt_path.into();
        let n_sa = open_sa(&sa_path)?.len();
        let n_bwt = open_bwt(&bwt_path)?.len();
        if n_sa != n_bwt {
            return Err(Error::InconsistentInputs(format!(
                "suffix array has {n_sa} entries but BWT has {n_bwt}"
            )));
        }
        Ok(OnDisk { sa_path, bwt_path, n: n_sa as usize })
    }
}

impl ArraySource for OnDisk {
    fn len(&self) -> usize {
        self.n
    }

    fn sa(&self) -> Result<Stream<'_, u32>> {
        Ok(Box::new(open_sa(&self.sa_path)?))
    }

    fn bwt(&self) -> Result<Stream<'_, u8>> {
        Ok(Box::new(open_bwt(&self.bwt_path)?))
    }
}

/// Pulls the next element, treating early exhaustion as a format error.
#[inline]
pub(crate) fn pull<T>(s: &mut Stream<'_, T>) -> Result<T> {
    match s.next() {
        Some(r) => r,
        None => Err(Error::Format("stream ended early".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcp_file_layout_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.lcp");
        write_lcp(&p, &LcpArray::from_vec(vec![-1, 0, 3, -1])).unwrap();
        let bytes = std::fs::read(&p).unwrap();
        let mut expect = b"LCPFLC01".to_vec();
        expect.extend_from_slice(&3u64.to_le_bytes());
        for v in [-1i32, 0, 3] {
            expect.extend_from_slice(&v.to_le_bytes());
        }
        assert_eq!(bytes, expect);
        assert_eq!(read_lcp(&p).unwrap().as_slice(), &[-1, 0, 3, -1]);
    }

    #[test]
    fn sa_and_bwt_files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let sa = SuffixArray::from_vec(vec![6, 5, 3, 1, 0, 4, 2]);
        let b = Bwt::from_vec(b"annb\0aa".to_vec());
        write_sa(&dir.path().join("a.sa"), &sa).unwrap();
        write_bwt(&dir.path().join("a.bwt"), &b).unwrap();
        assert_eq!(read_sa(&dir.path().join("a.sa")).unwrap(), sa);
        assert_eq!(read_bwt(&dir.path().join("a.bwt")).unwrap(), b);
        let raw = std::fs::read(dir.path().join("a.bwt")).unwrap();
        assert_eq!(&raw[..8], BWT_MAGIC);
        assert_eq!(raw.len(), 16 + 7);

        let src = OnDisk::open(dir.path().join("a.sa"), dir.path().join("a.bwt")).unwrap();
        assert_eq!(src.len(), 7);
        let got: Vec<u32> = src.sa().unwrap().collect::<Result<_>>().unwrap();
        assert_eq!(got, sa.as_slice());
    }

    #[test]
    fn byte_lcp_header_carries_threshold() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.lcp8");
        let b = ByteLcp::from_parts(vec![0, 1, 3, 2], 2).unwrap();
        write_byte_lcp(&p, &b).unwrap();
        let raw = std::fs::read(&p).unwrap();
        assert_eq!(&raw[..8], LCP8_MAGIC);
        assert_eq!(raw[8], 2);
        assert_eq!(&raw[9..17], &4u64.to_le_bytes());
        assert_eq!(read_byte_lcp(&p).unwrap(), b);
    }

    #[test]
    fn rejects_wrong_magic_and_truncation() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.sa");
        write_sa(&p, &SuffixArray::from_vec(vec![0])).unwrap();
        assert!(matches!(open_bwt(&p), Err(Error::Format(_))));
        let mut raw = std::fs::read(&p).unwrap();
        raw.pop();
        std::fs::write(&p, raw).unwrap();
        assert!(matches!(open_sa(&p), Err(Error::Format(_))));
    }
}
