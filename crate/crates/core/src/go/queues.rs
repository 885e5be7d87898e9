//! Per-symbol FIFO queues of LCP values with bounded memory and disk spill.

use std::collections::VecDeque;
use std::fs::File;
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use tempfile::TempDir;

use crate::error::{Error, Result};

pub const DEFAULT_QUEUE_BUF: usize = 64 * 1024;

/// One FIFO. Values live in three places, oldest first: `head` (read
/// buffer), the spill file, `tail` (write buffer).
#[derive(Debug)]
struct SpillQueue {
    head: VecDeque<i32>,
    tail: Vec<i32>,
    half: usize,
    file: Option<File>,
    file_written: u64,
    file_read: u64,
}

impl SpillQueue {
    fn new(half: usize) -> Self {
        SpillQueue {
            head: VecDeque::with_capacity(half),
            tail: Vec::with_capacity(half),
            half,
            file: None,
            file_written: 0,
            file_read: 0,
        }
    }

    fn buffered(&self) -> usize {
        self.head.len() + self.tail.len()
    }

    fn len(&self) -> u64 {
        self.head.len() as u64 + (self.file_written - self.file_read) + self.tail.len() as u64
    }

    fn enqueue(&mut self, v: i32, spill_dir: &mut SpillDir) -> Result<()> {
        if self.tail.is_empty() && self.file_written == self.file_read && self.head.len() < self.half {
            self.head.push_back(v);
            return Ok(());
        }
        self.tail.push(v);
        if self.tail.len() == self.half {
            let f = match &mut self.file {
                Some(f) => f,
                None => self.file.insert(spill_dir.new_file()?),
            };
            let mut bytes = Vec::with_capacity(self.tail.len() * 4);
            for x in self.tail.drain(..) {
                bytes.extend_from_slice(&x.to_le_bytes());
            }
            f.seek(SeekFrom::Start(self.file_written * 4))?;
            f.write_all(&bytes)?;
            self.file_written += (bytes.len() / 4) as u64;
        }
        Ok(())
    }

    fn dequeue(&mut self) -> Result<Option<i32>> {
        if let Some(v) = self.head.pop_front() {
            return Ok(Some(v));
        }
        let pending = self.file_written - self.file_read;
        if pending > 0 {
            let take = pending.min(self.half as u64) as usize;
            let f = self.file.as_mut().expect("spilled values without a file");
            let mut bytes = vec![0u8; take * 4];
            f.seek(SeekFrom::Start(self.file_read * 4))?;
            f.read_exact(&mut bytes)?;
            self.file_read += take as u64;
            self.head.extend(bytes.chunks_exact(4).map(|b| i32::from_le_bytes(b.try_into().unwrap())));
            if self.file_read == self.file_written {
                // file drained: start over at offset 0
                f.set_len(0)?;
                self.file_read = 0;
                self.file_written = 0;
            }
            return Ok(self.head.pop_front());
        }
        if !self.tail.is_empty() {
            self.head.extend(self.tail.drain(..));
            return Ok(self.head.pop_front());
        }
        Ok(None)
    }
}

/// Lazily created per-run directory holding the spill files.
#[derive(Debug)]
struct SpillDir {
    parent: Option<PathBuf>,
    dir: Option<TempDir>,
    files: usize,
}

impl SpillDir {
    fn new_file(&mut self) -> Result<File> {
        let dir = match &self.dir {
            Some(d) => d,
            None => {
                let d = match &self.parent {
                    Some(p) => tempfile::Builder::new().prefix("lcpkit-q").tempdir_in(p)?,
                    None => tempfile::Builder::new().prefix("lcpkit-q").tempdir()?,
                };
                self.dir.insert(d)
            }
        };
        self.files += 1;
        let path = dir.path().join(format!("q{}", self.files));
        Ok(std::fs::OpenOptions::new().read(true).write(true).create_new(true).open(path)?)
    }
}

/// One queue per symbol of the alphabet.
#[derive(Debug)]
pub struct CharQueues {
    queues: Vec<Option<SpillQueue>>,
    spill: SpillDir,
    buf_bytes: usize,
    active: usize,
    buffered: usize,
    peak_buffered: usize,
}

impl CharQueues {
    /// Queues for the symbols in `alphabet`, each buffering at most
    /// `buf_bytes` in memory. Spill files go to a fresh directory under
    /// `tmp` (or the system temp directory).
    pub fn new(alphabet: impl IntoIterator<Item = u8>, buf_bytes: usize, tmp: Option<&Path>) -> Self {
        let half = (buf_bytes / 8).max(1);
        let mut queues: Vec<Option<SpillQueue>> = (0..256).map(|_| None).collect();
        let mut active = 0;
        for c in alphabet {
            queues[c as usize] = Some(SpillQueue::new(half));
            active += 1;
        }
        CharQueues {
            queues,
            spill: SpillDir { parent: tmp.map(Path::to_path_buf), dir: None, files: 0 },
            buf_bytes: half * 8,
            active,
            buffered: 0,
            peak_buffered: 0,
        }
    }

    /// Memory reserved for buffers: `buf_bytes` per active queue.
    pub fn resident_bytes(&self) -> usize {
        self.active * self.buf_bytes
    }

    /// Largest number of bytes held in the in-memory buffers of all queues
    /// at any one time.
    pub fn peak_buffered_bytes(&self) -> usize {
        self.peak_buffered * 4
    }

    /// Number of spill files created so far.
    pub fn spill_files(&self) -> usize {
        self.spill.files
    }

    fn queue(&mut self, c: u8) -> &mut SpillQueue {
        self.queues[c as usize].as_mut().expect("queue for a symbol absent from the text")
    }

    pub fn enqueue(&mut self, c: u8, v: i32) -> Result<()> {
        let q = self.queues[c as usize].as_mut().expect("queue for a symbol absent from the text");
        let before = q.buffered();
        q.enqueue(v, &mut self.spill)?;
        self.buffered = self.buffered + q.buffered() - before;
        self.peak_buffered = self.peak_buffered.max(self.buffered);
        Ok(())
    }

    pub fn dequeue(&mut self, c: u8) -> Result<i32> {
        let q = self.queue(c);
        let before = q.buffered();
        let v = q.dequeue()?;
        let after = q.buffered();
        self.buffered = self.buffered + after - before;
        if after > before {
            // refilled from disk; the popped value was briefly resident too
            self.peak_buffered = self.peak_buffered.max(self.buffered + 1);
        }
        v.ok_or(Error::QueueUnderflow(c))
    }

    pub fn len(&self, c: u8) -> u64 {
        self.queues[c as usize].as_ref().map_or(0, SpillQueue::len)
    }

    /// Fails with [`Error::QueueResidue`] if any queue still holds values.
    pub fn ensure_drained(&self) -> Result<()> {
        for (c, q) in self.queues.iter().enumerate() {
            if let Some(q) = q {
                if q.len() > 0 {
                    return Err(Error::QueueResidue(c as u8, q.len()));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifo_order_survives_spilling() {
        // 16-byte budget: two values per half
        let mut q = CharQueues::new([b'a', b'b'], 16, None);
        let mut expect = VecDeque::new();
        let mut next = 0;
        for round in 0..50 {
            for _ in 0..(round % 7) + 1 {
                q.enqueue(b'a', next).unwrap();
                expect.push_back(next);
                next += 1;
            }
            for _ in 0..(round % 5) {
                if let Some(e) = expect.pop_front() {
                    assert_eq!(q.dequeue(b'a').unwrap(), e);
                }
            }
        }
        while let Some(e) = expect.pop_front() {
            assert_eq!(q.dequeue(b'a').unwrap(), e);
        }
        assert!(q.spill_files() > 0);
        assert!(q.peak_buffered_bytes() <= 16);
        q.ensure_drained().unwrap();
    }

    #[test]
    fn underflow_and_residue_are_reported() {
        let mut q = CharQueues::new([b'a'], 64, None);
        assert!(matches!(q.dequeue(b'a'), Err(Error::QueueUnderflow(b'a'))));
        q.enqueue(b'a', 3).unwrap();
        assert!(matches!(q.ensure_drained(), Err(Error::QueueResidue(b'a', 1))));
    }

    #[test]
    fn resident_bytes_scale_with_alphabet_only() {
        let q = CharQueues::new([1u8, 2, 3], 1024, None);
        assert_eq!(q.resident_bytes(), 3 * 1024);
    }
}
