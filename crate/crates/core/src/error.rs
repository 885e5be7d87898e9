use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input contains a 0x00 byte at offset {0}; 0x00 is reserved for the sentinel")]
    EmbeddedSentinel(usize),

    #[error("input of {0} bytes exceeds the maximum of {max} bytes", max = crate::text::MAX_RAW_LEN)]
    TooLarge(usize),

    #[error("rank query at {index} is out of range for a bit vector of length {len}")]
    OutOfRange { index: usize, len: usize },

    #[error("no stack entry with index >= {0}")]
    NotFound(u32),

    #[error("dequeue from empty queue for character {0:#04x}")]
    QueueUnderflow(u8),

    #[error("queue for character {0:#04x} still holds {1} values at termination")]
    QueueResidue(u8, u64),

    #[error("inconsistent inputs: {0}")]
    InconsistentInputs(String),

    #[error("threshold m = {0} outside 1..=254")]
    InvalidThreshold(u32),

    #[error("bad file format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
