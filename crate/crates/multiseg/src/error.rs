use thiserror::Error;

use crate::segment::Segment;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("empty segment [{start},{end}]: start exceeds end")]
    EmptySegment { start: i32, end: i32 },

    #[error("not admissible")]
    NotAdmissible,

    #[error("segments {0} and {1} are not linked")]
    NotLinked(Segment, Segment),

    #[error("entry index {0} out of range")]
    IndexOutOfRange(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
