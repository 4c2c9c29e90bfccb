//! Multisegment combinatorics: removal processes, derivative resultants,
//! fine chains, minimality, (†) invariants, highest derivative
//! multisegments for solved classes, and the dual removal process.
//!
//! Segments are integer intervals `[a,b]` on a single cuspidal line.

pub mod cli;
pub mod duality;
pub mod error;
pub mod hd_classes;
pub mod minimality;
pub mod multiseg;
pub mod oracle;
pub mod removal;
pub mod render;
pub mod segment;
pub mod suite;
pub mod text;

pub use error::{Error, Result};
pub use multiseg::{Multisegment, Side};
pub use segment::Segment;
