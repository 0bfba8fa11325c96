//! File formats, benchmark harness and command line support for
//! [`gwdt_core`].
//!
//! * [`io`]: binary PGM images, raw volumes with a key-value sidecar,
//!   `f32` distance maps, seed lists and benchmark CSV.
//! * [`bench`]: benchmark suites, arity and bucket-count sweeps, and
//!   queue spread sampling.

pub mod bench;
pub mod io;

pub use gwdt_core as core;

use std::fmt;

/// Errors surfaced by the harness and the command line tool.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::IoError),
    /// A configuration the chosen cost definition cannot support.
    #[error("{0}")]
    Incompatible(String),
    /// A result that disagrees with its reference.
    #[error("{0}")]
    Consistency(String),
    #[error("{0}")]
    Data(String),
}

impl Error {
    pub fn usage(msg: impl fmt::Display) -> Self {
        Error::Usage(msg.to_string())
    }

    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            Error::Io(_) | Error::Data(_) => 2,
            Error::Incompatible(_) => 3,
            Error::Consistency(_) => 4,
        }
    }
}

impl From<gwdt_core::Error> for Error {
    fn from(e: gwdt_core::Error) -> Self {
        use gwdt_core::Error as E;
        match e {
            E::Usage(m) => Error::Usage(m),
            E::InvalidCost(m) => Error::Incompatible(m),
            other => Error::Data(other.to_string()),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
