use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::solvers::RunReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A caller violated an operation's precondition.
    Usage(String),
    /// The cost definition cannot be used with the requested structure
    /// (e.g. non-integer keys in a Dial queue).
    InvalidCost(String),
    /// Extraction from an empty queue.
    EmptyQueue,
    /// The route target was never reached.
    Unreachable,
    /// A label-correcting run exceeded its visit budget. Carries the
    /// statistics collected up to the abort.
    BudgetExceeded(Box<RunReport>),
    /// An allocation request could not be satisfied.
    Resource(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn invalid_cost(msg: impl Into<String>) -> Self {
        Error::InvalidCost(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::InvalidCost(msg) => write!(f, "invalid cost: {msg}"),
            Error::EmptyQueue => f.write_str("extract from empty queue"),
            Error::Unreachable => f.write_str("route target unreachable"),
            Error::BudgetExceeded(report) => write!(
                f,
                "visit budget exceeded after {} pops",
                report.pops
            ),
            Error::Resource(msg) => write!(f, "resource error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
