//! Error type shared by every module of the crate.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Crate result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// All failure modes.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A degree-0 polynomial was given where a positive degree is required.
    ConstantPolynomial,
    /// The root finder did not converge; `best` holds the last iterate as `(re, im)`.
    NoConvergence { iterations: usize, best: Vec<(f64, f64)> },
    /// A polynomial has a repeated root where simple roots are required.
    RepeatedRoots,
    /// A point set has too few points for the requested operation.
    TooFewPoints { needed: usize, got: usize },
    /// An index lies outside its admissible range.
    IndexOutOfRange(String),
    /// A polynomial (or its derivative) lies outside the required space.
    NotInSpace(String),
    /// A constant of the trivialisation could not be found; names the bound.
    Trivialization(String),
    /// A chart was evaluated on a point where it is undefined.
    ChartUndefined(String),
    /// Parse error with 1-based line and column.
    Parse { line: usize, col: usize, msg: String },
    /// A loop description is inconsistent.
    InvalidLoop(String),
    /// A named loop does not exist; lists the available names.
    UnknownLoop { name: String, available: Vec<String> },
    /// Two loops cannot be composed because their basepoints differ.
    BasepointMismatch,
    /// Distinct strands met during continuation.
    RootsCollide { t: f64, separation: f64 },
    /// A crossing could not be separated at the working precision.
    AmbiguousCrossing { t: f64 },
    /// The continuation step fell below its floor.
    StepFloor { t: f64 },
    /// Strand counts of two braid words disagree.
    StrandMismatch { left: usize, right: usize },
    /// A letter refers to a generator that does not exist.
    UnknownGenerator(String),
    /// A group description is inconsistent.
    InvalidGroup(String),
    /// A transversal fails the Schreier property or does not cover the cosets.
    InvalidTransversal(String),
    /// The images of the generators do not generate the target group.
    NotTransitive,
    /// An operation precondition fails.
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ConstantPolynomial => write!(f, "constant polynomial"),
            Error::NoConvergence { iterations, .. } => {
                write!(f, "root finder did not converge after {iterations} iterations")
            }
            Error::RepeatedRoots => write!(f, "polynomial has repeated roots"),
            Error::TooFewPoints { needed, got } => {
                write!(f, "need at least {needed} points, got {got}")
            }
            Error::IndexOutOfRange(s) => write!(f, "index out of range: {s}"),
            Error::NotInSpace(s) => write!(f, "not in space: {s}"),
            Error::Trivialization(s) => write!(f, "trivialization failed: {s}"),
            Error::ChartUndefined(s) => write!(f, "chart undefined: {s}"),
            Error::Parse { line, col, msg } => write!(f, "parse error at {line}:{col}: {msg}"),
            Error::InvalidLoop(s) => write!(f, "invalid loop: {s}"),
            Error::UnknownLoop { name, available } => {
                write!(f, "unknown loop `{name}`; available: {}", available.join(", "))
            }
            Error::BasepointMismatch => write!(f, "basepoints do not match"),
            Error::RootsCollide { t, separation } => {
                write!(f, "roots collide near t = {t} (separation {separation:e})")
            }
            Error::AmbiguousCrossing { t } => write!(f, "ambiguous crossing near t = {t}"),
            Error::StepFloor { t } => write!(f, "step size floor reached at t = {t}"),
            Error::StrandMismatch { left, right } => {
                write!(f, "strand counts differ: {left} vs {right}")
            }
            Error::UnknownGenerator(s) => write!(f, "unknown generator `{s}`"),
            Error::InvalidGroup(s) => write!(f, "invalid group: {s}"),
            Error::InvalidTransversal(s) => write!(f, "invalid transversal: {s}"),
            Error::NotTransitive => write!(f, "permutation images do not generate the target group"),
            Error::Precondition(s) => write!(f, "precondition violated: {s}"),
        }
    }
}

impl core::error::Error for Error {}
