//! Crate-wide error type and partition-violation data.

use thiserror::Error;

use crate::partition::Violation;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by the library.
///
/// Partition *violations* are ordinary data returned by
/// [`crate::partition::validate_partition`]; they only become an [`Error`]
/// when an operation requires a valid partition as a precondition.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter failed its domain check (value and constraint named).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An edge endpoint lies outside `[0, n)`.
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: u32, n: usize },

    /// A self-loop was supplied to a simple-graph constructor.
    #[error("self-loop at vertex {v} not allowed")]
    SelfLoop { v: u32 },

    /// An operation requiring a valid partition received an invalid one.
    #[error("invalid partition: {}", format_violations(.0))]
    InvalidPartition(Vec<Violation>),

    /// The block graph is disconnected where a connected one is required.
    #[error("block graph disconnected: no path between blocks {src} and {dst}")]
    NoBlockPath { src: u32, dst: u32 },

    /// A cost left the representable range of the scalar.
    #[error("cost overflow: {0}")]
    Overflow(String),

    /// A qubit count exceeded a solver's size cap.
    #[error("{method} solver supports at most {cap} qubits, got {k}")]
    SizeCap {
        method: &'static str,
        cap: u32,
        k: u32,
    },

    /// The iterative eigensolver failed its residual certificate.
    #[error(
        "iterative solver did not converge after {iterations} iterations: \
         residual {residual:e} exceeds threshold {threshold:e}"
    )]
    NonConvergence {
        iterations: usize,
        residual: f64,
        threshold: f64,
    },

    /// The dense eigensolver's QR iteration hit its internal sweep limit
    /// (exceptional; not a certificate failure).
    #[error("dense eigensolver did not converge")]
    DenseFailure,

    /// The configuration-model matching discarded every stub.
    #[error("degenerate degree sequence: no edges survived stub matching")]
    DegenerateDegrees,

    /// A text-format parse failure (1-based line number).
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A scan aborted at one of its sizes.
    #[error("scan failed at size {size}: {source}")]
    ScanFailure {
        size: u64,
        #[source]
        source: Box<Error>,
    },

    /// Underlying I/O failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn format_violations(vs: &[Violation]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    parts.join("; ")
}
