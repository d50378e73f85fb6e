//! Crate-wide error type.

use std::path::PathBuf;

/// All fallible operations in this crate return this error.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A numeric or geometric parameter is outside its valid range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The operation does not support one of the targets in the bundle
    /// (e.g. bounding boxes under free-form warps, single-channel images
    /// under color ops).
    #[error("unsupported target: {0}")]
    UnsupportedTarget(String),

    /// Malformed PNM header or payload.
    #[error("pnm parse error at byte {offset}: {message}")]
    PnmParse { offset: usize, message: String },

    /// Structurally valid PNM that this crate does not handle (e.g. 16-bit).
    #[error("unsupported pnm format: {0}")]
    PnmUnsupported(String),

    /// The PNM raster ended before `height * width * channels` samples.
    #[error("truncated pnm payload: expected {expected} bytes, found {found}")]
    PnmTruncated { expected: usize, found: usize },

    /// A pipeline config named a transform this crate does not know.
    #[error("unknown transform \"{name}\"; expected one of: {}", crate::pipeline::TRANSFORM_NAMES.join(", "))]
    UnknownTransform { name: String },

    /// A pipeline config omitted a required parameter.
    #[error("transform {transform}: missing required parameter \"{field}\"")]
    MissingParam { transform: String, field: String },

    /// A pipeline config carried a parameter the transform does not take.
    #[error("transform {transform}: unknown parameter \"{field}\"")]
    UnknownParam { transform: String, field: String },

    /// Application probability outside [0, 1].
    #[error("probability {value} outside [0, 1]")]
    ProbabilityRange { value: f64 },

    /// Structural problem in a serialized pipeline document.
    #[error("config error: {0}")]
    Config(String),

    /// A benchmark task selection named an unknown task.
    #[error("unknown task \"{name}\"; expected one of: {}", crate::bench::TASK_NAMES.join(", "))]
    UnknownTask { name: String },

    /// Filesystem failure, with the path that caused it.
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
