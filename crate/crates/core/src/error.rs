use thiserror::Error;

use crate::alo_group::GroupKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("value {value} is outside the domain of the {group} group")]
    Domain { group: GroupKind, value: f64 },

    #[error("entry ({}, {}) = {value} is outside the domain of the {group} group", .row + 1, .col + 1)]
    DomainAt {
        group: GroupKind,
        row: usize,
        col: usize,
        value: f64,
    },

    #[error("root index must be at least 1, got {0}")]
    InvalidRoot(i64),

    #[error("matrix is not square: row {} has {len} entries, expected {expected}", .row + 1)]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("a comparison matrix needs at least 2 alternatives, got {0}")]
    TooSmall(usize),

    #[error("diagonal entry ({0}, {0}) = {value} is not the identity {identity}", .index + 1)]
    Diagonal {
        index: usize,
        value: f64,
        identity: f64,
    },

    #[error(
        "reciprocity violated at ({}, {}): c_ij = {cij}, c_ji = {cji}, combined = {combined} (expected {identity})",
        .i + 1,
        .j + 1
    )]
    Reciprocity {
        i: usize,
        j: usize,
        cij: f64,
        cji: f64,
        combined: f64,
        identity: f64,
    },

    #[error("expected {expected} labels, got {actual}")]
    LabelCount { expected: usize, actual: usize },

    #[error("{operation} is only defined for the multiplicative group, not {group}")]
    WrongGroup {
        operation: &'static str,
        group: GroupKind,
    },

    #[error("group mismatch: matrix is {matrix}, vector is {vector}")]
    GroupMismatch { matrix: GroupKind, vector: GroupKind },

    #[error("dimension mismatch: matrix has {matrix} alternatives, vector has {vector}")]
    DimensionMismatch { matrix: usize, vector: usize },

    #[error("index {index} out of range for {n} alternatives")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("triad indices must be distinct, got ({0}, {1}, {2})")]
    RepeatedIndex(usize, usize, usize),

    #[error("no triads exist for n = {0}; the index needs at least 3 alternatives")]
    NoTriads(usize),

    #[error("power iteration did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("unknown group `{0}` (expected additive, multiplicative, fuzzy-additive or fuzzy-multiplicative)")]
    UnknownGroup(String),

    #[error("unknown priority method `{0}` (expected ggmm, gmm, evm)")]
    UnknownMethod(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("group conflict: the file says {file}, --group says {flag}")]
    GroupConflict { file: GroupKind, flag: GroupKind },

    #[error("missing group: pass --group or set `group` in the input file")]
    MissingGroup,

    #[error("invalid simulation parameters: {0}")]
    Simulation(String),

    #[error("unsound certificate in trial {trial}: {detail}")]
    Unsound { trial: usize, detail: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
