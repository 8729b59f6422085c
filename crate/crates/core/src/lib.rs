//! Pairwise comparison matrices over abelian linearly ordered groups:
//! priority vectors, inconsistency indices, and order-preservation audits
//! and certificates.

// Index loops read naturally over square matrices.
#![allow(clippy::needless_range_loop)]

pub mod alo_group;
pub mod cli;
pub mod cop;
pub mod error;
pub mod error_index;
pub mod inconsistency;
pub mod io;
pub mod pc_matrix;
pub mod priority;
pub mod random;
pub mod report;
pub mod simulate;

#[cfg(test)]
mod test_support;

pub use alo_group::{
    AloGroup, Additive, FuzzyAdditive, FuzzyMultiplicative, GroupKind, Multiplicative, TOLERANCE,
};
pub use cop::{
    audit, audit_poip, audit_pop, certify_by_error, certify_by_inconsistency, certify_consistent,
    unsound, Certificate, CertificateKind, CopReport, Quad, Subject,
};
pub use error::{Error, Result};
pub use error_index::{global_error, judgment_bounds, local_error, pair_error, ErrorReport};
pub use inconsistency::{ci, gi, ki, triad_eta, InconsistencyReport};
pub use pc_matrix::{PcMatrix, Triad, CONSISTENCY_TOLERANCE};
pub use priority::{derive, evm, ggmm, gmm, Method, PriorityVector};
