//! Local and global error of a matrix against a priority vector.
//!
//! `eps(i, j, w) = c_ij * w_j / w_i` measures how far a judgment is from the
//! ratio implied by the ranking; its group norm is the pair error and the
//! maximum over all pairs is the global error.

use crate::alo_group::{AloGroup, TOLERANCE};
use crate::error::{Error, Result};
use crate::pc_matrix::PcMatrix;
use crate::priority::PriorityVector;

pub(crate) fn check_compatible(c: &PcMatrix, w: &PriorityVector) -> Result<()> {
    if c.group() != w.group() {
        return Err(Error::GroupMismatch {
            matrix: c.group(),
            vector: w.group(),
        });
    }
    if c.n() != w.len() {
        return Err(Error::DimensionMismatch {
            matrix: c.n(),
            vector: w.len(),
        });
    }
    Ok(())
}

fn check_index(c: &PcMatrix, index: usize) -> Result<()> {
    if index >= c.n() {
        Err(Error::IndexOutOfRange { index, n: c.n() })
    } else {
        Ok(())
    }
}

fn local_unchecked(c: &PcMatrix, w: &PriorityVector, i: usize, j: usize) -> f64 {
    let g = c.group();
    g.combine(c.get(i, j), w.ratio(j, i))
}

/// `c_ij * w_j / w_i`.
pub fn local_error(c: &PcMatrix, w: &PriorityVector, i: usize, j: usize) -> Result<f64> {
    check_compatible(c, w)?;
    check_index(c, i)?;
    check_index(c, j)?;
    Ok(local_unchecked(c, w, i, j))
}

/// Norm of the local error; symmetric in `(i, j)` on reciprocal matrices.
pub fn pair_error(c: &PcMatrix, w: &PriorityVector, i: usize, j: usize) -> Result<f64> {
    local_error(c, w, i, j).map(|e| c.group().norm(e))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    /// Maximum pair error.
    pub global: f64,
    /// First pair, in row-major order, attaining the maximum within tolerance.
    pub argmax: (usize, usize),
    n: usize,
    per_pair: Vec<f64>,
}

impl ErrorReport {
    pub fn pair(&self, i: usize, j: usize) -> f64 {
        self.per_pair[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.per_pair.chunks(self.n).map(<[f64]>::to_vec).collect()
    }
}

pub fn global_error(c: &PcMatrix, w: &PriorityVector) -> Result<ErrorReport> {
    check_compatible(c, w)?;
    let g = c.group();
    let n = c.n();
    let mut per_pair = Vec::with_capacity(n * n);
    let mut global = g.identity();
    let mut argmax = (0, 0);
    for i in 0..n {
        for j in 0..n {
            let e = g.norm(local_unchecked(c, w, i, j));
            if e > global + TOLERANCE {
                global = e;
                argmax = (i, j);
            }
            per_pair.push(e);
        }
    }
    // Keep the exact maximum; the scan above only moves on a strict increase.
    let global = per_pair.iter().copied().fold(global, f64::max);
    Ok(ErrorReport {
        global,
        argmax,
        n,
        per_pair,
    })
}

/// The interval `[E^-1 * w_i / w_j, E * w_i / w_j]`, with `E` the global
/// error, that always contains `c_ij`.
pub fn judgment_bounds(c: &PcMatrix, w: &PriorityVector, i: usize, j: usize) -> Result<(f64, f64)> {
    check_index(c, i)?;
    check_index(c, j)?;
    let report = global_error(c, w)?;
    Ok(bounds_from(c, w, &report, i, j))
}

pub(crate) fn bounds_from(c: &PcMatrix, w: &PriorityVector, report: &ErrorReport, i: usize, j: usize) -> (f64, f64) {
    let g = c.group();
    let ratio = w.ratio(i, j);
    (
        g.combine(g.inverse(report.global), ratio),
        g.combine(report.global, ratio),
    )
}
