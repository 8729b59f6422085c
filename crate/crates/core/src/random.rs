//! Random comparison matrices with controlled inconsistency.
//!
//! Weights are drawn uniformly in the additive parameter space of the group
//! and mapped through its order isomorphism; a consistent matrix is built from
//! them and every above-diagonal entry is then combined with a random element
//! whose norm is at most `bound`, mirrored reciprocally.

use rand::Rng;

use crate::alo_group::{AloGroup, GroupKind};
use crate::error::{Error, Result};
use crate::pc_matrix::PcMatrix;

/// `n` group elements whose additive parameters are uniform in
/// `[-spread, spread]`.
pub fn random_weights<R: Rng + ?Sized>(group: GroupKind, n: usize, spread: f64, rng: &mut R) -> Vec<f64> {
    (0..n)
        .map(|_| group.from_additive(uniform(rng, spread)))
        .collect()
}

fn uniform<R: Rng + ?Sized>(rng: &mut R, half_width: f64) -> f64 {
    if half_width > 0.0 {
        rng.random_range(-half_width..=half_width)
    } else {
        0.0
    }
}

/// Combines each `c_ij`, `i < j`, with a random element of norm at most
/// `bound` and sets `c_ji` to its inverse. A bound equal to the identity
/// leaves the matrix unchanged.
pub fn perturb<R: Rng + ?Sized>(c: &PcMatrix, bound: f64, rng: &mut R) -> Result<PcMatrix> {
    let g = c.group();
    g.check(bound)?;
    if bound < g.identity() {
        return Err(Error::Simulation(format!(
            "perturbation bound {bound} is below the identity {}",
            g.identity()
        )));
    }
    let half_width = g.to_additive(bound);
    let n = c.n();
    let mut rows = c.rows();
    if half_width > 0.0 {
        for i in 0..n {
            for j in i + 1..n {
                let factor = g.from_additive(uniform(rng, half_width));
                let value = g.combine(rows[i][j], factor);
                rows[i][j] = value;
                rows[j][i] = g.inverse(value);
            }
        }
    }
    PcMatrix::build(g, rows, Some(c.labels().to_vec()))
}

/// A consistent matrix from random weights, then perturbed.
pub fn random_matrix<R: Rng + ?Sized>(
    group: GroupKind,
    n: usize,
    spread: f64,
    bound: f64,
    rng: &mut R,
) -> Result<PcMatrix> {
    let weights = random_weights(group, n, spread, rng);
    let consistent = PcMatrix::from_weights(group, &weights)?;
    perturb(&consistent, bound, rng)
}
