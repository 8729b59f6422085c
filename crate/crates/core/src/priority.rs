//! Priority vectors: generalized geometric mean over any alo-group, and the
//! classical geometric mean and principal eigenvector for the multiplicative
//! group.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::alo_group::{AloGroup, GroupKind};
use crate::error::{Error, Result};
use crate::pc_matrix::PcMatrix;

/// Power iteration stops once successive iterates differ by less than this in
/// the max norm.
pub const EVM_TOLERANCE: f64 = 1e-12;
pub const EVM_MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Ggmm,
    Gmm,
    Evm,
    External,
}

impl Method {
    pub fn id(self) -> &'static str {
        match self {
            Method::Ggmm => "ggmm",
            Method::Gmm => "gmm",
            Method::Evm => "evm",
            Method::External => "external",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ggmm" => Ok(Method::Ggmm),
            "gmm" => Ok(Method::Gmm),
            "evm" => Ok(Method::Evm),
            _ => Err(Error::UnknownMethod(s.to_string())),
        }
    }
}

/// Weights `w(a_1), ..., w(a_n)` as elements of the matrix's group.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorityVector {
    group: GroupKind,
    weights: Vec<f64>,
    method: Method,
    scale: f64,
}

impl PriorityVector {
    /// Wraps an arbitrary vector of group elements.
    pub fn external(group: GroupKind, weights: Vec<f64>) -> Result<Self> {
        for &w in &weights {
            group.check(w)?;
        }
        Ok(PriorityVector {
            group,
            weights,
            method: Method::External,
            scale: group.identity(),
        })
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// The scaling factor that was applied: a group element for GGMM, the
    /// real multiplier that makes the weights sum to one for GMM and EVM.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `w_i / w_j` in the group.
    pub fn ratio(&self, i: usize, j: usize) -> f64 {
        self.group.divide(self.weights[i], self.weights[j])
    }

    /// Sum-to-one rescaling; only meaningful in the multiplicative group.
    pub fn normalized(&self) -> Option<Vec<f64>> {
        if self.group != GroupKind::Multiplicative {
            return None;
        }
        let total: f64 = self.weights.iter().sum();
        Some(self.weights.iter().map(|w| w / total).collect())
    }
}

/// Row means `(c_i1 * ... * c_in)^(1/n)` without any scaling.
///
/// Computed as the product of the `n`-th roots, which is the same element in
/// an abelian group but keeps intermediate values near the identity.
pub fn row_means(c: &PcMatrix) -> Vec<f64> {
    let g = c.group();
    let n = c.n() as u32;
    (0..c.n())
        .map(|i| {
            c.row(i)
                .iter()
                .fold(g.identity(), |acc, &x| g.combine(acc, g.root(x, n)))
        })
        .collect()
}

/// Generalized geometric mean method over any alo-group.
///
/// `w_i = delta * (c_i1 * ... * c_in)^(1/n)` with
/// `delta = m_1^-1 * ... * m_n^-1` where `m_i` are the row means.
pub fn ggmm(c: &PcMatrix) -> PriorityVector {
    let g = c.group();
    let means = row_means(c);
    let delta = means
        .iter()
        .fold(g.identity(), |acc, &m| g.combine(acc, g.inverse(m)));
    let weights = means.iter().map(|&m| g.combine(delta, m)).collect();
    PriorityVector {
        group: g,
        weights,
        method: Method::Ggmm,
        scale: delta,
    }
}

fn require_multiplicative(c: &PcMatrix, operation: &'static str) -> Result<()> {
    match c.group() {
        GroupKind::Multiplicative => Ok(()),
        group => Err(Error::WrongGroup { operation, group }),
    }
}

/// Classical geometric mean method, normalized to sum to one.
pub fn gmm(c: &PcMatrix) -> Result<PriorityVector> {
    require_multiplicative(c, "gmm")?;
    let exponent = 1.0 / c.n() as f64;
    let means: Vec<f64> = (0..c.n())
        .map(|i| c.row(i).iter().product::<f64>().powf(exponent))
        .collect();
    let gamma = 1.0 / means.iter().sum::<f64>();
    Ok(PriorityVector {
        group: GroupKind::Multiplicative,
        weights: means.iter().map(|m| gamma * m).collect(),
        method: Method::Gmm,
        scale: gamma,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigen {
    pub vector: PriorityVector,
    pub lambda_max: f64,
    pub iterations: usize,
}

/// Principal eigenvector by power iteration, normalized to sum to one.
pub fn evm(c: &PcMatrix) -> Result<Eigen> {
    evm_with(c, EVM_TOLERANCE, EVM_MAX_ITERATIONS)
}

pub fn evm_with(c: &PcMatrix, tolerance: f64, max_iterations: usize) -> Result<Eigen> {
    require_multiplicative(c, "evm")?;
    let n = c.n();
    let apply = |x: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| c.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    };
    let mut x = vec![1.0 / n as f64; n];
    for iteration in 1..=max_iterations {
        let y = apply(&x);
        let total: f64 = y.iter().sum();
        let next: Vec<f64> = y.iter().map(|v| v / total).collect();
        let step = next
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        x = next;
        if step < tolerance {
            // x sums to one, so the sum of C x is the eigenvalue.
            let y = apply(&x);
            let lambda_max: f64 = y.iter().sum();
            let gamma = 1.0 / lambda_max;
            return Ok(Eigen {
                vector: PriorityVector {
                    group: GroupKind::Multiplicative,
                    weights: y.iter().map(|v| gamma * v).collect(),
                    method: Method::Evm,
                    scale: gamma,
                },
                lambda_max,
                iterations: iteration,
            });
        }
    }
    Err(Error::NoConvergence(max_iterations))
}

/// A priority vector by the named method, plus the principal eigenvalue for
/// EVM.
pub fn derive(c: &PcMatrix, method: Method) -> Result<(PriorityVector, Option<f64>)> {
    match method {
        Method::Ggmm => Ok((ggmm(c), None)),
        Method::Gmm => Ok((gmm(c)?, None)),
        Method::Evm => evm(c).map(|e| (e.vector, Some(e.lambda_max))),
        Method::External => Err(Error::UnknownMethod(method.id().to_string())),
    }
}
