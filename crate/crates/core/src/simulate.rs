//! Seeded Monte-Carlo harness: random matrices at a controlled inconsistency
//! level, the indices of each, the audit of a priority vector, and how many
//! pairs and quadruples the error bound certifies.
//!
//! Every certificate is checked against the audit; a failure aborts the run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::alo_group::{AloGroup, GroupKind};
use crate::cop::{audit, certify_by_error, certify_by_inconsistency, unsound, CertificateKind};
use crate::error::{Error, Result};
use crate::error_index::global_error;
use crate::inconsistency::gi;
use crate::pc_matrix::PcMatrix;
use crate::priority::{derive, Method};
use crate::random::random_matrix;

/// Half-width of the additive parameter range for the true weights.
pub const DEFAULT_SPREAD: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub group: GroupKind,
    pub method: Method,
    pub seed: u64,
    pub trials: usize,
    pub size: usize,
    /// Largest norm of a perturbation factor, as a group element.
    pub bound: f64,
    pub spread: f64,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        let g = self.group;
        if self.trials < 1 {
            return Err(Error::Simulation("trials must be at least 1".into()));
        }
        if self.size < 3 {
            return Err(Error::Simulation(format!("size must be at least 3, got {}", self.size)));
        }
        if !g.contains(self.bound) || self.bound < g.identity() {
            return Err(Error::Simulation(format!(
                "bound {} must be a {g} element no smaller than the identity {}",
                self.bound,
                g.identity()
            )));
        }
        if !(self.spread.is_finite() && self.spread >= 0.0) {
            return Err(Error::Simulation(format!("spread {} must be finite and non-negative", self.spread)));
        }
        if self.group != GroupKind::Multiplicative && matches!(self.method, Method::Gmm | Method::Evm) {
            return Err(Error::WrongGroup {
                operation: self.method.id(),
                group: self.group,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub gi: f64,
    pub ki: Option<f64>,
    pub global_error: f64,
    pub pop_violations: usize,
    pub poip_violations: usize,
    pub certified_pop: usize,
    pub certified_poip: usize,
}

fn run_trial(config: &SimulationConfig, trial: usize, c: &PcMatrix) -> Result<TrialRecord> {
    let (w, _) = derive(c, config.method)?;
    let report = audit(c, &w)?;
    let certification = certify_by_error(c, &w)?;
    let failed = unsound(c, &w, &certification.certificates)?;
    if let Some(cert) = failed.first() {
        return Err(Error::Unsound {
            trial,
            detail: format!("{cert:?} fails its audit"),
        });
    }
    let ki = if c.group() == GroupKind::Multiplicative {
        let by_ki = certify_by_inconsistency(c)?;
        let failed = unsound(c, &by_ki.weights, &by_ki.certification.certificates)?;
        if let Some(cert) = failed.first() {
            return Err(Error::Unsound {
                trial,
                detail: format!("{cert:?} fails its audit"),
            });
        }
        Some(by_ki.ki)
    } else {
        None
    };
    let count = |kind| {
        certification
            .certificates
            .iter()
            .filter(|c| c.kind == kind)
            .count()
    };
    Ok(TrialRecord {
        trial,
        gi: gi(c)?.gi,
        ki,
        global_error: global_error(c, &w)?.global,
        pop_violations: report.pop.violations.len(),
        poip_violations: report.poip.violations.len(),
        certified_pop: count(CertificateKind::ErrorBoundPop),
        certified_poip: count(CertificateKind::ErrorBoundPoip),
    })
}

/// Matrices are drawn sequentially from one seeded stream, then evaluated in
/// parallel; records come back in trial order.
pub fn simulate(config: &SimulationConfig) -> Result<Vec<TrialRecord>> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let matrices = (0..config.trials)
        .map(|_| random_matrix(config.group, config.size, config.spread, config.bound, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    matrices
        .par_iter()
        .enumerate()
        .map(|(trial, c)| run_trial(config, trial + 1, c))
        .collect()
}

pub const CSV_HEADER: &str =
    "trial,gi,ki,global_error,pop_violations,poip_violations,certified_pop,certified_poip";

/// One header line and one line per trial; `ki` is empty outside the
/// multiplicative group.
pub fn to_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let ki = r.ki.map(|k| k.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.trial, r.gi, ki, r.global_error, r.pop_violations, r.poip_violations, r.certified_pop, r.certified_poip
        ));
    }
    out
}
