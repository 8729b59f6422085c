//! Order preservation: auditing a priority vector against the judgments, and
//! certifying pairs and quadruples from inconsistency bounds alone.
//!
//! Preservation of order preference (POP): `c_ij > e` implies `w_i / w_j > e`.
//! Preservation of order of intensity of preference (POIP): `c_ij > e`,
//! `c_kl > e` and `c_ij > c_kl` imply `w_i / w_j > w_k / w_l`.
//!
//! Every strict comparison here uses [`AloGroup::exceeds`], i.e. the quotient
//! must clear the identity by more than the tolerance. Pairs within tolerance of
//! the identity are reported as ties and never audited.

use std::fmt;

use serde::Serialize;

use crate::alo_group::{AloGroup, GroupKind};
use crate::error::{Error, Result};
use crate::error_index::{check_compatible, global_error};
use crate::inconsistency::ki;
use crate::pc_matrix::{PcMatrix, CONSISTENCY_TOLERANCE};
use crate::priority::{ggmm, PriorityVector};

pub type Pair = (usize, usize);

/// Ordered quadruple `(i, j, k, l)` comparing `c_ij` against `c_kl`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quad {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

impl Quad {
    pub fn first(&self) -> Pair {
        (self.i, self.j)
    }

    pub fn second(&self) -> Pair {
        (self.k, self.l)
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.i + 1, self.j + 1, self.k + 1, self.l + 1)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PopAudit {
    /// Pairs with `c_ij > e`, row-major.
    pub checked: Vec<Pair>,
    pub violations: Vec<Pair>,
    /// Pairs `i < j` whose judgment is within tolerance of the identity.
    pub ties: Vec<Pair>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PoipAudit {
    pub checked: Vec<Quad>,
    pub violations: Vec<Quad>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CopReport {
    pub pop: PopAudit,
    pub poip: PoipAudit,
    /// No POP and no POIP violations.
    pub satisfied: bool,
}

fn dominant_pairs(c: &PcMatrix) -> Vec<Pair> {
    let g = c.group();
    let e = g.identity();
    let n = c.n();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && g.exceeds(c.get(i, j), e))
        .collect()
}

/// All quadruples over distinct dominant pairs with `c_ij > c_kl`.
fn eligible_quads(c: &PcMatrix, pairs: &[Pair]) -> Vec<Quad> {
    let g = c.group();
    let mut quads = Vec::new();
    for &(i, j) in pairs {
        for &(k, l) in pairs {
            if (i, j) != (k, l) && g.exceeds(c.get(i, j), c.get(k, l)) {
                quads.push(Quad { i, j, k, l });
            }
        }
    }
    quads
}

fn pop_holds(w: &PriorityVector, (i, j): Pair) -> bool {
    let g = w.group();
    g.exceeds(w.weights()[i], w.weights()[j])
}

fn poip_holds(w: &PriorityVector, q: Quad) -> bool {
    w.group().exceeds(w.ratio(q.i, q.j), w.ratio(q.k, q.l))
}

pub fn audit_pop(c: &PcMatrix, w: &PriorityVector) -> Result<PopAudit> {
    check_compatible(c, w)?;
    let g = c.group();
    let n = c.n();
    let checked = dominant_pairs(c);
    let violations = checked.iter().copied().filter(|&p| !pop_holds(w, p)).collect();
    let ties = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| g.is_identity(c.get(i, j)))
        .collect();
    Ok(PopAudit {
        checked,
        violations,
        ties,
    })
}

pub fn audit_poip(c: &PcMatrix, w: &PriorityVector) -> Result<PoipAudit> {
    check_compatible(c, w)?;
    let checked = eligible_quads(c, &dominant_pairs(c));
    let violations = checked.iter().copied().filter(|&q| !poip_holds(w, q)).collect();
    Ok(PoipAudit { checked, violations })
}

pub fn audit(c: &PcMatrix, w: &PriorityVector) -> Result<CopReport> {
    let pop = audit_pop(c, w)?;
    let poip = audit_poip(c, w)?;
    let satisfied = pop.violations.is_empty() && poip.violations.is_empty();
    Ok(CopReport {
        pop,
        poip,
        satisfied,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    /// The matrix is consistent and the vector reproduces it.
    Consistent,
    /// POP from `c_ij` exceeding the global error of the vector.
    ErrorBoundPop,
    /// POIP from both judgments exceeding the global error and their quotient
    /// exceeding its square.
    ErrorBoundPoip,
    /// POP from `c_ij > 1 / (1 - KI)` under geometric mean weights.
    InconsistencyBoundPop,
    /// POIP analogue of [`CertificateKind::InconsistencyBoundPop`].
    InconsistencyBoundPoip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subject {
    /// Every pair and quadruple of the matrix.
    Matrix,
    Pair(Pair),
    Quad(Quad),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub subject: Subject,
    /// The bound the judgment had to clear; squared for quadruples.
    pub threshold: f64,
    /// The judgment (or judgment quotient) divided by the threshold, in the
    /// group.
    pub margin: f64,
}

/// Issued when the matrix is consistent and `w` reproduces every judgment, in
/// which case no pair or quadruple can violate order preservation.
pub fn certify_consistent(c: &PcMatrix, w: &PriorityVector) -> Result<Option<Certificate>> {
    let report = global_error(c, w)?;
    let g = c.group();
    let reproduces = report.global - g.identity() <= CONSISTENCY_TOLERANCE;
    Ok((c.is_consistent().consistent && reproduces).then_some(Certificate {
        kind: CertificateKind::Consistent,
        subject: Subject::Matrix,
        threshold: g.identity(),
        margin: g.identity(),
    }))
}

fn certify_with_threshold(
    c: &PcMatrix,
    threshold: f64,
    pop_kind: CertificateKind,
    poip_kind: CertificateKind,
) -> Vec<Certificate> {
    let g = c.group();
    let squared = g.power(threshold, 2);
    let pairs: Vec<Pair> = dominant_pairs(c)
        .into_iter()
        .filter(|&(i, j)| g.exceeds(c.get(i, j), threshold))
        .collect();
    let mut certificates: Vec<Certificate> = pairs
        .iter()
        .map(|&(i, j)| Certificate {
            kind: pop_kind,
            subject: Subject::Pair((i, j)),
            threshold,
            margin: g.divide(c.get(i, j), threshold),
        })
        .collect();
    for q in eligible_quads(c, &pairs) {
        let quotient = g.divide(c.get(q.i, q.j), c.get(q.k, q.l));
        if g.exceeds(quotient, squared) {
            certificates.push(Certificate {
                kind: poip_kind,
                subject: Subject::Quad(q),
                threshold: squared,
                margin: g.divide(quotient, squared),
            });
        }
    }
    certificates
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certification {
    /// The bound used for single judgments.
    pub threshold: f64,
    pub certificates: Vec<Certificate>,
}

/// Certificates from the global error of an arbitrary priority vector.
pub fn certify_by_error(c: &PcMatrix, w: &PriorityVector) -> Result<Certification> {
    let threshold = global_error(c, w)?.global;
    Ok(Certification {
        threshold,
        certificates: certify_with_threshold(
            c,
            threshold,
            CertificateKind::ErrorBoundPop,
            CertificateKind::ErrorBoundPoip,
        ),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct InconsistencyCertification {
    pub ki: f64,
    pub certification: Certification,
    /// The geometric mean vector the certificates refer to.
    pub weights: PriorityVector,
}

/// Certificates from Koczkodaj's index alone, valid for the generalized
/// geometric mean vector. Multiplicative group only.
pub fn certify_by_inconsistency(c: &PcMatrix) -> Result<InconsistencyCertification> {
    if c.group() != GroupKind::Multiplicative {
        return Err(Error::WrongGroup {
            operation: "inconsistency-bound certification",
            group: c.group(),
        });
    }
    let ki = ki(c)?;
    let threshold = 1.0 / (1.0 - ki);
    Ok(InconsistencyCertification {
        ki,
        certification: Certification {
            threshold,
            certificates: certify_with_threshold(
                c,
                threshold,
                CertificateKind::InconsistencyBoundPop,
                CertificateKind::InconsistencyBoundPoip,
            ),
        },
        weights: ggmm(c),
    })
}

/// Certificates whose subject fails the audit of `w`. Empty for any vector the
/// certificates were derived for.
pub fn unsound<'a>(c: &PcMatrix, w: &PriorityVector, certificates: &'a [Certificate]) -> Result<Vec<&'a Certificate>> {
    check_compatible(c, w)?;
    let mut failed = Vec::new();
    for cert in certificates {
        let ok = match cert.subject {
            Subject::Pair(p) => pop_holds(w, p),
            Subject::Quad(q) => pop_holds(w, q.first()) && pop_holds(w, q.second()) && poip_holds(w, q),
            Subject::Matrix => audit(c, w)?.satisfied,
        };
        if !ok {
            failed.push(cert);
        }
    }
    Ok(failed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::priority::gmm;
    use crate::random::random_weights;
    use crate::test_support::{example, random_reciprocal, rng};

    fn pairs_of(certs: &[Certificate], kind: CertificateKind) -> Vec<Pair> {
        certs
            .iter()
            .filter(|c| c.kind == kind)
            .filter_map(|c| match c.subject {
                Subject::Pair(p) => Some(p),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn example_pop_holds_above_diagonal() {
        let c = example();
        let pop = audit_pop(&c, &gmm(&c).unwrap()).unwrap();
        assert_eq!(pop.checked, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(pop.violations.is_empty());
        assert!(pop.ties.is_empty());
    }

    #[test]
    fn planted_pop_violation() {
        let c = PcMatrix::build(
            GroupKind::Multiplicative,
            vec![vec![1.0, 1.2, 1.0], vec![1.0 / 1.2, 1.0, 1.0], vec![1.0, 1.0, 1.0]],
            None,
        )
        .unwrap();
        let w = PriorityVector::external(GroupKind::Multiplicative, vec![0.3, 0.4, 0.3]).unwrap();
        let pop = audit_pop(&c, &w).unwrap();
        assert_eq!(pop.checked, vec![(0, 1)]);
        assert_eq!(pop.violations, vec![(0, 1)]);
        assert_eq!(pop.ties, vec![(0, 2), (1, 2)]);
        assert!(!audit(&c, &w).unwrap().satisfied);
    }

    #[test]
    fn example_poip_instance_and_full_scan() {
        let c = example();
        let w = gmm(&c).unwrap();
        let poip = audit_poip(&c, &w).unwrap();
        let q = Quad { i: 0, j: 1, k: 1, l: 2 };
        assert!(poip.checked.contains(&q));
        assert!(!poip.violations.contains(&q));
        // Brute-force oracle over all 4^4 index tuples.
        let mut expected = Vec::new();
        let mut expected_violations = Vec::new();
        let x = w.weights();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        if i == j || k == l || (i, j) == (k, l) {
                            continue;
                        }
                        let (a, b) = (c.get(i, j), c.get(k, l));
                        if a > 1.0 + 1e-9 && b > 1.0 + 1e-9 && a > b + 1e-9 {
                            expected.push(Quad { i, j, k, l });
                            if x[i] / x[j] <= x[k] / x[l] {
                                expected_violations.push(Quad { i, j, k, l });
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(expected.len(), 14);
        let mut got = poip.checked.clone();
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(poip.violations, expected_violations);
        assert!(poip.violations.is_empty());
    }

    #[test]
    fn consistent_matrices_audit_clean() {
        let mut rng = rng(41);
        for g in GroupKind::ALL {
            for n in 2..7 {
                let c = PcMatrix::from_weights(g, &random_weights(g, n, 2.0, &mut rng)).unwrap();
                let w = ggmm(&c);
                assert!(audit(&c, &w).unwrap().satisfied, "{g}");
                let cert = certify_consistent(&c, &w).unwrap().unwrap();
                assert_eq!(cert.subject, Subject::Matrix);
                let by_error = certify_by_error(&c, &w).unwrap();
                assert!(g.is_identity(by_error.threshold));
                let pop = pairs_of(&by_error.certificates, CertificateKind::ErrorBoundPop);
                assert_eq!(pop, audit_pop(&c, &w).unwrap().checked);
            }
        }
    }

    #[test]
    fn consistent_certificate_requires_consistency() {
        let c = example();
        assert!(certify_consistent(&c, &gmm(&c).unwrap()).unwrap().is_none());
        let two = PcMatrix::from_weights(GroupKind::Multiplicative, &[3.0, 1.0]).unwrap();
        assert!(certify_consistent(&two, &ggmm(&two)).unwrap().is_some());
        // A consistent matrix with a vector that does not reproduce it.
        let w = PriorityVector::external(GroupKind::Multiplicative, vec![1.0, 3.0]).unwrap();
        assert!(certify_consistent(&two, &w).unwrap().is_none());
    }

    #[test]
    fn example_error_bound_certificates() {
        let c = example();
        let w = gmm(&c).unwrap();
        let cert = certify_by_error(&c, &w).unwrap();
        assert!((cert.threshold - 1.3774493080).abs() < 1e-9);
        let pop = pairs_of(&cert.certificates, CertificateKind::ErrorBoundPop);
        assert_eq!(pop, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(unsound(&c, &w, &cert.certificates).unwrap().is_empty());
    }

    #[test]
    fn example_inconsistency_bound_certificates() {
        let c = example();
        let result = certify_by_inconsistency(&c).unwrap();
        assert!((result.certification.threshold - 2.0).abs() < 1e-9);
        let pop = pairs_of(&result.certification.certificates, CertificateKind::InconsistencyBoundPop);
        assert_eq!(pop, vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]);
        // c_23 = 2 is not certified, yet the audit shows w_2 > w_3.
        assert!(!pop.contains(&(1, 2)));
        let audit = audit_pop(&c, &result.weights).unwrap();
        assert!(audit.checked.contains(&(1, 2)) && !audit.violations.contains(&(1, 2)));
        assert!(unsound(&c, &result.weights, &result.certification.certificates)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn inconsistency_bound_is_multiplicative_only() {
        let c = PcMatrix::from_weights(GroupKind::Additive, &[0.0, 1.0, 2.0]).unwrap();
        assert!(matches!(certify_by_inconsistency(&c), Err(Error::WrongGroup { .. })));
    }

    #[test]
    fn consistent_matrix_threshold_is_one() {
        let c = PcMatrix::from_weights(GroupKind::Multiplicative, &[4.0, 2.0, 1.0]).unwrap();
        let r = certify_by_inconsistency(&c).unwrap();
        assert!((r.ki).abs() < 1e-12);
        let pop = pairs_of(&r.certification.certificates, CertificateKind::InconsistencyBoundPop);
        assert_eq!(pop, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn certificates_are_sound_on_random_matrices() {
        let mut rng = rng(43);
        for g in GroupKind::ALL {
            for n in 3..7 {
                for _ in 0..40 {
                    let c = random_reciprocal(g, n, &mut rng);
                    let w = ggmm(&c);
                    let certs = certify_by_error(&c, &w).unwrap().certificates;
                    assert!(unsound(&c, &w, &certs).unwrap().is_empty());
                    let w = PriorityVector::external(g, random_weights(g, n, 2.0, &mut rng)).unwrap();
                    let certs = certify_by_error(&c, &w).unwrap().certificates;
                    assert!(unsound(&c, &w, &certs).unwrap().is_empty());
                }
            }
        }
    }
}
