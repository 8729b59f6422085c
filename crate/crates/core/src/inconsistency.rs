//! Triad-based inconsistency: the generalized index over any alo-group, and
//! Koczkodaj's and Saaty's indices for the multiplicative group.

use crate::alo_group::{AloGroup, GroupKind, TOLERANCE};
use crate::error::{Error, Result};
use crate::pc_matrix::{PcMatrix, Triad};
use crate::priority::evm;

/// Norm of `c_ij * c_jk * c_ki`. Invariant under permutations of the
/// indices on reciprocal matrices.
pub fn triad_eta(c: &PcMatrix, i: usize, j: usize, k: usize) -> Result<f64> {
    for index in [i, j, k] {
        if index >= c.n() {
            return Err(Error::IndexOutOfRange { index, n: c.n() });
        }
    }
    if i == j || j == k || i == k {
        return Err(Error::RepeatedIndex(i, j, k));
    }
    Ok(c.group().norm(c.cycle_product(i, j, k)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriadEta {
    pub triad: Triad,
    pub eta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GiReport {
    pub gi: f64,
    /// First canonical triad attaining the maximum within tolerance.
    pub argmax: Triad,
    pub per_triad: Vec<TriadEta>,
}

/// Generalized inconsistency index: the largest triad norm.
pub fn gi(c: &PcMatrix) -> Result<GiReport> {
    let g = c.group();
    let per_triad: Vec<TriadEta> = c
        .triads()
        .map(|triad| TriadEta {
            triad,
            eta: g.norm(c.triad_product(triad)),
        })
        .collect();
    let first = per_triad.first().ok_or(Error::NoTriads(c.n()))?;
    let mut best = *first;
    for t in &per_triad[1..] {
        if t.eta > best.eta + TOLERANCE {
            best = *t;
        }
    }
    let gi = per_triad.iter().map(|t| t.eta).fold(best.eta, f64::max);
    Ok(GiReport {
        gi,
        argmax: best.triad,
        per_triad,
    })
}

fn require_multiplicative(c: &PcMatrix, operation: &'static str) -> Result<()> {
    match c.group() {
        GroupKind::Multiplicative => Ok(()),
        group => Err(Error::WrongGroup { operation, group }),
    }
}

/// Koczkodaj's index, by a direct scan over all ordered triples.
pub fn ki(c: &PcMatrix) -> Result<f64> {
    require_multiplicative(c, "ki")?;
    let n = c.n();
    if n < 3 {
        return Err(Error::NoTriads(n));
    }
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let direct = c.get(i, j);
                let indirect = c.get(i, k) * c.get(k, j);
                let value = 1.0 - (direct / indirect).min(indirect / direct);
                worst = worst.max(value);
            }
        }
    }
    Ok(worst)
}

/// Saaty's consistency index `(lambda_max - n) / (n - 1)`, clamped at zero
/// against round-off in the eigenvalue.
pub fn ci(c: &PcMatrix) -> Result<f64> {
    ci_from_lambda(c, evm(c)?.lambda_max)
}

fn ci_from_lambda(c: &PcMatrix, lambda_max: f64) -> Result<f64> {
    require_multiplicative(c, "ci")?;
    let n = c.n() as f64;
    Ok(((lambda_max - n) / (n - 1.0)).max(0.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct InconsistencyReport {
    pub gi: GiReport,
    pub ki: Option<f64>,
    pub ci: Option<f64>,
    pub lambda_max: Option<f64>,
}

/// Everything available for the matrix's group. Needs at least three
/// alternatives.
pub fn report(c: &PcMatrix) -> Result<InconsistencyReport> {
    let gi = gi(c)?;
    if c.group() != GroupKind::Multiplicative {
        return Ok(InconsistencyReport {
            gi,
            ki: None,
            ci: None,
            lambda_max: None,
        });
    }
    let lambda_max = evm(c)?.lambda_max;
    Ok(InconsistencyReport {
        gi,
        ki: Some(ki(c)?),
        ci: Some(ci_from_lambda(c, lambda_max)?),
        lambda_max: Some(lambda_max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::perturb;
    use crate::test_support::{example, random_reciprocal, rng};
    use approx::assert_abs_diff_eq;
    use rand::seq::SliceRandom;

    #[test]
    fn example_triads() {
        let c = example();
        assert_abs_diff_eq!(triad_eta(&c, 0, 1, 3).unwrap(), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(triad_eta(&c, 0, 1, 2).unwrap(), 5.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(triad_eta(&c, 3, 1, 0).unwrap(), 2.0, epsilon = 1e-12);
        assert_eq!(triad_eta(&c, 0, 0, 1), Err(Error::RepeatedIndex(0, 0, 1)));
        assert_eq!(triad_eta(&c, 0, 1, 9), Err(Error::IndexOutOfRange { index: 9, n: 4 }));
    }

    #[test]
    fn example_indices() {
        let c = example();
        let r = gi(&c).unwrap();
        assert_abs_diff_eq!(r.gi, 2.0, epsilon = 1e-9);
        assert_eq!(r.argmax, Triad { i: 0, j: 1, k: 3 });
        assert_eq!(r.per_triad.len(), 4);
        assert_abs_diff_eq!(ki(&c).unwrap(), 0.5, epsilon = 1e-9);
        // Principal eigenvalue from an independent high-precision eigensolve.
        assert_abs_diff_eq!(ci(&c).unwrap(), (4.07878362517301 - 4.0) / 3.0, epsilon = 1e-9);
    }

    #[test]
    fn consistent_matrices_sit_at_identity() {
        for g in GroupKind::ALL {
            let w = [g.from_additive(0.9), g.from_additive(-1.1), g.from_additive(0.1), g.from_additive(0.4)];
            let c = PcMatrix::from_weights(g, &w).unwrap();
            assert!(g.is_identity(gi(&c).unwrap().gi), "{g}");
        }
        let c = PcMatrix::from_weights(GroupKind::Multiplicative, &[5.0, 1.0, 2.0]).unwrap();
        assert_abs_diff_eq!(ki(&c).unwrap(), 0.0, epsilon = 1e-12);
        assert!(ci(&c).unwrap() <= 1e-7);
        let one = PcMatrix::from_weights(GroupKind::Multiplicative, &[1.0; 5]).unwrap();
        assert_eq!(ci(&one).unwrap(), 0.0);
        let fm = PcMatrix::from_weights(GroupKind::FuzzyMultiplicative, &[0.3, 0.8, 0.6]).unwrap();
        assert_abs_diff_eq!(gi(&fm).unwrap().gi, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn ki_of_gi_four_matrix() {
        // Only triad (1,2,3) is off: c_12 * c_23 * c_31 = 4.
        let base = PcMatrix::from_weights(GroupKind::Multiplicative, &[1.0, 1.0, 1.0]).unwrap();
        let mut rows = base.rows();
        rows[0][1] = 4.0;
        rows[1][0] = 0.25;
        let c = PcMatrix::build(GroupKind::Multiplicative, rows, None).unwrap();
        assert_abs_diff_eq!(gi(&c).unwrap().gi, 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ki(&c).unwrap(), 0.75, epsilon = 1e-12);
    }

    #[test]
    fn two_alternatives_have_no_triads() {
        let c = PcMatrix::from_weights(GroupKind::Multiplicative, &[2.0, 1.0]).unwrap();
        assert_eq!(gi(&c), Err(Error::NoTriads(2)));
        assert_eq!(ki(&c), Err(Error::NoTriads(2)));
        assert!(matches!(report(&c), Err(Error::NoTriads(2))));
    }

    #[test]
    fn multiplicative_only() {
        let c = PcMatrix::from_weights(GroupKind::FuzzyAdditive, &[0.1, 0.2, 0.3]).unwrap();
        assert!(matches!(ki(&c), Err(Error::WrongGroup { .. })));
        assert!(matches!(ci(&c), Err(Error::WrongGroup { .. })));
        let r = report(&c).unwrap();
        assert!(r.ki.is_none() && r.ci.is_none() && r.lambda_max.is_none());
    }

    #[test]
    fn ki_matches_gi_bridge() {
        let mut rng = rng(17);
        for n in 3..9 {
            for _ in 0..50 {
                let c = random_reciprocal(GroupKind::Multiplicative, n, &mut rng);
                let g = gi(&c).unwrap().gi;
                assert!((ki(&c).unwrap() - (1.0 - 1.0 / g)).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn relabelling_leaves_indices_unchanged() {
        let mut rng = rng(29);
        for g in GroupKind::ALL {
            for _ in 0..40 {
                let c = random_reciprocal(g, 6, &mut rng);
                let mut perm: Vec<usize> = (0..6).collect();
                perm.shuffle(&mut rng);
                let p = c.permuted(&perm).unwrap();
                assert!((gi(&c).unwrap().gi - gi(&p).unwrap().gi).abs() <= TOLERANCE);
                if g == GroupKind::Multiplicative {
                    assert!((ki(&c).unwrap() - ki(&p).unwrap()).abs() <= TOLERANCE);
                    assert!((ci(&c).unwrap() - ci(&p).unwrap()).abs() <= TOLERANCE);
                }
            }
        }
    }

    #[test]
    fn gi_is_identity_exactly_when_consistent() {
        let mut rng = rng(31);
        for g in GroupKind::ALL {
            for trial in 0..100 {
                let base = PcMatrix::from_weights(g, &crate::random::random_weights(g, 5, 2.0, &mut rng)).unwrap();
                let c = if trial % 2 == 0 {
                    base
                } else {
                    perturb(&base, g.from_additive(0.5), &mut rng).unwrap()
                };
                let r = gi(&c).unwrap();
                assert!(r.gi >= g.identity());
                assert_eq!(r.gi - g.identity() <= 1e-7, c.is_consistent().consistent, "{g}");
            }
        }
    }

    #[test]
    fn worsening_a_judgment_raises_gi() {
        let mut rng = rng(37);
        for g in GroupKind::ALL {
            for _ in 0..50 {
                let base = PcMatrix::from_weights(g, &crate::random::random_weights(g, 5, 1.5, &mut rng)).unwrap();
                let factor = g.from_additive(rand::Rng::random_range(&mut rng, 0.1..1.5));
                let mut rows = base.rows();
                rows[0][1] = g.combine(rows[0][1], factor);
                rows[1][0] = g.inverse(rows[0][1]);
                let c = PcMatrix::build(g, rows, None).unwrap();
                let eta = triad_eta(&c, 0, 1, 2).unwrap();
                assert!((eta - factor).abs() <= 1e-9);
                assert!(gi(&c).unwrap().gi >= eta - TOLERANCE);
            }
        }
    }
}
