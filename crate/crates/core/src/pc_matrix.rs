//! Pairwise comparison matrices over an alo-group.

use std::fmt;

use crate::alo_group::{AloGroup, GroupKind, TOLERANCE};
use crate::error::{Error, Result};

/// A triad counts as consistent when the distance of its product from the
/// identity is at most this.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-7;

/// Three distinct alternatives, stored canonically with `i < j < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triad {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl Triad {
    /// Sorts the indices. Fails on repeated indices.
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        if a == b || b == c || a == c {
            return Err(Error::RepeatedIndex(a, b, c));
        }
        let mut idx = [a, b, c];
        idx.sort_unstable();
        Ok(Triad {
            i: idx[0],
            j: idx[1],
            k: idx[2],
        })
    }
}

impl fmt::Display for Triad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.i + 1, self.j + 1, self.k + 1)
    }
}

/// Iterator over all canonical triads of an `n`-alternative matrix in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct Triads {
    n: usize,
    next: Option<Triad>,
}

impl Triads {
    pub fn new(n: usize) -> Self {
        let next = (n >= 3).then_some(Triad { i: 0, j: 1, k: 2 });
        Triads { n, next }
    }
}

impl Iterator for Triads {
    type Item = Triad;

    fn next(&mut self) -> Option<Triad> {
        let current = self.next?;
        let Triad { i, j, k } = current;
        let n = self.n;
        self.next = if k + 1 < n {
            Some(Triad { i, j, k: k + 1 })
        } else if j + 2 < n {
            Some(Triad {
                i,
                j: j + 1,
                k: j + 2,
            })
        } else if i + 3 < n {
            Some(Triad {
                i: i + 1,
                j: i + 2,
                k: i + 3,
            })
        } else {
            None
        };
        Some(current)
    }
}

/// Worst triad found by a consistency check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriadDeviation {
    pub triad: Triad,
    /// `c_ij * c_jk * c_ki`.
    pub product: f64,
    /// Group distance of the product from the identity.
    pub deviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsistencyCheck {
    pub consistent: bool,
    /// The triad with the largest deviation, present when inconsistent.
    pub witness: Option<TriadDeviation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PcMatrix {
    group: GroupKind,
    n: usize,
    entries: Vec<f64>,
    labels: Vec<String>,
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("a{i}")).collect()
}

impl PcMatrix {
    /// Validates shape, domain, diagonal and reciprocity.
    pub fn build(group: GroupKind, rows: Vec<Vec<f64>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        for (row, values) in rows.iter().enumerate() {
            if values.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: values.len(),
                    expected: n,
                });
            }
        }
        if n < 2 {
            return Err(Error::TooSmall(n));
        }
        let labels = match labels {
            Some(labels) if labels.len() != n => {
                return Err(Error::LabelCount {
                    expected: n,
                    actual: labels.len(),
                })
            }
            Some(labels) => labels,
            None => default_labels(n),
        };
        for (row, values) in rows.iter().enumerate() {
            for (col, &value) in values.iter().enumerate() {
                if !group.contains(value) {
                    return Err(Error::DomainAt {
                        group,
                        row,
                        col,
                        value,
                    });
                }
            }
        }
        let identity = group.identity();
        for (index, values) in rows.iter().enumerate() {
            if !group.is_identity(values[index]) {
                return Err(Error::Diagonal {
                    index,
                    value: values[index],
                    identity,
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let combined = group.combine(rows[i][j], rows[j][i]);
                if !group.is_identity(combined) {
                    return Err(Error::Reciprocity {
                        i,
                        j,
                        cij: rows[i][j],
                        cji: rows[j][i],
                        combined,
                        identity,
                    });
                }
            }
        }
        Ok(PcMatrix {
            group,
            n,
            entries: rows.into_iter().flatten().collect(),
            labels,
        })
    }

    /// The consistent matrix `c_ij = w_i / w_j`.
    pub fn from_weights(group: GroupKind, weights: &[f64]) -> Result<Self> {
        let n = weights.len();
        if n < 2 {
            return Err(Error::TooSmall(n));
        }
        for &w in weights {
            group.check(w)?;
        }
        let mut entries = vec![group.identity(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let c = group.divide(weights[i], weights[j]);
                entries[i * n + j] = c;
                entries[j * n + i] = group.inverse(c);
            }
        }
        Ok(PcMatrix {
            group,
            n,
            entries,
            labels: default_labels(n),
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LabelCount {
                expected: self.n,
                actual: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn triads(&self) -> Triads {
        Triads::new(self.n)
    }

    /// `c_ij * c_jk * c_ki` for any ordering of three indices.
    pub fn cycle_product(&self, i: usize, j: usize, k: usize) -> f64 {
        let g = self.group;
        g.combine(g.combine(self.get(i, j), self.get(j, k)), self.get(k, i))
    }

    pub fn triad_product(&self, t: Triad) -> f64 {
        self.cycle_product(t.i, t.j, t.k)
    }

    pub fn is_consistent(&self) -> ConsistencyCheck {
        self.is_consistent_within(CONSISTENCY_TOLERANCE)
    }

    /// Consistency check with an explicit tolerance on the triad distance
    /// from the identity. Ties between equally bad triads go to the first in
    /// lexicographic order.
    pub fn is_consistent_within(&self, tolerance: f64) -> ConsistencyCheck {
        let g = self.group;
        let e = g.identity();
        let mut worst: Option<TriadDeviation> = None;
        for triad in self.triads() {
            let product = self.triad_product(triad);
            let deviation = g.distance(product, e);
            if worst.is_none_or(|w| deviation > w.deviation + TOLERANCE) {
                worst = Some(TriadDeviation {
                    triad,
                    product,
                    deviation,
                });
            }
        }
        match worst {
            Some(w) if w.deviation - e > tolerance => ConsistencyCheck {
                consistent: false,
                witness: Some(w),
            },
            _ => ConsistencyCheck {
                consistent: true,
                witness: None,
            },
        }
    }

    /// Simultaneous row and column relabelling: entry `(a, b)` of the result is
    /// entry `(perm[a], perm[b])` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                matrix: self.n,
                vector: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n {
                return Err(Error::IndexOutOfRange { index: p, n: self.n });
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::RepeatedIndex(p, p, p));
            }
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for &a in perm {
            for &b in perm {
                entries.push(self.get(a, b));
            }
        }
        Ok(PcMatrix {
            group: self.group,
            n,
            entries,
            labels: perm.iter().map(|&p| self.labels[p].clone()).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use crate::test_support::example;

    #[test]
    fn builds_the_worked_example() {
        let c = example();
        assert_eq!(c.n(), 4);
        assert_eq!(c.labels(), ["a1", "a2", "a3", "a4"]);
        assert_eq!(c.get(0, 1), 2.5);
    }

    #[test]
    fn minimal_reciprocal_matrix_is_accepted() {
        for g in GroupKind::ALL {
            let a = g.from_additive(0.7);
            let c = PcMatrix::build(g, vec![vec![g.identity(), a], vec![g.inverse(a), g.identity()]], None);
            assert!(c.is_ok(), "{g}");
        }
    }

    #[test]
    fn reciprocity_violation_is_reported() {
        let err = PcMatrix::build(GroupKind::Multiplicative, vec![vec![1.0, 2.0], vec![3.0, 1.0]], None)
            .unwrap_err();
        assert_eq!(
            err,
            Error::Reciprocity {
                i: 0,
                j: 1,
                cij: 2.0,
                cji: 3.0,
                combined: 6.0,
                identity: 1.0
            }
        );
    }

    #[test]
    fn shape_domain_and_diagonal_errors() {
        let g = GroupKind::Multiplicative;
        assert!(matches!(
            PcMatrix::build(g, vec![vec![1.0, 2.0], vec![0.5]], None),
            Err(Error::NotSquare { row: 1, len: 1, expected: 2 })
        ));
        assert_eq!(PcMatrix::build(g, vec![vec![1.0]], None), Err(Error::TooSmall(1)));
        assert!(matches!(
            PcMatrix::build(g, vec![vec![1.0, -2.0], vec![-0.5, 1.0]], None),
            Err(Error::DomainAt { row: 0, col: 1, .. })
        ));
        assert!(matches!(
            PcMatrix::build(g, vec![vec![2.0, 2.0], vec![0.5, 1.0]], None),
            Err(Error::Diagonal { index: 0, .. })
        ));
        assert!(matches!(
            PcMatrix::build(g, vec![vec![1.0, 2.0], vec![0.5, 1.0]], Some(vec!["x".into()])),
            Err(Error::LabelCount { expected: 2, actual: 1 })
        ));
    }

    #[test]
    fn example_is_inconsistent_with_worst_triad_124() {
        let check = example().is_consistent();
        assert!(!check.consistent);
        let w = check.witness.unwrap();
        assert_eq!(w.triad, Triad { i: 0, j: 1, k: 3 });
        assert_abs_diff_eq!(w.product, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(w.deviation, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn two_by_two_is_vacuously_consistent() {
        let c = PcMatrix::build(GroupKind::Multiplicative, vec![vec![1.0, 7.0], vec![1.0 / 7.0, 1.0]], None)
            .unwrap();
        assert!(c.is_consistent().consistent);
        assert_eq!(c.triads().count(), 0);
    }

    #[test]
    fn triad_enumeration() {
        assert_eq!(Triads::new(4).count(), 4);
        assert_eq!(Triads::new(3).collect::<Vec<_>>(), vec![Triad { i: 0, j: 1, k: 2 }]);
        assert_eq!(Triads::new(2).count(), 0);
        for n in 0..10usize {
            let all: Vec<_> = Triads::new(n).collect();
            let expected = if n >= 3 { n * (n - 1) * (n - 2) / 6 } else { 0 };
            assert_eq!(all.len(), expected);
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            assert!(all.iter().all(|t| t.i < t.j && t.j < t.k && t.k < n));
        }
        assert_eq!(Triad::new(3, 0, 2).unwrap(), Triad { i: 0, j: 2, k: 3 });
        assert!(Triad::new(1, 1, 2).is_err());
    }

    #[test]
    fn from_weights_examples() {
        let c = PcMatrix::from_weights(GroupKind::Multiplicative, &[2.0, 1.0, 0.5]).unwrap();
        assert_eq!(c.rows(), vec![vec![1.0, 2.0, 4.0], vec![0.5, 1.0, 2.0], vec![0.25, 0.5, 1.0]]);
        let c = PcMatrix::from_weights(GroupKind::Additive, &[3.0, 1.0]).unwrap();
        assert_eq!(c.rows(), vec![vec![0.0, 2.0], vec![-2.0, 0.0]]);
        for g in GroupKind::ALL {
            let w = g.from_additive(0.4);
            let c = PcMatrix::from_weights(g, &[w; 4]).unwrap();
            assert!(c.rows().iter().flatten().all(|&x| g.is_identity(x)));
        }
        assert!(PcMatrix::from_weights(GroupKind::FuzzyMultiplicative, &[0.5, 1.5]).is_err());
    }

    #[test]
    fn triad_orderings_are_equivalent() {
        let c = example();
        let g = c.group();
        for t in c.triads() {
            let base = g.norm(c.triad_product(t));
            let (i, j, k) = (t.i, t.j, t.k);
            for (a, b, d) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                assert_abs_diff_eq!(g.norm(c.cycle_product(a, b, d)), base, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn permutation_relabels_entries() {
        let c = example();
        let p = c.permuted(&[3, 0, 2, 1]).unwrap();
        assert_eq!(p.get(0, 1), c.get(3, 0));
        assert_eq!(p.labels()[0], "a4");
        assert!(c.permuted(&[0, 0, 1, 2]).is_err());
    }
}
