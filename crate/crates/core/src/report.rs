//! Serializable views of the analysis results, with 1-based alternative
//! indices, and their aligned text rendering.

use std::fmt::Write as _;

use serde::Serialize;

use crate::alo_group::GroupKind;
use crate::cop::{Certificate, CertificateKind, CopReport, Subject};
use crate::error_index::ErrorReport;
use crate::inconsistency::InconsistencyReport;
use crate::pc_matrix::Triad;
use crate::priority::{Method, PriorityVector};

/// `x` with six significant digits, trailing zeros removed.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&magnitude) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - magnitude).max(0) as usize;
    let text = format!("{x:.decimals$}");
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        text
    }
}

fn pair(p: (usize, usize)) -> [usize; 2] {
    [p.0 + 1, p.1 + 1]
}

fn triad(t: Triad) -> [usize; 3] {
    [t.i + 1, t.j + 1, t.k + 1]
}

#[derive(Debug, Clone, Serialize)]
pub struct RankView {
    pub group: GroupKind,
    pub method: Method,
    pub labels: Vec<String>,
    pub weights: Vec<f64>,
    pub scale: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_max: Option<f64>,
}

impl RankView {
    pub fn new(labels: &[String], w: &PriorityVector, lambda_max: Option<f64>) -> Self {
        let normalized = match w.method() {
            Method::Ggmm | Method::External => w.normalized(),
            Method::Gmm | Method::Evm => None,
        };
        RankView {
            group: w.group(),
            method: w.method(),
            labels: labels.to_vec(),
            weights: w.weights().to_vec(),
            scale: w.scale(),
            normalized,
            lambda_max,
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "group   {}", self.group);
        let _ = writeln!(out, "method  {}", self.method);
        let _ = writeln!(out, "scale   {}", sig6(self.scale));
        if let Some(l) = self.lambda_max {
            let _ = writeln!(out, "lambda_max  {}", sig6(l));
        }
        let width = self.labels.iter().map(String::len).max().unwrap_or(0).max(5);
        let _ = write!(out, "\n{:width$}  {:>12}", "label", "weight");
        if self.normalized.is_some() {
            let _ = write!(out, "  {:>12}", "normalized");
        }
        out.push('\n');
        for (i, label) in self.labels.iter().enumerate() {
            let _ = write!(out, "{label:width$}  {:>12}", sig6(self.weights[i]));
            if let Some(n) = &self.normalized {
                let _ = write!(out, "  {:>12}", sig6(n[i]));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorView {
    pub global: f64,
    pub argmax_pair: [usize; 2],
    pub per_pair: Vec<Vec<f64>>,
}

impl From<&ErrorReport> for ErrorView {
    fn from(r: &ErrorReport) -> Self {
        ErrorView {
            global: r.global,
            argmax_pair: pair(r.argmax),
            per_pair: r.rows(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TriadView {
    pub triad: [usize; 3],
    pub eta: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct InconsistencyView {
    pub gi: f64,
    pub argmax_triad: [usize; 3],
    pub per_triad: Vec<TriadView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ki: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_max: Option<f64>,
}

impl From<&InconsistencyReport> for InconsistencyView {
    fn from(r: &InconsistencyReport) -> Self {
        InconsistencyView {
            gi: r.gi.gi,
            argmax_triad: triad(r.gi.argmax),
            per_triad: r
                .gi
                .per_triad
                .iter()
                .map(|t| TriadView {
                    triad: triad(t.triad),
                    eta: t.eta,
                })
                .collect(),
            ki: r.ki,
            ci: r.ci,
            lambda_max: r.lambda_max,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CopView {
    pub pop_checked: Vec<[usize; 2]>,
    pub pop_violations: Vec<[usize; 2]>,
    pub ties: Vec<[usize; 2]>,
    pub poip_checked: Vec<[usize; 4]>,
    pub poip_violations: Vec<[usize; 4]>,
    pub satisfied: bool,
}

impl From<&CopReport> for CopView {
    fn from(r: &CopReport) -> Self {
        let quad = |q: &crate::cop::Quad| [q.i + 1, q.j + 1, q.k + 1, q.l + 1];
        CopView {
            pop_checked: r.pop.checked.iter().copied().map(pair).collect(),
            pop_violations: r.pop.violations.iter().copied().map(pair).collect(),
            ties: r.pop.ties.iter().copied().map(pair).collect(),
            poip_checked: r.poip.checked.iter().map(quad).collect(),
            poip_violations: r.poip.violations.iter().map(quad).collect(),
            satisfied: r.satisfied,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum SubjectView {
    Matrix(&'static str),
    Indices(Vec<usize>),
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateView {
    pub kind: CertificateKind,
    pub subject: SubjectView,
    pub threshold: f64,
    pub margin: f64,
}

impl From<&Certificate> for CertificateView {
    fn from(c: &Certificate) -> Self {
        let subject = match c.subject {
            Subject::Matrix => SubjectView::Matrix("matrix"),
            Subject::Pair((i, j)) => SubjectView::Indices(vec![i + 1, j + 1]),
            Subject::Quad(q) => SubjectView::Indices(vec![q.i + 1, q.j + 1, q.k + 1, q.l + 1]),
        };
        CertificateView {
            kind: c.kind,
            subject,
            threshold: c.threshold,
            margin: c.margin,
        }
    }
}

impl CertificateView {
    fn text(&self) -> String {
        let subject = match &self.subject {
            SubjectView::Matrix(s) => s.to_string(),
            SubjectView::Indices(ix) => format!(
                "({})",
                ix.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
            ),
        };
        let kind = serde_json::to_value(self.kind)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default();
        format!(
            "  {kind:<26} {subject:<14} threshold {:<10} margin {}",
            sig6(self.threshold),
            sig6(self.margin)
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditView {
    pub rank: RankView,
    pub error: ErrorView,
    /// Absent for two alternatives, where no triads exist.
    pub inconsistency: Option<InconsistencyView>,
    pub cop: CopView,
}

fn pairs_text(pairs: &[[usize; 2]]) -> String {
    if pairs.is_empty() {
        return "none".into();
    }
    pairs
        .iter()
        .map(|p| format!("({}, {})", p[0], p[1]))
        .collect::<Vec<_>>()
        .join(" ")
}

fn quads_text(quads: &[[usize; 4]]) -> String {
    if quads.is_empty() {
        return "none".into();
    }
    quads
        .iter()
        .map(|q| format!("({}, {}, {}, {})", q[0], q[1], q[2], q[3]))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cop_text(out: &mut String, cop: &CopView) {
    let _ = writeln!(out, "pop checked      {}", cop.pop_checked.len());
    let _ = writeln!(out, "pop violations   {}", pairs_text(&cop.pop_violations));
    let _ = writeln!(out, "ties             {}", pairs_text(&cop.ties));
    let _ = writeln!(out, "poip checked     {}", cop.poip_checked.len());
    let _ = writeln!(out, "poip violations  {}", quads_text(&cop.poip_violations));
    let _ = writeln!(out, "satisfied        {}", cop.satisfied);
}

impl AuditView {
    pub fn text(&self) -> String {
        let mut out = self.rank.text();
        let e = &self.error;
        let _ = writeln!(
            out,
            "\nglobal error  {}  at ({}, {})",
            sig6(e.global),
            e.argmax_pair[0],
            e.argmax_pair[1]
        );
        for row in &e.per_pair {
            let cells: Vec<String> = row.iter().map(|x| format!("{:>10}", sig6(*x))).collect();
            let _ = writeln!(out, "  {}", cells.join(" "));
        }
        match &self.inconsistency {
            Some(inc) => {
                let t = inc.argmax_triad;
                let _ = writeln!(out, "\nGI  {}  worst triad ({}, {}, {})", sig6(inc.gi), t[0], t[1], t[2]);
                if let Some(ki) = inc.ki {
                    let _ = writeln!(out, "KI  {}", sig6(ki));
                }
                if let Some(ci) = inc.ci {
                    let _ = writeln!(out, "CI  {}", sig6(ci));
                }
            }
            None => out.push_str("\nGI  undefined (fewer than 3 alternatives)\n"),
        }
        out.push('\n');
        cop_text(&mut out, &self.cop);
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InconsistencyBoundView {
    pub ki: f64,
    pub threshold: f64,
    pub certificates: Vec<CertificateView>,
    /// Audit of the geometric mean vector these certificates refer to.
    pub audit: CopView,
    pub unsound: Vec<CertificateView>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBoundView {
    pub threshold: f64,
    pub certificates: Vec<CertificateView>,
    pub unsound: Vec<CertificateView>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyView {
    pub rank: RankView,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gi: Option<f64>,
    pub consistent: Option<CertificateView>,
    pub error_bound: ErrorBoundView,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inconsistency_bound: Option<InconsistencyBoundView>,
    pub audit: CopView,
}

impl CertifyView {
    pub fn text(&self) -> String {
        let mut out = self.rank.text();
        out.push('\n');
        if let Some(gi) = self.gi {
            let _ = writeln!(out, "GI                  {}", sig6(gi));
        }
        let _ = writeln!(
            out,
            "consistent          {}",
            if self.consistent.is_some() { "yes, every pair certified" } else { "no" }
        );
        let _ = writeln!(out, "error threshold     {}", sig6(self.error_bound.threshold));
        if let Some(ib) = &self.inconsistency_bound {
            let _ = writeln!(out, "KI                  {}", sig6(ib.ki));
            let _ = writeln!(out, "1/(1-KI) threshold  {}", sig6(ib.threshold));
        }
        let _ = writeln!(out, "\ncertificates ({})", self.error_bound.certificates.len());
        for c in &self.error_bound.certificates {
            let _ = writeln!(out, "{}", c.text());
        }
        if let Some(ib) = &self.inconsistency_bound {
            let _ = writeln!(out, "\ninconsistency-bound certificates ({})", ib.certificates.len());
            for c in &ib.certificates {
                let _ = writeln!(out, "{}", c.text());
            }
        }
        let unsound = self.error_bound.unsound.len()
            + self.inconsistency_bound.as_ref().map_or(0, |ib| ib.unsound.len());
        let _ = writeln!(out, "\nunsound certificates  {unsound}\n");
        cop_text(&mut out, &self.audit);
        out
    }

    /// Clean when the audit has no violations and no certificate failed it.
    pub fn clean(&self) -> bool {
        self.audit.satisfied
            && self.error_bound.unsound.is_empty()
            && self
                .inconsistency_bound
                .as_ref()
                .is_none_or(|ib| ib.unsound.is_empty())
    }
}
