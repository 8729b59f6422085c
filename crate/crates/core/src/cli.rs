//! Command-line front end.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::alo_group::GroupKind;
use crate::cop::{audit, certify_by_error, certify_by_inconsistency, certify_consistent, unsound};
use crate::error::{Error, Result};
use crate::error_index::global_error;
use crate::inconsistency::{gi, report};
use crate::io::{read_matrix, render, Format};
use crate::pc_matrix::PcMatrix;
use crate::priority::{derive, Method};
use crate::report::{
    AuditView, CertificateView, CertifyView, CopView, ErrorBoundView, InconsistencyBoundView, RankView,
};
use crate::simulate::{simulate, to_csv, SimulationConfig, DEFAULT_SPREAD};

/// Exit status for a clean run.
pub const EXIT_OK: i32 = 0;
/// Exit status for unreadable input, bad flags or invalid combinations.
pub const EXIT_INPUT: i32 = 1;
/// Exit status when an audit finds order-preservation violations.
pub const EXIT_VIOLATIONS: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "alopc", version, about = "Pairwise comparison matrices over alo-groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive a priority vector.
    Rank(AnalysisArgs),
    /// Report the global error, inconsistency indices and order preservation.
    Audit(AnalysisArgs),
    /// Issue order-preservation certificates and cross-check them.
    Certify(AnalysisArgs),
    /// Convert a matrix file between JSON and CSV.
    Convert(ConvertArgs),
    /// Monte-Carlo run over random matrices; writes CSV.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Json,
    Csv,
}

impl From<MatrixFormat> for Format {
    fn from(f: MatrixFormat) -> Format {
        match f {
            MatrixFormat::Json => Format::Json,
            MatrixFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Args)]
pub struct AnalysisArgs {
    /// Matrix file, JSON or CSV.
    pub input: PathBuf,
    /// Group id; must agree with the file when both are given.
    #[arg(long)]
    pub group: Option<GroupKind>,
    /// ggmm works for every group; gmm and evm are multiplicative only.
    #[arg(long, default_value = "ggmm", value_parser = parse_method)]
    pub method: Method,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub group: Option<GroupKind>,
    /// Target format; defaults to the output extension, else the other format.
    #[arg(long, value_enum)]
    pub to: Option<MatrixFormat>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub group: GroupKind,
    #[arg(long, default_value = "ggmm", value_parser = parse_method)]
    pub method: Method,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Number of alternatives.
    #[arg(long, default_value_t = 5)]
    pub size: usize,
    /// Largest norm of a perturbation factor, as a group element.
    #[arg(long)]
    pub bound: f64,
    /// Half-width of the additive range the true weights are drawn from.
    #[arg(long, default_value_t = DEFAULT_SPREAD)]
    pub spread: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_method(text: &str) -> std::result::Result<Method, String> {
    match text.parse::<Method>() {
        Ok(Method::External) | Err(_) => Err(format!("`{text}` is not one of ggmm, gmm, evm")),
        Ok(m) => Ok(m),
    }
}

/// What a run produced: the text to emit, where to put it, and the exit
/// status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub destination: Option<PathBuf>,
    pub exit_code: i32,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

fn emit<T: Serialize>(format: OutputFormat, value: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        OutputFormat::Json => json(value),
        OutputFormat::Text => text(value),
    }
}

fn rank_view(c: &PcMatrix, method: Method) -> Result<(RankView, crate::priority::PriorityVector)> {
    let (w, lambda_max) = derive(c, method)?;
    Ok((RankView::new(c.labels(), &w, lambda_max), w))
}

fn run_rank(args: &AnalysisArgs) -> Result<Outcome> {
    let c = read_matrix(&args.input, args.group)?;
    let (view, _) = rank_view(&c, args.method)?;
    Ok(Outcome {
        text: emit(args.format, &view, RankView::text),
        destination: args.output.clone(),
        exit_code: EXIT_OK,
    })
}

fn run_audit(args: &AnalysisArgs) -> Result<Outcome> {
    let c = read_matrix(&args.input, args.group)?;
    let (rank, w) = rank_view(&c, args.method)?;
    let inconsistency = match report(&c) {
        Ok(r) => Some((&r).into()),
        Err(Error::NoTriads(_)) => None,
        Err(e) => return Err(e),
    };
    let cop = audit(&c, &w)?;
    let view = AuditView {
        rank,
        error: (&global_error(&c, &w)?).into(),
        inconsistency,
        cop: (&cop).into(),
    };
    Ok(Outcome {
        text: emit(args.format, &view, AuditView::text),
        destination: args.output.clone(),
        exit_code: if cop.satisfied { EXIT_OK } else { EXIT_VIOLATIONS },
    })
}

fn views(certificates: &[&crate::cop::Certificate]) -> Vec<CertificateView> {
    certificates.iter().map(|c| (*c).into()).collect()
}

fn run_certify(args: &AnalysisArgs) -> Result<Outcome> {
    let c = read_matrix(&args.input, args.group)?;
    let (rank, w) = rank_view(&c, args.method)?;
    let by_error = certify_by_error(&c, &w)?;
    let error_bound = ErrorBoundView {
        threshold: by_error.threshold,
        certificates: by_error.certificates.iter().map(Into::into).collect(),
        unsound: views(&unsound(&c, &w, &by_error.certificates)?),
    };
    let inconsistency_bound = if c.group() == GroupKind::Multiplicative && c.n() >= 3 {
        let by_ki = certify_by_inconsistency(&c)?;
        let certs = &by_ki.certification.certificates;
        Some(InconsistencyBoundView {
            ki: by_ki.ki,
            threshold: by_ki.certification.threshold,
            certificates: certs.iter().map(Into::into).collect(),
            audit: (&audit(&c, &by_ki.weights)?).into(),
            unsound: views(&unsound(&c, &by_ki.weights, certs)?),
        })
    } else {
        None
    };
    let gi = match gi(&c) {
        Ok(r) => Some(r.gi),
        Err(Error::NoTriads(_)) => None,
        Err(e) => return Err(e),
    };
    let view = CertifyView {
        rank,
        gi,
        consistent: certify_consistent(&c, &w)?.as_ref().map(Into::into),
        error_bound,
        inconsistency_bound,
        audit: CopView::from(&audit(&c, &w)?),
    };
    Ok(Outcome {
        text: emit(args.format, &view, CertifyView::text),
        destination: args.output.clone(),
        exit_code: if view.clean() { EXIT_OK } else { EXIT_VIOLATIONS },
    })
}

fn target_format(args: &ConvertArgs, source: Format) -> Format {
    match (args.to, &args.output) {
        (Some(to), _) => to.into(),
        (None, Some(path)) if path.extension().is_some() => Format::from_path(path),
        _ => match source {
            Format::Json => Format::Csv,
            Format::Csv => Format::Json,
        },
    }
}

fn run_convert(args: &ConvertArgs) -> Result<Outcome> {
    let text = read_text(&args.input)?;
    let c = crate::io::parse(&text, args.group)?;
    let format = target_format(args, Format::sniff(&text));
    Ok(Outcome {
        text: render(&c, format),
        destination: args.output.clone(),
        exit_code: EXIT_OK,
    })
}

fn run_simulate(args: &SimulateArgs) -> Result<Outcome> {
    let config = SimulationConfig {
        group: args.group,
        method: args.method,
        seed: args.seed,
        trials: args.trials,
        size: args.size,
        bound: args.bound,
        spread: args.spread,
    };
    Ok(Outcome {
        text: to_csv(&simulate(&config)?),
        destination: args.output.clone(),
        exit_code: EXIT_OK,
    })
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Rank(a) => run_rank(a),
        Command::Audit(a) => run_audit(a),
        Command::Certify(a) => run_certify(a),
        Command::Convert(a) => run_convert(a),
        Command::Simulate(a) => run_simulate(a),
    }
}

/// Writes the outcome to its destination, or stdout.
pub fn deliver(outcome: &Outcome) -> Result<()> {
    match &outcome.destination {
        Some(path) => std::fs::write(path, &outcome.text)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(outcome.text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Parses `args`, runs the command and returns the process exit status.
/// Usage errors exit with the input-error status rather than clap's default.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli).and_then(|outcome| deliver(&outcome).map(|_| outcome.exit_code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}
