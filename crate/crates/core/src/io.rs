//! Matrix files.
//!
//! JSON: `{"group": "multiplicative", "labels": ["a", "b"], "entries": [[1, "5/2"], ["2/5", 1]]}`
//! where entries may be numbers or strings holding a number or a fraction.
//! `group` and `labels` are optional.
//!
//! CSV: a `group,<id>` line, an optional `labels,<name>,...` line, then one
//! line per matrix row. Fractions are allowed in every cell.

use std::fmt;
use std::path::Path;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};

use crate::alo_group::GroupKind;
use crate::error::{Error, Result};
use crate::pc_matrix::{default_labels, PcMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    /// `.csv` means CSV, anything else JSON.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }

    /// JSON documents start with `{`.
    pub fn sniff(text: &str) -> Format {
        if text.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Csv
        }
    }
}

/// Parses `"5/2"`, `"2.5"` or `"-3"`.
pub fn parse_fraction(text: &str) -> std::result::Result<f64, String> {
    let text = text.trim();
    let number = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{text}` is not a number or fraction"))
    };
    let value = match text.split_once('/') {
        Some((num, den)) => {
            let den = number(den)?;
            if den == 0.0 {
                return Err(format!("`{text}` has a zero denominator"));
            }
            number(num)? / den
        }
        None => number(text)?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{text}` is not finite"))
    }
}

struct Entry(f64);

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct EntryVisitor;

        impl Visitor<'_> for EntryVisitor {
            type Value = Entry;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or a fraction string such as \"5/2\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Entry, E> {
                Ok(Entry(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Entry, E> {
                Ok(Entry(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Entry, E> {
                Ok(Entry(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Entry, E> {
                parse_fraction(v).map(Entry).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(EntryVisitor)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonIn {
    group: Option<String>,
    labels: Option<Vec<String>>,
    entries: Vec<Vec<Entry>>,
}

#[derive(Serialize)]
struct JsonOut<'a> {
    group: GroupKind,
    labels: &'a [String],
    entries: Vec<Vec<f64>>,
}

fn resolve_group(file: Option<GroupKind>, flag: Option<GroupKind>) -> Result<GroupKind> {
    match (file, flag) {
        (Some(file), Some(flag)) if file != flag => Err(Error::GroupConflict { file, flag }),
        (Some(g), _) | (None, Some(g)) => Ok(g),
        (None, None) => Err(Error::MissingGroup),
    }
}

pub fn parse_json(text: &str, group: Option<GroupKind>) -> Result<PcMatrix> {
    let file: JsonIn = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let file_group = file.group.as_deref().map(str::parse).transpose()?;
    let group = resolve_group(file_group, group)?;
    let rows = file
        .entries
        .into_iter()
        .map(|row| row.into_iter().map(|e| e.0).collect())
        .collect();
    PcMatrix::build(group, rows, file.labels)
}

pub fn parse_csv(text: &str, group: Option<GroupKind>) -> Result<PcMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut file_group = None;
    let mut labels = None;
    let mut rows = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            column: 1,
            message: e.to_string(),
        })?;
        let line = record.position().map_or(index + 1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let first = record.get(0).unwrap_or_default();
        if rows.is_empty() && file_group.is_none() && first.eq_ignore_ascii_case("group") {
            let id = record.get(1).ok_or_else(|| Error::Parse {
                line,
                column: 2,
                message: "missing group id".into(),
            })?;
            file_group = Some(id.parse::<GroupKind>().map_err(|e| Error::Parse {
                line,
                column: 2,
                message: e.to_string(),
            })?);
            continue;
        }
        if rows.is_empty() && labels.is_none() && first.eq_ignore_ascii_case("labels") {
            labels = Some(record.iter().skip(1).map(str::to_string).collect::<Vec<_>>());
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(col, cell)| {
                parse_fraction(cell).map_err(|message| Error::Parse {
                    line,
                    column: col + 1,
                    message,
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    let group = resolve_group(file_group, group)?;
    PcMatrix::build(group, rows, labels)
}

pub fn parse(text: &str, group: Option<GroupKind>) -> Result<PcMatrix> {
    match Format::sniff(text) {
        Format::Json => parse_json(text, group),
        Format::Csv => parse_csv(text, group),
    }
}

pub fn read_matrix(path: &Path, group: Option<GroupKind>) -> Result<PcMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text, group)
}

/// Entries are written as plain numbers with shortest round-trip precision.
pub fn to_json(c: &PcMatrix) -> String {
    let out = JsonOut {
        group: c.group(),
        labels: c.labels(),
        entries: c.rows(),
    };
    let mut text = serde_json::to_string_pretty(&out).expect("matrix serializes");
    text.push('\n');
    text
}

/// The labels line is only written when labels differ from the defaults.
pub fn to_csv(c: &PcMatrix) -> String {
    let mut writer = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    let write = |w: &mut csv::Writer<Vec<u8>>, record: Vec<String>| {
        w.write_record(&record).expect("writing to memory");
    };
    write(&mut writer, vec!["group".into(), c.group().id().into()]);
    if c.labels() != default_labels(c.n()).as_slice() {
        let mut record = vec!["labels".to_string()];
        record.extend(c.labels().iter().cloned());
        write(&mut writer, record);
    }
    for row in c.rows() {
        write(&mut writer, row.iter().map(f64::to_string).collect());
    }
    String::from_utf8(writer.into_inner().expect("flush to memory")).expect("utf-8 csv")
}

pub fn render(c: &PcMatrix, format: Format) -> String {
    match format {
        Format::Json => to_json(c),
        Format::Csv => to_csv(c),
    }
}
