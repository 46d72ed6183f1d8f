use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{Structure, ValidationReport};
use crate::matrix::ScoreVector;
use crate::report::{Convergence, Diagnostics, Note, RankEntry, RankReport};
use crate::spectral::SpectralStatus;
use crate::tournament::Perturbation;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?}; expected json, table or csv")),
        }
    }
}

/// JSON form of a [`RankReport`]. Field order is the emitted key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub method: String,
    pub eigenvalue: Option<f64>,
    pub converged: bool,
    pub status: Option<SpectralStatus>,
    pub iterations: usize,
    pub epsilon_used: Option<f64>,
    pub perturbation: Option<Perturbation>,
    /// Ranking order.
    pub scores: Vec<ScoreEntry>,
    pub diagnostics: DiagnosticsDocument,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreEntry {
    pub id: String,
    pub index: usize,
    pub score: f64,
    pub share: Option<f64>,
    pub rank: usize,
    pub tie_group: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsDocument {
    pub irreducible: bool,
    pub scc_count: usize,
    pub dangling: Vec<String>,
    pub validation: Option<ValidationReport>,
    pub residual: Option<f64>,
    pub notes: Vec<Note>,
}

impl From<&RankReport> for ReportDocument {
    fn from(r: &RankReport) -> Self {
        let scores = r
            .ranking
            .iter()
            .map(|e| ScoreEntry {
                id: r.labels[e.index].clone(),
                index: e.index,
                score: r.scores[e.index],
                share: r.share(e.index),
                rank: e.rank,
                tie_group: e.tie_group,
            })
            .collect();
        let d = &r.diagnostics;
        ReportDocument {
            method: r.method.to_string(),
            eigenvalue: r.eigenvalue,
            converged: r.convergence.converged(),
            status: r.convergence.status,
            iterations: r.convergence.iterations,
            epsilon_used: r.convergence.epsilon_used,
            perturbation: r.convergence.perturbation,
            scores,
            diagnostics: DiagnosticsDocument {
                irreducible: d.irreducible,
                scc_count: d.scc_count,
                dangling: d.dangling.iter().map(|&j| r.labels[j].clone()).collect(),
                validation: d.validation.clone(),
                residual: d.residual,
                notes: d.notes.clone(),
            },
        }
    }
}

fn invalid(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        message: message.into(),
    }
}

impl TryFrom<ReportDocument> for RankReport {
    type Error = Error;

    fn try_from(doc: ReportDocument) -> Result<Self> {
        let n = doc.scores.len();
        let mut labels = vec![None; n];
        let mut scores = vec![0.0; n];
        let mut shares = vec![None; n];
        for e in &doc.scores {
            if e.index >= n || labels[e.index].is_some() {
                return Err(invalid(format!("score index {} is out of range or repeated", e.index)));
            }
            labels[e.index] = Some(e.id.clone());
            scores[e.index] = e.score;
            shares[e.index] = e.share;
        }
        let labels: Vec<String> = labels.into_iter().map(|l| l.expect("every index filled")).collect();
        let shares = if shares.iter().all(Option::is_some) && n > 0 {
            Some(ScoreVector::new(
                shares.into_iter().map(|s| s.expect("checked")).collect(),
            )?)
        } else {
            None
        };
        let dangling = doc
            .diagnostics
            .dangling
            .iter()
            .map(|id| {
                labels
                    .iter()
                    .position(|l| l == id)
                    .ok_or_else(|| invalid(format!("dangling id {id:?} is not a participant")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RankReport {
            method: doc.method.parse().map_err(invalid)?,
            ranking: doc
                .scores
                .iter()
                .map(|e| RankEntry {
                    index: e.index,
                    rank: e.rank,
                    tie_group: e.tie_group,
                })
                .collect(),
            labels,
            scores: ScoreVector::new(scores)?,
            shares,
            eigenvalue: doc.eigenvalue,
            diagnostics: Diagnostics {
                irreducible: doc.diagnostics.irreducible,
                scc_count: doc.diagnostics.scc_count,
                dangling,
                validation: doc.diagnostics.validation,
                residual: doc.diagnostics.residual,
                notes: doc.diagnostics.notes,
            },
            convergence: Convergence {
                iterations: doc.iterations,
                status: doc.status,
                epsilon_used: doc.epsilon_used,
                perturbation: doc.perturbation,
            },
        })
    }
}

pub fn parse_report_json(text: &str) -> Result<RankReport> {
    let doc: ReportDocument = serde_json::from_str(text)?;
    doc.try_into()
}

/// `%g`-style formatting with `digits` significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let m = strip_zeros(mantissa);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn status_name(status: Option<SpectralStatus>) -> &'static str {
    match status {
        None => "exact",
        Some(SpectralStatus::Converged) => "converged",
        Some(SpectralStatus::MaxIterations) => "max_iterations",
        Some(SpectralStatus::ZeroIterate) => "zero_iterate",
        Some(SpectralStatus::Oscillating) => "oscillating",
    }
}

fn table(r: &RankReport) -> String {
    let sig = |x: f64| format_significant(x, 6);
    let mut out = String::new();
    let _ = write!(out, "method: {}", r.method);
    if let Some(l) = r.eigenvalue {
        let _ = write!(out, "  eigenvalue: {}", sig(l));
    }
    let _ = write!(
        out,
        "  status: {}  iterations: {}",
        status_name(r.convergence.status),
        r.convergence.iterations
    );
    if let Some(e) = r.convergence.epsilon_used {
        let _ = write!(out, "  epsilon: {}", sig(e));
    }
    out.push('\n');

    let width = r
        .labels
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max("participant".len());
    let _ = writeln!(
        out,
        "{:<6}{:<width$}  {:>12}  {:>12}",
        "rank", "participant", "score", "share"
    );
    for e in &r.ranking {
        let share = r.share(e.index).map(sig).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<6}{:<width$}  {:>12}  {:>12}",
            e.rank,
            r.labels[e.index],
            sig(r.scores[e.index]),
            share
        );
    }

    let d = &r.diagnostics;
    let dangling: Vec<&str> = d.dangling.iter().map(|&j| r.labels[j].as_str()).collect();
    let _ = writeln!(
        out,
        "irreducible: {}  components: {}  dangling: {}",
        d.irreducible,
        d.scc_count,
        if dangling.is_empty() {
            "none".into()
        } else {
            dangling.join(", ")
        }
    );
    if let Some(v) = &d.validation {
        let _ = writeln!(
            out,
            "round robin: {}",
            if v.valid {
                "valid".to_string()
            } else {
                format!("{} violation(s)", v.violations.len())
            }
        );
    }
    if let Some(res) = d.residual {
        let _ = writeln!(out, "residual: {}", sig(res));
    }
    for note in &d.notes {
        let _ = writeln!(
            out,
            "note: {}",
            serde_json::to_value(note)
                .expect("note serializes")
                .as_str()
                .unwrap_or("")
        );
    }
    out
}

fn csv_rows(r: &RankReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["rank", "participant", "score", "share"])?;
    for e in &r.ranking {
        let share = r.share(e.index).map(|s| format_significant(s, 6)).unwrap_or_default();
        w.write_record([
            e.rank.to_string(),
            r.labels[e.index].clone(),
            format_significant(r.scores[e.index], 6),
            share,
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn emit_report(r: &RankReport, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&ReportDocument::from(r))?;
            s.push('\n');
            Ok(s)
        }
        Format::Table => Ok(table(r)),
        Format::Csv => csv_rows(r),
    }
}

/// Output of the structural analysis, keyed by participant ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureDocument {
    pub n: usize,
    pub irreducible: bool,
    pub scc_count: usize,
    pub components: Vec<Vec<String>>,
    pub dangling: Vec<String>,
    pub validation: Option<ValidationReport>,
}

impl StructureDocument {
    pub fn new(s: &Structure, labels: &[String], validation: Option<ValidationReport>) -> Self {
        let ids = |v: &[usize]| v.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>();
        Self {
            n: labels.len(),
            irreducible: s.irreducible,
            scc_count: s.scc_count(),
            components: s.components.iter().map(|c| ids(c)).collect(),
            dangling: ids(&s.dangling),
            validation,
        }
    }
}

pub fn emit_structure(doc: &StructureDocument, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc)?;
            s.push('\n');
            Ok(s)
        }
        Format::Table => {
            let mut out = String::new();
            let _ = writeln!(out, "participants: {}", doc.n);
            let _ = writeln!(out, "irreducible: {}", doc.irreducible);
            let _ = writeln!(out, "components: {}", doc.scc_count);
            for (k, c) in doc.components.iter().enumerate() {
                let _ = writeln!(out, "  {}: {}", k + 1, c.join(", "));
            }
            let dangling = if doc.dangling.is_empty() {
                "none".to_string()
            } else {
                doc.dangling.join(", ")
            };
            let _ = writeln!(out, "dangling: {dangling}");
            if let Some(v) = &doc.validation {
                let _ = writeln!(out, "round robin: {}", if v.valid { "valid" } else { "invalid" });
                for violation in &v.violations {
                    let _ = writeln!(out, "  {}", serde_json::to_string(violation)?);
                }
            }
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["participant", "component", "dangling"])?;
            for (k, c) in doc.components.iter().enumerate() {
                for id in c {
                    w.write_record([id.clone(), (k + 1).to_string(), doc.dangling.contains(id).to_string()])?;
                }
            }
            let bytes = w.into_inner().map_err(|e| invalid(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
        }
    }
}
