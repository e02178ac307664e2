//! Gold labels, metrics and report files.
//!
//! Precision counts only answered instances; recall counts every instance,
//! so abstaining lowers recall but not precision. Metrics are computed in
//! any [`Scalar`] type, and printed figures are rounded half-up from exact
//! fractions of the integer counts.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::querygen::Relation;
use crate::resolver::{Decision, Resolution, Task};
use crate::scalar::{from_count, Scalar};
use crate::schema::{serde_field, Answer};
use crate::Exact;

/// Precision, recall and their harmonic mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSet<T> {
    pub precision: T,
    pub recall: T,
    pub f1: T,
}

impl<T: Scalar> MetricSet<T> {
    /// `P = correct/answered` (0 when nothing was answered), `R =
    /// correct/total`, `F1 = 2PR/(P+R)` (0 when both are 0).
    pub fn from_counts(correct: usize, answered: usize, total: usize) -> Self {
        let ratio = |n: usize, d: usize| {
            if d == 0 {
                T::zero()
            } else {
                from_count::<T>(n) / from_count::<T>(d)
            }
        };
        let precision = ratio(correct, answered);
        let recall = ratio(correct, total);
        let sum = precision + recall;
        let f1 = if sum == T::zero() {
            T::zero()
        } else {
            (T::one() + T::one()) * precision * recall / sum
        };
        MetricSet {
            precision,
            recall,
            f1,
        }
    }
}

/// Decimal string of a non-negative fraction, rounded half-up.
pub fn round_half_up(value: Exact, decimals: u32) -> String {
    let scale = 10i64.pow(decimals);
    let scaled = value * Exact::from_integer(scale) + Exact::new(1, 2);
    let n = scaled.floor().to_integer();
    if decimals == 0 {
        return n.to_string();
    }
    let (int, frac) = (n.div_euclid(scale), n.rem_euclid(scale));
    format!("{int}.{frac:0width$}", width = decimals as usize)
}

/// COPA answer: index of the more plausible alternative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum CopaAnswer {
    Alt1,
    Alt2,
}

impl TryFrom<u8> for CopaAnswer {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, Self::Error> {
        match v {
            1 => Ok(CopaAnswer::Alt1),
            2 => Ok(CopaAnswer::Alt2),
            other => Err(format!("answer must be 1 or 2, got {other}")),
        }
    }
}

impl From<CopaAnswer> for u8 {
    fn from(a: CopaAnswer) -> u8 {
        match a {
            CopaAnswer::Alt1 => 1,
            CopaAnswer::Alt2 => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopaInstance {
    pub id: String,
    pub premise: String,
    pub alt1: String,
    pub alt2: String,
    #[serde(alias = "asks-for")]
    pub relation: Relation,
    #[serde(default)]
    pub answer: Option<CopaAnswer>,
}

pub fn load_copa(path: &Path) -> Result<Vec<CopaInstance>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_copa(&text, &path.display().to_string())
}

pub fn parse_copa(input: &str, source_name: &str) -> Result<Vec<CopaInstance>> {
    input
        .lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(index, line)| {
            let inst: CopaInstance = serde_json::from_str(line)
                .map_err(|e| Error::record(source_name, index, serde_field(&e), e.to_string()))?;
            for (field, value) in [("premise", &inst.premise), ("alt1", &inst.alt1), ("alt2", &inst.alt2)] {
                if value.trim().is_empty() {
                    return Err(Error::record(source_name, index, field, "empty sentence"));
                }
            }
            Ok(inst)
        })
        .collect()
}

/// Gold label of one instance, in decision terms.
pub type Gold = Decision;

impl From<Answer> for Decision {
    fn from(a: Answer) -> Self {
        match a {
            Answer::Agent => Decision::Agent,
            Answer::Patient => Decision::Patient,
        }
    }
}

impl From<CopaAnswer> for Decision {
    fn from(a: CopaAnswer) -> Self {
        match a {
            CopaAnswer::Alt1 => Decision::Alt1,
            CopaAnswer::Alt2 => Decision::Alt2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceOutcome {
    pub id: String,
    pub decision: Decision,
    pub gold: Gold,
    pub correct: bool,
    pub first_strength: u64,
    pub second_strength: u64,
    pub evidence_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport<T> {
    pub task: Task,
    pub total: usize,
    pub answered: usize,
    pub correct: usize,
    pub metrics: MetricSet<T>,
    /// `correct/total`: abstentions count as wrong.
    pub accuracy: T,
    pub per_instance: Vec<InstanceOutcome>,
}

impl<T: Scalar> EvalReport<T> {
    fn from_outcomes(task: Task, per_instance: Vec<InstanceOutcome>) -> Self {
        let total = per_instance.len();
        let answered = per_instance.iter().filter(|o| o.decision != Decision::Abstain).count();
        let correct = per_instance.iter().filter(|o| o.correct).count();
        let accuracy = if total == 0 {
            T::zero()
        } else {
            from_count::<T>(correct) / from_count::<T>(total)
        };
        EvalReport {
            task,
            total,
            answered,
            correct,
            metrics: MetricSet::from_counts(correct, answered, total),
            accuracy,
            per_instance,
        }
    }

    /// Exact metrics from the counts.
    pub fn exact(&self) -> MetricSet<Exact> {
        MetricSet::from_counts(self.correct, self.answered, self.total)
    }

    pub fn exact_accuracy(&self) -> Exact {
        if self.total == 0 {
            Exact::from_integer(0)
        } else {
            Exact::new(self.correct as i64, self.total as i64)
        }
    }

    /// Human summary, rounded half-up: two decimals for WSC ratios, one
    /// for COPA percentages.
    pub fn summary_line(&self) -> String {
        let m = self.exact();
        match self.task {
            Task::Wsc => format!(
                "P={} R={} F1={} correct={} answered={} total={}",
                round_half_up(m.precision, 2),
                round_half_up(m.recall, 2),
                round_half_up(m.f1, 2),
                self.correct,
                self.answered,
                self.total
            ),
            Task::Copa => {
                let pct = |r: Exact| round_half_up(r * Exact::from_integer(100), 1);
                format!(
                    "accuracy={}% answered_accuracy={}% correct={} answered={} total={}",
                    pct(self.exact_accuracy()),
                    pct(m.precision),
                    self.correct,
                    self.answered,
                    self.total
                )
            }
        }
    }

    /// Recounts the summary fields from `per_instance`.
    pub fn is_consistent(&self) -> bool {
        let again = Self::from_outcomes(self.task, self.per_instance.clone());
        again.total == self.total
            && again.answered == self.answered
            && again.correct == self.correct
            && again.metrics == self.metrics
    }
}

fn evaluate<T: Scalar>(task: Task, resolutions: &[Resolution], gold: &HashMap<String, Gold>) -> Result<EvalReport<T>> {
    let mut outcomes = Vec::with_capacity(resolutions.len());
    for r in resolutions {
        let g = *gold
            .get(&r.instance_id)
            .ok_or_else(|| Error::MissingGold(r.instance_id.clone()))?;
        outcomes.push(InstanceOutcome {
            id: r.instance_id.clone(),
            decision: r.decision,
            gold: g,
            correct: r.decision == g,
            first_strength: r.first_strength,
            second_strength: r.second_strength,
            evidence_count: r.evidence_count,
        });
    }
    Ok(EvalReport::from_outcomes(task, outcomes))
}

pub fn evaluate_wsc<T: Scalar>(resolutions: &[Resolution], gold: &HashMap<String, Answer>) -> Result<EvalReport<T>> {
    let gold: HashMap<String, Gold> = gold.iter().map(|(k, v)| (k.clone(), (*v).into())).collect();
    evaluate(Task::Wsc, resolutions, &gold)
}

pub fn evaluate_copa<T: Scalar>(
    resolutions: &[Resolution],
    gold: &HashMap<String, CopaAnswer>,
) -> Result<EvalReport<T>> {
    let gold: HashMap<String, Gold> = gold.iter().map(|(k, v)| (k.clone(), (*v).into())).collect();
    evaluate(Task::Copa, resolutions, &gold)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    JsonLines,
    Tsv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "json-lines" | "jsonl" => Ok(ReportFormat::JsonLines),
            "tsv" => Ok(ReportFormat::Tsv),
            other => Err(format!("unknown report format `{other}` (expected json-lines or tsv)")),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::JsonLines => "json-lines",
            ReportFormat::Tsv => "tsv",
        })
    }
}

pub const TSV_HEADER: &str = "id\tdecision\tgold\tcorrect\tagent_strength\tpatient_strength";

#[derive(Serialize)]
struct Summary<'a> {
    task: Task,
    total: usize,
    answered: usize,
    correct: usize,
    precision: f64,
    recall: f64,
    f1: f64,
    accuracy: f64,
    summary: &'a str,
}

/// Writes the report. JSON lines start with one summary object followed
/// by one object per instance; TSV has a fixed header and one row per
/// instance.
pub fn emit_report<W: Write>(report: &EvalReport<f64>, format: ReportFormat, out: &mut W) -> io::Result<()> {
    match format {
        ReportFormat::JsonLines => {
            let line = report.summary_line();
            let summary = Summary {
                task: report.task,
                total: report.total,
                answered: report.answered,
                correct: report.correct,
                precision: report.metrics.precision,
                recall: report.metrics.recall,
                f1: report.metrics.f1,
                accuracy: report.accuracy,
                summary: &line,
            };
            serde_json::to_writer(&mut *out, &summary)?;
            writeln!(out)?;
            for o in &report.per_instance {
                serde_json::to_writer(&mut *out, o)?;
                writeln!(out)?;
            }
        }
        ReportFormat::Tsv => {
            writeln!(out, "{TSV_HEADER}")?;
            for o in &report.per_instance {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    o.id, o.decision, o.gold, o.correct, o.first_strength, o.second_strength
                )?;
            }
        }
    }
    Ok(())
}

pub fn write_report(report: &EvalReport<f64>, format: ReportFormat, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    emit_report(report, format, &mut buf).map_err(|e| Error::io(path, e))?;
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}
