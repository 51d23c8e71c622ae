//! Text formats: instance files, schedule CSV and evaluation reports.
//!
//! Instance file (`.mls`):
//!
//! ```text
//! mls 1
//! <m> <k>
//! <ptimes of list 1, space separated>
//! ...
//! <ptimes of list k>
//! ```
//!
//! Every line ends in `\n`, tokens are ASCII decimal integers separated by
//! a single space, no trailing whitespace.

use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serializer};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::harness::EvaluationReport;
use crate::model::{ArrivalOrder, Assignment, Instance, Job, Schedule, Time};
use crate::oracle::Ratio;

pub const MAGIC: &str = "mls 1";
pub const SCHEDULE_HEADER: &str = "step,list,job,ptime,machine,start,finish";

/// Instance parse failures. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line 1: expected `{MAGIC}`")]
    BadMagic,
    #[error("line 2: expected `<m> <k>` with m, k >= 1")]
    BadHeader,
    #[error("line {line}, column {col}: not a decimal integer")]
    NonIntegerToken { line: usize, col: usize },
    #[error("header declares {expected} lists, found {found}")]
    ListCountMismatch { expected: usize, found: usize },
    #[error("line {line}, column {col}: processing time must be positive")]
    NonPositivePtime { line: usize, col: usize },
    #[error("line {line}: empty job list")]
    EmptyList { line: usize },
}

/// Splits on single spaces, yielding `(1-based column, token)`.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut col = 1;
    line.split(' ').map(move |tok| {
        let at = col;
        col += tok.len() + 1;
        (at, tok)
    })
}

fn parse_uint(tok: &str) -> Option<u64> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    tok.parse().ok()
}

pub fn parse_instance(document: &str) -> Result<Instance, ParseError> {
    let body = document.strip_suffix('\n').unwrap_or(document);
    let lines: Vec<&str> = body.split('\n').collect();

    if lines.first() != Some(&MAGIC) {
        return Err(ParseError::BadMagic);
    }
    let header: Vec<usize> = lines
        .get(1)
        .ok_or(ParseError::BadHeader)?
        .split(' ')
        .map(|t| parse_uint(t).map(|v| v as usize))
        .collect::<Option<_>>()
        .ok_or(ParseError::BadHeader)?;
    let [m, k] = header[..] else {
        return Err(ParseError::BadHeader);
    };
    if m == 0 || k == 0 {
        return Err(ParseError::BadHeader);
    }

    let list_lines = &lines[2..];
    if list_lines.len() != k {
        return Err(ParseError::ListCountMismatch {
            expected: k,
            found: list_lines.len(),
        });
    }

    let mut lists = Vec::with_capacity(k);
    for (offset, text) in list_lines.iter().enumerate() {
        let line = offset + 3;
        if text.is_empty() {
            return Err(ParseError::EmptyList { line });
        }
        let mut list = Vec::new();
        for (col, tok) in tokens(text) {
            let value = parse_uint(tok).ok_or(ParseError::NonIntegerToken { line, col })?;
            if value == 0 {
                return Err(ParseError::NonPositivePtime { line, col });
            }
            list.push(value);
        }
        lists.push(list);
    }
    Ok(Instance::new(m, lists).expect("parser enforces instance invariants"))
}

pub fn serialize_instance(instance: &Instance) -> String {
    let mut out = format!("{MAGIC}\n{} {}\n", instance.m(), instance.k());
    for list in instance.lists() {
        let row: Vec<String> = list.iter().map(u64::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// SHA-256 of the serialized instance, lowercase hex.
pub fn instance_digest(instance: &Instance) -> String {
    hex::encode(Sha256::digest(serialize_instance(instance).as_bytes()))
}

/// One row per assignment in decision order; `step` is the arrival step
/// (position in list) of the job.
pub fn serialize_schedule(schedule: &Schedule) -> String {
    let mut out = String::with_capacity(32 * (schedule.assignments.len() + 1));
    out.push_str(SCHEDULE_HEADER);
    out.push('\n');
    for a in &schedule.assignments {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            a.job.index_in_list, a.job.list_id, a.job.index_in_list, a.job.ptime, a.machine, a.start, a.finish
        )
        .expect("writing to a String");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("schedule line {line}: {message}")]
pub struct ScheduleParseError {
    pub line: usize,
    pub message: String,
}

/// Reads a schedule CSV for `m` machines. Loads are recomputed from the
/// rows' processing times; start and finish columns are kept verbatim so
/// that [`crate::metrics::verify_schedule`] can check them.
pub fn parse_schedule(
    document: &str,
    m: usize,
    order: ArrivalOrder,
) -> Result<Schedule, ScheduleParseError> {
    let err = |line: usize, message: String| ScheduleParseError { line, message };
    let body = document.strip_suffix('\n').unwrap_or(document);
    let mut lines = body.split('\n');
    if lines.next() != Some(SCHEDULE_HEADER) {
        return Err(err(1, format!("expected header `{SCHEDULE_HEADER}`")));
    }

    let mut loads: Vec<Time> = vec![0; m];
    let mut assignments = Vec::new();
    for (offset, text) in lines.enumerate() {
        let line = offset + 2;
        let fields: Vec<u64> = text
            .split(',')
            .map(parse_uint)
            .collect::<Option<_>>()
            .ok_or_else(|| err(line, "expected seven unsigned integers".into()))?;
        let [step, list_id, index_in_list, ptime, machine, start, finish] = fields[..] else {
            return Err(err(line, format!("expected 7 fields, found {}", fields.len())));
        };
        if step != index_in_list {
            return Err(err(line, "step must equal the job's position in its list".into()));
        }
        let machine = machine as usize;
        if let Some(l) = loads.get_mut(machine) {
            *l += ptime;
        }
        assignments.push(Assignment {
            job: Job {
                list_id: list_id as usize,
                index_in_list: index_in_list as usize,
                ptime,
            },
            machine,
            start,
            finish,
        });
    }
    let makespan = loads.iter().copied().max().unwrap_or(0);
    Ok(Schedule {
        assignments,
        loads,
        makespan,
        order,
    })
}

/// Exact ratio as `p/q` (always with a denominator, `1/1` for one).
pub fn format_ratio(r: &Ratio) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Option<Ratio> {
    let (p, q) = s.split_once('/')?;
    let (p, q) = (parse_uint(p)?, parse_uint(q)?);
    (q != 0).then(|| Ratio::new(p, q))
}

/// `serde(with = ...)` adapter storing a [`Ratio`] as a `"p/q"` string.
pub mod ratio_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Ratio, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio, D::Error> {
        let text = String::deserialize(d)?;
        parse_ratio(&text).ok_or_else(|| serde::de::Error::custom(format!("bad ratio `{text}`")))
    }
}

/// Same as [`ratio_str`] for optional ratios (`null` when absent).
pub mod opt_ratio_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Ratio>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&format_ratio(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Ratio>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|text| {
                parse_ratio(&text)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad ratio `{text}`")))
            })
            .transpose()
    }
}

/// Pretty-printed JSON with fixed key order, newline terminated.
pub fn serialize_report(report: &EvaluationReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

pub fn parse_report(document: &str) -> Result<EvaluationReport, serde_json::Error> {
    serde_json::from_str(document)
}
