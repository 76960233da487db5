//! The four subcommands and the helpers they share.

pub mod gadget;
pub mod map;
pub mod query;
pub mod translate;

use std::io::{self, Write};
use std::time::{Duration, Instant};

use serde::Serialize;
use xquery_core::oracle::{Oracle, DEFAULT_CAP};
use xquery_core::{ImaMode, ImoMode, Instance, Literal, Query, QueryAnswer, Term, Var};

use crate::CliError;

pub const CAP_ENV: &str = "XQUERY_ORACLE_CAP";

/// The oracle cap: explicit value, else the environment, else the default.
pub fn oracle_cap(explicit: Option<usize>) -> Result<usize, CliError> {
    if let Some(cap) = explicit {
        return Ok(cap);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{CAP_ENV}={v:?} is not a feature count"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

pub fn oracle(cap: usize, force: bool, timeout_ms: Option<u64>) -> Oracle {
    Oracle::new()
        .with_cap(cap)
        .forced(force)
        .with_deadline(timeout_ms.map(|ms| Instant::now() + Duration::from_millis(ms)))
}

pub fn parse_instance(s: &str, n: usize) -> Result<Instance, CliError> {
    let x: Instance = s
        .parse()
        .map_err(|e: xquery_core::Error| CliError::Usage(e.to_string()))?;
    if x.n() != n {
        return Err(CliError::Usage(format!(
            "instance {s} has {} bits, the model has {n} features",
            x.n()
        )));
    }
    Ok(x)
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<i64>, CliError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Usage(format!("{what}: `{t}` is not an integer")))
        })
        .collect()
}

/// Signed literals separated by commas or spaces.
pub fn parse_term(s: &str) -> Result<Term, CliError> {
    let lits = parse_ints(s, "--term")?
        .into_iter()
        .map(|l| {
            Literal::from_dimacs(l)
                .ok_or_else(|| CliError::Usage("--term: 0 is not a literal".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Term::new(lits)?)
}

pub fn parse_order(s: &str) -> Result<Vec<Var>, CliError> {
    parse_ints(s, "--order")?
        .into_iter()
        .map(|i| {
            usize::try_from(i)
                .ok()
                .and_then(Var::try_new)
                .ok_or_else(|| CliError::Usage(format!("--order: {i} is not a feature")))
        })
        .collect()
}

pub fn parse_ima_mode(s: Option<&str>) -> Result<ImaMode, CliError> {
    match s {
        None | Some("mandatory") => Ok(ImaMode::Mandatory),
        Some("forbidden") => Ok(ImaMode::Forbidden),
        Some(m) => Err(CliError::Usage(format!(
            "IMA mode must be mandatory or forbidden, not {m}"
        ))),
    }
}

pub fn parse_imo_mode(s: Option<&str>) -> Result<ImoMode, CliError> {
    match s {
        None | Some("monotone") => Ok(ImoMode::Monotone),
        Some("antimonotone") => Ok(ImoMode::Antimonotone),
        Some(m) => Err(CliError::Usage(format!(
            "IMO mode must be monotone or antimonotone, not {m}"
        ))),
    }
}

/// Writes one compact JSON object and a newline.
pub fn line<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, value).map_err(io::Error::from)?;
    out.write_all(b"\n")
}

#[derive(Serialize)]
struct EmcLine {
    instance: String,
    ones: usize,
}

#[derive(Serialize)]
struct EcoLine {
    instance: String,
    distance: usize,
}

#[derive(Serialize)]
struct InstanceLine {
    instance: String,
}

#[derive(Serialize)]
struct NoCounterfactual {
    counterfactual: Option<()>,
}

#[derive(Serialize)]
struct TermLine {
    term: Vec<i64>,
}

#[derive(Serialize)]
struct CountLine {
    count: String,
}

#[derive(Serialize)]
struct BitLine {
    answer: u8,
}

#[derive(Serialize)]
struct DistanceLine {
    distance: usize,
}

/// One output line for one enumerated instance.
pub fn write_instance(out: &mut dyn Write, query: &Query, y: &Instance) -> io::Result<()> {
    match query {
        Query::Emc { .. } => line(
            out,
            &EmcLine {
                instance: y.to_string(),
                ones: y.count_ones(),
            },
        ),
        Query::Eco { instance, .. } => line(
            out,
            &EcoLine {
                instance: y.to_string(),
                distance: y.hamming(instance),
            },
        ),
        _ => line(
            out,
            &InstanceLine {
                instance: y.to_string(),
            },
        ),
    }
}

pub fn write_absent(out: &mut dyn Write) -> io::Result<()> {
    line(
        out,
        &NoCounterfactual {
            counterfactual: None,
        },
    )
}

pub fn write_answer(out: &mut dyn Write, query: &Query, answer: &QueryAnswer) -> io::Result<()> {
    match answer {
        QueryAnswer::Instances(v) => {
            for y in v {
                write_instance(out, query, y)?;
            }
            Ok(())
        }
        QueryAnswer::Absent => write_absent(out),
        QueryAnswer::Assignment(a) => line(
            out,
            &TermLine {
                term: a
                    .to_term()
                    .literals()
                    .iter()
                    .map(|l| l.to_dimacs())
                    .collect(),
            },
        ),
        QueryAnswer::Count(c) => line(
            out,
            &CountLine {
                count: c.to_string(),
            },
        ),
        QueryAnswer::Bit(b) => line(out, &BitLine { answer: *b as u8 }),
        QueryAnswer::Distance(d) => line(out, &DistanceLine { distance: *d }),
    }
}
