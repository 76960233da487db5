use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use xquery_core::{
    dt, Classifier, ImaMode, ImoMode, Instance, Literal, Query, QueryAnswer, Term, Var,
};

use super::{oracle, oracle_cap};
use crate::args::MapArgs;
use crate::format::{family_of_path, read_model, FormatError};
use crate::CliError;

/// Enumeration queries stop after this many answers.
pub const ENUMERATION_LIMIT: usize = 1000;

/// A model file that could not be read, by file name.
pub type ParseFailure = (String, FormatError);

/// One (file, query) cell of the complexity map.
#[derive(Clone, Debug, Serialize)]
pub struct MapRow {
    pub file: String,
    pub family: String,
    pub query: String,
    pub answer: String,
    pub engine: String,
    pub elapsed_ms: f64,
    pub status: String,
}

/// The nine queries asked of every model. The instance defaults to the
/// smallest positive instance, or all zeros when there is none; the
/// feature is x1 and the term is the literal x1.
pub fn default_queries(x: &Instance) -> Vec<Query> {
    let x1 = Var::new(1);
    let limit = Some(ENUMERATION_LIMIT);
    vec![
        Query::Emc {
            instance: x.clone(),
            limit,
        },
        Query::Dpi {
            instance: x.clone(),
            order: None,
        },
        Query::Eco {
            instance: x.clone(),
            limit,
        },
        Query::Cin { class: true },
        Query::Ein { class: true, limit },
        Query::Ima {
            term: Term::from(Literal::new(x1, true)),
            class: true,
            mode: ImaMode::Mandatory,
        },
        Query::Iir {
            feature: x1,
            class: true,
        },
        Query::Imo {
            feature: x1,
            class: true,
            mode: ImoMode::Monotone,
        },
        Query::Mcp {
            instance: x.clone(),
        },
    ]
}

/// Short human-readable form of an answer.
pub fn summarize(answer: &QueryAnswer) -> String {
    const SHOWN: usize = 4;
    match answer {
        QueryAnswer::Instances(v) if v.is_empty() => "none".into(),
        QueryAnswer::Instances(v) => {
            let mut s = v
                .iter()
                .take(SHOWN)
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            if v.len() > SHOWN {
                s.push_str(&format!(" (+{} more)", v.len() - SHOWN));
            }
            s
        }
        QueryAnswer::Absent => "none".into(),
        QueryAnswer::Assignment(a) => a.to_string(),
        QueryAnswer::Count(c) => c.to_string(),
        QueryAnswer::Bit(b) => (*b as u8).to_string(),
        QueryAnswer::Distance(d) => d.to_string(),
    }
}

fn status_of(e: &xquery_core::Error) -> &'static str {
    match e {
        xquery_core::Error::Timeout => "timeout",
        xquery_core::Error::OverCap { .. } => "refused",
        _ => "error",
    }
}

struct Settings {
    cap: usize,
    timeout: Option<u64>,
}

fn rows_for(file: &str, model: &Classifier, s: &Settings) -> Vec<MapRow> {
    let n = model.n();
    let (engine, x) = match model {
        Classifier::Tree(t) => (
            "dt",
            dt::first_model(t).unwrap_or_else(|| Instance::zeros(n)),
        ),
        _ => {
            let x = oracle(s.cap, false, s.timeout)
                .table(model)
                .ok()
                .and_then(|t| t.members(true).next())
                .unwrap_or_else(|| Instance::zeros(n));
            ("oracle", x)
        }
    };
    let mut rows: Vec<MapRow> = default_queries(&x)
        .into_iter()
        .map(|q| {
            let start = Instant::now();
            let result = match model {
                Classifier::Tree(t) => dt::answer(t, &q),
                _ => oracle(s.cap, false, s.timeout).answer(model, &q),
            };
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            let (answer, status) = match result {
                Ok(a) => (summarize(&a), "ok"),
                Err(e) => (e.to_string(), status_of(&e)),
            };
            MapRow {
                file: file.to_string(),
                family: model.family().tag().to_string(),
                query: q.tag().to_string(),
                answer,
                engine: engine.to_string(),
                elapsed_ms,
                status: status.to_string(),
            }
        })
        .collect();
    rows.sort_by(|a, b| a.query.cmp(&b.query));
    rows
}

fn model_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = fs::read_dir(dir).map_err(|source| FormatError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry?.path();
        if path.is_file() && family_of_path(&path).is_some() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Runs every query on every model file under `dir`. Files that fail to
/// parse are reported and skipped.
pub fn build_map(
    dir: &Path,
    cap: usize,
    timeout: Option<u64>,
) -> Result<(Vec<MapRow>, Vec<ParseFailure>), CliError> {
    let settings = Settings { cap, timeout };
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for path in model_files(dir)? {
        let file = path
            .file_name()
            .map_or_else(String::new, |f| f.to_string_lossy().into_owned());
        match read_model(&path, None) {
            Ok(model) => rows.extend(rows_for(&file, &model, &settings)),
            Err(e) => failures.push((file, e)),
        }
    }
    Ok((rows, failures))
}

pub fn render_table(rows: &[MapRow]) -> String {
    let header = [
        "file", "family", "query", "answer", "engine", "time", "status",
    ];
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.file.clone(),
                r.family.clone(),
                r.query.clone(),
                r.answer.clone(),
                r.engine.clone(),
                format!("{:.3}ms", r.elapsed_ms),
                r.status.clone(),
            ]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut push = |row: &[String]| {
        let line = row
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
    };
    push(&header.map(String::from));
    for row in &cells {
        push(row);
    }
    out
}

pub fn run(a: &MapArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cap = oracle_cap(a.cap)?;
    let (rows, mut failures) = build_map(&a.dir, cap, a.timeout)?;
    out.write_all(render_table(&rows).as_bytes())?;
    if let Some(path) = &a.out {
        let mut jsonl = String::new();
        for r in &rows {
            jsonl.push_str(&serde_json::to_string(r).map_err(FormatError::Json)?);
            jsonl.push('\n');
        }
        fs::write(path, jsonl).map_err(|source| FormatError::Io {
            path: path.clone(),
            source,
        })?;
    }
    for (file, e) in &failures {
        eprintln!("error: {file}: {e}");
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.swap_remove(0).1.into())
    }
}
