//! DIMACS CNF and its `p dnf` sibling.

use std::fmt::Write;

use xquery_core::{Clause, CnfFormula, DnfFormula, Literal, Term};

use super::FormatError;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Cnf,
    Dnf,
}

impl Kind {
    fn word(self) -> &'static str {
        match self {
            Kind::Cnf => "cnf",
            Kind::Dnf => "dnf",
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with 1-based column numbers.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.char_indices()
        .filter(move |&(i, c)| {
            !c.is_whitespace() && (i == 0 || line[..i].ends_with(char::is_whitespace))
        })
        .map(move |(i, _)| {
            let rest = &line[i..];
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            (line[..i].chars().count() + 1, &rest[..end])
        })
}

/// Literal lists of the body, each terminated by 0.
fn parse_body(text: &str, kind: Kind) -> Result<(usize, Vec<Vec<Literal>>), FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut items: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_pos = (1, 1);
    for (l, line) in text.lines().enumerate() {
        let l = l + 1;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            let col = line.len() - trimmed.len() + 1;
            if header.is_some() {
                return Err(syntax(l, col, "duplicate problem line"));
            }
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            let expect = format!(
                "expected `p {} <vars> <{}>`",
                kind.word(),
                match kind {
                    Kind::Cnf => "clauses",
                    Kind::Dnf => "terms",
                }
            );
            if parts.len() != 4 || parts[0] != "p" || parts[1] != kind.word() {
                return Err(syntax(l, col, expect));
            }
            let n = parts[2]
                .parse()
                .map_err(|_| syntax(l, col, expect.clone()))?;
            let m = parts[3]
                .parse()
                .map_err(|_| syntax(l, col, expect.clone()))?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(syntax(l, 1, "literals before the problem line"));
        };
        for (col, tok) in tokens(line) {
            last_pos = (l, col);
            let v: i64 = tok
                .parse()
                .map_err(|_| syntax(l, col, format!("`{tok}` is not an integer literal")))?;
            if v == 0 {
                items.push(std::mem::take(&mut current));
                continue;
            }
            if v.unsigned_abs() as usize > n {
                return Err(syntax(
                    l,
                    col,
                    format!("literal {v} exceeds the {n} declared variables"),
                ));
            }
            current.push(Literal::from_dimacs(v).expect("non-zero"));
        }
    }
    let Some((n, m)) = header else {
        return Err(syntax(
            1,
            1,
            format!("missing `p {}` problem line", kind.word()),
        ));
    };
    if !current.is_empty() {
        return Err(syntax(
            last_pos.0,
            last_pos.1,
            "last item is not terminated by 0",
        ));
    }
    if items.len() != m {
        let what = match kind {
            Kind::Cnf => "clauses",
            Kind::Dnf => "terms",
        };
        return Err(syntax(
            last_pos.0,
            last_pos.1,
            format!("problem line declares {m} {what}, found {}", items.len()),
        ));
    }
    Ok((n, items))
}

pub fn parse_cnf(text: &str) -> Result<CnfFormula, FormatError> {
    let (n, items) = parse_body(text, Kind::Cnf)?;
    Ok(CnfFormula::new(
        n,
        items.into_iter().map(Clause::new).collect(),
    ))
}

/// Terms holding a literal and its negation are kept as unsatisfiable terms.
pub fn parse_dnf(text: &str) -> Result<DnfFormula, FormatError> {
    let (n, items) = parse_body(text, Kind::Dnf)?;
    Ok(DnfFormula::new(
        n,
        items.into_iter().map(Term::allow_contradiction).collect(),
    ))
}

fn write_items<'a>(
    out: &mut String,
    kind: Kind,
    n: usize,
    items: impl ExactSizeIterator<Item = &'a [Literal]>,
) {
    writeln!(out, "p {} {n} {}", kind.word(), items.len()).unwrap();
    for lits in items {
        for l in lits {
            write!(out, "{} ", l.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
}

pub fn write_cnf(phi: &CnfFormula) -> String {
    let mut out = String::new();
    write_items(
        &mut out,
        Kind::Cnf,
        phi.n(),
        phi.clauses().iter().map(Clause::literals),
    );
    out
}

pub fn write_dnf(d: &DnfFormula) -> String {
    let mut out = String::new();
    write_items(
        &mut out,
        Kind::Dnf,
        d.n(),
        d.terms().iter().map(Term::literals),
    );
    out
}
