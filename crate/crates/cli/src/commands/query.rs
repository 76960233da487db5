use std::io::Write;

use xquery_core::{dt, Classifier, Query, QueryTag, Var};

use super::{
    oracle, oracle_cap, parse_ima_mode, parse_imo_mode, parse_instance, parse_order, parse_term,
    write_absent, write_answer, write_instance,
};
use crate::args::{Engine, QueryArgs};
use crate::format::read_model;
use crate::CliError;

fn need<T>(v: Option<T>, tag: QueryTag, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{tag} needs {flag}")))
}

/// Builds the query from flags. The class defaults to 1.
pub fn build_query(a: &QueryArgs, n: usize) -> Result<Query, CliError> {
    let tag = a.query;
    let class = a.class.unwrap_or(1) == 1;
    let instance = || parse_instance(need(a.instance.as_deref(), tag, "--instance")?, n);
    let feature = || -> Result<Var, CliError> {
        let i = need(a.feature, tag, "--feature")?;
        Var::try_new(i)
            .filter(|v| v.get() <= n)
            .ok_or_else(|| CliError::Usage(format!("--feature {i} is outside 1..={n}")))
    };
    if a.mode.is_some() && !matches!(tag, QueryTag::Ima | QueryTag::Imo) {
        return Err(CliError::Usage(format!("{tag} takes no --mode")));
    }
    if a.order.is_some() && tag != QueryTag::Dpi {
        return Err(CliError::Usage("--order only applies to dpi".into()));
    }
    let q = match tag {
        QueryTag::Emc => Query::Emc {
            instance: instance()?,
            limit: a.limit,
        },
        QueryTag::Dpi => Query::Dpi {
            instance: instance()?,
            order: a.order.as_deref().map(parse_order).transpose()?,
        },
        QueryTag::Eco => Query::Eco {
            instance: instance()?,
            limit: a.limit,
        },
        QueryTag::Cin => Query::Cin { class },
        QueryTag::Ein => Query::Ein {
            class,
            limit: a.limit,
        },
        QueryTag::Ima => Query::Ima {
            term: parse_term(need(a.term.as_deref(), tag, "--term")?)?,
            class,
            mode: parse_ima_mode(a.mode.as_deref())?,
        },
        QueryTag::Iir => Query::Iir {
            feature: feature()?,
            class,
        },
        QueryTag::Imo => Query::Imo {
            feature: feature()?,
            class,
            mode: parse_imo_mode(a.mode.as_deref())?,
        },
        QueryTag::Mcp => Query::Mcp {
            instance: instance()?,
        },
    };
    q.check(n)?;
    Ok(q)
}

pub fn run(a: &QueryArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let model = read_model(&a.model, a.format)?;
    let query = build_query(a, model.n())?;
    let engine = match (a.engine, &model) {
        (Engine::Auto, Classifier::Tree(_)) => Engine::Dt,
        (Engine::Auto, _) => Engine::Oracle,
        (Engine::Dt, m) if m.as_tree().is_none() => {
            return Err(CliError::Usage(format!(
                "the dt engine needs a decision tree, got {}",
                m.family()
            )))
        }
        (e, _) => e,
    };
    match (engine, &model) {
        (Engine::Dt, Classifier::Tree(t)) => run_dt(t, &query, out),
        _ => {
            let cap = oracle_cap(None)?;
            if a.force && model.n() > cap {
                eprintln!(
                    "warning: --force: enumerating 2^{} instances above the cap of {cap}",
                    model.n()
                );
            }
            let answer = oracle(cap, a.force, a.timeout).answer(&model, &query)?;
            Ok(write_answer(out, &query, &answer)?)
        }
    }
}

/// Streams enumerations line by line.
fn run_dt(
    t: &xquery_core::DecisionTree,
    query: &Query,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (stream, limit) = match query {
        Query::Emc { instance, limit } => (dt::emc(t, instance), limit),
        Query::Eco { instance, limit } => (dt::eco(t, instance), limit),
        Query::Ein { class, limit } => (dt::enumerate_class(t, *class), limit),
        _ => {
            let answer = dt::answer(t, query)?;
            return Ok(write_answer(out, query, &answer)?);
        }
    };
    let violations = Classifier::Tree(t.clone()).validate();
    if !violations.is_empty() {
        return Err(xquery_core::Error::Invalid(violations).into());
    }
    let mut stream = stream.peekable();
    if matches!(query, Query::Eco { .. }) && stream.peek().is_none() {
        return Ok(write_absent(out)?);
    }
    for y in stream.take(limit.unwrap_or(usize::MAX)) {
        write_instance(out, query, &y)?;
    }
    Ok(())
}
