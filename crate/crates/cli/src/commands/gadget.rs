use std::io::Write;

use serde::Serialize;
use xquery_core::reductions::{
    build_gadget, ima_forbidden_gadget, imo_antimonotone_gadget, Gadget,
};
use xquery_core::{Classifier, Family, ImaMode, ImoMode, Query, QueryTag};

use super::{line, parse_ima_mode, parse_imo_mode};
use crate::args::GadgetArgs;
use crate::format::{read_model, save_model};
use crate::CliError;

/// The query arguments of a gadget, as printed by `--print-aux`.
#[derive(Serialize)]
struct Aux {
    query: String,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    instance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    term: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    feature: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mode: Option<&'static str>,
    unsat_when: &'static str,
}

fn aux(g: &Gadget) -> Aux {
    let mut a = Aux {
        query: g.tag().to_string(),
        n: g.rho.n(),
        instance: g.query.instance().map(ToString::to_string),
        class: None,
        term: None,
        feature: None,
        mode: None,
        unsat_when: g.unsat_when,
    };
    match &g.query {
        Query::Cin { class } | Query::Ein { class, .. } => a.class = Some(*class as u8),
        Query::Ima { term, class, mode } => {
            a.term = Some(term.literals().iter().map(|l| l.to_dimacs()).collect());
            a.class = Some(*class as u8);
            a.mode = Some(match mode {
                ImaMode::Mandatory => "mandatory",
                ImaMode::Forbidden => "forbidden",
            });
        }
        Query::Iir { feature, class } => {
            a.feature = Some(feature.get());
            a.class = Some(*class as u8);
        }
        Query::Imo {
            feature,
            class,
            mode,
        } => {
            a.feature = Some(feature.get());
            a.class = Some(*class as u8);
            a.mode = Some(match mode {
                ImoMode::Monotone => "monotone",
                ImoMode::Antimonotone => "antimonotone",
            });
        }
        _ => {}
    }
    a
}

pub fn gadget_for(
    tag: QueryTag,
    mode: Option<&str>,
    alpha: &xquery_core::CnfFormula,
) -> Result<Gadget, CliError> {
    let g = match tag {
        QueryTag::Ima if parse_ima_mode(mode)? == ImaMode::Forbidden => ima_forbidden_gadget(alpha),
        QueryTag::Imo if parse_imo_mode(mode)? == ImoMode::Antimonotone => {
            imo_antimonotone_gadget(alpha)
        }
        QueryTag::Ima | QueryTag::Imo => build_gadget(tag, alpha),
        _ if mode.is_some() => return Err(CliError::Usage(format!("{tag} takes no --mode"))),
        _ => build_gadget(tag, alpha),
    };
    Ok(g?)
}

pub fn run(a: &GadgetArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let Classifier::Cnf(alpha) = read_model(&a.cnf, Some(Family::Cnf))? else {
        unreachable!("read as CNF")
    };
    let g = gadget_for(a.query, a.mode.as_deref(), &alpha)?;
    save_model(&Classifier::Cnf(g.rho.clone()), &a.out)?;
    eprintln!(
        "wrote {} gadget over {} features ({} clauses) to {}",
        g.tag(),
        g.rho.n(),
        g.rho.len(),
        a.out.display()
    );
    if a.print_aux {
        line(out, &aux(&g))?;
    }
    Ok(())
}
