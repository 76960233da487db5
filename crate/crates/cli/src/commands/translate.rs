use std::io::Write;

use xquery_core::reductions::{
    cnf_negation_to_dnf, cnf_to_bnn, cnf_to_decision_list, cnf_to_mlp, cnf_to_random_forest,
    rf_to_boosted_tree, strip_valid_clauses,
};
use xquery_core::{Classifier, CnfFormula, Family};

use crate::args::{Target, TranslateArgs};
use crate::format::{read_model, save_model, write_model};
use crate::CliError;

pub fn translate(phi: &CnfFormula, to: Target) -> Result<Classifier, CliError> {
    let stripped = || {
        let (clean, removed) = strip_valid_clauses(phi);
        if removed > 0 {
            eprintln!("removed {removed} valid clause(s)");
        }
        clean
    };
    Ok(match to {
        Target::Dl => Classifier::List(cnf_to_decision_list(phi)),
        Target::Rf => Classifier::Forest(cnf_to_random_forest(phi)),
        Target::Bt => Classifier::Boosted(rf_to_boosted_tree(&cnf_to_random_forest(phi))?),
        Target::Mlp => Classifier::Mlp(cnf_to_mlp(&stripped())?),
        Target::Bnn => Classifier::Bnn(cnf_to_bnn(&stripped())?),
        Target::DnfNeg => Classifier::Dnf(cnf_negation_to_dnf(phi)),
    })
}

pub fn run(a: &TranslateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let Classifier::Cnf(phi) = read_model(&a.input, Some(Family::Cnf))? else {
        unreachable!("read as CNF")
    };
    let target = translate(&phi, a.to)?;
    match &a.out {
        Some(path) => save_model(&target, path)?,
        None => out.write_all(write_model(&target).as_bytes())?,
    }
    Ok(())
}
