//! Translations out of CNF and the satisfiability gadgets.

mod gadget;
mod translate;

pub use gadget::{build_gadget, ima_forbidden_gadget, imo_antimonotone_gadget, Gadget};
pub use translate::{
    clause_to_comb_tree, cnf_negation_to_dnf, cnf_to_bnn, cnf_to_decision_list, cnf_to_mlp,
    cnf_to_random_forest, rf_to_boosted_tree, strip_valid_clauses,
};
