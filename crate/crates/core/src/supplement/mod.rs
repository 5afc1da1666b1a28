//! Proper supplements to normal subgroups outside the soluble radical,
//! checked both on subsets and through first-order formulas.

mod certificate;
mod formulas;
mod lemma;

pub use certificate::{build_supplement, verify_invariants, SupplementCertificate};
pub use formulas::{
    build_formulas, build_formulas_with, parameters, standard_oracles, verify_formula_level,
    FormulaLevelReport, KMembership, SupplementFormulas, PSI_ORDER_CAP,
};
pub use lemma::{lemma62_checks, ClauseCheck, Lemma62Report};
