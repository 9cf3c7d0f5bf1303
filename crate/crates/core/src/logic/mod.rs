//! Signatures, interpretations, formulas, bases and profiles.

mod base;
mod document;
mod formula;
mod model_set;
mod parser;
mod signature;

pub use base::{Base, Constraint, Profile};
pub use document::{parse_profile, ProfileDoc};
pub use formula::{Formula, FormulaDisplay};
pub use model_set::{canonical_cmp, ModelSet};
pub use parser::parse_formula;
pub use signature::{var_cap, Interpretation, Signature, DEFAULT_VAR_CAP, HARD_VAR_CAP, VAR_CAP_ENV};

/// `[f] ⊆ [g]` over the given signature.
pub fn entails(f: &Formula, g: &Formula, sig: &Signature) -> bool {
    f.entails(g, sig.count())
}

/// Model set of a formula over the given signature.
pub fn models(f: &Formula, sig: &Signature) -> ModelSet {
    f.models(sig.count())
}
