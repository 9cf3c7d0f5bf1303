//! Propositional merging workbench: model-based, formula-based and
//! OCF-based merging operators, satisfaction indexes, and an exhaustive
//! manipulation oracle with bounded strategy-proofness audits.

pub mod cli;
pub mod error;
pub mod golden;
pub mod logic;
pub mod manipulation;
pub mod metric;
pub mod model_merge;
pub mod ocf;
pub mod operator;
pub mod satisfaction;
pub mod syntax_merge;

pub use error::{Error, Result};
pub use logic::{Base, Constraint, Formula, Interpretation, ModelSet, Profile, Signature};
pub use operator::Operator;
pub use satisfaction::{IndexId, IndexValue};
