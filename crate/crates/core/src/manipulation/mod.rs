//! Manipulation: strategy spaces, the single-instance oracle and bounded
//! audits of strategy-proofness claims.

pub mod claims;
pub mod families;
pub mod search;
pub mod strategy;
pub mod sweep;

pub use claims::{audit, claim, AuditReport, Claim, CLAIM_IDS};
pub use search::{find_manipulation, find_rank_gap_improvement, parse_rendered_base, render_base, ManipulationWitness};
pub use strategy::{SpaceKind, StrategySpace};
pub use sweep::{
    run_case, Bounds, Case, CellReport, Counterexample, Expectation, KMode, KRestriction, MuMode, MuRestriction, Outcome,
    Sample, SizeRestriction, WitnessRecord,
};
