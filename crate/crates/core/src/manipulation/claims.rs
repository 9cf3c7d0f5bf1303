//! Registered strategy-proofness claims and the audit driver.
//!
//! Each claim is a list of cases. A case names operators, indexes, the
//! instance restrictions it speaks about and the expected verdict; the
//! audit sweeps every instance within the bounds and reports per cell.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use super::families::Family;
use super::strategy::SpaceKind;
use super::sweep::{
    run_case, Bounds, Case, CellReport, Expectation, KRestriction as K, MuRestriction as Mu, Outcome,
    SizeRestriction as N,
};
use crate::error::{Error, Result};
use crate::metric::{Aggregator, Distance};
use crate::ocf::OcfRule;
use crate::operator::Operator;
use crate::satisfaction::IndexId;
use crate::syntax_merge::CVariant;

use Expectation::{Manipulable as MANIP, StrategyProof as SP};

pub const CLAIM_IDS: [&str; 22] = [
    "T2.1",
    "T2.2",
    "T2.3",
    "T3.dw",
    "T3.p",
    "T4.dw",
    "T4.ds",
    "T5.C1",
    "T5.C3",
    "T5.C4",
    "T5.C5",
    "T6.HC1",
    "T6.HC3",
    "T6.HC4",
    "T6.HC5",
    "T7.complete",
    "T8.dalal",
    "T9.dalal",
    "T10.dilation",
    "T11.erosion",
    "T14.ocf",
    "C12.complete",
];

/// Presentations used for the other agents and the agent's true base when
/// sweeping syntax-sensitive operators.
pub const PROFILE_FAMILIES: [Family; 3] = [Family::Canonical, Family::Split, Family::Padded];
/// Presentations an agent may report to a syntax-sensitive operator.
pub const CANDIDATE_FAMILIES: [Family; 4] =
    [Family::Canonical, Family::Split, Family::Padded, Family::Augmented];

#[derive(Debug, Clone)]
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub scope: &'static str,
    pub cases: Vec<Case>,
    pub defaults: Bounds,
}

const DRASTIC: [IndexId; 3] = [IndexId::Dw, IndexId::Ds, IndexId::P];
const DW_DS: [IndexId; 2] = [IndexId::Dw, IndexId::Ds];

fn m(d: Distance, f: Aggregator) -> Operator {
    Operator::Model(d, f)
}

fn dh_sum() -> Operator {
    m(Distance::Hamming, Aggregator::Sum)
}

fn dh_gmax() -> Operator {
    m(Distance::Hamming, Aggregator::GMax)
}

fn dd_sum() -> Operator {
    m(Distance::Drastic, Aggregator::Sum)
}

fn c(variant: CVariant) -> Operator {
    Operator::Formula { variant, hatted: false }
}

fn hc(variant: CVariant) -> Operator {
    Operator::Formula { variant, hatted: true }
}

fn dd_all() -> Vec<Operator> {
    [Aggregator::Sum, Aggregator::GMax, Aggregator::Max].into_iter().map(|f| m(Distance::Drastic, f)).collect()
}

fn case(label: &str, ops: Vec<Operator>, idx: &[IndexId], expect: Expectation) -> Case {
    Case::new(label, ops, idx.to_vec(), expect)
}

/// Syntax-sensitive case: sweeps the listed presentations, at most over
/// `SYNTAX_MAX_VARS` variables.
fn syn(label: &str, ops: Vec<Operator>, idx: &[IndexId], expect: Expectation) -> Case {
    case(label, ops, idx, expect).syntax(&PROFILE_FAMILIES, &CANDIDATE_FAMILIES).max_vars(SYNTAX_MAX_VARS)
}

pub const SYNTAX_MAX_VARS: usize = 2;

fn p() -> [IndexId; 1] {
    [IndexId::P]
}

fn dw() -> [IndexId; 1] {
    [IndexId::Dw]
}

fn ds() -> [IndexId; 1] {
    [IndexId::Ds]
}

const MODEL_SCOPE: &str = "bounded exhaustive sweep; model-based operators depend on a base only through its models, so semantic strategies are complete";

/// Looks a claim up by id.
pub fn claim(id: &str) -> Result<Claim> {
    let two = N::Exactly(2);
    let three = N::AtLeast(3);
    let c = match id {
        "T2.1" => Claim {
            id: "T2.1",
            statement: "dD-sum, dD-gmax and dD-max are strategy-proof for p, dw and ds",
            scope: MODEL_SCOPE,
            cases: vec![case("all instances", dd_all(), &DRASTIC, SP)],
            defaults: Bounds::new(2, 3),
        },
        "T2.2" => Claim {
            id: "T2.2",
            statement: "d-sum operators are strategy-proof for dw and ds when mu is true and there are two bases",
            scope: "bounded exhaustive sweep over the shipped distances dH and dD only",
            cases: vec![case("mu true, two bases", vec![dh_sum(), dd_sum()], &DW_DS, SP).mu(Mu::Top).size(two)],
            defaults: Bounds::new(2, 3),
        },
        "T2.3" => Claim {
            id: "T2.3",
            statement: "d-sum operators are strategy-proof for p, dw and ds when the agent's base is complete",
            scope: "bounded exhaustive sweep over the shipped distances dH and dD only",
            cases: vec![case("complete K", vec![dh_sum(), dd_sum()], &DRASTIC, SP).k(K::Complete)],
            defaults: Bounds::new(2, 3),
        },
        "T3.dw" => Claim {
            id: "T3.dw",
            statement: "dH-sum is strategy-proof for dw and ds iff mu is true with two bases or K is complete",
            scope: "the iff ranges over all distances; only dH is swept, so the boundary is confirmed for dH alone",
            cases: vec![
                case("mu true, two bases", vec![dh_sum()], &DW_DS, SP).mu(Mu::Top).size(two),
                case("complete K", vec![dh_sum()], &DW_DS, SP).k(K::Complete),
                case("mu not true, two bases, K incomplete", vec![dh_sum()], &DW_DS, MANIP)
                    .mu(Mu::NonTop)
                    .size(two)
                    .k(K::NotComplete),
                case("mu true, three or more bases, K incomplete", vec![dh_sum()], &DW_DS, MANIP)
                    .mu(Mu::Top)
                    .size(three)
                    .k(K::NotComplete),
            ],
            defaults: Bounds::new(2, 3),
        },
        "T3.p" => Claim {
            id: "T3.p",
            statement: "dH-sum is strategy-proof for p iff K is complete",
            scope: "the iff ranges over all distances; only dH is swept, so the boundary is confirmed for dH alone",
            cases: vec![
                case("complete K", vec![dh_sum()], &p(), SP).k(K::Complete),
                case("K incomplete, mu true, two bases", vec![dh_sum()], &p(), MANIP)
                    .k(K::NotComplete)
                    .mu(Mu::Top)
                    .size(two),
            ],
            defaults: Bounds::new(2, 3),
        },
        "T4.dw" => Claim {
            id: "T4.dw",
            statement: "dH-gmax is not strategy-proof for dw and p, even with mu true, K complete and two bases",
            scope: MODEL_SCOPE,
            cases: vec![case("mu true, complete K, two bases", vec![dh_gmax()], &[IndexId::Dw, IndexId::P], MANIP)
                .mu(Mu::Top)
                .k(K::Complete)
                .size(two)],
            defaults: Bounds::new(3, 2),
        },
        "T4.ds" => Claim {
            id: "T4.ds",
            statement: "dH-gmax is strategy-proof for ds iff mu is true, K is complete and there are two bases",
            scope: MODEL_SCOPE,
            cases: vec![
                case("mu true, complete K, two bases", vec![dh_gmax()], &ds(), SP)
                    .mu(Mu::Top)
                    .k(K::Complete)
                    .size(two),
                case("mu not true, complete K, two bases", vec![dh_gmax()], &ds(), MANIP)
                    .mu(Mu::NonTop)
                    .k(K::Complete)
                    .size(two),
                case("mu true, complete K, three or more bases", vec![dh_gmax()], &ds(), MANIP)
                    .mu(Mu::Top)
                    .k(K::Complete)
                    .size(three),
                case("mu true, K incomplete, two bases", vec![dh_gmax()], &ds(), MANIP)
                    .mu(Mu::Top)
                    .k(K::NotComplete)
                    .size(two),
            ],
            defaults: Bounds::new(2, 3),
        },
        "T5.C1" => Claim {
            id: "T5.C1",
            statement: "c1 is not strategy-proof for p but is strategy-proof for dw and ds",
            scope: "c1 is syntax-sensitive; only the listed presentations are swept",
            cases: vec![
                syn("mu true, complete K, two bases", vec![c(CVariant::C1)], &p(), MANIP)
                    .mu(Mu::Top)
                    .k(K::Complete)
                    .size(two),
                syn("all instances", vec![c(CVariant::C1)], &DW_DS, SP),
            ],
            defaults: Bounds::new(2, 2),
        },
        "T5.C3" => Claim {
            id: "T5.C3",
            statement: "c3 is not strategy-proof for p; it is strategy-proof for dw and ds iff mu is true",
            scope: "c3 is syntax-sensitive; only the listed presentations are swept",
            cases: vec![
                syn("mu true, complete K, two bases", vec![c(CVariant::C3)], &p(), MANIP)
                    .mu(Mu::Top)
                    .k(K::Complete)
                    .size(two),
                syn("mu true", vec![c(CVariant::C3)], &DW_DS, SP).mu(Mu::Top),
                syn("mu not true", vec![c(CVariant::C3)], &DW_DS, MANIP).mu(Mu::NonTop),
            ],
            defaults: Bounds::new(2, 2),
        },
        "T5.C4" => Claim {
            id: "T5.C4",
            statement: "c4 is not strategy-proof for p, dw or ds, even with mu true, K complete and two bases",
            scope: "c4 is syntax-sensitive; only the listed presentations are swept",
            cases: vec![syn("mu true, complete K, two bases", vec![c(CVariant::C4)], &DRASTIC, MANIP)
                .mu(Mu::Top)
                .k(K::Complete)
                .size(two)],
            defaults: Bounds::new(2, 2),
        },
        "T5.C5" => Claim {
            id: "T5.C5",
            statement: "c5 is not strategy-proof for p; for dw it is strategy-proof iff mu is true or K is complete; for ds iff mu is true",
            scope: "c5 is syntax-sensitive; only the listed presentations are swept",
            cases: vec![
                syn("mu true, complete K, two bases", vec![c(CVariant::C5)], &p(), MANIP)
                    .mu(Mu::Top)
                    .k(K::Complete)
                    .size(two),
                syn("mu true", vec![c(CVariant::C5)], &DW_DS, SP).mu(Mu::Top),
                syn("complete K", vec![c(CVariant::C5)], &dw(), SP).k(K::Complete),
                syn("mu not true, K incomplete, two bases", vec![c(CVariant::C5)], &dw(), MANIP)
                    .mu(Mu::NonTop)
                    .k(K::NotComplete)
                    .size(two),
                syn("mu not true, two bases", vec![c(CVariant::C5)], &ds(), MANIP).mu(Mu::NonTop).size(two),
            ],
            defaults: Bounds::new(2, 2),
        },
        "T6.HC1" => Claim {
            id: "T6.HC1",
            statement: "hc1 is strategy-proof for dw and ds, and for p iff there are two bases",
            scope: MODEL_SCOPE,
            cases: vec![
                case("all instances", vec![hc(CVariant::C1)], &DW_DS, SP),
                case("two bases", vec![hc(CVariant::C1)], &p(), SP).size(two),
                case("three or more bases", vec![hc(CVariant::C1)], &p(), MANIP).size(three),
            ],
            defaults: Bounds::new(2, 3),
        },
        "T6.HC3" => Claim {
            id: "T6.HC3",
            statement: "hc3 is strategy-proof for dw and ds iff mu is true, and for p iff mu is true with two bases",
            scope: MODEL_SCOPE,
            cases: vec![
                case("mu true", vec![hc(CVariant::C3)], &DW_DS, SP).mu(Mu::Top),
                case("mu not true", vec![hc(CVariant::C3)], &DW_DS, MANIP).mu(Mu::NonTop),
                case("mu true, two bases", vec![hc(CVariant::C3)], &p(), SP).mu(Mu::Top).size(two),
                case("mu not true", vec![hc(CVariant::C3)], &p(), MANIP).mu(Mu::NonTop),
                case("mu true, three or more bases", vec![hc(CVariant::C3)], &p(), MANIP).mu(Mu::Top).size(three),
            ],
            defaults: Bounds::new(2, 3),
        },
        "T6.HC4" => Claim {
            id: "T6.HC4",
            statement: "hc4 is strategy-proof for p, dw and ds",
            scope: MODEL_SCOPE,
            cases: vec![case("all instances", vec![hc(CVariant::C4)], &DRASTIC, SP)],
            defaults: Bounds::new(2, 3),
        },
        "T6.HC5" => Claim {
            id: "T6.HC5",
            statement: "hc5 is strategy-proof for dw with two bases, mu true or K complete; for ds with two bases or mu true; for p iff there are two bases",
            scope: MODEL_SCOPE,
            cases: vec![
                case("two bases", vec![hc(CVariant::C5)], &DRASTIC, SP).size(two),
                case("mu true", vec![hc(CVariant::C5)], &DW_DS, SP).mu(Mu::Top),
                case("complete K", vec![hc(CVariant::C5)], &dw(), SP).k(K::Complete),
                case("three or more bases, mu not true, K incomplete", vec![hc(CVariant::C5)], &dw(), MANIP)
                    .size(three)
                    .mu(Mu::NonTop)
                    .k(K::NotComplete),
                case("three or more bases, mu not true", vec![hc(CVariant::C5)], &ds(), MANIP)
                    .size(three)
                    .mu(Mu::NonTop),
                case("three or more bases", vec![hc(CVariant::C5)], &p(), MANIP).size(three),
            ],
            defaults: Bounds::new(2, 3),
        },
        "T7.complete" => Claim {
            id: "T7.complete",
            statement: "strategy-proofness landscape when every base is complete",
            scope: "bounded sweep with complete bases for every agent; c operators over the listed presentations only",
            cases: t7_cases(),
            defaults: Bounds::new(3, 3),
        },
        "T8.dalal" => Claim {
            id: "T8.dalal",
            statement: "dD-sum, dD-gmax, dH-sum and dH-gmax are not strategy-proof for dalal, even with two complete bases",
            scope: MODEL_SCOPE,
            cases: vec![case(
                "two complete bases",
                vec![dd_sum(), m(Distance::Drastic, Aggregator::GMax), dh_sum(), dh_gmax()],
                &[IndexId::Dalal],
                MANIP,
            )
            .complete_profile()
            .size(two)
            .min_vars(2)],
            defaults: Bounds::new(4, 2),
        },
        "T9.dalal" => Claim {
            id: "T9.dalal",
            statement: "hc1, hc3, hc4 and hc5 are not strategy-proof for dalal, even with two complete bases",
            scope: MODEL_SCOPE,
            cases: vec![case(
                "two complete bases",
                CVariant::ALL.into_iter().map(hc).collect(),
                &[IndexId::Dalal],
                MANIP,
            )
            .complete_profile()
            .size(two)
            .min_vars(2)],
            defaults: Bounds::new(4, 2),
        },
        "T10.dilation" => Claim {
            id: "T10.dilation",
            statement: "every model-based operator is dilation strategy-proof for p, dw and ds",
            scope: MODEL_SCOPE,
            cases: vec![case("all instances", Operator::model_based(), &DRASTIC, SP).space(SpaceKind::Dilation)],
            defaults: Bounds::new(2, 3),
        },
        "T11.erosion" => Claim {
            id: "T11.erosion",
            statement: "for d-sum operators and the drastic indexes, manipulable instances are manipulable by erosion",
            scope: "bounded paired sweep over the shipped distances dH and dD",
            cases: vec![case("all instances", vec![dh_sum(), dd_sum()], &DW_DS, Expectation::Equivalent(SpaceKind::Erosion))],
            defaults: Bounds::new(2, 3),
        },
        "T14.ocf" => Claim {
            id: "T14.ocf",
            statement: "the flat OCF operators are strategy-proof for p, dw and ds",
            scope: "flat operators take no constraint, so only mu true is swept",
            cases: vec![case(
                "mu true",
                OcfRule::ALL.into_iter().map(Operator::Flat).collect(),
                &DRASTIC,
                SP,
            )
            .mu(Mu::Top)],
            defaults: Bounds::new(2, 3),
        },
        "C12.complete" => Claim {
            id: "C12.complete",
            statement: "for d-sum operators and the drastic indexes, manipulation is possible iff it is possible with a complete base entailing K",
            scope: "bounded paired sweep over the shipped distances dH and dD",
            cases: vec![case(
                "all instances",
                vec![dh_sum(), dd_sum()],
                &DW_DS,
                Expectation::Equivalent(SpaceKind::CompleteInK),
            )],
            defaults: Bounds::new(2, 3),
        },
        _ => return Err(Error::UnknownName { kind: "claim", name: id.into() }),
    };
    Ok(c)
}

fn t7_cases() -> Vec<Case> {
    let two = N::Exactly(2);
    let three = N::AtLeast(3);
    let mut dd_sigma = dd_all();
    dd_sigma.push(dh_sum());
    let hats: Vec<Operator> = CVariant::ALL.into_iter().map(hc).collect();
    vec![
        case("dD-f and dH-sum", dd_sigma, &DRASTIC, SP),
        case("dH-gmax, mu true, two bases", vec![dh_gmax()], &[IndexId::Dw, IndexId::P], MANIP)
            .mu(Mu::Top)
            .size(two)
            .min_vars(3),
        case("dH-gmax, mu true, two bases", vec![dh_gmax()], &ds(), SP).mu(Mu::Top).size(two),
        case("dH-gmax, mu not true, two bases", vec![dh_gmax()], &ds(), MANIP).mu(Mu::NonTop).size(two),
        case("dH-gmax, mu true, three or more bases", vec![dh_gmax()], &ds(), MANIP).mu(Mu::Top).size(three),
        syn("c1", vec![c(CVariant::C1)], &p(), MANIP),
        syn("c1", vec![c(CVariant::C1)], &DW_DS, SP),
        syn("c3", vec![c(CVariant::C3)], &p(), MANIP),
        syn("c3, mu true", vec![c(CVariant::C3)], &DW_DS, SP).mu(Mu::Top),
        syn("c3, mu not true", vec![c(CVariant::C3)], &ds(), MANIP).mu(Mu::NonTop),
        // The smallest known dw lie needs three variables and grouped literals.
        case("c3, mu not true, two bases", vec![c(CVariant::C3)], &dw(), MANIP)
            .syntax(&PROFILE_FAMILIES, &PROFILE_FAMILIES)
            .max_vars(3)
            .mu(Mu::NonTop)
            .size(two),
        syn("c4", vec![c(CVariant::C4)], &DRASTIC, MANIP),
        syn("c5", vec![c(CVariant::C5)], &p(), MANIP),
        syn("c5", vec![c(CVariant::C5)], &dw(), SP),
        syn("c5, mu true", vec![c(CVariant::C5)], &ds(), SP).mu(Mu::Top),
        syn("c5, mu not true", vec![c(CVariant::C5)], &ds(), MANIP).mu(Mu::NonTop),
        case("hatted operators", hats, &DRASTIC, SP),
    ]
    .into_iter()
    .map(|c| c.complete_profile().space(SpaceKind::Complete))
    .collect()
}

/// Result of auditing one claim.
#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub claim: String,
    pub statement: String,
    pub scope: String,
    pub bounds: Bounds,
    pub instances: u64,
    pub counterexamples: u64,
    pub verdict: &'static str,
    /// Every exercised cell agrees with the claim and at least one cell ran.
    pub matches: bool,
    pub cells: Vec<CellReport>,
}

/// Sweeps every case of `claim` under `bounds`.
pub fn audit(claim: &Claim, bounds: &Bounds) -> Result<AuditReport> {
    let mut cells = Vec::new();
    for case in &claim.cases {
        cells.extend(run_case(case, bounds)?);
    }
    let instances = cells.iter().map(|c| c.instances).sum();
    let counterexamples = cells.iter().map(|c| c.found).sum::<u64>();
    let exercised = cells.iter().any(|c| c.outcome != Outcome::Skipped);
    Ok(AuditReport {
        claim: claim.id.into(),
        statement: claim.statement.into(),
        scope: claim.scope.into(),
        bounds: *bounds,
        instances,
        counterexamples,
        verdict: if counterexamples == 0 { "confirmed-SP" } else { "counterexample-found" },
        matches: exercised && cells.iter().all(|c| c.matches),
        cells,
    })
}

impl AuditReport {
    pub fn render_text(&self) -> String {
        let b = &self.bounds;
        let mut s = String::new();
        let _ = writeln!(s, "claim {}: {}", self.claim, self.statement);
        let _ = writeln!(
            s,
            "bounds: vars {}..{}, agents 2..{}, mu {}, K {}{}",
            b.min_vars,
            b.vars,
            b.agents,
            if b.mu == super::sweep::MuMode::Top { "true only" } else { "all" },
            if b.k == super::sweep::KMode::Complete { "complete only" } else { "all" },
            match b.sample {
                Some(x) => format!(", sampled {} instances (seed {})", x.count, x.seed),
                None => String::new(),
            }
        );
        let _ = writeln!(s, "scope: {}", self.scope);
        for c in &self.cells {
            let mark = if c.matches { "ok" } else { "MISMATCH" };
            let _ = write!(
                s,
                "  [{mark}] {} / {} / {} / {}: expected {}, {} over {} instances",
                c.case,
                c.operator,
                c.index,
                c.space.id(),
                c.expectation,
                c.outcome.id(),
                c.instances
            );
            if c.found > 0 {
                let _ = write!(s, ", {} offending", c.found);
            }
            if let Some(n) = &c.note {
                let _ = write!(s, " ({n})");
            }
            s.push('\n');
            for ce in &c.counterexamples {
                let _ = write!(
                    s,
                    "      vars {} others [{}] mu {} K {}",
                    ce.vars,
                    ce.profile.join(", "),
                    ce.mu,
                    ce.k
                );
                for (tag, w) in [("", &ce.witness), (" other space", &ce.other)] {
                    match w {
                        Some(w) => {
                            let _ = write!(
                                s,
                                ";{tag} report {}: {} -> {} (merged {} -> {})",
                                w.candidate, w.index_truthful, w.index_lying, w.merged_truthful, w.merged_lying
                            );
                        }
                        None if tag.is_empty() && ce.other.is_some() => {
                            let _ = write!(s, "; no witness");
                        }
                        None => {}
                    }
                }
                s.push('\n');
            }
        }
        let _ = writeln!(
            s,
            "verdict: {} ({} instances, {} counterexamples); {}",
            self.verdict,
            self.instances,
            self.counterexamples,
            if self.matches { "matches the claim" } else { "does NOT match the claim" }
        );
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_id_is_registered() {
        for id in CLAIM_IDS {
            let c = claim(id).unwrap();
            assert_eq!(c.id, id);
            assert!(!c.cases.is_empty());
        }
        assert!(claim("T99").is_err());
    }

    #[test]
    fn small_sp_audit() {
        let c = claim("T2.1").unwrap();
        let r = audit(&c, &Bounds::new(2, 2)).unwrap();
        assert!(r.matches, "{}", r.render_text());
        assert_eq!(r.verdict, "confirmed-SP");
        assert!(r.instances > 0);
    }
}
