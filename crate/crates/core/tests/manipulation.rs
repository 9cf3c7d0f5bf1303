mod common;

use common::{all_sets, base, constraint, refs};
use merge_forge::logic::{parse_profile, Base, Constraint, ModelSet};
use merge_forge::manipulation::{
    audit, claim, find_manipulation, run_case, Bounds, Case, Expectation, Sample, SpaceKind, StrategySpace,
};
use merge_forge::metric::{Aggregator, Distance};
use merge_forge::{IndexId, Operator};
use proptest::prelude::*;

const ALL_INDEXES: [IndexId; 5] = [IndexId::Dw, IndexId::Ds, IndexId::P, IndexId::Dalal, IndexId::Wip];

/// Pairs (narrow, wide) with narrow's candidates a subset of wide's.
fn nested_spaces() -> Vec<(StrategySpace, StrategySpace)> {
    use StrategySpace::*;
    vec![
        (Erosion, SemanticAll),
        (Dilation, SemanticAll),
        (Complete, SemanticAll),
        (CompleteInK, Erosion),
        (CompleteInK, Complete),
    ]
}

fn constraint_for(op: Operator, mu: &Constraint) -> Constraint {
    if op.takes_constraint() {
        mu.clone()
    } else {
        Constraint::top(mu.width())
    }
}

#[test]
fn vacation_witnesses() {
    let doc = parse_profile(include_str!("../profiles/vacation.txt")).unwrap();
    let b = doc.profile.bases();
    let op = Operator::parse("dH-sum").unwrap();
    let w = find_manipulation(&[&b[1], &b[2]], &b[0], op, &doc.mu, IndexId::Ds, &StrategySpace::SemanticAll)
        .unwrap()
        .unwrap();
    assert_eq!(w.candidate.models().to_string(), "{000}");
    assert_eq!((w.index_truthful, w.index_lying), (0.into(), 1.into()));
    assert!(w.revalidate(&[&b[1], &b[2]], &b[0], op, &doc.mu, IndexId::Ds).unwrap());
    // The published lie is also a witness.
    let published = Base::from_models(ModelSet::from_bits(3, &["000", "001"]).unwrap(), None).unwrap();
    let space = StrategySpace::explicit(vec![published]).unwrap();
    assert!(find_manipulation(&[&b[1], &b[2]], &b[0], op, &doc.mu, IndexId::Ds, &space).unwrap().is_some());
    let none = find_manipulation(&[&b[1], &b[2]], &b[0], op, &doc.mu, IndexId::Ds, &StrategySpace::Dilation).unwrap();
    assert!(none.is_none());
}

#[test]
fn incomplete_agent_against_gmax() {
    let doc = parse_profile(include_str!("../profiles/incomplete.txt")).unwrap();
    let b = doc.profile.bases();
    let op = Operator::Model(Distance::Hamming, Aggregator::GMax);
    let w = find_manipulation(&[&b[1]], &b[0], op, &doc.mu, IndexId::Ds, &StrategySpace::SemanticAll)
        .unwrap()
        .unwrap();
    assert_eq!(w.candidate.models().to_string(), "{00}");
}

#[test]
fn a_satisfied_agent_has_nothing_to_gain() {
    let k = Base::from_models(ModelSet::full(2), None).unwrap();
    for op in Operator::all() {
        for id in ALL_INDEXES {
            let w = find_manipulation(&[&k], &k, op, &Constraint::top(2), id, &StrategySpace::SemanticAll).unwrap();
            assert!(w.is_none(), "{} {id}", op.name());
        }
    }
}

#[test]
fn a_top_base_does_not_change_verdicts() {
    let sets = all_sets(2);
    let top = Base::from_models(ModelSet::full(2), None).unwrap();
    let bases: Vec<Base> = sets.iter().map(|m| Base::from_models(m.clone(), None).unwrap()).collect();
    for op in Operator::model_based() {
        for other in &bases {
            for k in &bases {
                for mu in &sets {
                    let mu = Constraint::from_models(mu.clone()).unwrap();
                    for id in ALL_INDEXES {
                        let space = StrategySpace::SemanticAll;
                        let plain = find_manipulation(&[other], k, op, &mu, id, &space).unwrap();
                        let padded = find_manipulation(&[other, &top], k, op, &mu, id, &space).unwrap();
                        assert_eq!(plain.is_some(), padded.is_some(), "{} {id} {other:?} {k:?}", op.name());
                    }
                }
            }
        }
    }
}

#[test]
fn semantic_lies_reduce_to_erosion_for_sum_operators() {
    let sets = all_sets(2);
    let bases: Vec<Base> = sets.iter().map(|m| Base::from_models(m.clone(), None).unwrap()).collect();
    for d in Distance::ALL {
        let op = Operator::Model(d, Aggregator::Sum);
        for a in &bases {
            for b in &bases {
                for k in &bases {
                    for mu in &sets {
                        let mu = Constraint::from_models(mu.clone()).unwrap();
                        for id in [IndexId::Dw, IndexId::Ds] {
                            let all = find_manipulation(&[a, b], k, op, &mu, id, &StrategySpace::SemanticAll).unwrap();
                            let ero = find_manipulation(&[a, b], k, op, &mu, id, &StrategySpace::Erosion).unwrap();
                            assert_eq!(all.is_some(), ero.is_some());
                        }
                    }
                }
            }
        }
    }
    let c = claim("T11.erosion").unwrap();
    let r = audit(&c, &Bounds::new(3, 2).mu_top()).unwrap();
    assert!(r.matches, "{}", r.render_text());
    let mut sampled = Bounds::new(3, 2);
    sampled.min_vars = 3;
    sampled.sample = Some(Sample { count: 2000, seed: 11 });
    let r = audit(&c, &sampled).unwrap();
    assert!(r.matches, "{}", r.render_text());
}

#[test]
fn sweeps_are_deterministic() {
    let case = Case::new("det", vec![Operator::parse("dH-sum").unwrap()], vec![IndexId::Ds, IndexId::P], Expectation::Manipulable);
    let bounds = Bounds::new(2, 3);
    let a = run_case(&case, &bounds).unwrap();
    let b = run_case(&case, &bounds).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let mut sampled = Bounds::new(3, 2);
    sampled.min_vars = 3;
    sampled.sample = Some(Sample { count: 300, seed: 5 });
    let a = run_case(&case, &sampled).unwrap();
    let b = run_case(&case, &sampled).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    for cell in &a {
        cell.revalidate().unwrap();
    }
}

#[test]
fn bounds_are_enforced() {
    let c = claim("T2.1").unwrap();
    let mut b = Bounds::new(4, 3);
    b.ceiling = 1000;
    assert!(audit(&c, &b).is_err());
    assert!(claim("T99").is_err());
    assert!(SpaceKind::parse("sideways").is_err());
}

#[test]
fn flat_operators_need_a_true_constraint_case() {
    let case = Case::new("flat", vec![Operator::parse("ocf-max").unwrap()], vec![IndexId::P], Expectation::StrategyProof);
    assert!(run_case(&case, &Bounds::new(1, 2)).is_err());
}

proptest! {
    #[test]
    fn witnesses_revalidate(rest in prop::collection::vec(base(2), 1..3), k in base(2), mu in constraint(2)) {
        for op in Operator::all() {
            let mu = constraint_for(op, &mu);
            for id in ALL_INDEXES {
                let w = find_manipulation(&refs(&rest), &k, op, &mu, id, &StrategySpace::SemanticAll).unwrap();
                if let Some(w) = w {
                    prop_assert!(w.index_lying > w.index_truthful);
                    prop_assert!(w.revalidate(&refs(&rest), &k, op, &mu, id).unwrap());
                }
            }
        }
    }

    #[test]
    fn wider_spaces_keep_witnesses(rest in prop::collection::vec(base(3), 1..3), k in base(3), mu in constraint(3)) {
        for op in Operator::model_based() {
            for id in ALL_INDEXES {
                for (narrow, wide) in nested_spaces() {
                    let n = find_manipulation(&refs(&rest), &k, op, &mu, id, &narrow).unwrap();
                    if n.is_some() {
                        let w = find_manipulation(&refs(&rest), &k, op, &mu, id, &wide).unwrap();
                        prop_assert!(w.is_some(), "{} {} {:?} -> {:?}", op.name(), id, narrow.kind(), wide.kind());
                    }
                }
            }
        }
    }

    #[test]
    fn search_is_repeatable(rest in prop::collection::vec(base(3), 1..3), k in base(3), mu in constraint(3)) {
        let op = Operator::parse("dH-gmax").unwrap();
        let a = find_manipulation(&refs(&rest), &k, op, &mu, IndexId::P, &StrategySpace::SemanticAll).unwrap();
        let b = find_manipulation(&refs(&rest), &k, op, &mu, IndexId::P, &StrategySpace::SemanticAll).unwrap();
        prop_assert_eq!(a.map(|w| w.candidate), b.map(|w| w.candidate));
    }
}
