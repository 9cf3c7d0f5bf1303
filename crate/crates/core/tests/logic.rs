mod common;

use common::{base, consistent_formula, formula, model_set};
use merge_forge::logic::{
    canonical_cmp, entails, models, parse_formula, parse_profile, Base, ModelSet, Profile, Signature,
};
use merge_forge::Error;
use proptest::prelude::*;

fn sig(n: usize) -> Signature {
    Signature::alphabetic(n).unwrap()
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(f in formula(3)) {
        let s = sig(3);
        let text = f.render(&s);
        let back = parse_formula(&text, &s).unwrap();
        prop_assert_eq!(&back, &f, "{}", text);
        prop_assert_eq!(back.render(&s), text);
    }

    #[test]
    fn entailment_is_model_inclusion(f in formula(3), g in formula(3)) {
        let s = sig(3);
        prop_assert_eq!(entails(&f, &g, &s), models(&f, &s).is_subset(&models(&g, &s)));
    }

    #[test]
    fn hatting_keeps_the_models(fs in prop::collection::vec(consistent_formula(2), 1..4)) {
        let conj = fs.iter().cloned().reduce(merge_forge::Formula::and).unwrap();
        prop_assume!(conj.is_consistent(2));
        let k = Base::new(2, fs, None).unwrap();
        let hat = k.hat();
        prop_assert_eq!(hat.conjunction().models(2), k.models().clone());
        prop_assert_eq!(hat.hat(), hat);
    }

    #[test]
    fn canonical_order_ignores_construction_order(m in model_set(3)) {
        let mut idx: Vec<u32> = m.indices().collect();
        idx.reverse();
        let rebuilt = ModelSet::from_indices(3, idx).unwrap();
        prop_assert_eq!(&rebuilt, &m);
        prop_assert_eq!(rebuilt.to_string(), m.to_string());
        prop_assert_eq!(canonical_cmp(&rebuilt, &m), std::cmp::Ordering::Equal);
    }

    #[test]
    fn canonical_order_is_total(a in model_set(2), b in model_set(2), c in model_set(2)) {
        use std::cmp::Ordering::*;
        prop_assert_eq!(canonical_cmp(&a, &b), canonical_cmp(&b, &a).reverse());
        prop_assert_eq!(canonical_cmp(&a, &b) == Equal, a == b);
        if canonical_cmp(&a, &b) != Greater && canonical_cmp(&b, &c) != Greater {
            prop_assert_ne!(canonical_cmp(&a, &c), Greater);
        }
    }

    #[test]
    fn profiles_are_multisets(bases in prop::collection::vec(base(2), 1..5), seed in any::<u64>()) {
        let mut shuffled = bases.clone();
        let n = shuffled.len();
        shuffled.rotate_left((seed as usize) % n);
        shuffled.swap(0, (seed as usize / 7) % n);
        prop_assert_eq!(Profile::new(bases).unwrap(), Profile::new(shuffled).unwrap());
    }
}

#[test]
fn bit_strings_follow_declared_order() {
    let s = Signature::new(["l", "s", "m"]).unwrap();
    let f = parse_formula("l & !s & m", &s).unwrap();
    assert_eq!(models(&f, &s).to_string(), "{101}");
}

#[test]
fn profile_with_an_unlike_base_differs() {
    let a = Base::from_models(ModelSet::from_bits(1, &["0"]).unwrap(), None).unwrap();
    let b = Base::from_models(ModelSet::from_bits(1, &["1"]).unwrap(), None).unwrap();
    let p = Profile::new(vec![a.clone(), a.clone(), b.clone()]).unwrap();
    let q = Profile::new(vec![a, b.clone(), b]).unwrap();
    assert_ne!(p, q);
}

#[test]
fn inconsistent_bases_are_rejected() {
    let s = sig(1);
    let fs = vec![parse_formula("a", &s).unwrap(), parse_formula("!a", &s).unwrap()];
    assert!(Base::new(1, fs, None).is_err());
    let doc = "vars a\nbase K1 formulas { a ; !a }\n";
    assert!(parse_profile(doc).is_err());
}

#[test]
fn parse_errors_carry_positions() {
    let s = sig(2);
    assert!(matches!(parse_formula("a &", &s), Err(Error::Syntax { .. })));
    assert!(matches!(parse_formula("a & z", &s), Err(Error::UnknownVariable(_))));
}
