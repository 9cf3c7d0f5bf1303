#![allow(dead_code)]

use merge_forge::logic::{Base, Constraint, Formula, ModelSet};
use proptest::prelude::*;

/// Non-empty model sets over `width` variables.
pub fn model_set(width: usize) -> impl Strategy<Value = ModelSet> {
    let top = 1u64 << (1u32 << width);
    (1..top).prop_map(move |w| ModelSet::from_word(width, w))
}

pub fn base(width: usize) -> impl Strategy<Value = Base> {
    model_set(width).prop_map(|m| Base::from_models(m, None).unwrap())
}

pub fn profile(width: usize, max_agents: usize) -> impl Strategy<Value = Vec<Base>> {
    prop::collection::vec(base(width), 1..=max_agents)
}

pub fn constraint(width: usize) -> impl Strategy<Value = Constraint> {
    model_set(width).prop_map(|m| Constraint::from_models(m).unwrap())
}

pub fn formula(width: usize) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Top),
        Just(Formula::Bottom),
        (0..width).prop_map(Formula::atom),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::xor(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

/// Consistent formulas only.
pub fn consistent_formula(width: usize) -> impl Strategy<Value = Formula> {
    formula(width).prop_filter("consistent", move |f| f.is_consistent(width))
}

/// All non-empty model sets over `width` variables, in word order.
pub fn all_sets(width: usize) -> Vec<ModelSet> {
    (1..1u64 << (1u32 << width)).map(|w| ModelSet::from_word(width, w)).collect()
}

pub fn refs(bases: &[Base]) -> Vec<&Base> {
    bases.iter().collect()
}
