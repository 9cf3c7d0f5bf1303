//! Syntactic presentations of a model set, used to sweep operators whose
//! result depends on how a base is written.

use super::strategy::StrategySpace;
use crate::logic::{Base, Formula, ModelSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `{dnf(S)}`.
    Canonical,
    /// The literals of a cube `S` other than `W`, grouped into conjunctions
    /// in every possible way (a single group only when `S` is not a
    /// singleton, where it would repeat the canonical form).
    Split,
    /// `{dnf(S), dnf(S) & true}`.
    Padded,
    /// `{dnf(S), dnf(T)}` for every strict superset `T` of `S`.
    Augmented,
}

impl Family {
    pub fn id(self) -> &'static str {
        match self {
            Family::Canonical => "canonical",
            Family::Split => "split",
            Family::Padded => "padded",
            Family::Augmented => "augmented",
        }
    }
}

/// The literals fixed across `m`, if `m` is exactly the set they describe.
pub fn cube_literals(m: &ModelSet) -> Option<Vec<Formula>> {
    let width = m.width();
    let mut lits = Vec::new();
    let mut fixed = 0usize;
    let first = m.first()?;
    for v in 0..width {
        let val = first.value(v);
        if m.iter().all(|w| w.value(v) == val) {
            fixed += 1;
            lits.push(if val { Formula::atom(v) } else { Formula::not(Formula::atom(v)) });
        }
    }
    (m.len() == 1usize << (width - fixed)).then_some(lits)
}

/// Set partitions of `0..n`, blocks in first-member order, enumerated by
/// restricted growth strings.
fn groupings(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// Presentations of `m` in one family, in canonical order.
pub fn presentations(m: &ModelSet, family: Family) -> Vec<Base> {
    let width = m.width();
    match family {
        Family::Canonical => vec![Base::from_models(m.clone(), None).expect("non-empty")],
        Family::Split => match cube_literals(m) {
            Some(lits) if !lits.is_empty() => groupings(lits.len())
                .into_iter()
                .filter(|blocks| blocks.len() >= 2 || m.len() > 1)
                .map(|blocks| {
                    let fs = blocks.iter().map(|b| Formula::conjunction(b.iter().map(|&i| lits[i].clone())));
                    Base::new(width, fs.collect(), None).expect("cube literals are consistent")
                })
                .collect(),
            _ => vec![],
        },
        Family::Padded => {
            let f = Formula::canonical_dnf(m);
            let padded = Formula::and(f.clone(), Formula::Top);
            vec![Base::new(width, vec![f, padded], None).expect("consistent")]
        }
        Family::Augmented => {
            let f = Formula::canonical_dnf(m);
            let rest: Vec<u32> = m.complement().indices().collect();
            super::strategy::subsets(width, rest, 1, None)
                .map(|t| {
                    let g = Formula::canonical_dnf(&t.union(m));
                    Base::new(width, vec![f.clone(), g], None).expect("consistent")
                })
                .collect()
        }
    }
}

/// Every presentation of every non-empty subset of `W` (or only of the
/// singletons), grouped by model set in canonical order.
pub fn universe(width: usize, families: &[Family], complete_only: bool) -> Vec<Base> {
    let max = complete_only.then_some(1);
    let mut out = Vec::new();
    let full = ModelSet::full(width);
    let sets = StrategySpace::SemanticAll.model_sets(&full).expect("semantic");
    for m in sets.filter(|m| max.is_none_or(|x| m.len() <= x)) {
        for f in families {
            out.extend(presentations(&m, *f));
        }
    }
    out
}
