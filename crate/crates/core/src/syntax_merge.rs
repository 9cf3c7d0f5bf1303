//! Formula-based merging over maximal consistent subsets.

use crate::error::{Error, Result};
use crate::logic::{Base, Constraint, Formula, ModelSet};

/// Largest ambient set the subset enumeration accepts.
pub const MAX_AMBIENT: usize = 30;

#[derive(Debug, Clone)]
enum Key {
    /// Canonical DNF of the stored models, built lazily.
    Canonical,
    Explicit(Formula),
}

/// One element of a formula set.
#[derive(Debug, Clone)]
pub struct Element {
    key: Key,
    pub models: ModelSet,
    /// How many bases contributed this element. Set union keeps 1.
    pub weight: usize,
}

impl Element {
    pub fn formula(&self) -> Formula {
        match &self.key {
            Key::Canonical => Formula::canonical_dnf(&self.models),
            Key::Explicit(f) => f.clone(),
        }
    }

    fn same(&self, key: &Key, models: &ModelSet) -> bool {
        if self.models != *models {
            return false;
        }
        match (&self.key, key) {
            (Key::Canonical, Key::Canonical) => true,
            (Key::Explicit(f), Key::Explicit(g)) => f == g,
            (Key::Canonical, Key::Explicit(f)) | (Key::Explicit(f), Key::Canonical) => {
                *f == Formula::canonical_dnf(models)
            }
        }
    }
}

/// A set of formulas under structural identity, in first-insertion order.
#[derive(Debug, Clone, Default)]
pub struct FormulaSet {
    items: Vec<Element>,
}

impl FormulaSet {
    pub fn new() -> Self {
        FormulaSet::default()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.items
    }

    pub fn formulas(&self) -> Vec<Formula> {
        self.items.iter().map(Element::formula).collect()
    }

    fn add(&mut self, key: Key, models: ModelSet) {
        if !self.items.iter().any(|e| e.same(&key, &models)) {
            self.items.push(Element { key, models, weight: 1 });
        }
    }

    pub fn insert(&mut self, f: Formula, width: usize) {
        let m = f.models(width);
        self.add(Key::Explicit(f), m);
    }

    /// Set union of the formulas of every base.
    pub fn union_of(bases: &[&Base]) -> FormulaSet {
        let mut s = FormulaSet::new();
        for b in bases {
            if b.is_canonical() {
                s.add(Key::Canonical, b.models().clone());
            } else {
                for (f, m) in b.items().iter() {
                    s.add(Key::Explicit(f.clone()), m.clone());
                }
            }
        }
        s
    }

    /// The hatted bases of a profile, one element per distinct model set,
    /// weighted by how many bases share it. Hatted bases are single
    /// conjunctions, so elements with equal models are always selected
    /// together and merging them loses nothing.
    pub fn hatted_union(bases: &[&Base]) -> FormulaSet {
        let mut s = FormulaSet::new();
        for b in bases {
            match s.items.iter_mut().find(|e| e.models == *b.models()) {
                Some(e) => e.weight += 1,
                None => {
                    let key = if b.is_canonical() {
                        Key::Canonical
                    } else {
                        Key::Explicit(b.hat().formulas().remove(0))
                    };
                    s.items.push(Element { key, models: b.models().clone(), weight: 1 });
                }
            }
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Maximality {
    Inclusion,
    /// Maximal total weight among the inclusion-maximal subsets.
    Cardinality,
}

/// A maximal consistent subset. The constraint is always a member and is
/// left implicit; `members` index the ambient set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Maxcons {
    pub members: Vec<usize>,
    pub models: ModelSet,
}

impl Maxcons {
    pub fn formulas(&self, ambient: &FormulaSet) -> Vec<Formula> {
        self.members.iter().map(|&i| ambient.items[i].formula()).collect()
    }

    pub fn weight(&self, ambient: &FormulaSet) -> usize {
        self.members.iter().map(|&i| ambient.items[i].weight).sum()
    }
}

/// All maximal consistent subsets of `ambient ∪ {μ}` that contain `μ`,
/// in depth-first order (members taken before they are skipped).
pub fn maxcons(ambient: &FormulaSet, mu: &ModelSet, mode: Maximality) -> Result<Vec<Maxcons>> {
    if mu.is_empty() {
        return Err(Error::InconsistentConstraint);
    }
    if ambient.len() > MAX_AMBIENT {
        return Err(Error::AmbientTooLarge(ambient.len()));
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    search(&ambient.items, 0, mu.clone(), &mut chosen, &mut out);
    if mode == Maximality::Cardinality {
        let best = out.iter().map(|m| m.weight(ambient)).max().unwrap_or(0);
        out.retain(|m| m.weight(ambient) == best);
    }
    Ok(out)
}

fn search(
    items: &[Element],
    i: usize,
    cur: ModelSet,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Maxcons>,
) {
    if i == items.len() {
        let maximal = (0..items.len())
            .filter(|j| !chosen.contains(j))
            .all(|j| !items[j].models.intersects(&cur));
        if maximal {
            out.push(Maxcons { members: chosen.clone(), models: cur });
        }
        return;
    }
    let with = cur.intersection(&items[i].models);
    let fits = !with.is_empty();
    if fits {
        chosen.push(i);
        search(items, i + 1, with, chosen, out);
        chosen.pop();
    }
    // Skipping an element that is consistent with everything chosen so far
    // can still lead to a maximal set if a later element conflicts with it.
    search(items, i + 1, cur, chosen, out);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CVariant {
    C1,
    C3,
    C4,
    C5,
}

impl CVariant {
    pub const ALL: [CVariant; 4] = [CVariant::C1, CVariant::C3, CVariant::C4, CVariant::C5];

    pub fn id(self) -> &'static str {
        match self {
            CVariant::C1 => "c1",
            CVariant::C3 => "c3",
            CVariant::C4 => "c4",
            CVariant::C5 => "c5",
        }
    }
}

/// Merges the given formula set under `mu`.
///
/// C3 is the disjunction of the conjunctions of the `⊤`-maxcons that are
/// consistent with `mu`, and is not conjoined with `mu`, so it may lie
/// outside `[mu]` or be empty. C5 conjoins each kept maxcons with `mu`
/// and falls back to `mu` when none is kept.
pub fn merge_set(ambient: &FormulaSet, mu: &Constraint, variant: CVariant) -> Result<ModelSet> {
    let width = mu.width();
    let union = |ms: &[Maxcons], with_mu: bool| {
        let mut out = ModelSet::empty(width);
        for m in ms {
            if with_mu {
                out.union_with(&m.models.intersection(mu.models()));
            } else {
                out.union_with(&m.models);
            }
        }
        out
    };
    match variant {
        CVariant::C1 => Ok(union(&maxcons(ambient, mu.models(), Maximality::Inclusion)?, false)),
        CVariant::C4 => Ok(union(&maxcons(ambient, mu.models(), Maximality::Cardinality)?, false)),
        CVariant::C3 | CVariant::C5 => {
            let all = maxcons(ambient, &ModelSet::full(width), Maximality::Inclusion)?;
            let kept: Vec<Maxcons> =
                all.into_iter().filter(|m| m.models.intersects(mu.models())).collect();
            if variant == CVariant::C3 {
                Ok(union(&kept, false))
            } else if kept.is_empty() {
                Ok(mu.models().clone())
            } else {
                Ok(union(&kept, true))
            }
        }
    }
}

/// Formula-based merge on the set union of the bases' formulas.
pub fn merge_c(bases: &[&Base], mu: &Constraint, variant: CVariant) -> Result<ModelSet> {
    check(bases, mu)?;
    merge_set(&FormulaSet::union_of(bases), mu, variant)
}

/// Formula-based merge after replacing every base by its conjunction.
/// Cardinality counts every agent's hatted base, so two agents reporting
/// the same base weigh twice.
pub fn merge_c_hat(bases: &[&Base], mu: &Constraint, variant: CVariant) -> Result<ModelSet> {
    check(bases, mu)?;
    merge_set(&FormulaSet::hatted_union(bases), mu, variant)
}

fn check(bases: &[&Base], mu: &Constraint) -> Result<()> {
    if bases.is_empty() {
        return Err(Error::Empty("profile"));
    }
    match bases.iter().find(|b| b.width() != mu.width()) {
        Some(b) => Err(Error::WidthMismatch(b.width(), mu.width())),
        None => Ok(()),
    }
}
