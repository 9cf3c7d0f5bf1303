use std::borrow::Cow;
use std::sync::Arc;

use super::formula::Formula;
use super::model_set::ModelSet;
use super::signature::Signature;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
enum Repr {
    /// The singleton base holding the canonical DNF of its models. The
    /// formula is only built when someone asks for it.
    Canonical,
    Formulas(Arc<[(Formula, ModelSet)]>),
}

/// A finite, conjunctively consistent set of formulas.
#[derive(Clone, Debug)]
pub struct Base {
    repr: Repr,
    models: ModelSet,
    label: Option<String>,
}

impl Base {
    /// Builds a base from formulas, dropping structural duplicates while
    /// keeping first-occurrence order.
    pub fn new(width: usize, formulas: Vec<Formula>, label: Option<String>) -> Result<Self> {
        let shown = label.clone().unwrap_or_else(|| "<unnamed>".into());
        if formulas.is_empty() {
            return Err(Error::Invalid(format!("base `{shown}` has no formulas")));
        }
        let mut items: Vec<(Formula, ModelSet)> = Vec::with_capacity(formulas.len());
        for f in formulas {
            if let Some(v) = f.max_var() {
                if v >= width {
                    return Err(Error::Invalid(format!("variable index {v} outside signature")));
                }
            }
            if items.iter().any(|(g, _)| *g == f) {
                continue;
            }
            let m = f.models(width);
            items.push((f, m));
        }
        let mut models = ModelSet::full(width);
        for (_, m) in &items {
            models.intersect_with(m);
        }
        if models.is_empty() {
            return Err(Error::InconsistentBase(shown));
        }
        Ok(Base { repr: Repr::Formulas(items.into()), models, label })
    }

    /// The singleton base whose formula is the canonical DNF of `models`.
    pub fn from_models(models: ModelSet, label: Option<String>) -> Result<Self> {
        if models.is_empty() {
            return Err(Error::InconsistentBase(label.unwrap_or_else(|| "<unnamed>".into())));
        }
        Ok(Base { repr: Repr::Canonical, models, label })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn width(&self) -> usize {
        self.models.width()
    }

    /// Models of the conjunction of the base.
    pub fn models(&self) -> &ModelSet {
        &self.models
    }

    pub fn is_canonical(&self) -> bool {
        matches!(self.repr, Repr::Canonical)
    }

    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Canonical => 1,
            Repr::Formulas(items) => items.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_complete(&self) -> bool {
        self.models.len() == 1
    }

    /// Formulas paired with their own model sets, in insertion order.
    pub fn items(&self) -> Cow<'_, [(Formula, ModelSet)]> {
        match &self.repr {
            Repr::Canonical => {
                Cow::Owned(vec![(Formula::canonical_dnf(&self.models), self.models.clone())])
            }
            Repr::Formulas(items) => Cow::Borrowed(items),
        }
    }

    pub fn formulas(&self) -> Vec<Formula> {
        self.items().iter().map(|(f, _)| f.clone()).collect()
    }

    /// The left-associated conjunction of the formulas.
    pub fn conjunction(&self) -> Formula {
        Formula::conjunction(self.formulas())
    }

    /// The singleton base holding the conjunction. A singleton is returned
    /// unchanged, so hatting is idempotent.
    pub fn hat(&self) -> Base {
        if self.len() == 1 {
            return self.clone();
        }
        let f = self.conjunction();
        Base {
            repr: Repr::Formulas(vec![(f, self.models.clone())].into()),
            models: self.models.clone(),
            label: self.label.clone(),
        }
    }

    /// Set-of-formulas equality under structural identity.
    pub fn same_formulas(&self, other: &Base) -> bool {
        if self.width() != other.width() || self.len() != other.len() {
            return false;
        }
        if self.is_canonical() && other.is_canonical() {
            return self.models == other.models;
        }
        let (a, b) = (self.items(), other.items());
        a.iter().all(|(f, _)| b.iter().any(|(g, _)| f == g))
    }

    /// Renders as `{f1; f2}`.
    pub fn render(&self, sig: &Signature) -> String {
        let parts: Vec<String> = self.items().iter().map(|(f, _)| f.render(sig)).collect();
        format!("{{{}}}", parts.join("; "))
    }
}

impl PartialEq for Base {
    fn eq(&self, other: &Self) -> bool {
        self.same_formulas(other)
    }
}

impl Eq for Base {}

/// A non-empty multiset of bases.
#[derive(Clone, Debug)]
pub struct Profile {
    bases: Vec<Base>,
}

impl Profile {
    pub fn new(bases: Vec<Base>) -> Result<Self> {
        let Some(first) = bases.first() else {
            return Err(Error::Empty("profile"));
        };
        let w = first.width();
        if let Some(b) = bases.iter().find(|b| b.width() != w) {
            return Err(Error::WidthMismatch(b.width(), w));
        }
        Ok(Profile { bases })
    }

    pub fn bases(&self) -> &[Base] {
        &self.bases
    }

    pub fn refs(&self) -> Vec<&Base> {
        self.bases.iter().collect()
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn width(&self) -> usize {
        self.bases[0].width()
    }

    /// Multiset union with one more base.
    pub fn with(&self, base: Base) -> Profile {
        let mut bases = self.bases.clone();
        bases.push(base);
        Profile { bases }
    }

    pub fn conjunction_models(&self) -> ModelSet {
        let mut m = ModelSet::full(self.width());
        for b in &self.bases {
            m.intersect_with(b.models());
        }
        m
    }

    pub fn disjunction_models(&self) -> ModelSet {
        let mut m = ModelSet::empty(self.width());
        for b in &self.bases {
            m.union_with(b.models());
        }
        m
    }
}

impl PartialEq for Profile {
    fn eq(&self, other: &Self) -> bool {
        if self.bases.len() != other.bases.len() {
            return false;
        }
        let mut used = vec![false; other.bases.len()];
        self.bases.iter().all(|b| {
            match (0..other.bases.len()).find(|&j| !used[j] && other.bases[j] == *b) {
                Some(j) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
    }
}

/// A consistent integrity constraint with its models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    formula: Formula,
    models: ModelSet,
}

impl Constraint {
    pub fn new(formula: Formula, width: usize) -> Result<Self> {
        let models = formula.models(width);
        if models.is_empty() {
            return Err(Error::InconsistentConstraint);
        }
        Ok(Constraint { formula, models })
    }

    pub fn top(width: usize) -> Self {
        Constraint { formula: Formula::Top, models: ModelSet::full(width) }
    }

    /// `true` for the full set, the canonical DNF otherwise.
    pub fn from_models(models: ModelSet) -> Result<Self> {
        if models.is_empty() {
            return Err(Error::InconsistentConstraint);
        }
        let formula = if models.is_full() { Formula::Top } else { Formula::canonical_dnf(&models) };
        Ok(Constraint { formula, models })
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn models(&self) -> &ModelSet {
        &self.models
    }

    pub fn width(&self) -> usize {
        self.models.width()
    }

    /// Whether the constraint is equivalent to `true`.
    pub fn is_top(&self) -> bool {
        self.models.is_full()
    }
}
