//! Registry of the shipped merging operators.

use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{Base, Constraint, ModelSet};
use crate::metric::{Aggregator, Distance};
use crate::model_merge;
use crate::ocf::{self, OcfRule};
use crate::syntax_merge::{self, CVariant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    /// Distance-based merging.
    Model(Distance, Aggregator),
    /// Formula-based merging, optionally on hatted bases.
    Formula { variant: CVariant, hatted: bool },
    /// Two-strata OCF merging without integrity constraints.
    Flat(OcfRule),
}

impl Operator {
    pub fn all() -> Vec<Operator> {
        let mut out = Vec::new();
        for d in [Distance::Hamming, Distance::Drastic] {
            for f in [Aggregator::Sum, Aggregator::GMax, Aggregator::Max] {
                out.push(Operator::Model(d, f));
            }
        }
        for hatted in [false, true] {
            for variant in CVariant::ALL {
                out.push(Operator::Formula { variant, hatted });
            }
        }
        for r in OcfRule::ALL {
            out.push(Operator::Flat(r));
        }
        out
    }

    pub fn model_based() -> Vec<Operator> {
        Self::all().into_iter().filter(|o| matches!(o, Operator::Model(..))).collect()
    }

    pub fn name(&self) -> String {
        match self {
            Operator::Model(d, f) => format!("{}-{}", d.id(), f.id()),
            Operator::Formula { variant, hatted } => {
                format!("{}{}", if *hatted { "h" } else { "" }, variant.id())
            }
            Operator::Flat(r) => format!("ocf-{}", r.id()),
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::all()
            .into_iter()
            .find(|o| o.name() == name)
            .ok_or_else(|| Error::UnknownName { kind: "operator", name: name.into() })
    }

    /// Whether the result depends on each base only through its models.
    pub fn is_semantic(&self) -> bool {
        !matches!(self, Operator::Formula { hatted: false, .. })
    }

    /// Whether the operator accepts a constraint other than `true`.
    pub fn takes_constraint(&self) -> bool {
        !matches!(self, Operator::Flat(_))
    }

    /// Whether the merged base can be inconsistent.
    pub fn may_be_empty(&self) -> bool {
        matches!(self, Operator::Formula { variant: CVariant::C3, .. })
    }

    pub fn merge(&self, bases: &[&Base], mu: &Constraint) -> Result<ModelSet> {
        match self {
            Operator::Model(d, f) => {
                let ms: Vec<&ModelSet> = bases.iter().map(|b| b.models()).collect();
                model_merge::merge(&ms, mu, *d, *f)
            }
            Operator::Formula { variant, hatted: false } => syntax_merge::merge_c(bases, mu, *variant),
            Operator::Formula { variant, hatted: true } => syntax_merge::merge_c_hat(bases, mu, *variant),
            Operator::Flat(r) => {
                if !mu.is_top() {
                    return Err(Error::ConstraintNotAllowed(self.name()));
                }
                if bases.is_empty() {
                    return Err(Error::Empty("profile"));
                }
                if let Some(b) = bases.iter().find(|b| b.width() != mu.width()) {
                    return Err(Error::WidthMismatch(b.width(), mu.width()));
                }
                let ms: Vec<&ModelSet> = bases.iter().map(|b| b.models()).collect();
                ocf::flat_merge(&ms, *r)
            }
        }
    }

    /// Merge of `e_rest ⊔ {k}`.
    pub fn merge_with(&self, e_rest: &[&Base], k: &Base, mu: &Constraint) -> Result<ModelSet> {
        let mut all: Vec<&Base> = e_rest.to_vec();
        all.push(k);
        self.merge(&all, mu)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
