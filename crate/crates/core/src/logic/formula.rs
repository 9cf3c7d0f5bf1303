use std::fmt;

use super::model_set::ModelSet;
use super::signature::{Interpretation, Signature};

/// Propositional formula. Atoms refer to variables by their position in
/// the governing signature. Equality is structural, with no normalisation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bottom,
    Atom(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Xor(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(v: usize) -> Formula {
        Formula::Atom(v)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn xor(a: Formula, b: Formula) -> Formula {
        Formula::Xor(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Left-associated conjunction; `Top` for an empty list.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    /// Left-associated disjunction; `Bottom` for an empty list.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bottom)
    }

    /// Conjunction of literals describing exactly one interpretation.
    pub fn canonical_term(w: Interpretation) -> Formula {
        Formula::conjunction((0..w.width()).map(|v| {
            if w.value(v) {
                Formula::Atom(v)
            } else {
                Formula::not(Formula::Atom(v))
            }
        }))
    }

    /// Disjunction of canonical terms in ascending order; `Bottom` when empty.
    pub fn canonical_dnf(models: &ModelSet) -> Formula {
        Formula::disjunction(models.iter().map(Formula::canonical_term))
    }

    pub fn eval(&self, w: Interpretation) -> bool {
        match self {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Atom(v) => w.value(*v),
            Formula::Not(a) => !a.eval(w),
            Formula::And(a, b) => a.eval(w) && b.eval(w),
            Formula::Or(a, b) => a.eval(w) || b.eval(w),
            Formula::Xor(a, b) => a.eval(w) != b.eval(w),
            Formula::Implies(a, b) => !a.eval(w) || b.eval(w),
            Formula::Iff(a, b) => a.eval(w) == b.eval(w),
        }
    }

    /// Largest variable index mentioned, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Formula::Top | Formula::Bottom => None,
            Formula::Atom(v) => Some(*v),
            Formula::Not(a) => a.max_var(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Xor(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => a.max_var().max(b.max_var()),
        }
    }

    /// Model set over `width` variables, computed with bitset algebra.
    pub fn models(&self, width: usize) -> ModelSet {
        match self {
            Formula::Top => ModelSet::full(width),
            Formula::Bottom => ModelSet::empty(width),
            Formula::Atom(v) => atom_models(*v, width),
            Formula::Not(a) => a.models(width).complement(),
            Formula::And(a, b) => a.models(width).intersection(&b.models(width)),
            Formula::Or(a, b) => a.models(width).union(&b.models(width)),
            Formula::Xor(a, b) => a.models(width).symmetric_difference(&b.models(width)),
            Formula::Implies(a, b) => a.models(width).complement().union(&b.models(width)),
            Formula::Iff(a, b) => {
                a.models(width).symmetric_difference(&b.models(width)).complement()
            }
        }
    }

    pub fn entails(&self, other: &Formula, width: usize) -> bool {
        self.models(width).is_subset(&other.models(width))
    }

    pub fn is_consistent(&self, width: usize) -> bool {
        !self.models(width).is_empty()
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> FormulaDisplay<'a> {
        FormulaDisplay { formula: self, sig }
    }

    pub fn render(&self, sig: &Signature) -> String {
        self.display(sig).to_string()
    }
}

fn atom_models(v: usize, width: usize) -> ModelSet {
    let shift = width - 1 - v;
    let size = 1u32 << width;
    ModelSet::from_indices(width, (0..size).filter(|i| (i >> shift) & 1 == 1))
        .expect("indices are in range")
}

// Binding strength, loosest first, matching the grammar.
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Xor(..) => 3,
        Formula::Or(..) => 4,
        Formula::And(..) => 5,
        Formula::Not(..) => 6,
        _ => 7,
    }
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    sig: &'a Signature,
}

impl FormulaDisplay<'_> {
    fn child(&self, f: &Formula, parens: bool, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if parens {
            out.write_str("(")?;
        }
        write_formula(f, self.sig, out)?;
        if parens {
            out.write_str(")")?;
        }
        Ok(())
    }
}

fn write_formula(f: &Formula, sig: &Signature, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let d = FormulaDisplay { formula: f, sig };
    let p = level(f);
    let (op, a, b, right_assoc) = match f {
        Formula::Top => return out.write_str("true"),
        Formula::Bottom => return out.write_str("false"),
        Formula::Atom(v) => {
            return match sig.names().get(*v) {
                Some(n) => out.write_str(n),
                None => write!(out, "?{v}"),
            }
        }
        Formula::Not(a) => {
            out.write_str("!")?;
            return d.child(a, level(a) < 6, out);
        }
        Formula::And(a, b) => (" & ", a, b, false),
        Formula::Or(a, b) => (" | ", a, b, false),
        Formula::Xor(a, b) => (" ^ ", a, b, false),
        Formula::Implies(a, b) => (" -> ", a, b, true),
        Formula::Iff(a, b) => (" <-> ", a, b, false),
    };
    if right_assoc {
        d.child(a, level(a) <= p, out)?;
        out.write_str(op)?;
        d.child(b, level(b) < p, out)
    } else {
        d.child(a, level(a) < p, out)?;
        out.write_str(op)?;
        d.child(b, level(b) <= p, out)
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self.formula, self.sig, f)
    }
}
