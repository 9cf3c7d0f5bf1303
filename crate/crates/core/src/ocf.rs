//! Ordinal conditional functions, the pointwise κ-merging rules, and the
//! flat propositional operators they induce on two-strata inputs.

use crate::error::{Error, Result};
use crate::logic::{Base, Constraint, ModelSet};
use crate::operator::Operator;

/// A rank for every interpretation; lower is more plausible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ocf {
    width: u8,
    ranks: Vec<u32>,
}

impl Ocf {
    pub fn new(width: usize, ranks: Vec<u32>) -> Result<Self> {
        if ranks.len() != 1usize << width {
            return Err(Error::Invalid(format!(
                "an OCF over {width} variables needs {} ranks",
                1usize << width
            )));
        }
        Ok(Ocf { width: width as u8, ranks })
    }

    /// Rank 0 on the models of `k`, 1 elsewhere.
    pub fn from_models(k: &ModelSet) -> Self {
        let ranks = (0..k.universe_size() as u32).map(|i| (!k.contains_index(i)) as u32).collect();
        Ocf { width: k.width() as u8, ranks }
    }

    pub fn from_base(k: &Base) -> Self {
        Self::from_models(k.models())
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn rank(&self, index: u32) -> u32 {
        self.ranks[index as usize]
    }

    /// Ranks within {0, 1} with at least one 0.
    pub fn is_two_strata(&self) -> bool {
        self.ranks.iter().all(|r| *r <= 1) && self.ranks.contains(&0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OcfRule {
    Max,
    Min1,
    Min2,
    Sigma,
}

impl OcfRule {
    pub const ALL: [OcfRule; 4] = [OcfRule::Max, OcfRule::Min1, OcfRule::Min2, OcfRule::Sigma];

    pub fn id(self) -> &'static str {
        match self {
            OcfRule::Max => "max",
            OcfRule::Min1 => "min1",
            OcfRule::Min2 => "min2",
            OcfRule::Sigma => "sigma",
        }
    }

    fn combine(self, rs: &[u32]) -> u32 {
        let agree = rs.windows(2).all(|w| w[0] == w[1]);
        let min = rs.iter().copied().min().unwrap_or(0);
        match self {
            OcfRule::Max => rs.iter().copied().max().unwrap_or(0),
            OcfRule::Min1 if agree => 2 * rs[0],
            OcfRule::Min1 => 2 * min + 1,
            OcfRule::Min2 if agree => rs[0],
            OcfRule::Min2 => min + 1,
            OcfRule::Sigma => rs.iter().sum(),
        }
    }
}

/// Pointwise merge of a non-empty OCF profile.
pub fn merge_ocf(es: &[Ocf], rule: OcfRule) -> Result<Ocf> {
    let first = es.first().ok_or(Error::Empty("OCF profile"))?;
    if let Some(o) = es.iter().find(|o| o.width != first.width) {
        return Err(Error::WidthMismatch(o.width(), first.width()));
    }
    let mut buf = Vec::with_capacity(es.len());
    let ranks = (0..first.ranks.len())
        .map(|i| {
            buf.clear();
            buf.extend(es.iter().map(|o| o.ranks[i]));
            rule.combine(&buf)
        })
        .collect();
    Ok(Ocf { width: first.width, ranks })
}

/// Interpretations of minimal rank.
pub fn bel(k: &Ocf) -> ModelSet {
    let min = k.ranks.iter().copied().min().unwrap_or(0);
    let idx = (0..k.ranks.len() as u32).filter(|&i| k.ranks[i as usize] == min);
    ModelSet::from_indices(k.width(), idx).expect("indices are in range")
}

/// Merge of propositional bases through their two-strata embeddings.
pub fn flat_merge(bases: &[&ModelSet], rule: OcfRule) -> Result<ModelSet> {
    let es: Vec<Ocf> = bases.iter().map(|m| Ocf::from_models(m)).collect();
    Ok(bel(&merge_ocf(&es, rule)?))
}

/// Size of the symmetric difference between the two-strata embeddings of
/// `k` and `merged`, i.e. the summed rank gap.
pub fn rank_gap(k: &ModelSet, merged: &ModelSet) -> usize {
    let (a, b) = (Ocf::from_models(k), Ocf::from_models(merged));
    a.ranks.iter().zip(&b.ranks).map(|(x, y)| x.abs_diff(*y) as usize).sum()
}

/// Entailment test characterising pointwise non-improvement for one pair
/// of reports: `K ∧ ¬Δ(E⊔K) ⊨ ¬Δ(E⊔K′)` and `¬K ∧ Δ(E⊔K) ⊨ Δ(E⊔K′)`.
///
/// The equivalence with the pointwise property is established for the
/// OCF-induced operators; for the others this is the plain test.
pub fn check_ip_pair(
    op: Operator,
    e_rest: &[&Base],
    k: &Base,
    k2: &Base,
    mu: &Constraint,
) -> Result<bool> {
    let truthful = op.merge_with(e_rest, k, mu)?;
    let lying = op.merge_with(e_rest, k2, mu)?;
    Ok(ip_entailments(k.models(), &truthful, &lying))
}

pub(crate) fn ip_entailments(k: &ModelSet, truthful: &ModelSet, lying: &ModelSet) -> bool {
    let first = k.difference(truthful).is_subset(&lying.complement());
    let second = truthful.difference(k).is_subset(lying);
    first && second
}

/// Direct pointwise form: the rank gap to `K` never shrinks at any
/// interpretation when `K` is replaced.
pub fn ip_pointwise(k: &ModelSet, truthful: &ModelSet, lying: &ModelSet) -> bool {
    let (kk, t, l) = (Ocf::from_models(k), Ocf::from_models(truthful), Ocf::from_models(lying));
    (0..kk.ranks.len()).all(|i| t.ranks[i].abs_diff(kk.ranks[i]) <= l.ranks[i].abs_diff(kk.ranks[i]))
}
