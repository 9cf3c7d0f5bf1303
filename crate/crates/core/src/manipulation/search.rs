//! The single-instance manipulation oracle.

use serde_json::json;

use super::strategy::StrategySpace;
use crate::error::{Error, Result};
use crate::logic::{parse_formula, Base, Constraint, ModelSet, Signature};
use crate::ocf::rank_gap;
use crate::operator::Operator;
use crate::satisfaction::{index_value, render_value, IndexId, IndexValue};

/// A report that strictly raises the agent's index.
#[derive(Debug, Clone)]
pub struct ManipulationWitness {
    pub candidate: Base,
    pub index_truthful: IndexValue,
    pub index_lying: IndexValue,
    pub merged_truthful: ModelSet,
    pub merged_lying: ModelSet,
}

impl ManipulationWitness {
    /// Recomputes both merges and both index values from scratch.
    pub fn revalidate(
        &self,
        e_rest: &[&Base],
        k: &Base,
        op: Operator,
        mu: &Constraint,
        id: IndexId,
    ) -> Result<bool> {
        let truthful = op.merge_with(e_rest, k, mu)?;
        let lying = op.merge_with(e_rest, &self.candidate, mu)?;
        let before = index_value(id, k.models(), &truthful)?;
        let after = index_value(id, k.models(), &lying)?;
        Ok(after > before
            && before == self.index_truthful
            && after == self.index_lying
            && truthful == self.merged_truthful
            && lying == self.merged_lying)
    }

    pub fn render_candidate(&self, sig: &Signature) -> String {
        render_base(&self.candidate, sig)
    }

    pub fn to_json(&self, sig: &Signature) -> serde_json::Value {
        json!({
            "candidate": render_base(&self.candidate, sig),
            "candidate_models": self.candidate.models().to_string(),
            "index_truthful": render_value(&self.index_truthful),
            "index_lying": render_value(&self.index_lying),
            "merged_truthful": self.merged_truthful.to_string(),
            "merged_lying": self.merged_lying.to_string(),
        })
    }
}

/// Model list for canonical bases, formula list otherwise.
pub fn render_base(b: &Base, sig: &Signature) -> String {
    if b.is_canonical() {
        b.models().to_string()
    } else {
        b.render(sig)
    }
}

/// Reads back a base written by [`render_base`]: `{00, 01}` is a model
/// list, anything else a `;`-separated formula list.
pub fn parse_rendered_base(text: &str, sig: &Signature) -> Result<Base> {
    let t = text.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Invalid(format!("not a rendered base: `{t}`")))?;
    let width = sig.count();
    if inner.chars().all(|c| matches!(c, '0' | '1' | ',' | ' ')) {
        return Base::from_models(ModelSet::parse(width, t)?, None);
    }
    let fs = inner.split(';').map(|f| parse_formula(f.trim(), sig)).collect::<Result<Vec<_>>>()?;
    Base::new(width, fs, None)
}

/// First candidate of `space`, in canonical order, that strictly raises
/// index `id` for the agent with base `k` facing the other bases `e_rest`.
pub fn find_manipulation(
    e_rest: &[&Base],
    k: &Base,
    op: Operator,
    mu: &Constraint,
    id: IndexId,
    space: &StrategySpace,
) -> Result<Option<ManipulationWitness>> {
    let truthful = op.merge_with(e_rest, k, mu)?;
    let before = index_value(id, k.models(), &truthful)?;
    if before == IndexValue::from_integer(1) {
        return Ok(None);
    }
    for cand in space.candidates(k) {
        let lying = op.merge_with(e_rest, &cand, mu)?;
        let after = index_value(id, k.models(), &lying)?;
        if after > before {
            return Ok(Some(ManipulationWitness {
                candidate: cand,
                index_truthful: before,
                index_lying: after,
                merged_truthful: truthful,
                merged_lying: lying,
            }));
        }
    }
    Ok(None)
}

/// First candidate that strictly shrinks the summed rank gap between the
/// agent's two-strata embedding and the merged one, computed directly
/// rather than through an index.
pub fn find_rank_gap_improvement(
    e_rest: &[&Base],
    k: &Base,
    op: Operator,
    mu: &Constraint,
    space: &StrategySpace,
) -> Result<Option<Base>> {
    let truthful = op.merge_with(e_rest, k, mu)?;
    let before = rank_gap(k.models(), &truthful);
    for cand in space.candidates(k) {
        let lying = op.merge_with(e_rest, &cand, mu)?;
        if rank_gap(k.models(), &lying) < before {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_profile;
    use crate::metric::{Aggregator, Distance};

    const EX3: &str = "vars l s m\nbase K1 models { 000, 001, 111 }\nbase K2 models { 001, 110 }\nbase K3 models { 000, 110 }\n";

    #[test]
    fn erosion_lie_for_the_strong_index() {
        let d = parse_profile(EX3).unwrap();
        let b = d.profile.bases();
        let op = Operator::Model(Distance::Hamming, Aggregator::Sum);
        let w = find_manipulation(&[&b[1], &b[2]], &b[0], op, &d.mu, IndexId::Ds, &StrategySpace::Erosion)
            .unwrap()
            .unwrap();
        // {000} precedes the published lie {000, 001} in canonical order.
        assert_eq!(w.candidate.models().to_string(), "{000}");
        assert_eq!(w.index_truthful, IndexValue::from_integer(0));
        assert_eq!(w.index_lying, IndexValue::from_integer(1));
        assert!(w.revalidate(&[&b[1], &b[2]], &b[0], op, &d.mu, IndexId::Ds).unwrap());
        let published = Base::from_models(ModelSet::from_bits(3, &["000", "001"]).unwrap(), None).unwrap();
        let space = StrategySpace::explicit(vec![published]).unwrap();
        let w = find_manipulation(&[&b[1], &b[2]], &b[0], op, &d.mu, IndexId::Ds, &space).unwrap().unwrap();
        assert_eq!(w.merged_lying.to_string(), "{000, 001}");
        assert_eq!((w.index_truthful, w.index_lying), (0.into(), 1.into()));
        let none =
            find_manipulation(&[&b[1], &b[2]], &b[0], op, &d.mu, IndexId::Ds, &StrategySpace::Dilation).unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn rendered_bases_read_back() {
        let sig = Signature::alphabetic(3).unwrap();
        for text in ["{000, 011}", "{a & !b; c}", "{!a & !b & !c | a & b & c & true}"] {
            let b = parse_rendered_base(text, &sig).unwrap();
            assert_eq!(render_base(&b, &sig), text);
        }
        assert!(parse_rendered_base("a & b", &sig).is_err());
    }

    #[test]
    fn weak_index_under_a_constraint() {
        let doc = "vars a b\nmu a | b\nbase K1 models { 00, 01 }\nbase K2 models { 10 }\n";
        let d = parse_profile(doc).unwrap();
        let b = d.profile.bases();
        let op = Operator::Model(Distance::Hamming, Aggregator::Sum);
        let w = find_manipulation(&[&b[1]], &b[0], op, &d.mu, IndexId::Dw, &StrategySpace::SemanticAll)
            .unwrap()
            .unwrap();
        assert_eq!(w.candidate.models().to_string(), "{01}");
        assert_eq!((w.index_truthful, w.index_lying), (0.into(), 1.into()));
    }
}
