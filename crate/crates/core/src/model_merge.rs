//! Distance-based merging: the models of the constraint that minimise the
//! aggregated distance to the profile.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::logic::{Constraint, Interpretation, ModelSet};
use crate::metric::{AggregateValue, Aggregation, Aggregator, Distance, PseudoDistance};

/// One line of a ranking table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingRow {
    pub interpretation: Interpretation,
    pub distances: Vec<u32>,
    pub aggregate: AggregateValue,
    pub satisfies_mu: bool,
}

/// Per-interpretation breakdown of a distance-based merge, one row per
/// interpretation in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeRanking {
    pub rows: Vec<RankingRow>,
}

impl MergeRanking {
    /// The constraint rows with minimal aggregate.
    pub fn merged(&self) -> Result<ModelSet> {
        let width = self.rows.first().map(|r| r.interpretation.width()).unwrap_or(0);
        let mut best: Option<&AggregateValue> = None;
        for r in self.rows.iter().filter(|r| r.satisfies_mu) {
            best = match best {
                Some(b) if r.aggregate.compare(b)? != Ordering::Less => Some(b),
                _ => Some(&r.aggregate),
            };
        }
        let mut out = ModelSet::empty(width);
        if let Some(b) = best {
            for r in self.rows.iter().filter(|r| r.satisfies_mu) {
                if r.aggregate.compare(b)? == Ordering::Equal {
                    out.insert(r.interpretation);
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Row {
            interpretation: String,
            distances: Vec<u32>,
            aggregate: String,
            satisfies_mu: bool,
        }
        let rows: Vec<Row> = self
            .rows
            .iter()
            .map(|r| Row {
                interpretation: r.interpretation.to_string(),
                distances: r.distances.clone(),
                aggregate: r.aggregate.to_string(),
                satisfies_mu: r.satisfies_mu,
            })
            .collect();
        serde_json::to_value(rows).expect("rows serialise")
    }
}

fn check_inputs(bases: &[&ModelSet], mu: &Constraint) -> Result<()> {
    if bases.is_empty() {
        return Err(Error::Empty("profile"));
    }
    let w = mu.width();
    for b in bases {
        if b.width() != w {
            return Err(Error::WidthMismatch(b.width(), w));
        }
        if b.is_empty() {
            return Err(Error::InconsistentBase("<profile member>".into()));
        }
    }
    Ok(())
}

/// Full ranking table for any distance and aggregation.
pub fn ranking(
    bases: &[&ModelSet],
    mu: &Constraint,
    d: &dyn PseudoDistance,
    f: &dyn Aggregation,
) -> Result<MergeRanking> {
    check_inputs(bases, mu)?;
    let width = mu.width();
    let rows = (0..1u32 << width)
        .into_par_iter()
        .map(|i| {
            let w = Interpretation::new(i, width as u8);
            let distances: Vec<u32> =
                bases.iter().map(|k| crate::metric::dist_to_models(d, w, k)).collect();
            let aggregate = f.eval(&distances);
            RankingRow { interpretation: w, distances, aggregate, satisfies_mu: mu.models().contains(w) }
        })
        .collect();
    Ok(MergeRanking { rows })
}

/// Merged model set for any distance and aggregation.
pub fn merge_with(
    bases: &[&ModelSet],
    mu: &Constraint,
    d: &dyn PseudoDistance,
    f: &dyn Aggregation,
) -> Result<ModelSet> {
    check_inputs(bases, mu)?;
    let width = mu.width();
    let mut best: Option<AggregateValue> = None;
    let mut out = ModelSet::empty(width);
    let mut distances = Vec::with_capacity(bases.len());
    for w in mu.models().iter() {
        distances.clear();
        distances.extend(bases.iter().map(|k| crate::metric::dist_to_models(d, w, k)));
        let v = f.eval(&distances);
        let ord = match &best {
            None => Ordering::Less,
            Some(b) => v.compare(b)?,
        };
        match ord {
            Ordering::Less => {
                out = ModelSet::empty(width);
                out.insert(w);
                best = Some(v);
            }
            Ordering::Equal => out.insert(w),
            Ordering::Greater => {}
        }
    }
    Ok(out)
}

/// Merged model set for the shipped distances and aggregations.
pub fn merge(bases: &[&ModelSet], mu: &Constraint, d: Distance, f: Aggregator) -> Result<ModelSet> {
    check_inputs(bases, mu)?;
    Ok(merge_unchecked(bases, mu.models(), d, f))
}

fn dist(d: Distance, w: u32, k: &ModelSet) -> u32 {
    match d {
        Distance::Drastic => (!k.contains_index(w)) as u32,
        Distance::Hamming => k.indices().map(|m| (m ^ w).count_ones()).min().unwrap_or(u32::MAX),
    }
}

/// Inner loop shared with the sweeps; inputs are assumed valid.
pub(crate) fn merge_unchecked(bases: &[&ModelSet], mu: &ModelSet, d: Distance, f: Aggregator) -> ModelSet {
    let width = mu.width();
    let mut out = ModelSet::empty(width);
    match f {
        Aggregator::Sum | Aggregator::Max => {
            let mut best = u64::MAX;
            for w in mu.indices() {
                let ds = bases.iter().map(|k| dist(d, w, k) as u64);
                let v = if f == Aggregator::Sum { ds.sum() } else { ds.max().unwrap_or(0) };
                if v < best {
                    best = v;
                    out = ModelSet::empty(width);
                }
                if v == best {
                    out.insert_index(w);
                }
            }
        }
        Aggregator::GMax => {
            let mut best: Option<smallvec::SmallVec<[u32; 8]>> = None;
            for w in mu.indices() {
                let mut v: smallvec::SmallVec<[u32; 8]> = bases.iter().map(|k| dist(d, w, k)).collect();
                v.sort_unstable_by(|a, b| b.cmp(a));
                let ord = best.as_ref().map_or(Ordering::Less, |b| v.cmp(b));
                if ord == Ordering::Less {
                    best = Some(v);
                    out = ModelSet::empty(width);
                }
                if ord != Ordering::Greater {
                    out.insert_index(w);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(w: usize, bits: &[&str]) -> ModelSet {
        ModelSet::from_bits(w, bits).unwrap()
    }

    #[test]
    fn three_friends_with_hamming_sum() {
        let k1 = ms(3, &["000", "001", "111"]);
        let k2 = ms(3, &["001", "110"]);
        let k3 = ms(3, &["000", "110"]);
        let top = Constraint::top(3);
        let r = ranking(&[&k1, &k2, &k3], &top, &Distance::Hamming, &Aggregator::Sum).unwrap();
        let row = &r.rows[2];
        assert_eq!(row.interpretation.to_string(), "010");
        assert_eq!(row.distances, vec![1, 1, 1]);
        assert_eq!(row.aggregate, AggregateValue::Scalar(3));
        let m = merge(&[&k1, &k2, &k3], &top, Distance::Hamming, Aggregator::Sum).unwrap();
        assert_eq!(m.to_string(), "{000, 001, 110}");
        assert_eq!(r.merged().unwrap(), m);
    }

    #[test]
    fn leximax_picks_the_balanced_models() {
        let k1 = ms(3, &["001"]);
        let k2 = ms(3, &["111"]);
        let m = merge(&[&k1, &k2], &Constraint::top(3), Distance::Hamming, Aggregator::GMax).unwrap();
        assert_eq!(m.to_string(), "{011, 101}");
    }

    #[test]
    fn generic_and_builtin_paths_agree() {
        let k1 = ms(2, &["00", "01"]);
        let k2 = ms(2, &["10"]);
        let mu = Constraint::from_models(ms(2, &["01", "10", "11"])).unwrap();
        for d in Distance::ALL {
            for f in Aggregator::ALL {
                let a = merge(&[&k1, &k2], &mu, d, f).unwrap();
                let b = merge_with(&[&k1, &k2], &mu, &d, &f).unwrap();
                assert_eq!(a, b, "{}-{}", d.id(), f.id());
            }
        }
        let m = merge(&[&k1, &k2], &mu, Distance::Hamming, Aggregator::Sum).unwrap();
        assert_eq!(m.to_string(), "{10}");
    }

    #[test]
    fn rejects_bad_inputs() {
        let top = Constraint::top(2);
        assert!(merge(&[], &top, Distance::Hamming, Aggregator::Sum).is_err());
        let wide = ms(3, &["000"]);
        assert!(merge(&[&wide], &top, Distance::Hamming, Aggregator::Sum).is_err());
    }
}
