//! Satisfaction indexes: how pleased an agent with base `K` is with a
//! merged model set, as an exact rational in `[0, 1]`.

use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::logic::ModelSet;

pub type IndexValue = Ratio<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexId {
    /// 1 when `K` is consistent with the merged base.
    Dw,
    /// 1 when the merged base entails `K` (vacuously so when it is empty).
    Ds,
    /// Share of merged models that are models of `K`.
    P,
    /// One minus the normalised Hamming distance between the two bases.
    Dalal,
    /// Inverse of one plus the size of the symmetric difference.
    Wip,
}

impl IndexId {
    pub const ALL: [IndexId; 5] = [IndexId::Dw, IndexId::Ds, IndexId::P, IndexId::Dalal, IndexId::Wip];

    pub fn id(self) -> &'static str {
        match self {
            IndexId::Dw => "dw",
            IndexId::Ds => "ds",
            IndexId::P => "p",
            IndexId::Dalal => "dalal",
            IndexId::Wip => "wip",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        IndexId::ALL
            .into_iter()
            .find(|i| i.id() == s)
            .ok_or_else(|| Error::UnknownName { kind: "index", name: s.into() })
    }
}

impl fmt::Display for IndexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Value of index `id` for an agent with models `k` facing `merged`.
///
/// The Dalal index of an empty merged set is undefined; it is reported as 0
/// (see [`dalal_undefined`]).
pub fn index_value(id: IndexId, k: &ModelSet, merged: &ModelSet) -> Result<IndexValue> {
    if k.width() != merged.width() {
        return Err(Error::WidthMismatch(k.width(), merged.width()));
    }
    if k.is_empty() {
        return Err(Error::InconsistentBase("agent".into()));
    }
    Ok(value_unchecked(id, k, merged))
}

/// Whether the Dalal index falls back to its convention for `merged`.
pub fn dalal_undefined(merged: &ModelSet) -> bool {
    merged.is_empty()
}

fn flag(b: bool) -> IndexValue {
    Ratio::from_integer(b as u64)
}

pub(crate) fn value_unchecked(id: IndexId, k: &ModelSet, merged: &ModelSet) -> IndexValue {
    match id {
        IndexId::Dw => flag(k.intersects(merged)),
        IndexId::Ds => flag(merged.is_subset(k)),
        IndexId::P => {
            let total = merged.len() as u64;
            if total == 0 {
                Ratio::from_integer(0)
            } else {
                Ratio::new(k.intersection_len(merged) as u64, total)
            }
        }
        IndexId::Dalal => {
            if merged.is_empty() {
                return Ratio::from_integer(0);
            }
            let n = k.width() as u64;
            let dist = min_hamming(k, merged) as u64;
            Ratio::from_integer(1) - Ratio::new(dist, n)
        }
        IndexId::Wip => Ratio::new(1, k.symmetric_difference(merged).len() as u64 + 1),
    }
}

/// Smallest Hamming distance between a member of `a` and a member of `b`.
pub fn min_hamming(a: &ModelSet, b: &ModelSet) -> u32 {
    if a.intersects(b) {
        return 0;
    }
    let mut best = u32::MAX;
    for x in b.indices() {
        for y in a.indices() {
            best = best.min((x ^ y).count_ones());
            if best == 1 {
                return 1;
            }
        }
    }
    best
}

/// `a/b` in lowest terms, or a bare integer.
pub fn render_value(v: &IndexValue) -> String {
    v.to_string()
}

/// Decimal rendering to six places.
pub fn render_decimal(v: &IndexValue) -> String {
    let scaled = (*v.numer() as u128 * 1_000_000 * 2 + *v.denom() as u128) / (*v.denom() as u128 * 2);
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(w: usize, bits: &[&str]) -> ModelSet {
        ModelSet::from_bits(w, bits).unwrap()
    }

    fn r(n: u64, d: u64) -> IndexValue {
        Ratio::new(n, d)
    }

    #[test]
    fn strong_drastic_index_before_and_after_lying() {
        let k1 = ms(3, &["000", "001", "111"]);
        assert_eq!(index_value(IndexId::Ds, &k1, &ms(3, &["000", "001", "110"])).unwrap(), r(0, 1));
        assert_eq!(index_value(IndexId::Ds, &k1, &ms(3, &["000", "001"])).unwrap(), r(1, 1));
        assert_eq!(index_value(IndexId::Ds, &k1, &ModelSet::empty(3)).unwrap(), r(1, 1));
    }

    #[test]
    fn probabilistic_index() {
        let k1 = ms(3, &["000", "001", "010", "100"]);
        let six = ms(3, &["001", "010", "011", "100", "101", "110"]);
        let seven = ms(3, &["000", "001", "010", "011", "100", "101", "110"]);
        assert_eq!(index_value(IndexId::P, &k1, &six).unwrap(), r(1, 2));
        assert_eq!(index_value(IndexId::P, &k1, &seven).unwrap(), r(4, 7));
        assert_eq!(index_value(IndexId::P, &k1, &ModelSet::empty(3)).unwrap(), r(0, 1));
    }

    #[test]
    fn dalal_index() {
        let k1 = ms(3, &["000"]);
        assert_eq!(index_value(IndexId::Dalal, &k1, &ms(3, &["110"])).unwrap(), r(1, 3));
        assert_eq!(index_value(IndexId::Dalal, &k1, &ms(3, &["001", "110"])).unwrap(), r(2, 3));
        assert_eq!(index_value(IndexId::Dalal, &k1, &ModelSet::empty(3)).unwrap(), r(0, 1));
        assert!(dalal_undefined(&ModelSet::empty(3)));
    }

    #[test]
    fn wip_index() {
        let a = ms(2, &["10", "11"]);
        assert_eq!(index_value(IndexId::Wip, &a, &ms(2, &["11"])).unwrap(), r(1, 2));
        assert_eq!(index_value(IndexId::Wip, &a, &a).unwrap(), r(1, 1));
    }

    #[test]
    fn full_agreement_maximises_every_index() {
        let k = ms(2, &["01", "10"]);
        for id in IndexId::ALL {
            assert_eq!(index_value(id, &k, &k).unwrap(), r(1, 1), "{id}");
        }
    }

    #[test]
    fn errors_and_rendering() {
        assert!(index_value(IndexId::P, &ModelSet::empty(2), &ms(2, &["00"])).is_err());
        assert!(index_value(IndexId::P, &ms(3, &["000"]), &ms(2, &["00"])).is_err());
        assert_eq!(render_value(&r(4, 7)), "4/7");
        assert_eq!(render_value(&r(2, 2)), "1");
        assert_eq!(render_decimal(&r(4, 7)), "0.571429");
        assert_eq!(render_decimal(&r(1, 1)), "1.000000");
    }
}
