//! Strategy spaces: the reports an agent may consider instead of its base.

use crate::error::{Error, Result};
use crate::logic::{Base, ModelSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    SemanticAll,
    Erosion,
    Dilation,
    Complete,
    CompleteInK,
    Explicit,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 6] = [
        SpaceKind::SemanticAll,
        SpaceKind::Erosion,
        SpaceKind::Dilation,
        SpaceKind::Complete,
        SpaceKind::CompleteInK,
        SpaceKind::Explicit,
    ];

    pub fn id(self) -> &'static str {
        match self {
            SpaceKind::SemanticAll => "semantic-all",
            SpaceKind::Erosion => "erosion",
            SpaceKind::Dilation => "dilation",
            SpaceKind::Complete => "complete",
            SpaceKind::CompleteInK => "complete-in-K",
            SpaceKind::Explicit => "explicit",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        SpaceKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::UnknownName { kind: "strategy space", name: s.into() })
    }
}

/// A strategy space. Semantic kinds realise each candidate model set as
/// its canonical single-formula base.
#[derive(Debug, Clone)]
pub enum StrategySpace {
    SemanticAll,
    /// Reports whose models are a non-empty subset of `[K]`.
    Erosion,
    /// Reports whose models include `[K]`.
    Dilation,
    /// Single interpretations anywhere.
    Complete,
    /// Single interpretations inside `[K]`.
    CompleteInK,
    Explicit(Vec<Base>),
}

impl StrategySpace {
    pub fn kind(&self) -> SpaceKind {
        match self {
            StrategySpace::SemanticAll => SpaceKind::SemanticAll,
            StrategySpace::Erosion => SpaceKind::Erosion,
            StrategySpace::Dilation => SpaceKind::Dilation,
            StrategySpace::Complete => SpaceKind::Complete,
            StrategySpace::CompleteInK => SpaceKind::CompleteInK,
            StrategySpace::Explicit(_) => SpaceKind::Explicit,
        }
    }

    pub fn id(&self) -> &'static str {
        self.kind().id()
    }

    pub fn from_kind(kind: SpaceKind) -> Result<Self> {
        Ok(match kind {
            SpaceKind::SemanticAll => StrategySpace::SemanticAll,
            SpaceKind::Erosion => StrategySpace::Erosion,
            SpaceKind::Dilation => StrategySpace::Dilation,
            SpaceKind::Complete => StrategySpace::Complete,
            SpaceKind::CompleteInK => StrategySpace::CompleteInK,
            SpaceKind::Explicit => {
                return Err(Error::Invalid("the explicit space needs a list of bases".into()))
            }
        })
    }

    pub fn explicit(bases: Vec<Base>) -> Result<Self> {
        if let Some(w) = bases.first().map(Base::width) {
            if let Some(b) = bases.iter().find(|b| b.width() != w) {
                return Err(Error::WidthMismatch(b.width(), w));
            }
        }
        if let Some(b) = bases.iter().find(|b| b.models().is_empty()) {
            return Err(Error::InconsistentBase(b.label().unwrap_or("<candidate>").into()));
        }
        Ok(StrategySpace::Explicit(bases))
    }

    /// Candidate model sets of a semantic space, canonical order. `None`
    /// for the explicit space.
    pub fn model_sets<'a>(&'a self, k: &'a ModelSet) -> Option<Box<dyn Iterator<Item = ModelSet> + 'a>> {
        let width = k.width();
        let all: Vec<u32> = (0..k.universe_size() as u32).collect();
        Some(match self {
            StrategySpace::SemanticAll => Box::new(subsets(width, all, 1, None)),
            StrategySpace::Erosion => Box::new(subsets(width, k.indices().collect(), 1, None)),
            StrategySpace::Dilation => {
                let rest: Vec<u32> = k.complement().indices().collect();
                Box::new(subsets(width, rest, 0, None).map(move |t| t.union(k)))
            }
            StrategySpace::Complete => Box::new(subsets(width, all, 1, Some(1))),
            StrategySpace::CompleteInK => Box::new(subsets(width, k.indices().collect(), 1, Some(1))),
            StrategySpace::Explicit(_) => return None,
        })
    }

    /// Candidate bases in canonical order.
    pub fn candidates<'a>(&'a self, k: &'a Base) -> Box<dyn Iterator<Item = Base> + 'a> {
        match self {
            StrategySpace::Explicit(list) => Box::new(list.iter().cloned()),
            _ => Box::new(
                self.model_sets(k.models())
                    .expect("semantic space")
                    .map(|m| Base::from_models(m, None).expect("candidates are non-empty")),
            ),
        }
    }

    /// Number of candidates for the agent base `k`.
    pub fn count(&self, k: &ModelSet) -> u128 {
        let w = k.universe_size() as u32;
        let kk = k.len() as u32;
        match self {
            StrategySpace::SemanticAll => (1u128 << w) - 1,
            StrategySpace::Erosion => (1u128 << kk) - 1,
            StrategySpace::Dilation => 1u128 << (w - kk),
            StrategySpace::Complete => w as u128,
            StrategySpace::CompleteInK => kk as u128,
            StrategySpace::Explicit(list) => list.len() as u128,
        }
    }
}

/// Subsets of `pool` with sizes from `min` up to `max` (default all),
/// ordered by size then lexicographically on the ascending member list.
pub fn subsets(width: usize, pool: Vec<u32>, min: usize, max: Option<usize>) -> impl Iterator<Item = ModelSet> {
    let n = pool.len();
    let max = max.unwrap_or(n).min(n);
    (min..=max).flat_map(move |size| {
        let pool = pool.clone();
        Combinations::new(n, size).map(move |idx| {
            let mut m = ModelSet::empty(width);
            for i in idx {
                m.insert_index(pool[i]);
            }
            m
        })
    })
}

/// Lexicographic `size`-combinations of `0..n`.
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, size: usize) -> Self {
        Combinations { n, idx: (0..size).collect(), done: size > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Multisets of `size` elements drawn from `0..n`, as non-decreasing index
/// lists in lexicographic order.
pub fn multisets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, size, i, cur, out);
            cur.pop();
        }
    }
    rec(n, size, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(w: usize, bits: &[&str]) -> ModelSet {
        ModelSet::from_bits(w, bits).unwrap()
    }

    fn shown(space: &StrategySpace, k: &ModelSet) -> Vec<String> {
        space.model_sets(k).unwrap().map(|m| m.to_string()).collect()
    }

    #[test]
    fn space_sizes() {
        let k = ms(2, &["00", "01"]);
        assert_eq!(shown(&StrategySpace::Erosion, &k), ["{00}", "{01}", "{00, 01}"]);
        assert_eq!(StrategySpace::Complete.model_sets(&k).unwrap().count(), 4);
        assert_eq!(StrategySpace::SemanticAll.model_sets(&k).unwrap().count(), 15);
        assert_eq!(
            shown(&StrategySpace::Dilation, &k),
            ["{00, 01}", "{00, 01, 10}", "{00, 01, 11}", "{00, 01, 10, 11}"]
        );
        assert_eq!(shown(&StrategySpace::CompleteInK, &k), ["{00}", "{01}"]);
        for s in [
            StrategySpace::SemanticAll,
            StrategySpace::Erosion,
            StrategySpace::Dilation,
            StrategySpace::Complete,
            StrategySpace::CompleteInK,
        ] {
            assert_eq!(s.count(&k), s.model_sets(&k).unwrap().count() as u128, "{}", s.id());
        }
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let all: Vec<ModelSet> = StrategySpace::SemanticAll.model_sets(&ModelSet::full(2)).unwrap().collect();
        for w in all.windows(2) {
            assert_eq!(crate::logic::canonical_cmp(&w[0], &w[1]), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(15, 2).len(), 120);
        assert_eq!(multisets(4, 3).len(), 20);
        assert_eq!(multisets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn explicit_spaces_are_validated() {
        let a = Base::from_models(ms(2, &["00"]), None).unwrap();
        let b = Base::from_models(ms(3, &["000"]), None).unwrap();
        assert!(StrategySpace::explicit(vec![a.clone(), b]).is_err());
        assert_eq!(StrategySpace::explicit(vec![a.clone()]).unwrap().candidates(&a).count(), 1);
        assert!(StrategySpace::from_kind(SpaceKind::Explicit).is_err());
    }
}
