use std::fmt;

use smallvec::{smallvec, SmallVec};

use super::signature::Interpretation;
use crate::error::{Error, Result};

type Words = SmallVec<[u64; 1]>;

/// A set of interpretations over a fixed width, stored as a bitset indexed
/// by interpretation. Iteration is ascending, which is the canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModelSet {
    width: u8,
    words: Words,
}

fn word_count(width: usize) -> usize {
    (1usize << width).div_ceil(64)
}

fn tail_mask(width: usize) -> u64 {
    let bits = 1usize << width;
    if bits.is_multiple_of(64) {
        u64::MAX
    } else {
        (1u64 << (bits % 64)) - 1
    }
}

impl ModelSet {
    pub fn empty(width: usize) -> Self {
        ModelSet { width: width as u8, words: smallvec![0; word_count(width)] }
    }

    pub fn full(width: usize) -> Self {
        let mut s = ModelSet { width: width as u8, words: smallvec![u64::MAX; word_count(width)] };
        s.trim();
        s
    }

    /// Builds a set from interpretation indexes; indexes out of range are an error.
    pub fn from_indices<I: IntoIterator<Item = u32>>(width: usize, indices: I) -> Result<Self> {
        let mut s = Self::empty(width);
        for i in indices {
            if (i as usize) >= (1usize << width) {
                return Err(Error::Invalid(format!("interpretation {i} out of range")));
            }
            s.insert_index(i);
        }
        Ok(s)
    }

    /// Parses a list of bit strings such as `["000", "110"]`.
    pub fn from_bits<S: AsRef<str>>(width: usize, bits: &[S]) -> Result<Self> {
        let mut s = Self::empty(width);
        for b in bits {
            s.insert(Interpretation::parse(b.as_ref().trim(), width)?);
        }
        Ok(s)
    }

    /// Parses the printed form `{000, 110}`.
    pub fn parse(width: usize, text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Invalid(format!("model set must be braced: `{text}`")))?;
        let items: Vec<&str> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        Self::from_bits(width, &items)
    }

    /// Single-word constructor used by the sweeps (width at most 6).
    pub fn from_word(width: usize, word: u64) -> Self {
        debug_assert!(width <= 6);
        let mut s = ModelSet { width: width as u8, words: smallvec![word] };
        s.trim();
        s
    }

    /// The set as a single word; only meaningful for width at most 6.
    pub fn as_word(&self) -> u64 {
        self.words[0]
    }

    fn trim(&mut self) {
        let m = tail_mask(self.width as usize);
        if let Some(last) = self.words.last_mut() {
            *last &= m;
        }
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn universe_size(&self) -> usize {
        1usize << self.width
    }

    pub fn insert(&mut self, w: Interpretation) {
        debug_assert_eq!(w.width(), self.width());
        self.insert_index(w.index());
    }

    pub(crate) fn insert_index(&mut self, i: u32) {
        self.words[(i / 64) as usize] |= 1u64 << (i % 64);
    }

    pub fn contains(&self, w: Interpretation) -> bool {
        w.width() == self.width() && self.contains_index(w.index())
    }

    pub fn contains_index(&self, i: u32) -> bool {
        (self.words[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.width())
    }

    fn check(&self, other: &ModelSet) {
        assert_eq!(self.width, other.width, "model sets over different signatures");
    }

    fn zip(&self, other: &ModelSet, op: impl Fn(u64, u64) -> u64) -> ModelSet {
        self.check(other);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| op(*a, *b)).collect();
        ModelSet { width: self.width, words }
    }

    pub fn intersection(&self, other: &ModelSet) -> ModelSet {
        self.zip(other, |a, b| a & b)
    }

    pub fn union(&self, other: &ModelSet) -> ModelSet {
        self.zip(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &ModelSet) -> ModelSet {
        self.zip(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &ModelSet) -> ModelSet {
        self.zip(other, |a, b| a ^ b)
    }

    pub fn complement(&self) -> ModelSet {
        let mut s = ModelSet { width: self.width, words: self.words.iter().map(|w| !w).collect() };
        s.trim();
        s
    }

    pub fn intersects(&self, other: &ModelSet) -> bool {
        self.check(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        self.check(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection_len(&self, other: &ModelSet) -> usize {
        self.check(other);
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn intersect_with(&mut self, other: &ModelSet) {
        self.check(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn union_with(&mut self, other: &ModelSet) {
        self.check(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    /// Ascending interpretation indexes.
    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                Some(wi as u32 * 64 + b)
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = Interpretation> + '_ {
        let width = self.width;
        self.indices().map(move |i| Interpretation::new(i, width))
    }

    pub fn first(&self) -> Option<Interpretation> {
        self.iter().next()
    }
}

impl fmt::Display for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical order: by cardinality, then by the ascending member lists.
pub fn canonical_cmp(a: &ModelSet, b: &ModelSet) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.indices().cmp(b.indices()))
}
