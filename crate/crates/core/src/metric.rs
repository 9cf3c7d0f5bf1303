//! Pseudo-distances between interpretations and aggregation functions.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::logic::{Interpretation, ModelSet};

/// Symmetric map from interpretation pairs to naturals, zero exactly on
/// equal pairs.
pub trait PseudoDistance: Send + Sync {
    fn name(&self) -> &str;
    fn eval(&self, a: Interpretation, b: Interpretation) -> u32;
}

/// Aggregation of per-base distances.
pub trait Aggregation: Send + Sync {
    fn name(&self) -> &str;
    fn eval(&self, xs: &[u32]) -> AggregateValue;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distance {
    Drastic,
    Hamming,
}

impl Distance {
    pub const ALL: [Distance; 2] = [Distance::Drastic, Distance::Hamming];

    pub fn id(self) -> &'static str {
        match self {
            Distance::Drastic => "dD",
            Distance::Hamming => "dH",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "dD" => Ok(Distance::Drastic),
            "dH" => Ok(Distance::Hamming),
            _ => Err(Error::UnknownName { kind: "distance", name: s.into() }),
        }
    }

    #[inline]
    pub fn between(self, a: u32, b: u32) -> u32 {
        match self {
            Distance::Drastic => (a != b) as u32,
            Distance::Hamming => (a ^ b).count_ones(),
        }
    }
}

impl PseudoDistance for Distance {
    fn name(&self) -> &str {
        self.id()
    }

    fn eval(&self, a: Interpretation, b: Interpretation) -> u32 {
        self.between(a.index(), b.index())
    }
}

/// Distance between two interpretations; errors on a width mismatch.
pub fn distance(d: &dyn PseudoDistance, a: Interpretation, b: Interpretation) -> Result<u32> {
    if a.width() != b.width() {
        return Err(Error::WidthMismatch(a.width(), b.width()));
    }
    Ok(d.eval(a, b))
}

/// `min` over the models of `k` of the distance to `w`. `k` must be non-empty.
pub fn dist_to_models(d: &dyn PseudoDistance, w: Interpretation, k: &ModelSet) -> u32 {
    k.iter().map(|m| d.eval(w, m)).min().expect("base models are non-empty")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Aggregator {
    Sum,
    Max,
    GMax,
}

impl Aggregator {
    pub const ALL: [Aggregator; 3] = [Aggregator::Sum, Aggregator::Max, Aggregator::GMax];

    pub fn id(self) -> &'static str {
        match self {
            Aggregator::Sum => "sum",
            Aggregator::Max => "max",
            Aggregator::GMax => "gmax",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Aggregator::Sum),
            "max" => Ok(Aggregator::Max),
            "gmax" => Ok(Aggregator::GMax),
            _ => Err(Error::UnknownName { kind: "aggregation", name: s.into() }),
        }
    }
}

impl Aggregation for Aggregator {
    fn name(&self) -> &str {
        self.id()
    }

    fn eval(&self, xs: &[u32]) -> AggregateValue {
        match self {
            Aggregator::Sum => AggregateValue::Scalar(xs.iter().map(|&x| x as u64).sum()),
            Aggregator::Max => AggregateValue::Scalar(xs.iter().copied().max().unwrap_or(0) as u64),
            Aggregator::GMax => {
                let mut v: SmallVec<[u32; 4]> = xs.iter().copied().collect();
                v.sort_unstable_by(|a, b| b.cmp(a));
                AggregateValue::Vector(v)
            }
        }
    }
}

/// Aggregates a non-empty list of distances.
pub fn aggregate(f: &dyn Aggregation, xs: &[u32]) -> Result<AggregateValue> {
    if xs.is_empty() {
        return Err(Error::Empty("aggregate input"));
    }
    Ok(f.eval(xs))
}

/// Result of an aggregation: a scalar, or a vector kept sorted
/// non-increasingly and compared lexicographically (leximax).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AggregateValue {
    Scalar(u64),
    Vector(SmallVec<[u32; 4]>),
}

impl AggregateValue {
    pub fn vector(mut xs: Vec<u32>) -> Self {
        xs.sort_unstable_by(|a, b| b.cmp(a));
        AggregateValue::Vector(xs.into())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AggregateValue::Scalar(x) => *x == 0,
            AggregateValue::Vector(v) => v.iter().all(|x| *x == 0),
        }
    }

    /// Total order on values of the same shape.
    pub fn compare(&self, other: &AggregateValue) -> Result<Ordering> {
        match (self, other) {
            (AggregateValue::Scalar(a), AggregateValue::Scalar(b)) => Ok(a.cmp(b)),
            (AggregateValue::Vector(a), AggregateValue::Vector(b)) => {
                if a.len() != b.len() {
                    return Err(Error::LengthMismatch(a.len(), b.len()));
                }
                Ok(a.cmp(b))
            }
            _ => Err(Error::ShapeMismatch),
        }
    }
}

impl fmt::Display for AggregateValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AggregateValue::Scalar(x) => write!(f, "{x}"),
            AggregateValue::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

/// Exhaustive check of the pseudo-distance axioms over `width` variables.
/// Returns whether the triangle inequality also holds.
pub fn check_distance_axioms(d: &dyn PseudoDistance, width: usize) -> Result<bool> {
    let ws: Vec<Interpretation> =
        (0..1u32 << width).map(|i| Interpretation::new(i, width as u8)).collect();
    let mut triangle = true;
    for &a in &ws {
        for &b in &ws {
            let ab = d.eval(a, b);
            if ab != d.eval(b, a) {
                return Err(Error::Axiom(format!("{}: asymmetric at {a},{b}", d.name())));
            }
            if (ab == 0) != (a == b) {
                return Err(Error::Axiom(format!("{}: zero iff equal fails at {a},{b}", d.name())));
            }
            if triangle {
                triangle = ws.iter().all(|&c| ab <= d.eval(a, c) + d.eval(c, b));
            }
        }
    }
    Ok(triangle)
}

/// Exhaustive check of the aggregation axioms on every tuple of length
/// `1..=arity` with entries up to `max_value`: non-decreasingness in each
/// argument, zero exactly on all-zero input, and identity on one scalar.
pub fn check_aggregation_axioms(f: &dyn Aggregation, arity: usize, max_value: u32) -> Result<()> {
    for n in 1..=arity {
        let total = (max_value as usize + 1).pow(n as u32);
        for code in 0..total {
            let xs = decode(code, n, max_value + 1);
            let v = f.eval(&xs);
            if v.is_zero() != xs.iter().all(|x| *x == 0) {
                return Err(Error::Axiom(format!("{}: minimality fails at {xs:?}", f.name())));
            }
            if n == 1 {
                if let AggregateValue::Scalar(s) = v {
                    if s != xs[0] as u64 {
                        return Err(Error::Axiom(format!("{}: identity fails at {xs:?}", f.name())));
                    }
                }
            }
            for i in 0..n {
                if xs[i] < max_value {
                    let mut ys = xs.clone();
                    ys[i] += 1;
                    if v.compare(&f.eval(&ys))? == Ordering::Greater {
                        return Err(Error::Axiom(format!(
                            "{}: not non-decreasing from {xs:?} to {ys:?}",
                            f.name()
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

fn decode(mut code: usize, n: usize, base: u32) -> Vec<u32> {
    let mut xs = vec![0; n];
    for x in xs.iter_mut() {
        *x = (code % base as usize) as u32;
        code /= base as usize;
    }
    xs
}
