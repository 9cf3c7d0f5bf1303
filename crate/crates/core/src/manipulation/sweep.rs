//! Exhaustive (or sampled) sweeps of the manipulation oracle over every
//! small instance: profiles of other agents, constraints and agent bases.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::families::{self, Family};
use super::search::{parse_rendered_base, render_base};
use super::strategy::{multisets, SpaceKind, StrategySpace};
use crate::error::{Error, Result};
use crate::logic::{Base, Constraint, ModelSet, Signature};
use crate::operator::Operator;
use crate::satisfaction::{render_value, value_unchecked, IndexId, IndexValue};

/// Work items evaluated in parallel between two merges of the results.
/// Fixed, so reports do not depend on the thread count.
const BATCH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MuRestriction {
    Any,
    Top,
    NonTop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SizeRestriction {
    Any,
    Exactly(usize),
    AtLeast(usize),
}

impl SizeRestriction {
    fn allows(self, n: usize) -> bool {
        match self {
            SizeRestriction::Any => true,
            SizeRestriction::Exactly(m) => n == m,
            SizeRestriction::AtLeast(m) => n >= m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KRestriction {
    Any,
    Complete,
    NotComplete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    StrategyProof,
    Manipulable,
    /// Manipulable in the case's space iff manipulable in this one.
    Equivalent(SpaceKind),
}

impl Expectation {
    pub fn describe(self) -> String {
        match self {
            Expectation::StrategyProof => "strategy-proof".into(),
            Expectation::Manipulable => "manipulable".into(),
            Expectation::Equivalent(k) => format!("same verdict as {}", k.id()),
        }
    }
}

impl Serialize for SpaceKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

/// Syntactic presentations swept for syntax-sensitive operators.
#[derive(Debug, Clone)]
pub struct Syntax {
    pub profile: Vec<Family>,
    pub candidates: Vec<Family>,
}

/// One block of a claim: operators, indexes, the instance restrictions
/// under which the claim speaks, and the expected verdict.
#[derive(Debug, Clone)]
pub struct Case {
    pub label: String,
    pub ops: Vec<Operator>,
    pub indexes: Vec<IndexId>,
    pub mu: MuRestriction,
    pub size: SizeRestriction,
    pub k: KRestriction,
    /// Every other agent's base is complete too.
    pub complete_profile: bool,
    pub space: SpaceKind,
    pub syntax: Option<Syntax>,
    pub expect: Expectation,
    pub min_vars: usize,
    /// Upper variable count regardless of the bounds; syntactic candidate
    /// families grow too fast beyond small signatures.
    pub max_vars: Option<usize>,
}

impl Case {
    pub fn new(label: impl Into<String>, ops: Vec<Operator>, indexes: Vec<IndexId>, expect: Expectation) -> Self {
        Case {
            label: label.into(),
            ops,
            indexes,
            mu: MuRestriction::Any,
            size: SizeRestriction::Any,
            k: KRestriction::Any,
            complete_profile: false,
            space: SpaceKind::SemanticAll,
            syntax: None,
            expect,
            min_vars: 1,
            max_vars: None,
        }
    }

    pub fn mu(mut self, r: MuRestriction) -> Self {
        self.mu = r;
        self
    }

    pub fn size(mut self, r: SizeRestriction) -> Self {
        self.size = r;
        self
    }

    pub fn k(mut self, r: KRestriction) -> Self {
        self.k = r;
        self
    }

    pub fn complete_profile(mut self) -> Self {
        self.complete_profile = true;
        self.k = KRestriction::Complete;
        self
    }

    pub fn space(mut self, s: SpaceKind) -> Self {
        self.space = s;
        self
    }

    pub fn syntax(mut self, profile: &[Family], candidates: &[Family]) -> Self {
        self.syntax = Some(Syntax { profile: profile.to_vec(), candidates: candidates.to_vec() });
        self
    }

    pub fn min_vars(mut self, v: usize) -> Self {
        self.min_vars = v;
        self
    }

    pub fn max_vars(mut self, v: usize) -> Self {
        self.max_vars = Some(v);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MuMode {
    Top,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KMode {
    Complete,
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub count: usize,
    pub seed: u64,
}

/// Sweep bounds. Variable counts run from `min_vars` to `vars`, profile
/// sizes (the agent included) from 2 to `agents`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub min_vars: usize,
    pub vars: usize,
    pub agents: usize,
    pub mu: MuMode,
    pub k: KMode,
    pub max_counterexamples: usize,
    pub ceiling: u128,
    pub sample: Option<Sample>,
}

pub const DEFAULT_CEILING: u128 = 2_000_000_000;

impl Bounds {
    pub fn new(vars: usize, agents: usize) -> Self {
        Bounds {
            min_vars: 1,
            vars,
            agents,
            mu: MuMode::All,
            k: KMode::Any,
            max_counterexamples: 3,
            ceiling: DEFAULT_CEILING,
            sample: None,
        }
    }

    pub fn mu_top(mut self) -> Self {
        self.mu = MuMode::Top;
        self
    }

    pub fn k_complete(mut self) -> Self {
        self.k = KMode::Complete;
        self
    }
}

/// A recorded witness, rendered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub candidate: String,
    pub candidate_models: String,
    pub index_truthful: String,
    pub index_lying: String,
    pub merged_truthful: String,
    pub merged_lying: String,
}

/// One offending instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub vars: usize,
    pub profile: Vec<String>,
    pub mu: String,
    pub k: String,
    /// Witness in the case's space.
    pub witness: Option<WitnessRecord>,
    /// For equivalence cases, the witness in the compared space.
    pub other: Option<WitnessRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    ConfirmedSp,
    CounterexampleFound,
    NoCounterexampleAtBounds,
    EquivalenceHolds,
    EquivalenceBroken,
    Skipped,
}

impl Outcome {
    pub fn id(self) -> &'static str {
        match self {
            Outcome::ConfirmedSp => "confirmed-SP",
            Outcome::CounterexampleFound => "counterexample-found",
            Outcome::NoCounterexampleAtBounds => "no-counterexample-at-bounds",
            Outcome::EquivalenceHolds => "equivalence-holds",
            Outcome::EquivalenceBroken => "equivalence-broken",
            Outcome::Skipped => "skipped",
        }
    }
}

/// Result of one (operator, index) cell of a case.
#[derive(Debug, Clone, Serialize)]
pub struct CellReport {
    pub case: String,
    pub operator: String,
    pub index: String,
    pub space: SpaceKind,
    pub expectation: String,
    pub instances: u64,
    pub found: u64,
    pub counterexamples: Vec<Counterexample>,
    pub outcome: Outcome,
    pub matches: bool,
    pub note: Option<String>,
}

impl CellReport {
    /// Rebuilds every recorded instance from its rendered form, recomputes
    /// both merges and index values, and checks them against the record.
    pub fn revalidate(&self) -> Result<()> {
        let op = Operator::parse(&self.operator)?;
        let id = IndexId::parse(&self.index)?;
        for ce in &self.counterexamples {
            let fail = |what: &str| Error::Invalid(format!("{} / {}: {what} in {ce:?}", self.operator, self.index));
            let sig = Signature::alphabetic(ce.vars)?;
            let rest: Vec<Base> = ce.profile.iter().map(|b| parse_rendered_base(b, &sig)).collect::<Result<_>>()?;
            let rest: Vec<&Base> = rest.iter().collect();
            let k = parse_rendered_base(&ce.k, &sig)?;
            let mu = Constraint::from_models(ModelSet::parse(ce.vars, &ce.mu)?)?;
            let truthful = op.merge_with(&rest, &k, &mu)?;
            let before = value_unchecked(id, k.models(), &truthful);
            let witnesses: Vec<&WitnessRecord> = [&ce.witness, &ce.other].into_iter().flatten().collect();
            if witnesses.is_empty() {
                return Err(fail("no witness"));
            }
            for w in witnesses {
                let cand = parse_rendered_base(&w.candidate, &sig)?;
                let lying = op.merge_with(&rest, &cand, &mu)?;
                let after = value_unchecked(id, k.models(), &lying);
                if after <= before {
                    return Err(fail("no strict improvement"));
                }
                let same = w.candidate_models == cand.models().to_string()
                    && w.index_truthful == render_value(&before)
                    && w.index_lying == render_value(&after)
                    && w.merged_truthful == truthful.to_string()
                    && w.merged_lying == lying.to_string();
                if !same {
                    return Err(fail("recorded values differ from the recomputation"));
                }
            }
        }
        Ok(())
    }
}

struct Cell {
    op: usize,
    index: IndexId,
    instances: u64,
    found: u64,
    ces: Vec<Counterexample>,
}

#[derive(Default)]
struct Delta {
    instances: u64,
    found: u64,
    ces: Vec<Counterexample>,
}

struct Level<'a> {
    vars: usize,
    sig: Signature,
    universe: Vec<Base>,
    ks: Vec<usize>,
    mus: Vec<Constraint>,
    /// Candidates per entry of `ks`, for the case's space and, for
    /// equivalence cases, for the compared space.
    cands: Vec<Vec<Base>>,
    other: Vec<Vec<Base>>,
    case: &'a Case,
    ops: &'a [Operator],
    max_ce: usize,
}

fn semantic_universe(width: usize, complete_only: bool) -> Vec<Base> {
    families::universe(width, &[Family::Canonical], complete_only)
}

/// Candidates of a space for `k`; with syntactic families, every listed
/// presentation whose models belong to the space.
fn space_candidates(kind: SpaceKind, k: &Base, syntax_cands: Option<&Vec<Base>>) -> Result<Vec<Base>> {
    let km = k.models();
    match syntax_cands {
        Some(all) => {
            let keep = |m: &ModelSet| match kind {
                SpaceKind::SemanticAll => true,
                SpaceKind::Erosion => m.is_subset(km),
                SpaceKind::Dilation => km.is_subset(m),
                SpaceKind::Complete => m.len() == 1,
                SpaceKind::CompleteInK => m.len() == 1 && m.is_subset(km),
                SpaceKind::Explicit => false,
            };
            if kind == SpaceKind::Explicit {
                return Err(Error::Invalid("the explicit space needs a list of bases".into()));
            }
            Ok(all.iter().filter(|b| keep(b.models())).cloned().collect())
        }
        None => Ok(StrategySpace::from_kind(kind)?.candidates(k).collect()),
    }
}

fn record(
    cand: &Base,
    before: IndexValue,
    after: IndexValue,
    truthful: &ModelSet,
    lying: &ModelSet,
    sig: &Signature,
) -> WitnessRecord {
    WitnessRecord {
        candidate: render_base(cand, sig),
        candidate_models: cand.models().to_string(),
        index_truthful: render_value(&before),
        index_lying: render_value(&after),
        merged_truthful: truthful.to_string(),
        merged_lying: lying.to_string(),
    }
}

/// Other agents' base indices, then the constraint index and an optional
/// agent base index.
type WorkItem = (Vec<usize>, (usize, Option<usize>));

impl Level<'_> {
    /// First witness per index, scanning `cands` in order.
    #[allow(clippy::too_many_arguments)]
    fn first_witnesses(
        &self,
        op: Operator,
        rest: &[&Base],
        k: &Base,
        mu: &Constraint,
        truthful: &ModelSet,
        pending: &[(usize, IndexId, IndexValue)],
        cands: &[Base],
    ) -> Result<Vec<Option<WitnessRecord>>> {
        let mut out: Vec<Option<WitnessRecord>> = vec![None; pending.len()];
        let mut open: Vec<usize> = (0..pending.len())
            .filter(|&i| pending[i].2 < IndexValue::from_integer(1))
            .collect();
        for cand in cands {
            if open.is_empty() {
                break;
            }
            let lying = op.merge_with(rest, cand, mu)?;
            open.retain(|&i| {
                let (_, id, before) = pending[i];
                let after = value_unchecked(id, k.models(), &lying);
                if after > before {
                    out[i] = Some(record(cand, before, after, truthful, &lying, &self.sig));
                    false
                } else {
                    true
                }
            });
        }
        Ok(out)
    }

    fn run_item(
        &self,
        rest_idx: &[usize],
        only: (usize, Option<usize>),
        cells: &[(usize, usize, IndexId)],
    ) -> Result<Vec<Delta>> {
        let mut deltas: Vec<Delta> = (0..cells.len()).map(|_| Delta::default()).collect();
        let rest: Vec<&Base> = rest_idx.iter().map(|&i| &self.universe[i]).collect();
        let pairs: Vec<(usize, usize)> = match only {
            (m, Some(k)) => vec![(m, k)],
            (m, None) => (0..self.ks.len()).map(|k| (m, k)).collect(),
        };
        for (mi, ki) in pairs {
            let mu = &self.mus[mi];
            let k = &self.universe[self.ks[ki]];
            for (opi, op) in self.ops.iter().enumerate() {
                let mine: Vec<usize> = (0..cells.len()).filter(|&c| cells[c].1 == opi).collect();
                if mine.is_empty() {
                    continue;
                }
                let truthful = op.merge_with(&rest, k, mu)?;
                let pending: Vec<(usize, IndexId, IndexValue)> = mine
                    .iter()
                    .map(|&c| (c, cells[c].2, value_unchecked(cells[c].2, k.models(), &truthful)))
                    .collect();
                for &c in &mine {
                    deltas[c].instances += 1;
                }
                let first = self.first_witnesses(*op, &rest, k, mu, &truthful, &pending, &self.cands[ki])?;
                let second = match self.case.expect {
                    Expectation::Equivalent(_) => {
                        Some(self.first_witnesses(*op, &rest, k, mu, &truthful, &pending, &self.other[ki])?)
                    }
                    _ => None,
                };
                for (j, (c, _, _)) in pending.iter().enumerate() {
                    let offending = match &second {
                        Some(s) => first[j].is_some() != s[j].is_some(),
                        None => first[j].is_some(),
                    };
                    if !offending {
                        continue;
                    }
                    let d = &mut deltas[*c];
                    d.found += 1;
                    if d.ces.len() < self.max_ce {
                        d.ces.push(Counterexample {
                            vars: self.vars,
                            profile: rest.iter().map(|b| render_base(b, &self.sig)).collect(),
                            mu: mu.models().to_string(),
                            k: render_base(k, &self.sig),
                            witness: first[j].clone(),
                            other: second.as_ref().and_then(|s| s[j].clone()),
                        });
                    }
                }
            }
        }
        Ok(deltas)
    }
}

fn binomial_multisets(n: u128, k: u128) -> u128 {
    // C(n + k - 1, k)
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n + i) / (i + 1);
    }
    r
}

/// Runs one case under `bounds`, producing a report per (operator, index).
pub fn run_case(case: &Case, bounds: &Bounds) -> Result<Vec<CellReport>> {
    let skip = |why: &str| -> Vec<CellReport> {
        let mut out = Vec::new();
        for op in &case.ops {
            for id in &case.indexes {
                out.push(CellReport {
                    case: case.label.clone(),
                    operator: op.name(),
                    index: id.id().into(),
                    space: case.space,
                    expectation: case.expect.describe(),
                    instances: 0,
                    found: 0,
                    counterexamples: vec![],
                    outcome: Outcome::Skipped,
                    matches: true,
                    note: Some(why.to_string()),
                });
            }
        }
        out
    };
    let mu_r = match (bounds.mu, case.mu) {
        (MuMode::Top, MuRestriction::NonTop) => return Ok(skip("needs a constraint other than true")),
        (MuMode::Top, _) => MuRestriction::Top,
        (MuMode::All, r) => r,
    };
    let k_r = match (bounds.k, case.k) {
        (KMode::Complete, KRestriction::NotComplete) => return Ok(skip("needs an incomplete agent base")),
        (KMode::Complete, _) => KRestriction::Complete,
        (KMode::Any, r) => r,
    };
    let sizes: Vec<usize> = (2..=bounds.agents).filter(|n| case.size.allows(*n)).collect();
    if sizes.is_empty() {
        return Ok(skip("profile size outside bounds"));
    }
    for op in &case.ops {
        if !op.takes_constraint() && mu_r != MuRestriction::Top {
            return Err(Error::Invalid(format!("{} must be swept with the constraint true", op.name())));
        }
    }

    let mut cells: Vec<Cell> = Vec::new();
    for (oi, _) in case.ops.iter().enumerate() {
        for id in &case.indexes {
            cells.push(Cell { op: oi, index: *id, instances: 0, found: 0, ces: vec![] });
        }
    }
    let stop_early = case.expect == Expectation::Manipulable;
    let max_ce = bounds.max_counterexamples.max(1);
    let done = |c: &Cell| stop_early && c.found as usize >= max_ce;

    let lo = case.min_vars.max(bounds.min_vars).max(1);
    let hi = case.max_vars.map_or(bounds.vars, |m| m.min(bounds.vars));
    for vars in lo..=hi {
        if cells.iter().all(done) {
            break;
        }
        let sig = Signature::alphabetic(vars)?;
        let (universe, syntax_cands) = match &case.syntax {
            Some(s) => (
                families::universe(vars, &s.profile, case.complete_profile),
                Some(families::universe(vars, &s.candidates, false)),
            ),
            None => (semantic_universe(vars, case.complete_profile), None),
        };
        let k_pool = match &case.syntax {
            Some(s) => families::universe(vars, &s.profile, false),
            None => semantic_universe(vars, false),
        };
        // Agent bases share the index space of `universe` when possible.
        let mut universe = universe;
        let base_len = universe.len();
        let mut ks = Vec::new();
        for b in k_pool {
            let keep = match k_r {
                KRestriction::Any => true,
                KRestriction::Complete => b.is_complete(),
                KRestriction::NotComplete => !b.is_complete(),
            };
            if !keep {
                continue;
            }
            match universe[..base_len].iter().position(|u| u.same_formulas(&b)) {
                Some(i) => ks.push(i),
                None => {
                    universe.push(b);
                    ks.push(universe.len() - 1);
                }
            }
        }
        let full = ModelSet::full(vars);
        let mus: Vec<Constraint> = match mu_r {
            MuRestriction::Top => vec![Constraint::top(vars)],
            _ => StrategySpace::SemanticAll
                .model_sets(&full)
                .expect("semantic")
                .filter(|m| mu_r == MuRestriction::Any || !m.is_full())
                .map(|m| Constraint::from_models(m).expect("non-empty"))
                .collect(),
        };
        if ks.is_empty() || mus.is_empty() || base_len == 0 {
            continue;
        }
        let cands: Vec<Vec<Base>> = ks
            .iter()
            .map(|&i| space_candidates(case.space, &universe[i], syntax_cands.as_ref()))
            .collect::<Result<_>>()?;
        let other: Vec<Vec<Base>> = match case.expect {
            Expectation::Equivalent(kind) => ks
                .iter()
                .map(|&i| space_candidates(kind, &universe[i], syntax_cands.as_ref()))
                .collect::<Result<_>>()?,
            _ => vec![],
        };

        let per_instance: u128 = cands.iter().chain(&other).map(|c| c.len() as u128 + 1).sum::<u128>()
            / ks.len() as u128
            * case.ops.len() as u128;
        let instances: u128 = match bounds.sample {
            Some(s) => s.count as u128,
            None => sizes
                .iter()
                .map(|&n| binomial_multisets(base_len as u128, n as u128 - 1))
                .sum::<u128>()
                * mus.len() as u128
                * ks.len() as u128,
        };
        let estimate = instances.saturating_mul(per_instance.max(1));
        if estimate > bounds.ceiling {
            return Err(Error::BoundsExceeded { estimate, ceiling: bounds.ceiling });
        }

        let level = Level {
            vars,
            sig,
            universe,
            ks,
            mus,
            cands,
            other,
            case,
            ops: &case.ops,
            max_ce,
        };
        // One item per (other agents, constraint), or per sampled instance.
        let items: Vec<WorkItem> = match bounds.sample {
            Some(s) => {
                let mut rng = ChaCha8Rng::seed_from_u64(s.seed ^ (vars as u64) << 32);
                (0..s.count)
                    .map(|_| {
                        let n = *sizes.choose(&mut rng).expect("sizes non-empty");
                        let mut rest: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(0..base_len)).collect();
                        rest.sort_unstable();
                        let m = rng.gen_range(0..level.mus.len());
                        let k = rng.gen_range(0..level.ks.len());
                        (rest, (m, Some(k)))
                    })
                    .collect()
            }
            None => sizes
                .iter()
                .flat_map(|&n| multisets(base_len, n - 1))
                .flat_map(|r| (0..level.mus.len()).map(move |m| (r.clone(), (m, None))))
                .collect(),
        };

        for chunk in items.chunks(BATCH) {
            let active: Vec<(usize, usize, IndexId)> = cells
                .iter()
                .enumerate()
                .filter(|(_, c)| !done(c))
                .map(|(i, c)| (i, c.op, c.index))
                .collect();
            if active.is_empty() {
                break;
            }
            let results: Vec<Result<Vec<Delta>>> = chunk
                .par_iter()
                .map(|(rest, only)| level.run_item(rest, *only, &active))
                .collect();
            for r in results {
                for (j, d) in r?.into_iter().enumerate() {
                    let cell = &mut cells[active[j].0];
                    cell.instances += d.instances;
                    cell.found += d.found;
                    for ce in d.ces {
                        if cell.ces.len() < max_ce {
                            cell.ces.push(ce);
                        }
                    }
                }
            }
        }
    }

    let semantic_note = |op: Operator| -> Option<String> {
        if op.is_semantic() {
            return None;
        }
        Some(match case.syntax {
            Some(_) => "listed syntactic strategies only".into(),
            None => "semantic strategies only".into(),
        })
    };
    Ok(cells
        .into_iter()
        .map(|c| {
            let op = case.ops[c.op];
            let outcome = if c.instances == 0 {
                Outcome::Skipped
            } else {
                match (case.expect, c.found) {
                    (Expectation::StrategyProof, 0) => Outcome::ConfirmedSp,
                    (Expectation::StrategyProof, _) => Outcome::CounterexampleFound,
                    (Expectation::Manipulable, 0) => Outcome::NoCounterexampleAtBounds,
                    (Expectation::Manipulable, _) => Outcome::CounterexampleFound,
                    (Expectation::Equivalent(_), 0) => Outcome::EquivalenceHolds,
                    (Expectation::Equivalent(_), _) => Outcome::EquivalenceBroken,
                }
            };
            let matches = matches!(
                (case.expect, outcome),
                (_, Outcome::Skipped)
                    | (Expectation::StrategyProof, Outcome::ConfirmedSp)
                    | (Expectation::Manipulable, Outcome::CounterexampleFound)
                    | (Expectation::Equivalent(_), Outcome::EquivalenceHolds)
            );
            let note = match outcome {
                Outcome::Skipped => Some("no instance within bounds".into()),
                Outcome::ConfirmedSp => semantic_note(op),
                _ => None,
            };
            CellReport {
                case: case.label.clone(),
                operator: op.name(),
                index: c.index.id().into(),
                space: case.space,
                expectation: case.expect.describe(),
                instances: c.instances,
                found: c.found,
                counterexamples: c.ces,
                outcome,
                matches,
                note,
            }
        })
        .collect())
}
