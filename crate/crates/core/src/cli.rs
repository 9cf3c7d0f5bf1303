//! Command-line surface. `run` parses arguments and returns the exit code
//! and rendered report; the binary only prints them.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::golden;
use crate::logic::{parse_formula, parse_profile, Base, Constraint, Formula, ModelSet, ProfileDoc};
use crate::manipulation::{
    audit, claim, find_manipulation, Bounds, KMode, MuMode, Sample, SpaceKind, StrategySpace,
};
use crate::model_merge::{ranking, MergeRanking};
use crate::operator::Operator;
use crate::satisfaction::{dalal_undefined, index_value, render_decimal, render_value, IndexId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

/// Exit code and report of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub output: String,
}

impl CommandOutcome {
    fn new(code: i32, output: String) -> Self {
        CommandOutcome { code, output }
    }
}

#[derive(Debug, Parser)]
#[command(name = "merge-forge", version, about = "Propositional merging operators and manipulation audits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Witness,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MuModeArg {
    Top,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KModeArg {
    Complete,
    Any,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Merge a profile and print the result.
    Merge {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        operator: String,
        /// Replaces the profile's integrity constraint.
        #[arg(long)]
        mu: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate satisfaction indexes of one agent on the merged base.
    Index {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        operator: String,
        #[arg(long)]
        agent: String,
        /// Every index when omitted.
        #[arg(long)]
        index: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        /// Also print values as decimals to six places.
        #[arg(long)]
        decimals: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Search one agent's strategy space for a profitable report.
    Manipulate {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        agent: String,
        #[arg(long)]
        operator: String,
        #[arg(long)]
        index: String,
        #[arg(long, default_value = "semantic-all")]
        space: String,
        /// A report for the explicit space: a base name from the profile,
        /// `models { .. }` or `formulas { .. }`. Repeatable.
        #[arg(long = "candidate")]
        candidates: Vec<String>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long, value_enum, default_value = "witness")]
        expect: Expect,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Audit a strategy-proofness claim over bounded instances.
    Audit {
        claim: String,
        #[command(flatten)]
        bounds: BoundsArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Recompute a reference table and diff it cell by cell.
    Reproduce {
        table: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List operators, indexes, spaces, claims and tables.
    List,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub vars: Option<usize>,
    #[arg(long)]
    pub agents: Option<usize>,
    #[arg(long)]
    pub min_vars: Option<usize>,
    #[arg(long, value_enum)]
    pub mu_mode: Option<MuModeArg>,
    #[arg(long, value_enum)]
    pub k_mode: Option<KModeArg>,
    #[arg(long)]
    pub max_counterexamples: Option<usize>,
    #[arg(long)]
    pub ceiling: Option<u128>,
    /// Sample this many instances per variable count instead of sweeping.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl BoundsArgs {
    pub fn apply(&self, mut b: Bounds) -> Bounds {
        if let Some(v) = self.vars {
            b.vars = v;
            b.min_vars = b.min_vars.min(v);
        }
        if let Some(a) = self.agents {
            b.agents = a;
        }
        if let Some(v) = self.min_vars {
            b.min_vars = v;
        }
        match self.mu_mode {
            Some(MuModeArg::Top) => b.mu = MuMode::Top,
            Some(MuModeArg::All) => b.mu = MuMode::All,
            None => {}
        }
        match self.k_mode {
            Some(KModeArg::Complete) => b.k = KMode::Complete,
            Some(KModeArg::Any) => b.k = KMode::Any,
            None => {}
        }
        if let Some(n) = self.max_counterexamples {
            b.max_counterexamples = n;
        }
        if let Some(c) = self.ceiling {
            b.ceiling = c;
        }
        if let Some(count) = self.sample {
            b.sample = Some(Sample { count, seed: self.seed });
        }
        b
    }
}

/// Failure tagged with the exit code it maps to.
struct Failure {
    code: i32,
    error: Error,
}

fn usage(error: Error) -> Failure {
    Failure { code: EXIT_USAGE, error }
}

fn data(error: Error) -> Failure {
    Failure { code: EXIT_DATA, error }
}

type Outcome = std::result::Result<CommandOutcome, Failure>;

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli.command),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            CommandOutcome::new(code, e.render().to_string())
        }
    }
}

pub fn execute(cmd: &Command) -> CommandOutcome {
    let result = match cmd {
        Command::Merge { profile, operator, mu, format } => cmd_merge(profile, operator, mu.as_deref(), *format),
        Command::Index { profile, operator, agent, index, mu, decimals, format } => {
            cmd_index(profile, operator, agent, index.as_deref(), mu.as_deref(), *decimals, *format)
        }
        Command::Manipulate { profile, agent, operator, index, space, candidates, mu, expect, format } => {
            cmd_manipulate(profile, agent, operator, index, space, candidates, mu.as_deref(), *expect, *format)
        }
        Command::Audit { claim, bounds, format } => cmd_audit(claim, bounds, *format),
        Command::Reproduce { table, format } => cmd_reproduce(*table, *format),
        Command::List => Ok(cmd_list()),
    };
    result.unwrap_or_else(|f| CommandOutcome::new(f.code, format!("error: {}\n", f.error)))
}

fn load(path: &PathBuf) -> std::result::Result<ProfileDoc, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(Error::Invalid(format!("cannot read {}: {e}", path.display()))))?;
    parse_profile(&text).map_err(data)
}

fn operator(name: &str) -> std::result::Result<Operator, Failure> {
    Operator::parse(name).map_err(usage)
}

/// The constraint to merge under: the override when given, else the
/// profile's own.
fn constraint(doc: &ProfileDoc, op: Operator, mu: Option<&str>) -> std::result::Result<Constraint, Failure> {
    match mu {
        Some(text) => {
            if !op.takes_constraint() {
                return Err(usage(Error::ConstraintNotAllowed(op.name())));
            }
            let f = parse_formula(text, &doc.signature).map_err(usage)?;
            Constraint::new(f, doc.signature.count()).map_err(usage)
        }
        None => {
            if !op.takes_constraint() && !doc.mu.is_top() {
                return Err(data(Error::ConstraintNotAllowed(op.name())));
            }
            Ok(doc.mu.clone())
        }
    }
}

fn agent_base<'a>(doc: &'a ProfileDoc, name: &str) -> std::result::Result<&'a Base, Failure> {
    doc.base(name).ok_or_else(|| usage(Error::UnknownName { kind: "base", name: name.into() }))
}

fn dnf(doc: &ProfileDoc, m: &ModelSet) -> String {
    Formula::canonical_dnf(m).render(&doc.signature)
}

fn render_ranking(doc: &ProfileDoc, r: &MergeRanking, merged: &ModelSet) -> String {
    let names: Vec<&str> = doc.names();
    let mut lines: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["w".to_string()];
    header.extend(names.iter().map(|n| n.to_string()));
    header.push("agg".into());
    header.push("mu".into());
    lines.push(header);
    for row in &r.rows {
        let mut l = vec![row.interpretation.to_string()];
        l.extend(row.distances.iter().map(u32::to_string));
        let star = if merged.contains(row.interpretation) { "*" } else { "" };
        l.push(format!("{}{star}", row.aggregate));
        l.push(if row.satisfies_mu { "yes" } else { "no" }.into());
        lines.push(l);
    }
    let widths: Vec<usize> =
        (0..lines[0].len()).map(|c| lines.iter().map(|l| l[c].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for l in &lines {
        let cells: Vec<String> = l.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn merged_of(doc: &ProfileDoc, op: Operator, mu: &Constraint) -> std::result::Result<ModelSet, Failure> {
    op.merge(&doc.profile.refs(), mu).map_err(data)
}

fn cmd_merge(path: &PathBuf, op: &str, mu: Option<&str>, format: Format) -> Outcome {
    let doc = load(path)?;
    let op = operator(op)?;
    let mu = constraint(&doc, op, mu)?;
    let merged = merged_of(&doc, op, &mu)?;
    let table = match op {
        Operator::Model(d, f) => {
            let ms: Vec<&ModelSet> = doc.profile.bases().iter().map(Base::models).collect();
            Some(ranking(&ms, &mu, &d, &f).map_err(data)?)
        }
        _ => None,
    };
    let output = match format {
        Format::Json => {
            let v = json!({
                "operator": op.name(),
                "mu": mu.formula().render(&doc.signature),
                "merged": merged.to_string(),
                "formula": dnf(&doc, &merged),
                "ranking": table.as_ref().map(MergeRanking::to_json),
            });
            format!("{v:#}\n")
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "operator: {}", op.name());
            let _ = writeln!(s, "mu: {}", mu.formula().render(&doc.signature));
            if let Some(t) = &table {
                s.push_str(&render_ranking(&doc, t, &merged));
            }
            let _ = writeln!(s, "merged: {merged}");
            let _ = writeln!(s, "formula: {}", dnf(&doc, &merged));
            s
        }
    };
    Ok(CommandOutcome::new(EXIT_OK, output))
}

fn cmd_index(
    path: &PathBuf,
    op: &str,
    agent: &str,
    index: Option<&str>,
    mu: Option<&str>,
    decimals: bool,
    format: Format,
) -> Outcome {
    let doc = load(path)?;
    let op = operator(op)?;
    let ids = match index {
        Some(i) => vec![IndexId::parse(i).map_err(usage)?],
        None => IndexId::ALL.to_vec(),
    };
    let k = agent_base(&doc, agent)?;
    let mu = constraint(&doc, op, mu)?;
    let merged = merged_of(&doc, op, &mu)?;
    let mut values = Vec::new();
    for id in ids {
        let v = index_value(id, k.models(), &merged).map_err(data)?;
        let undefined = id == IndexId::Dalal && dalal_undefined(&merged);
        values.push((id, v, undefined));
    }
    let output = match format {
        Format::Json => {
            let vs: Vec<_> = values
                .iter()
                .map(|(id, v, undefined)| {
                    json!({
                        "index": id.id(),
                        "value": render_value(v),
                        "decimal": decimals.then(|| render_decimal(v)),
                        "undefined": undefined,
                    })
                })
                .collect();
            let v = json!({ "operator": op.name(), "agent": agent, "merged": merged.to_string(), "values": vs });
            format!("{v:#}\n")
        }
        Format::Text => {
            let mut s = format!("agent {agent}, operator {}, merged {merged}\n", op.name());
            for (id, v, undefined) in &values {
                let _ = write!(s, "{id}: {}", render_value(v));
                if decimals {
                    let _ = write!(s, " ({})", render_decimal(v));
                }
                if *undefined {
                    s.push_str(" (undefined on an empty merge, reported as 0)");
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(CommandOutcome::new(EXIT_OK, output))
}

/// A base name from the profile, or a `models`/`formulas` block.
fn candidate(doc: &ProfileDoc, text: &str, i: usize) -> std::result::Result<Base, Failure> {
    if let Some(b) = doc.base(text.trim()) {
        return Ok(b.clone());
    }
    let mini = format!("vars {}\nbase C{i} {text}\n", doc.signature.names().join(" "));
    let parsed = parse_profile(&mini).map_err(usage)?;
    Ok(parsed.profile.bases()[0].clone())
}

#[allow(clippy::too_many_arguments)]
fn cmd_manipulate(
    path: &PathBuf,
    agent: &str,
    op: &str,
    index: &str,
    space: &str,
    candidates: &[String],
    mu: Option<&str>,
    expect: Expect,
    format: Format,
) -> Outcome {
    let doc = load(path)?;
    let op = operator(op)?;
    let id = IndexId::parse(index).map_err(usage)?;
    let kind = SpaceKind::parse(space).map_err(usage)?;
    let space = match kind {
        SpaceKind::Explicit => {
            let list = candidates.iter().enumerate().map(|(i, c)| candidate(&doc, c, i + 1)).collect::<std::result::Result<Vec<_>, _>>()?;
            if list.is_empty() {
                return Err(usage(Error::Invalid("the explicit space needs at least one --candidate".into())));
            }
            StrategySpace::explicit(list).map_err(usage)?
        }
        _ if !candidates.is_empty() => {
            return Err(usage(Error::Invalid("--candidate needs --space explicit".into())));
        }
        k => StrategySpace::from_kind(k).map_err(usage)?,
    };
    let pos = doc.position(agent).ok_or_else(|| usage(Error::UnknownName { kind: "base", name: agent.into() }))?;
    let mu = constraint(&doc, op, mu)?;
    let bases = doc.profile.bases();
    let k = &bases[pos];
    let rest: Vec<&Base> = bases.iter().enumerate().filter(|(i, _)| *i != pos).map(|(_, b)| b).collect();
    let found = find_manipulation(&rest, k, op, &mu, id, &space).map_err(data)?;
    let truthful = op.merge_with(&rest, k, &mu).map_err(data)?;
    let before = index_value(id, k.models(), &truthful).map_err(data)?;
    let code = match (expect, found.is_some()) {
        (Expect::Witness, true) | (Expect::None, false) => EXIT_OK,
        _ => EXIT_NEGATIVE,
    };
    let output = match format {
        Format::Json => {
            let v = json!({
                "operator": op.name(),
                "index": id.id(),
                "space": space.id(),
                "agent": agent,
                "merged_truthful": truthful.to_string(),
                "index_truthful": render_value(&before),
                "witness": found.as_ref().map(|w| w.to_json(&doc.signature)),
            });
            format!("{v:#}\n")
        }
        Format::Text => match &found {
            Some(w) => {
                let mut s = String::new();
                let _ = writeln!(s, "witness for {agent} under {} / {} / {}", op.name(), id, space.id());
                let _ = write!(s, "report: {}", w.render_candidate(&doc.signature));
                if !w.candidate.is_canonical() {
                    let _ = write!(s, " models {}", w.candidate.models());
                }
                s.push('\n');
                let _ = writeln!(s, "merged truthful: {}", w.merged_truthful);
                let _ = writeln!(s, "merged lying: {}", w.merged_lying);
                let _ = writeln!(
                    s,
                    "{id}: {} -> {}",
                    render_value(&w.index_truthful),
                    render_value(&w.index_lying)
                );
                s
            }
            None => format!(
                "no manipulation in space {} (merged {truthful}, {id} {})\n",
                space.id(),
                render_value(&before)
            ),
        },
    };
    Ok(CommandOutcome::new(code, output))
}

fn cmd_audit(id: &str, args: &BoundsArgs, format: Format) -> Outcome {
    let c = claim(id).map_err(usage)?;
    let bounds = args.apply(c.defaults);
    if bounds.vars == 0 || bounds.agents < 2 || bounds.min_vars > bounds.vars {
        return Err(usage(Error::Invalid("bounds need vars >= 1, agents >= 2 and min-vars <= vars".into())));
    }
    let report = audit(&c, &bounds).map_err(|e| Failure { code: exit_code(&e), error: e })?;
    let output = match format {
        Format::Json => format!("{:#}\n", report.to_json()),
        Format::Text => report.render_text(),
    };
    Ok(CommandOutcome::new(if report.matches { EXIT_OK } else { EXIT_NEGATIVE }, output))
}

fn cmd_reproduce(id: u32, format: Format) -> Outcome {
    let r = golden::reproduce(id).map_err(|e| match e {
        Error::UnknownName { .. } => usage(e),
        e => data(e),
    })?;
    let output = match format {
        Format::Json => format!("{:#}\n", r.to_json()),
        Format::Text => r.render_text(),
    };
    Ok(CommandOutcome::new(if r.passed() { EXIT_OK } else { EXIT_NEGATIVE }, output))
}

fn cmd_list() -> CommandOutcome {
    let mut s = String::new();
    let ops: Vec<String> = Operator::all().iter().map(Operator::name).collect();
    let _ = writeln!(s, "operators: {}", ops.join(" "));
    let ids: Vec<&str> = IndexId::ALL.iter().map(|i| i.id()).collect();
    let _ = writeln!(s, "indexes: {}", ids.join(" "));
    let spaces: Vec<&str> = SpaceKind::ALL.iter().map(|k| k.id()).collect();
    let _ = writeln!(s, "spaces: {}", spaces.join(" "));
    let _ = writeln!(s, "claims: {}", crate::manipulation::CLAIM_IDS.join(" "));
    let tables: Vec<String> = golden::TABLE_IDS.iter().map(u32::to_string).collect();
    let _ = writeln!(s, "tables: {}", tables.join(" "));
    CommandOutcome::new(EXIT_OK, s)
}

/// Exit code for a library error raised outside of a file read.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownName { .. } | Error::ConstraintNotAllowed(_) | Error::BoundsExceeded { .. } => EXIT_USAGE,
        _ => EXIT_DATA,
    }
}
