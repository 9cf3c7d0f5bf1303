//! Embedded reference tables and their cell-by-cell reproduction.
//!
//! A table file holds a profile document, a `---` line, then directives:
//!
//! ```text
//! title Merging with dH-sum
//! operator dH-sum
//! columns K1 K2 K3
//! merge K1 K2 K3 = { 000, 001, 110 }
//! index ds K1 = 0
//! row 000 | 0 1 0 | 1
//! ```
//!
//! `columns` lists the bases whose per-interpretation distances are shown,
//! each `merge` adds an aggregate column and its expected merged set, and
//! `index` gives the agent's index value on each merge in order.

use serde_json::json;

use crate::error::{Error, Result};
use crate::logic::{parse_profile, Base, ModelSet, ProfileDoc};
use crate::metric::dist_to_models;
use crate::model_merge::ranking;
use crate::operator::Operator;
use crate::satisfaction::{index_value, render_value, IndexId};

pub const TABLE_IDS: [u32; 14] = [1, 2, 5, 6, 7, 8, 9, 10, 11, 12, 13, 15, 16, 17];

fn source(id: u32) -> Option<&'static str> {
    Some(match id {
        1 => include_str!("../golden/t01.txt"),
        2 => include_str!("../golden/t02.txt"),
        5 => include_str!("../golden/t05.txt"),
        6 => include_str!("../golden/t06.txt"),
        7 => include_str!("../golden/t07.txt"),
        8 => include_str!("../golden/t08.txt"),
        9 => include_str!("../golden/t09.txt"),
        10 => include_str!("../golden/t10.txt"),
        11 => include_str!("../golden/t11.txt"),
        12 => include_str!("../golden/t12.txt"),
        13 => include_str!("../golden/t13.txt"),
        15 => include_str!("../golden/t15.txt"),
        16 => include_str!("../golden/t16.txt"),
        17 => include_str!("../golden/t17.txt"),
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenRow {
    pub interpretation: String,
    pub distances: Vec<String>,
    pub aggregates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenMerge {
    pub bases: Vec<String>,
    pub merged: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenIndex {
    pub index: IndexId,
    pub agent: String,
    pub values: Vec<String>,
}

/// An expected table together with its source profile.
#[derive(Debug, Clone)]
pub struct GoldenTable {
    pub id: u32,
    pub title: String,
    pub profile: String,
    pub operator: Operator,
    pub columns: Vec<String>,
    pub merges: Vec<GoldenMerge>,
    pub indexes: Vec<GoldenIndex>,
    pub rows: Vec<GoldenRow>,
}

/// Splits aggregate cells: bare numbers or parenthesised vectors.
fn cells(s: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let end = if rest.starts_with('(') {
            rest.find(')').map(|i| i + 1).ok_or_else(|| Error::Invalid(format!("unclosed vector in `{s}`")))?
        } else {
            rest.find(char::is_whitespace).unwrap_or(rest.len())
        };
        let cell = &rest[..end];
        out.push(match cell.strip_prefix('(').and_then(|c| c.strip_suffix(')')) {
            Some(inner) => format!("({})", inner.split(',').map(str::trim).collect::<Vec<_>>().join(", ")),
            None => cell.to_string(),
        });
        rest = rest[end..].trim_start();
    }
    Ok(out)
}

fn normalise_set(s: &str, width: usize) -> Result<String> {
    Ok(ModelSet::parse(width, s.trim())?.to_string())
}

impl GoldenTable {
    pub fn load(id: u32) -> Result<Self> {
        let text = source(id).ok_or_else(|| Error::UnknownName { kind: "table", name: id.to_string() })?;
        Self::parse(id, text)
    }

    pub fn parse(id: u32, text: &str) -> Result<Self> {
        let (profile, body) = text
            .split_once("\n---\n")
            .ok_or_else(|| Error::Format { line: 0, msg: "missing `---` separator".into() })?;
        let doc = parse_profile(profile)?;
        let width = doc.signature.count();
        let mut t = GoldenTable {
            id,
            title: String::new(),
            profile: profile.to_string(),
            operator: Operator::parse("dH-sum")?,
            columns: vec![],
            merges: vec![],
            indexes: vec![],
            rows: vec![],
        };
        let first = profile.lines().count() + 2;
        for (i, line) in body.lines().enumerate() {
            let lineno = first + i;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Format { line: lineno, msg: msg.into() };
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match kw {
                "title" => t.title = rest.trim().to_string(),
                "operator" => t.operator = Operator::parse(rest.trim())?,
                "columns" => t.columns = rest.split_whitespace().map(String::from).collect(),
                "merge" => {
                    let (names, set) = rest.split_once('=').ok_or_else(|| err("expected `merge NAMES = { .. }`"))?;
                    t.merges.push(GoldenMerge {
                        bases: names.split_whitespace().map(String::from).collect(),
                        merged: normalise_set(set, width)?,
                    });
                }
                "index" => {
                    let (lhs, vals) = rest.split_once('=').ok_or_else(|| err("expected `index ID AGENT = ..`"))?;
                    let mut lhs = lhs.split_whitespace();
                    let (Some(idx), Some(agent)) = (lhs.next(), lhs.next()) else {
                        return Err(err("expected `index ID AGENT = ..`"));
                    };
                    t.indexes.push(GoldenIndex {
                        index: IndexId::parse(idx)?,
                        agent: agent.to_string(),
                        values: vals.split_whitespace().map(String::from).collect(),
                    });
                }
                "row" => {
                    let parts: Vec<&str> = rest.split('|').collect();
                    if parts.len() != 3 {
                        return Err(err("expected `row BITS | distances | aggregates`"));
                    }
                    t.rows.push(GoldenRow {
                        interpretation: parts[0].trim().to_string(),
                        distances: parts[1].split_whitespace().map(String::from).collect(),
                        aggregates: cells(parts[2])?,
                    });
                }
                _ => return Err(err(&format!("unknown directive `{kw}`"))),
            }
        }
        if !matches!(t.operator, Operator::Model(..)) {
            return Err(Error::Invalid("reference tables use distance-based operators".into()));
        }
        for name in t.columns.iter().chain(t.merges.iter().flat_map(|m| &m.bases)) {
            if doc.base(name).is_none() {
                return Err(Error::UnknownName { kind: "base", name: name.clone() });
            }
        }
        Ok(t)
    }

    pub fn doc(&self) -> Result<ProfileDoc> {
        parse_profile(&self.profile)
    }
}

/// Recomputed table and its differences from the expected one.
#[derive(Debug, Clone)]
pub struct Reproduction {
    pub table: GoldenTable,
    pub rows: Vec<GoldenRow>,
    pub merged: Vec<String>,
    pub indexes: Vec<Vec<String>>,
    pub diffs: Vec<String>,
}

impl Reproduction {
    pub fn passed(&self) -> bool {
        self.diffs.is_empty()
    }

    pub fn render_text(&self) -> String {
        let t = &self.table;
        let mut out = format!("Table {}: {} ({})\n", t.id, t.title, t.operator.name());
        let mut header = vec!["w".to_string()];
        header.extend(t.columns.iter().cloned());
        header.push("|".into());
        header.extend(t.merges.iter().map(|m| m.bases.join("+")));
        let mut lines = vec![header];
        for r in &self.rows {
            let mut line = vec![r.interpretation.clone()];
            line.extend(r.distances.iter().cloned());
            line.push("|".into());
            for (j, a) in r.aggregates.iter().enumerate() {
                let star = self.merged.get(j).is_some_and(|m| m.contains(&r.interpretation));
                line.push(format!("{a}{}", if star { "*" } else { "" }));
            }
            lines.push(line);
        }
        let ncols = lines[0].len();
        let widths: Vec<usize> =
            (0..ncols).map(|c| lines.iter().map(|l| l.get(c).map_or(0, |s| s.len())).max().unwrap_or(0)).collect();
        for l in &lines {
            let cells: Vec<String> = l.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        for (m, got) in t.merges.iter().zip(&self.merged) {
            out.push_str(&format!("merged {}: {got}\n", m.bases.join(" ")));
        }
        for (g, got) in t.indexes.iter().zip(&self.indexes) {
            out.push_str(&format!("index {} of {}: {}\n", g.index, g.agent, got.join(" -> ")));
        }
        for d in &self.diffs {
            out.push_str(&format!("DIFF {d}\n"));
        }
        out.push_str(&format!(
            "{} table {} ({} rows, {} differences)\n",
            if self.passed() { "PASS" } else { "FAIL" },
            t.id,
            self.rows.len(),
            self.diffs.len()
        ));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let t = &self.table;
        json!({
            "table": t.id,
            "title": t.title,
            "operator": t.operator.name(),
            "columns": t.columns,
            "merges": t.merges.iter().zip(&self.merged).map(|(m, got)| json!({
                "bases": m.bases, "expected": m.merged, "computed": got,
            })).collect::<Vec<_>>(),
            "indexes": t.indexes.iter().zip(&self.indexes).map(|(g, got)| json!({
                "index": g.index.id(), "agent": g.agent, "expected": g.values, "computed": got,
            })).collect::<Vec<_>>(),
            "rows": self.rows.iter().map(|r| json!({
                "interpretation": r.interpretation,
                "distances": r.distances,
                "aggregates": r.aggregates,
            })).collect::<Vec<_>>(),
            "differences": self.diffs,
            "pass": self.passed(),
        })
    }
}

/// Recomputes table `id` from its source profile and diffs every cell.
pub fn reproduce(id: u32) -> Result<Reproduction> {
    let table = GoldenTable::load(id)?;
    reproduce_table(table)
}

pub fn reproduce_table(table: GoldenTable) -> Result<Reproduction> {
    let doc = table.doc()?;
    let Operator::Model(d, f) = table.operator else {
        return Err(Error::Invalid("reference tables use distance-based operators".into()));
    };
    let base = |n: &str| -> Result<&Base> {
        doc.base(n).ok_or_else(|| Error::UnknownName { kind: "base", name: n.to_string() })
    };
    let columns: Vec<&Base> = table.columns.iter().map(|n| base(n)).collect::<Result<_>>()?;
    let mut rankings = Vec::new();
    let mut merged = Vec::new();
    for m in &table.merges {
        let bases: Vec<&ModelSet> = m.bases.iter().map(|n| base(n).map(Base::models)).collect::<Result<_>>()?;
        let r = ranking(&bases, &doc.mu, &d, &f)?;
        merged.push(r.merged()?);
        rankings.push(r);
    }
    let width = doc.signature.count();
    let mut rows = Vec::new();
    for i in 0..1u32 << width {
        let w = crate::logic::Interpretation::new(i, width as u8);
        rows.push(GoldenRow {
            interpretation: w.to_string(),
            distances: columns.iter().map(|k| dist_to_models(&d, w, k.models()).to_string()).collect(),
            aggregates: rankings.iter().map(|r| r.rows[i as usize].aggregate.to_string()).collect(),
        });
    }
    let mut indexes = Vec::new();
    for g in &table.indexes {
        let k = base(&g.agent)?;
        indexes.push(
            merged.iter().map(|m| index_value(g.index, k.models(), m).map(|v| render_value(&v))).collect::<Result<Vec<_>>>()?,
        );
    }

    let mut diffs = Vec::new();
    if rows.len() != table.rows.len() {
        diffs.push(format!("expected {} rows, computed {}", table.rows.len(), rows.len()));
    }
    for (exp, got) in table.rows.iter().zip(&rows) {
        if exp.interpretation != got.interpretation {
            diffs.push(format!("row order: expected {}, computed {}", exp.interpretation, got.interpretation));
            continue;
        }
        let w = &got.interpretation;
        for (c, name) in table.columns.iter().enumerate() {
            let (e, g) = (exp.distances.get(c), got.distances.get(c));
            if e != g {
                diffs.push(format!("row {w} column {name}: expected {}, computed {}", show(e), show(g)));
            }
        }
        if exp.distances.len() > table.columns.len() {
            diffs.push(format!("row {w}: {} distance cells for {} columns", exp.distances.len(), table.columns.len()));
        }
        for (j, m) in table.merges.iter().enumerate() {
            let (e, g) = (exp.aggregates.get(j), got.aggregates.get(j));
            if e != g {
                diffs.push(format!(
                    "row {w} aggregate {}: expected {}, computed {}",
                    m.bases.join("+"),
                    show(e),
                    show(g)
                ));
            }
        }
    }
    let merged: Vec<String> = merged.iter().map(ModelSet::to_string).collect();
    for (m, got) in table.merges.iter().zip(&merged) {
        if m.merged != *got {
            diffs.push(format!("merged {}: expected {}, computed {got}", m.bases.join(" "), m.merged));
        }
    }
    for (g, got) in table.indexes.iter().zip(&indexes) {
        if g.values != *got {
            diffs.push(format!(
                "index {} of {}: expected {}, computed {}",
                g.index,
                g.agent,
                g.values.join(" "),
                got.join(" ")
            ));
        }
    }
    Ok(Reproduction { table, rows, merged, indexes, diffs })
}

fn show(s: Option<&String>) -> &str {
    s.map_or("<missing>", String::as_str)
}
