//! Line-oriented profile documents.
//!
//! ```text
//! # comment
//! vars l s m
//! mu l & !s
//! base K1 models { 000, 001, 111 }
//! base K2 formulas { l <-> s ; l -> m }
//! ```

use super::base::{Base, Constraint, Profile};
use super::model_set::ModelSet;
use super::parser::parse_formula;
use super::signature::{is_identifier, Signature};
use crate::error::{Error, Result};

/// A parsed profile document.
#[derive(Clone, Debug)]
pub struct ProfileDoc {
    pub signature: Signature,
    pub mu: Constraint,
    pub profile: Profile,
}

impl ProfileDoc {
    pub fn names(&self) -> Vec<&str> {
        self.profile.bases().iter().map(|b| b.label().unwrap_or("")).collect()
    }

    pub fn base(&self, name: &str) -> Option<&Base> {
        self.profile.bases().iter().find(|b| b.label() == Some(name))
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.profile.bases().iter().position(|b| b.label() == Some(name))
    }

    /// Renders the document back into the file format.
    pub fn render(&self) -> String {
        let sig = &self.signature;
        let mut out = format!("vars {}\n", sig.names().join(" "));
        if !self.mu.is_top() || *self.mu.formula() != super::Formula::Top {
            out.push_str(&format!("mu {}\n", self.mu.formula().render(sig)));
        }
        for b in self.profile.bases() {
            let name = b.label().unwrap_or("K");
            if b.is_canonical() {
                let bits: Vec<String> = b.models().iter().map(|w| w.to_string()).collect();
                out.push_str(&format!("base {name} models {{ {} }}\n", bits.join(", ")));
            } else {
                let fs: Vec<String> = b.formulas().iter().map(|f| f.render(sig)).collect();
                out.push_str(&format!("base {name} formulas {{ {} }}\n", fs.join(" ; ")));
            }
        }
        out
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Joins physical lines so that a brace block may span several of them.
fn statements(doc: &str) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    let mut pending: Option<(usize, String)> = None;
    for (i, raw) in doc.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if let Some((start, mut acc)) = pending.take() {
            acc.push(' ');
            acc.push_str(line);
            if line.contains('}') {
                out.push((start, acc));
            } else {
                pending = Some((start, acc));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        if line.contains('{') && !line.contains('}') {
            pending = Some((i + 1, line.to_string()));
        } else {
            out.push((i + 1, line.to_string()));
        }
    }
    if let Some((line, _)) = pending {
        return Err(Error::Format { line, msg: "unterminated `{`".into() });
    }
    Ok(out)
}

pub fn parse_profile(doc: &str) -> Result<ProfileDoc> {
    let stmts = statements(doc)?;
    let mut iter = stmts.into_iter();
    let (line, first) = iter.next().ok_or(Error::Format { line: 0, msg: "empty document".into() })?;
    let rest = first.strip_prefix("vars").filter(|r| r.starts_with(char::is_whitespace));
    let Some(rest) = rest else {
        return Err(Error::Format { line, msg: "first statement must be `vars`".into() });
    };
    let signature = Signature::new(rest.split_whitespace())
        .map_err(|e| Error::Format { line, msg: e.to_string() })?;
    let width = signature.count();

    let mut mu: Option<Constraint> = None;
    let mut bases: Vec<Base> = Vec::new();
    for (line, stmt) in iter {
        let (kw, rest) = stmt.split_once(char::is_whitespace).unwrap_or((stmt.as_str(), ""));
        match kw {
            "vars" => return Err(Error::Format { line, msg: "`vars` may appear only once".into() }),
            "mu" => {
                if mu.is_some() {
                    return Err(Error::Format { line, msg: "`mu` may appear only once".into() });
                }
                let f = parse_formula(rest.trim(), &signature)?;
                mu = Some(Constraint::new(f, width)?);
            }
            "base" => {
                let b = parse_base(line, rest, &signature)?;
                if bases.iter().any(|o| o.label() == b.label()) {
                    return Err(Error::Format {
                        line,
                        msg: format!("duplicate base name `{}`", b.label().unwrap_or("")),
                    });
                }
                bases.push(b);
            }
            other => {
                return Err(Error::Format { line, msg: format!("unknown statement `{other}`") })
            }
        }
    }
    if bases.is_empty() {
        return Err(Error::Format { line: 0, msg: "no bases declared".into() });
    }
    Ok(ProfileDoc {
        signature,
        mu: mu.unwrap_or_else(|| Constraint::top(width)),
        profile: Profile::new(bases)?,
    })
}

fn parse_base(line: usize, rest: &str, sig: &Signature) -> Result<Base> {
    let fmt_err = |msg: &str| Error::Format { line, msg: msg.to_string() };
    let open = rest.find('{').ok_or_else(|| fmt_err("expected `{`"))?;
    let close = rest.rfind('}').ok_or_else(|| fmt_err("expected `}`"))?;
    if close < open || !rest[close + 1..].trim().is_empty() {
        return Err(fmt_err("malformed braces"));
    }
    let head: Vec<&str> = rest[..open].split_whitespace().collect();
    let [name, kind] = head[..] else {
        return Err(fmt_err("expected `base NAME models|formulas { ... }`"));
    };
    if !is_identifier(name) {
        return Err(fmt_err(&format!("invalid base name `{name}`")));
    }
    let body = &rest[open + 1..close];
    let width = sig.count();
    match kind {
        "models" => {
            let items: Vec<&str> = body.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let models = ModelSet::from_bits(width, &items)
                .map_err(|e| Error::Format { line, msg: e.to_string() })?;
            Base::from_models(models, Some(name.to_string()))
        }
        "formulas" => {
            let mut fs = Vec::new();
            for part in body.split(';') {
                if part.trim().is_empty() {
                    return Err(fmt_err("empty formula in list"));
                }
                fs.push(parse_formula(part.trim(), sig)?);
            }
            Base::new(width, fs, Some(name.to_string()))
        }
        other => Err(fmt_err(&format!("expected `models` or `formulas`, found `{other}`"))),
    }
}
