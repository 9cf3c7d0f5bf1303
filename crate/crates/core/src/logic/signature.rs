use std::fmt;

use crate::error::{Error, Result};

/// Default upper bound on the number of variables.
pub const DEFAULT_VAR_CAP: usize = 16;
/// The cap can be raised through the environment but never past this.
pub const HARD_VAR_CAP: usize = 24;
pub const VAR_CAP_ENV: &str = "MERGE_FORGE_VAR_CAP";

/// Variable cap in effect, honouring `MERGE_FORGE_VAR_CAP`.
pub fn var_cap() -> usize {
    std::env::var(VAR_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.clamp(1, HARD_VAR_CAP))
        .unwrap_or(DEFAULT_VAR_CAP)
}

/// Ordered list of distinct propositional variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    names: Vec<String>,
}

impl Signature {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_cap(names, var_cap())
    }

    pub fn with_cap<I, S>(names: I, cap: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Signature("at least one variable is required".into()));
        }
        if names.len() > cap.min(HARD_VAR_CAP) {
            return Err(Error::Signature(format!(
                "{} variables exceed the cap of {}",
                names.len(),
                cap.min(HARD_VAR_CAP)
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::Signature(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Signature(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Signature { names })
    }

    /// Signature `a b c ...` (or `p0 p1 ...` past 26) of the given width.
    pub fn alphabetic(width: usize) -> Result<Self> {
        let names: Vec<String> = if width <= 26 {
            (0..width).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        } else {
            (0..width).map(|i| format!("p{i}")).collect()
        };
        Self::new(names)
    }

    pub fn count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Number of interpretations, 2^count.
    pub fn world_size(&self) -> usize {
        1usize << self.count()
    }

    pub fn interpretations(&self) -> impl Iterator<Item = Interpretation> {
        let width = self.count() as u8;
        (0..self.world_size() as u32).map(move |i| Interpretation::new(i, width))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    if s == "true" || s == "false" {
        return false;
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// A truth assignment. The first variable is the most significant bit, so
/// the canonical order of interpretations is plain integer order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interpretation {
    index: u32,
    width: u8,
}

impl Interpretation {
    pub fn new(index: u32, width: u8) -> Self {
        debug_assert!((width as u32) < 32 && index < (1u32 << width));
        Interpretation { index, width }
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn width(self) -> usize {
        self.width as usize
    }

    /// Truth value of the variable at position `var`.
    pub fn value(self, var: usize) -> bool {
        (self.index >> (self.width as usize - 1 - var)) & 1 == 1
    }

    pub fn parse(bits: &str, width: usize) -> Result<Self> {
        if bits.len() != width {
            return Err(Error::WidthMismatch(bits.len(), width));
        }
        let mut index = 0u32;
        for c in bits.chars() {
            index <<= 1;
            match c {
                '0' => {}
                '1' => index |= 1,
                _ => return Err(Error::Invalid(format!("bad bit string `{bits}`"))),
            }
        }
        Ok(Interpretation::new(index, width as u8))
    }

    /// Hamming distance; errors when widths differ.
    pub fn hamming(self, other: Interpretation) -> Result<u32> {
        if self.width != other.width {
            return Err(Error::WidthMismatch(self.width(), other.width()));
        }
        Ok((self.index ^ other.index).count_ones())
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.width() {
            f.write_str(if self.value(v) { "1" } else { "0" })?;
        }
        Ok(())
    }
}
