use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn from_char(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    /// Whether `rank` is a legal rank for this family.
    pub fn accepts(self, rank: usize) -> bool {
        match self {
            Family::A | Family::B | Family::C => rank >= 1,
            Family::D => rank >= 2,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

/// One irreducible factor, e.g. `D6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// An ordered product of irreducible types, written `A1xD6`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeSpec {
    pub factors: Vec<Factor>,
}

impl TypeSpec {
    pub fn new(factors: Vec<Factor>) -> Result<TypeSpec> {
        let spec = TypeSpec { factors };
        spec.validate()?;
        Ok(spec)
    }

    pub fn irreducible(family: Family, rank: usize) -> Result<TypeSpec> {
        TypeSpec::new(vec![Factor { family, rank }])
    }

    pub fn validate(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Err(Error::InvalidSpec { spec: String::new(), reason: "no factors".into() });
        }
        for f in &self.factors {
            if !f.family.accepts(f.rank) {
                return Err(Error::InvalidSpec {
                    spec: self.to_string(),
                    reason: format!("factor {f} is not a legal type"),
                });
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }
}

impl fmt::Display for TypeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl FromStr for TypeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<TypeSpec> {
        let bad = |reason: String| Error::InvalidSpec { spec: s.to_string(), reason };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(bad("empty".into()));
        }
        let mut factors = Vec::new();
        for part in trimmed.split(['x', 'X', '×']) {
            let part = part.trim();
            let mut chars = part.chars();
            let family = chars
                .next()
                .and_then(Family::from_char)
                .ok_or_else(|| bad(format!("factor `{part}` must start with a family letter A-G")))?;
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad(format!("factor `{part}` needs a decimal rank")));
            }
            let rank: usize = digits.parse().map_err(|_| bad(format!("factor `{part}`: rank out of range")))?;
            if !family.accepts(rank) {
                return Err(bad(format!("factor `{part}` is not a legal type")));
            }
            factors.push(Factor { family, rank });
        }
        Ok(TypeSpec { factors })
    }
}

impl Serialize for TypeSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TypeSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
