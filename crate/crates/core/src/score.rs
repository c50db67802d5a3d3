//! Exact rational scores and edge weights.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::game::Peg;

/// Scores and weights are exact rationals end to end.
pub type Rational = Rational64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational `{input}`: {reason}")]
pub struct RationalParseError {
    pub input: String,
    pub reason: &'static str,
}

/// Parses `p/q`, an integer, or a finite decimal such as `-0.125` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let s = text.trim();
    let err = |reason| RationalParseError {
        input: text.to_string(),
        reason,
    };
    if s.is_empty() {
        return Err(err("empty"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| err("bad numerator"))?;
        let q: i64 = q.trim().parse().map_err(|_| err("bad denominator"))?;
        if q == 0 {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err("not a number"));
    }
    if frac_part.len() > 15 {
        return Err(err("too many decimal places"));
    }
    let scale = 10i64.pow(frac_part.len() as u32);
    let int_val: i64 = if int_part.is_empty() {
        0
    } else {
        int_part
            .parse()
            .map_err(|_| err("integer part out of range"))?
    };
    let frac_val: i64 = if frac_part.is_empty() {
        0
    } else {
        frac_part
            .parse()
            .map_err(|_| err("fraction out of range"))?
    };
    let numer = int_val
        .checked_mul(scale)
        .and_then(|v| v.checked_add(frac_val))
        .ok_or_else(|| err("out of range"))?;
    let r = Rational::new(numer, scale);
    Ok(if neg { -r } else { r })
}

/// Renders a rational as `p/q` (always with an explicit denominator).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `floor(r)` as an integer.
pub fn floor_int(r: &Rational) -> i64 {
    r.numer().div_floor(r.denom())
}

pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn serialize_opt_rational<S: Serializer>(
    r: &Option<Rational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

pub fn deserialize_rational<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let text = String::deserialize(d)?;
    parse_rational(&text).map_err(serde::de::Error::custom)
}

/// Points earned for a move along each undirected edge of the three-peg board.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weights {
    #[serde(
        serialize_with = "serialize_rational",
        deserialize_with = "deserialize_rational"
    )]
    pub w12: Rational,
    #[serde(
        serialize_with = "serialize_rational",
        deserialize_with = "deserialize_rational"
    )]
    pub w13: Rational,
    #[serde(
        serialize_with = "serialize_rational",
        deserialize_with = "deserialize_rational"
    )]
    pub w23: Rational,
}

impl Weights {
    pub fn new(w12: Rational, w13: Rational, w23: Rational) -> Self {
        Weights { w12, w13, w23 }
    }

    pub fn from_ints(w12: i64, w13: i64, w23: i64) -> Self {
        Weights::new(w12.into(), w13.into(), w23.into())
    }

    pub fn zero() -> Self {
        Weights::from_ints(0, 0, 0)
    }

    /// Weight of edge `{a, b}`. Edges touching a peg outside 1..=3 carry no points.
    pub fn edge(&self, a: Peg, b: Peg) -> Rational {
        match (a.min(b), a.max(b)) {
            (1, 2) => self.w12,
            (1, 3) => self.w13,
            (2, 3) => self.w23,
            _ => Rational::zero(),
        }
    }

    pub fn all_equal(&self) -> bool {
        self.w12 == self.w13 && self.w13 == self.w23
    }

    pub fn sum(&self) -> Rational {
        self.w12 + self.w13 + self.w23
    }

    pub fn min(&self) -> Rational {
        self.w12.min(self.w13).min(self.w23)
    }

    /// Weights seen from a relabelled board: the new edge `{a, b}` is the old edge
    /// `{perm[a], perm[b]}` (`perm` is indexed by peg, entry 0 unused).
    pub fn relabelled(&self, perm: &[Peg; 4]) -> Weights {
        Weights {
            w12: self.edge(perm[1], perm[2]),
            w13: self.edge(perm[1], perm[3]),
            w23: self.edge(perm[2], perm[3]),
        }
    }

    pub fn scaled(&self, c: Rational) -> Weights {
        Weights::new(self.w12 * c, self.w13 * c, self.w23 * c)
    }

    pub fn shifted(&self, c: Rational) -> Weights {
        Weights::new(self.w12 + c, self.w13 + c, self.w23 + c)
    }

    pub fn is_any_negative(&self) -> bool {
        self.w12.is_negative() || self.w13.is_negative() || self.w23.is_negative()
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(w12={}, w13={}, w23={})",
            format_rational(&self.w12),
            format_rational(&self.w13),
            format_rational(&self.w23)
        )
    }
}

impl FromStr for Weights {
    type Err = RationalParseError;

    /// `a,b,c` in the order w12, w13, w23.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(RationalParseError {
                input: s.to_string(),
                reason: "expected three comma-separated weights",
            });
        }
        Ok(Weights::new(
            parse_rational(parts[0])?,
            parse_rational(parts[1])?,
            parse_rational(parts[2])?,
        ))
    }
}
