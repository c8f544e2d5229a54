//! Exact rationals and affine-linear functions `a·s + b` of the spectral parameter.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational scalar used throughout the crate.
pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn half() -> Q {
    Q::new(1, 2)
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{input}`: {reason}")]
pub struct ParseError {
    pub input: String,
    pub reason: String,
}

impl ParseError {
    pub(crate) fn new(input: &str, reason: impl Into<String>) -> Self {
        Self {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

/// Parses `p`, `-p`, `p/q` or a decimal such as `4.5`.
pub fn parse_q(text: &str) -> Result<Q, ParseError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(ParseError::new(text, "empty number"));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: i64 = n
            .trim()
            .parse()
            .map_err(|_| ParseError::new(text, "bad numerator"))?;
        let d: i64 = d
            .trim()
            .parse()
            .map_err(|_| ParseError::new(text, "bad denominator"))?;
        if d == 0 {
            return Err(ParseError::new(text, "zero denominator"));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let int_part: i64 = if int == "-" || int.is_empty() {
            0
        } else {
            int.parse()
                .map_err(|_| ParseError::new(text, "bad decimal"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 15 {
            return Err(ParseError::new(text, "bad decimal"));
        }
        let scale = 10i64.pow(frac.len() as u32);
        let f: i64 = frac.parse().unwrap();
        let mag = Q::new(int_part.abs() * scale + f, scale);
        return Ok(if neg { -mag } else { mag });
    }
    t.parse::<i64>()
        .map(Q::from_integer)
        .map_err(|_| ParseError::new(text, "bad integer"))
}

pub(crate) fn ser_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

pub(crate) fn de_q<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    let s = String::deserialize(d)?;
    parse_q(&s).map_err(serde::de::Error::custom)
}

/// The affine function `slope·s + offset`.
///
/// Ordering is lexicographic on `(slope, offset)`, which is the canonical
/// key order used for products of completed zeta factors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct AffineArg {
    #[serde(serialize_with = "ser_q", deserialize_with = "de_q")]
    pub slope: Q,
    #[serde(serialize_with = "ser_q", deserialize_with = "de_q")]
    pub offset: Q,
}

impl AffineArg {
    pub fn new(slope: Q, offset: Q) -> Self {
        Self { slope, offset }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(Q::zero(), c)
    }

    /// The identity function `s`.
    pub fn s() -> Self {
        Self::new(Q::one(), Q::zero())
    }

    pub fn zero() -> Self {
        Self::constant(Q::zero())
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }

    pub fn eval(&self, s: Q) -> Q {
        self.slope * s + self.offset
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        to_f64(self.slope) * s + to_f64(self.offset)
    }

    /// `x ↦ 1 − x`, the symmetry of the completed zeta function.
    pub fn reflect(&self) -> Self {
        Self::new(-self.slope, Q::one() - self.offset)
    }

    /// Representative of `{x, 1−x}` with positive slope, or, for constants,
    /// with value at least 1/2.
    pub fn canonical(&self) -> Self {
        let flip = if self.slope.is_zero() {
            self.offset < half()
        } else {
            self.slope.is_negative()
        };
        if flip {
            self.reflect()
        } else {
            *self
        }
    }

    pub fn scale(&self, k: Q) -> Self {
        Self::new(self.slope * k, self.offset * k)
    }

    pub fn shift(&self, c: Q) -> Self {
        Self::new(self.slope, self.offset + c)
    }
}

pub(crate) fn to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

impl Add for AffineArg {
    type Output = AffineArg;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.slope + rhs.slope, self.offset + rhs.offset)
    }
}

impl Sub for AffineArg {
    type Output = AffineArg;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.slope - rhs.slope, self.offset - rhs.offset)
    }
}

impl Neg for AffineArg {
    type Output = AffineArg;
    fn neg(self) -> Self {
        Self::new(-self.slope, -self.offset)
    }
}

impl Mul<Q> for AffineArg {
    type Output = AffineArg;
    fn mul(self, k: Q) -> Self {
        self.scale(k)
    }
}

fn fmt_slope_term(slope: Q) -> String {
    if slope == Q::one() {
        "s".into()
    } else if slope == -Q::one() {
        "-s".into()
    } else if slope.is_integer() {
        format!("{}s", slope.numer())
    } else {
        format!("{}s", fmt_q(&slope))
    }
}

/// Renders `2s-4`, `5/2-s`, `s`, `-3`.  Negative-slope functions with a
/// nonzero offset lead with the offset, as in `19/2-s`.
impl fmt::Display for AffineArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (self.slope, self.offset);
        if a.is_zero() {
            return write!(f, "{}", fmt_q(&b));
        }
        if b.is_zero() {
            return write!(f, "{}", fmt_slope_term(a));
        }
        if a.is_negative() {
            let t = fmt_slope_term(-a);
            write!(f, "{}-{}", fmt_q(&b), t)
        } else {
            let t = fmt_slope_term(a);
            if b.is_negative() {
                write!(f, "{}-{}", t, fmt_q(&-b))
            } else {
                write!(f, "{}+{}", t, fmt_q(&b))
            }
        }
    }
}

/// Parses sums of rational multiples of `s` and constants, allowing a
/// factored form like `2(s-9)`.  Fractions bind tighter than anything else,
/// so `19/2-s` reads as `19/2 - s`.
impl FromStr for AffineArg {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = AffineParser {
            chars: &chars,
            pos: 0,
            src: text,
        };
        let v = p.expr()?;
        if p.pos != chars.len() {
            return Err(ParseError::new(text, "trailing input"));
        }
        Ok(v)
    }
}

struct AffineParser<'a> {
    chars: &'a [char],
    pos: usize,
    src: &'a str,
}

impl AffineParser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err(&self, why: &str) -> ParseError {
        ParseError::new(self.src, why)
    }

    fn expr(&mut self) -> Result<AffineArg, ParseError> {
        let mut acc = AffineArg::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    Q::one()
                }
                Some('-') => {
                    self.pos += 1;
                    -Q::one()
                }
                _ if first => Q::one(),
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = acc + t.scale(sign);
        }
        Ok(acc)
    }

    fn number(&mut self) -> Option<Q> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let n: i64 = self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .ok()?;
        if self.peek() == Some('/') {
            let save = self.pos;
            self.pos += 1;
            let ds = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == ds {
                self.pos = save;
                return Some(q(n));
            }
            let d: i64 = self.chars[ds..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .ok()?;
            if d == 0 {
                return None;
            }
            return Some(Q::new(n, d));
        }
        Some(q(n))
    }

    fn term(&mut self) -> Result<AffineArg, ParseError> {
        let coeff = self.number();
        if self.peek() == Some('*') {
            self.pos += 1;
        }
        match self.peek() {
            Some('s') => {
                self.pos += 1;
                Ok(AffineArg::new(coeff.unwrap_or(Q::one()), Q::zero()))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("missing `)`"));
                }
                self.pos += 1;
                Ok(inner.scale(coeff.unwrap_or(Q::one())))
            }
            _ => coeff
                .map(AffineArg::constant)
                .ok_or_else(|| self.err("expected number, `s` or `(`")),
        }
    }
}
