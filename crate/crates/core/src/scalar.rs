//! Exact scalar types: arbitrary-precision rationals and quadratic
//! extensions Q(sqrt(d)), behind a common `Scalar` trait.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arbitrary-precision rational number.
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the rational n/d.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exact field scalar usable as a polynomial/matrix coefficient.
///
/// Built on num-traits `Zero`/`One` plus the std arithmetic ops, so any
/// exact field embeds by implementing `from_rat`. `as_rat` recovers a
/// rational value when the scalar happens to be one (used when extracting
/// table constants that are provably rational).
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rat(r: Rat) -> Self;
    /// Some(r) iff the value lies in Q.
    fn as_rat(&self) -> Option<Rat>;
    /// Embed a quadratic-extension element, if this scalar type can hold it.
    fn from_qx(q: Qx) -> Option<Self>;
    /// Parse one coefficient token, e.g. `-7`, `3/2`, `1-2*sqrt(-3)`.
    fn parse_coeff(s: &str) -> Result<Self, String>;
    /// Render for the canonical text format: bare integer, `(n/d)`, or
    /// `(a+b*sqrt(d))`.
    fn coeff_string(&self) -> String;

    fn from_int(n: i64) -> Self {
        Self::from_rat(int(n))
    }
}

fn rat_plain(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat_token(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let body = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    let body = body.trim();
    match body.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
            let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = body.parse().map_err(|_| format!("bad rational `{s}`"))?;
            Ok(Rat::from_integer(n))
        }
    }
}

impl Scalar for Rat {
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
    fn from_qx(q: Qx) -> Option<Self> {
        q.as_rat()
    }
    fn parse_coeff(s: &str) -> Result<Self, String> {
        if s.contains("sqrt") {
            return Err(format!("radical coefficient `{s}` not allowed over Q"));
        }
        parse_rat_token(s)
    }
    fn coeff_string(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("({})", rat_plain(self))
        }
    }
}

/// Element a + b*sqrt(d) of a quadratic extension of Q.
///
/// Canonical form: `b == 0` forces `d == 0`, so plain rationals from any
/// two extensions compare equal. `d` is otherwise a squarefree-enough
/// nonzero integer that is not a perfect square. Mixing two genuinely
/// different radicands in arithmetic is a logic error and panics; callers
/// that accept user input must check `compatible_radicand` first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Qx {
    a: Rat,
    b: Rat,
    d: i64,
}

fn is_perfect_square(d: i64) -> bool {
    if d < 0 {
        return false;
    }
    let r = (d as f64).sqrt().round() as i64;
    (r - 1..=r + 1).any(|k| k >= 0 && k * k == d)
}

impl Qx {
    pub fn new(a: Rat, b: Rat, d: i64) -> Self {
        if b.is_zero() {
            return Qx { a, b: Rat::zero(), d: 0 };
        }
        assert!(d != 0, "radicand must be nonzero when b != 0");
        assert!(!is_perfect_square(d), "radicand {d} is a perfect square; use a rational");
        Qx { a, b, d }
    }

    pub fn from_parts_i64(a: i64, b: i64, d: i64) -> Self {
        Qx::new(int(a), int(b), d)
    }

    /// sqrt(d) itself.
    pub fn sqrt(d: i64) -> Self {
        Qx::new(Rat::zero(), Rat::one(), d)
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }
    pub fn radical_part(&self) -> &Rat {
        &self.b
    }
    pub fn radicand(&self) -> i64 {
        self.d
    }

    pub fn compatible_radicand(&self, other: &Self) -> bool {
        self.d == 0 || other.d == 0 || self.d == other.d
    }

    fn unify(&self, other: &Self) -> i64 {
        if self.d == 0 {
            other.d
        } else if other.d == 0 || other.d == self.d {
            self.d
        } else {
            panic!("incompatible radicands sqrt({}) and sqrt({})", self.d, other.d)
        }
    }

    /// Galois conjugate a - b*sqrt(d).
    pub fn conj(&self) -> Self {
        Qx { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Field norm a^2 - d*b^2 (rational).
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - int(self.d) * &self.b * &self.b
    }

    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero in quadratic extension");
        let c = self.conj();
        Qx::new(c.a / n.clone(), c.b / n, self.d)
    }
}

impl From<Rat> for Qx {
    fn from(a: Rat) -> Self {
        Qx { a, b: Rat::zero(), d: 0 }
    }
}

impl Add for Qx {
    type Output = Qx;
    fn add(self, rhs: Qx) -> Qx {
        let d = self.unify(&rhs);
        Qx::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for Qx {
    type Output = Qx;
    fn sub(self, rhs: Qx) -> Qx {
        self + (-rhs)
    }
}

impl Neg for Qx {
    type Output = Qx;
    fn neg(self) -> Qx {
        Qx { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Mul for Qx {
    type Output = Qx;
    fn mul(self, rhs: Qx) -> Qx {
        let d = self.unify(&rhs);
        let a = &self.a * &rhs.a + int(d) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Qx::new(a, b, d)
    }
}

impl Div for Qx {
    type Output = Qx;
    fn div(self, rhs: Qx) -> Qx {
        self * rhs.inv()
    }
}

impl Zero for Qx {
    fn zero() -> Self {
        Qx { a: Rat::zero(), b: Rat::zero(), d: 0 }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Qx {
    fn one() -> Self {
        Qx { a: Rat::one(), b: Rat::zero(), d: 0 }
    }
}

impl fmt::Display for Qx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", rat_plain(&self.a));
        }
        let sign = if self.b < Rat::zero() { '-' } else { '+' };
        let babs = if self.b < Rat::zero() { -self.b.clone() } else { self.b.clone() };
        write!(f, "{}{}{}*sqrt({})", rat_plain(&self.a), sign, rat_plain(&babs), self.d)
    }
}

impl Scalar for Qx {
    fn from_rat(r: Rat) -> Self {
        Qx::from(r)
    }

    fn as_rat(&self) -> Option<Rat> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    fn from_qx(q: Qx) -> Option<Self> {
        Some(q)
    }

    fn parse_coeff(s: &str) -> Result<Self, String> {
        let t = s.trim();
        let body = t.strip_prefix('(').and_then(|u| u.strip_suffix(')')).unwrap_or(t).trim();
        match body.find("sqrt(") {
            None => Ok(Qx::from(parse_rat_token(body)?)),
            Some(pos) => {
                let tail = &body[pos + 5..];
                let close = tail.find(')').ok_or_else(|| format!("unclosed sqrt in `{s}`"))?;
                let d: i64 = tail[..close]
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad radicand in `{s}`"))?;
                if !tail[close + 1..].trim().is_empty() {
                    return Err(format!("trailing characters after sqrt(..) in `{s}`"));
                }
                // Everything before "sqrt(" is `a + b*` / `a - b*` / `b*` / sign.
                let head = &body[..pos];
                let head = head.trim();
                let (a_str, b_str) = split_radical_head(head)?;
                let a = if a_str.is_empty() { Rat::zero() } else { parse_rat_token(&a_str)? };
                let b = if b_str.is_empty() || b_str == "+" {
                    Rat::one()
                } else if b_str == "-" {
                    -Rat::one()
                } else {
                    parse_rat_token(&b_str)?
                };
                if d == 0 || is_perfect_square(d) {
                    return Err(format!("radicand {d} is a perfect square or zero in `{s}`"));
                }
                Ok(Qx::new(a, b, d))
            }
        }
    }

    fn coeff_string(&self) -> String {
        match self.as_rat() {
            Some(r) => r.coeff_string(),
            None => format!("({})", self),
        }
    }
}

/// Split the part before `sqrt(` into the rational summand and the radical
/// multiplier, e.g. `1-2*` -> ("1", "-2"), `-3/2*` -> ("", "-3/2"), `` -> ("", "").
fn split_radical_head(head: &str) -> Result<(String, String), String> {
    let head = head.trim();
    let core = head.strip_suffix('*').unwrap_or(head).trim();
    if core.is_empty() || core == "+" || core == "-" {
        return Ok((String::new(), core.to_string()));
    }
    // Find a top-level + or - separating a from b (skip a leading sign).
    let bytes = core.as_bytes();
    let mut split_at = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && bytes[i - 1] as char != '/' {
            split_at = Some(i);
            break;
        }
    }
    match split_at {
        Some(i) => Ok((core[..i].trim().to_string(), core[i..].trim().to_string())),
        None => Ok((String::new(), core.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qx_arithmetic_and_canonical_form() {
        let s = Qx::sqrt(-3);
        let x = Qx::new(int(1), int(-2), -3);
        let prod = x.clone() * s.clone();
        // (1 - 2 sqrt(-3)) * sqrt(-3) = 6 + sqrt(-3)
        assert_eq!(prod, Qx::new(int(6), int(1), -3));
        // b goes to zero -> radicand resets, comparing equal to plain rational
        let y = x.clone() + Qx::new(int(0), int(2), -3);
        assert_eq!(y, Qx::from(int(1)));
        assert_eq!(y.radicand(), 0);
        let inv = x.clone().inv();
        assert!(
            (x * inv).as_rat() == Some(int(1)),
            "inverse must satisfy x * x^-1 = 1"
        );
    }

    #[test]
    #[should_panic(expected = "incompatible radicands")]
    fn qx_radicand_mismatch_panics() {
        let _ = Qx::sqrt(-3) + Qx::sqrt(-5);
    }

    #[test]
    fn qx_parse_and_print_round_trip() {
        for s in ["(1-2*sqrt(-3))", "(0+1*sqrt(-4))", "(-5/2+3/4*sqrt(5))", "7", "(3/2)"] {
            let v = Qx::parse_coeff(s).unwrap();
            let printed = v.coeff_string();
            let reparsed = Qx::parse_coeff(&printed).unwrap();
            assert_eq!(v, reparsed, "round trip failed for {s}: printed {printed}");
        }
        // sqrt with implicit unit coefficient
        assert_eq!(Qx::parse_coeff("(sqrt(-4))").unwrap(), Qx::sqrt(-4));
        assert_eq!(Qx::parse_coeff("(-sqrt(5))").unwrap(), -Qx::sqrt(5));
        assert!(Qx::parse_coeff("(1+sqrt(4))").is_err());
        assert!(Rat::parse_coeff("(1+sqrt(-3))").is_err());
    }

    #[test]
    fn rat_coeff_strings() {
        assert_eq!(int(-105).coeff_string(), "-105");
        assert_eq!(rat(3, 2).coeff_string(), "(3/2)");
        assert_eq!(Rat::parse_coeff("(3/2)").unwrap(), rat(3, 2));
        assert_eq!(Rat::parse_coeff("-4").unwrap(), int(-4));
    }
}
