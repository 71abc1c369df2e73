//! Polynomials in `t` and `s` over [`Scalar`], the polynomial `h(t)`, and
//! the operators `F` and `G`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::linear::Vector;
use crate::scalar::{binomial, parse_rational, Alphabet, Rational, Scalar, ScalarError};

/// The monomial `t^t s^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono {
    pub t: u32,
    pub s: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { t: 0, s: 0 };

    pub fn new(t: u32, s: u32) -> Self {
        Mono { t, s }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("t", self.t), ("s", self.s)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Element of `ℂ[t, s]`, the underlying space of every Ω(λ,α,h).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyTS(Vector<Mono>);

impl fmt::Debug for PolyTS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyTS({self})")
    }
}

impl PolyTS {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn t() -> Self {
        Self::monomial(1, 0, Scalar::one())
    }

    pub fn s() -> Self {
        Self::monomial(0, 1, Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(t: u32, s: u32, c: Scalar) -> Self {
        PolyTS(Vector::term(Mono::new(t, s), c))
    }

    /// `Σ coeffs[k] t^k`.
    pub fn from_t_coeffs(coeffs: &[Scalar]) -> Self {
        PolyTS(coeffs.iter().enumerate().map(|(k, c)| (Mono::new(k as u32, 0), c.clone())).collect())
    }

    pub fn from_vector(v: Vector<Mono>) -> Self {
        PolyTS(v)
    }

    pub fn as_vector(&self) -> &Vector<Mono> {
        &self.0
    }

    pub fn into_vector(self) -> Vector<Mono> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Scalar)> {
        self.0.iter()
    }

    pub fn coeff(&self, t: u32, s: u32) -> Scalar {
        self.0.coeff(&Mono::new(t, s))
    }

    pub fn add_term(&mut self, mono: Mono, c: Scalar) {
        self.0.add_term(mono, c);
    }

    /// Largest `t`-degree, or `None` for zero.
    pub fn degree_t(&self) -> Option<u32> {
        self.0.keys().map(|m| m.t).max()
    }

    /// Largest `s`-degree, or `None` for zero.
    pub fn degree_s(&self) -> Option<u32> {
        self.0.keys().map(|m| m.s).max()
    }

    pub fn is_t_only(&self) -> bool {
        self.0.keys().all(|m| m.s == 0)
    }

    /// The `t`-polynomial multiplying `s^i`.
    pub fn s_coeff(&self, i: u32) -> PolyTS {
        PolyTS(self.0.iter().filter(|(m, _)| m.s == i).map(|(m, c)| (Mono::new(m.t, 0), c.clone())).collect())
    }

    /// `Σ_i parts[i] s^i` for `t`-polynomials `parts[i]`.
    pub fn from_s_coeffs(parts: &[PolyTS]) -> Self {
        let mut out = PolyTS::zero();
        for (i, p) in parts.iter().enumerate() {
            out = out + p.mul_s_pow(i as u32);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        PolyTS(self.0.scale(c))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        PolyTS(self.0.scale_rational(&Rational::from_integer(n.into())))
    }

    pub fn mul_t_pow(&self, k: u32) -> Self {
        PolyTS(self.0.map_keys(|m| Mono::new(m.t + k, m.s)))
    }

    pub fn mul_s_pow(&self, k: u32) -> Self {
        PolyTS(self.0.map_keys(|m| Mono::new(m.t, m.s + k)))
    }

    pub fn mul_t(&self) -> Self {
        self.mul_t_pow(1)
    }

    pub fn mul_s(&self) -> Self {
        self.mul_s_pow(1)
    }

    /// Product; fails with [`ScalarError::ModeError`] on mismatched alphabets.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let mut out = Vector::new();
        for (ma, ca) in self.0.iter() {
            for (mb, cb) in other.0.iter() {
                out.add_term(Mono::new(ma.t + mb.t, ma.s + mb.s), ca.checked_mul(cb)?);
            }
        }
        Ok(PolyTS(out))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = PolyTS::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Partial derivative in `t`.
    pub fn d_dt(&self) -> Self {
        PolyTS(
            self.0
                .iter()
                .filter(|(m, _)| m.t > 0)
                .map(|(m, c)| (Mono::new(m.t - 1, m.s), c.mul_int(i64::from(m.t))))
                .collect(),
        )
    }

    /// Substitutes `s ↦ s − m`.
    pub fn shift_s(&self, m: i64) -> Self {
        if m == 0 {
            return self.clone();
        }
        let mut out = Vector::new();
        for (mono, c) in self.0.iter() {
            let b = i64::from(mono.s);
            // (s - m)^b = Σ_k C(b,k) s^k (-m)^{b-k}
            let mut power = num::BigInt::one();
            for k in (0..=b).rev() {
                let w = Rational::from_integer(binomial(b, k) * &power);
                out.add_term(Mono::new(mono.t, k as u32), c.mul_rational(&w));
                power *= -m;
            }
        }
        PolyTS(out)
    }

    /// Substitutes a `t`-only polynomial for `t`.
    pub fn compose_t(&self, inner: &PolyTS) -> Self {
        debug_assert!(inner.is_t_only());
        let top = self.degree_t().unwrap_or(0);
        let mut powers = vec![PolyTS::one()];
        for k in 1..=top as usize {
            let next = &powers[k - 1] * inner;
            powers.push(next);
        }
        let mut out = PolyTS::zero();
        for (m, c) in self.0.iter() {
            out = out + powers[m.t as usize].mul_s_pow(m.s).scale(c);
        }
        out
    }

    /// Evaluates at `t = x` (leaves `s`).
    pub fn eval_t(&self, x: &Scalar) -> Self {
        let mut out = Vector::new();
        for (m, c) in self.0.iter() {
            out.add_term(Mono::new(0, m.s), c * &pow_u(x, m.t));
        }
        PolyTS(out)
    }

    /// Applies `f` to each coefficient, e.g. parameter substitution.
    pub fn try_map_coeffs<E>(&self, f: impl FnMut(&Scalar) -> Result<Scalar, E>) -> Result<Self, E> {
        Ok(PolyTS(self.0.try_map_coeffs(f)?))
    }

    /// Parses the textual grammar used in reports, e.g. `3/2*t^2*s + xi*t`.
    /// Identifiers other than `t` and `s` are resolved by `resolve`.
    pub fn parse(text: &str, resolve: &dyn Fn(&str) -> Option<Scalar>) -> Result<Self, ParseError> {
        Parser::new(text, resolve).parse_all()
    }

    /// Like [`PolyTS::parse`] with symbols taken from `alphabet`.
    pub fn parse_in(text: &str, alphabet: &Arc<Alphabet>) -> Result<Self, ParseError> {
        Self::parse(text, &|name| alphabet.var(name).ok())
    }
}

pub(crate) fn pow_u(x: &Scalar, n: u32) -> Scalar {
    let mut out = Scalar::one();
    for _ in 0..n {
        out = &out * x;
    }
    out
}

impl fmt::Display for PolyTS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.0.iter().rev().enumerate() {
            let term = if *m == Mono::ONE {
                c.to_string()
            } else if c.is_one() {
                m.to_string()
            } else if (-c).is_one() {
                format!("-{m}")
            } else {
                format!("{}*{m}", c.to_coefficient_string())
            };
            match (k, term.strip_prefix('-')) {
                (0, _) => write!(f, "{term}")?,
                (_, Some(rest)) if c.term_count() == 1 => write!(f, " - {rest}")?,
                _ => write!(f, " + {term}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for PolyTS {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl Add for &PolyTS {
    type Output = PolyTS;
    fn add(self, rhs: &PolyTS) -> PolyTS {
        PolyTS(&self.0 + &rhs.0)
    }
}

impl Add for PolyTS {
    type Output = PolyTS;
    fn add(self, rhs: PolyTS) -> PolyTS {
        PolyTS(self.0 + rhs.0)
    }
}

impl Sub for &PolyTS {
    type Output = PolyTS;
    fn sub(self, rhs: &PolyTS) -> PolyTS {
        PolyTS(&self.0 - &rhs.0)
    }
}

impl Sub for PolyTS {
    type Output = PolyTS;
    fn sub(self, rhs: PolyTS) -> PolyTS {
        PolyTS(self.0 - rhs.0)
    }
}

impl Neg for &PolyTS {
    type Output = PolyTS;
    fn neg(self) -> PolyTS {
        PolyTS(-&self.0)
    }
}

impl Mul for &PolyTS {
    type Output = PolyTS;
    fn mul(self, rhs: &PolyTS) -> PolyTS {
        self.checked_mul(rhs).expect("scalar alphabet mismatch")
    }
}

impl Mul for PolyTS {
    type Output = PolyTS;
    fn mul(self, rhs: PolyTS) -> PolyTS {
        &self * &rhs
    }
}

/// The polynomial `h(t) = Σ coeffs[k] t^k`; `coeffs[0] = η`, `coeffs[1] = ξ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HPoly {
    coeffs: Vec<Scalar>,
}

impl HPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        HPoly { coeffs }
    }

    /// `h(t) = ξt + η`.
    pub fn linear(xi: Scalar, eta: Scalar) -> Self {
        Self::new(vec![eta, xi])
    }

    pub fn constant(eta: Scalar) -> Self {
        Self::new(vec![eta])
    }

    pub fn from_poly(p: &PolyTS) -> Result<Self, ParseError> {
        if !p.is_t_only() {
            return Err(ParseError::new(0, "h(t) must not depend on s"));
        }
        let d = p.degree_t().unwrap_or(0);
        Ok(Self::new((0..=d).map(|k| p.coeff(k, 0)).collect()))
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn eta(&self) -> Scalar {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn xi(&self) -> Scalar {
        self.coeffs.get(1).cloned().unwrap_or_default()
    }

    /// Coefficients of degree ≥ 2.
    pub fn higher(&self) -> &[Scalar] {
        self.coeffs.get(2..).unwrap_or(&[])
    }

    /// Degree; the zero polynomial is reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn to_poly(&self) -> PolyTS {
        PolyTS::from_t_coeffs(&self.coeffs)
    }

    /// `(h(t) − h(α)) / (t − α)` by synthetic division.
    pub fn divided_difference(&self, alpha: &Scalar) -> PolyTS {
        let d = self.degree();
        if d == 0 {
            return PolyTS::zero();
        }
        let mut shifted = self.coeffs.clone();
        shifted[0] = &shifted[0] - &self.eval(alpha);
        let mut q = vec![Scalar::zero(); d];
        q[d - 1] = shifted[d].clone();
        for j in (1..d).rev() {
            q[j - 1] = &shifted[j] + &(alpha * &q[j]);
        }
        let remainder = &shifted[0] + &(alpha * &q[0]);
        debug_assert!(remainder.is_zero(), "t = α must be a root of h(t) − h(α)");
        PolyTS::from_t_coeffs(&q)
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

impl Serialize for HPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// The operators `F(f) = q·f − ∂_t f` and `G(f) = h(α)f + tF(f)` with
/// `q = (h(t) − h(α))/(t − α)`, applied coefficient-wise in `s`.
#[derive(Debug, Clone)]
pub struct FgOperators {
    q: PolyTS,
    h_alpha: Scalar,
}

impl FgOperators {
    pub fn new(h: &HPoly, alpha: &Scalar) -> Self {
        FgOperators { q: h.divided_difference(alpha), h_alpha: h.eval(alpha) }
    }

    pub fn quotient(&self) -> &PolyTS {
        &self.q
    }

    pub fn h_alpha(&self) -> &Scalar {
        &self.h_alpha
    }

    pub fn f(&self, p: &PolyTS) -> PolyTS {
        &(&self.q * p) - &p.d_dt()
    }

    pub fn g(&self, p: &PolyTS) -> PolyTS {
        &p.scale(&self.h_alpha) + &self.f(p).mul_t()
    }
}

pub fn op_f(f: &PolyTS, h: &HPoly, alpha: &Scalar) -> PolyTS {
    FgOperators::new(h, alpha).f(f)
}

pub fn op_g(f: &PolyTS, h: &HPoly, alpha: &Scalar) -> PolyTS {
    FgOperators::new(h, alpha).g(f)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at offset {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    resolve: &'a dyn Fn(&str) -> Option<Scalar>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, resolve: &'a dyn Fn(&str) -> Option<Scalar>) -> Self {
        let mut toks = Vec::new();
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (off, ch) = chars[i];
            if ch.is_whitespace() {
                i += 1;
            } else if ch.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                toks.push((off, Tok::Num(chars[start..i].iter().map(|c| c.1).collect())));
            } else if ch.is_alphabetic() || ch == '_' {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                toks.push((off, Tok::Ident(chars[start..i].iter().map(|c| c.1).collect())));
            } else {
                toks.push((off, Tok::Op(ch)));
                i += 1;
            }
        }
        Parser { toks, pos: 0, end: text.len(), resolve }
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn peek_op(&self, op: char) -> bool {
        matches!(self.toks.get(self.pos), Some((_, Tok::Op(c))) if *c == op)
    }

    fn parse_all(mut self) -> Result<PolyTS, ParseError> {
        let p = self.expr()?;
        if self.pos < self.toks.len() {
            return Err(ParseError::new(self.offset(), "unexpected trailing input"));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<PolyTS, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                acc = acc + self.term()?;
            } else if self.peek_op('-') {
                self.pos += 1;
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PolyTS, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.peek_op('*') {
                self.pos += 1;
                let at = self.offset();
                let rhs = self.unary()?;
                acc = acc.checked_mul(&rhs).map_err(|e| ParseError::new(at, e.to_string()))?;
            } else if self.peek_op('/') {
                self.pos += 1;
                let at = self.offset();
                let rhs = self.unary()?;
                let divisor = constant_of(&rhs).ok_or_else(|| ParseError::new(at, "can only divide by a scalar"))?;
                acc = acc
                    .try_map_coeffs(|c| c.divide_exact(&divisor))
                    .map_err(|e| ParseError::new(at, e.to_string()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<PolyTS, ParseError> {
        if self.peek_op('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        if self.peek_op('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolyTS, ParseError> {
        let base = self.atom()?;
        if !self.peek_op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        let negative = self.peek_op('-');
        if negative {
            self.pos += 1;
        }
        let exp = match self.toks.get(self.pos) {
            Some((_, Tok::Num(n))) => n.parse::<u32>().map_err(|_| ParseError::new(at, "exponent too large"))?,
            _ => return Err(ParseError::new(at, "expected an integer exponent")),
        };
        self.pos += 1;
        if negative {
            let c = constant_of(&base).ok_or_else(|| ParseError::new(at, "negative powers apply only to scalars"))?;
            let v = c.pow(-i64::from(exp)).map_err(|e| ParseError::new(at, e.to_string()))?;
            Ok(PolyTS::constant(v))
        } else {
            Ok(base.pow(exp))
        }
    }

    fn atom(&mut self) -> Result<PolyTS, ParseError> {
        let at = self.offset();
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(ParseError::new(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => {
                let r = parse_rational(&n).map_err(|e| ParseError::new(at, e.to_string()))?;
                Ok(PolyTS::constant(Scalar::Concrete(r)))
            }
            Tok::Ident(name) => match name.as_str() {
                "t" => Ok(PolyTS::t()),
                "s" => Ok(PolyTS::s()),
                _ => (self.resolve)(&name)
                    .map(PolyTS::constant)
                    .ok_or_else(|| ParseError::new(at, format!("unknown symbol `{name}`"))),
            },
            Tok::Op('(') => {
                let inner = self.expr()?;
                if !self.peek_op(')') {
                    return Err(ParseError::new(self.offset(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Op(c) => Err(ParseError::new(at, format!("unexpected `{c}`"))),
        }
    }
}

fn constant_of(p: &PolyTS) -> Option<Scalar> {
    if p.terms().all(|(m, _)| *m == Mono::ONE) {
        Some(p.coeff(0, 0))
    } else {
        None
    }
}

/// Parses a scalar expression such as `3/2*lambda^-1 + xi`.
pub fn parse_scalar(text: &str, resolve: &dyn Fn(&str) -> Option<Scalar>) -> Result<Scalar, ParseError> {
    let p = PolyTS::parse(text, resolve)?;
    constant_of(&p).ok_or_else(|| ParseError::new(0, "expected a scalar, found t or s"))
}

/// Evaluates a concrete integer scalar, if it is one.
pub fn as_small_int(c: &Scalar) -> Option<i64> {
    let r = c.as_rational()?;
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// Whether a rational is strictly negative.
pub fn negative(r: &Rational) -> bool {
    r.is_negative() && !r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alphabet() -> Arc<Alphabet> {
        Alphabet::new([("lambda", true), ("alpha", false), ("xi", false), ("eta", false)]).unwrap()
    }

    fn p(text: &str) -> PolyTS {
        PolyTS::parse_in(text, &alphabet()).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(&PolyTS::t() * &PolyTS::s(), p("t*s"));
        assert_eq!(p("(s-1)*(s+1)"), p("s^2 - 1"));
        assert_eq!(p("(xi*t)*(xi*t)"), p("xi^2*t^2"));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("t^3*s").d_dt(), p("3*t^2*s"));
        assert!(p("s^2").d_dt().is_zero());
        assert_eq!(p("xi*t^2 + eta*t").d_dt(), p("2*xi*t + eta"));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(p("s^2").shift_s(1), p("s^2 - 2*s + 1"));
        assert_eq!(p("t").shift_s(7), p("t"));
        assert_eq!(p("s").shift_s(-2), p("s + 2"));
    }

    #[test]
    fn f_and_g_on_linear_h() {
        let a = alphabet();
        let (alpha, xi, eta) = (a.var("alpha").unwrap(), a.var("xi").unwrap(), a.var("eta").unwrap());
        let h = HPoly::linear(xi.clone(), eta.clone());
        assert_eq!(op_f(&PolyTS::one(), &h, &alpha), PolyTS::constant(xi.clone()));
        assert_eq!(op_g(&PolyTS::one(), &h, &alpha), p("xi*t + xi*alpha + eta"));
        assert!(op_g(&PolyTS::zero(), &h, &alpha).is_zero());
    }

    #[test]
    fn f_on_quadratic_h() {
        let a = alphabet();
        let alpha = a.var("alpha").unwrap();
        let h = HPoly::new(vec![Scalar::zero(), Scalar::zero(), Scalar::one()]);
        assert_eq!(h.divided_difference(&alpha), p("t + alpha"));
        assert_eq!(op_f(&PolyTS::t(), &h, &alpha), p("t^2 + alpha*t - 1"));
    }

    #[test]
    fn rendering_round_trips() {
        let x = p("3/2*t^2*s + xi*t - eta - lambda^-1*s");
        assert_eq!(x.to_string(), "3/2*t^2*s + xi*t - lambda^-1*s - eta");
        assert_eq!(p(&x.to_string()), x);
        let y = p("(xi + eta)*t");
        assert_eq!(y.to_string(), "(xi + eta)*t");
        assert_eq!(p(&y.to_string()), y);
        assert_eq!(PolyTS::zero().to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        let a = alphabet();
        assert!(PolyTS::parse_in("t^-1", &a).is_err());
        assert!(PolyTS::parse_in("t/s", &a).is_err());
        assert!(PolyTS::parse_in("foo*t", &a).is_err());
        assert!(PolyTS::parse_in("(t + 1", &a).is_err());
        assert!(PolyTS::parse_in("t +", &a).is_err());
        assert!(PolyTS::parse_in("xi^-1", &a).is_err());
        assert_eq!(PolyTS::parse_in("lambda^-2*t", &a).unwrap().to_string(), "lambda^-2*t");
    }

    #[test]
    fn compose_and_eval() {
        let q = p("t^2*s + t");
        assert_eq!(q.compose_t(&p("t + 1")), p("t^2*s + 2*t*s + s + t + 1"));
        assert_eq!(q.eval_t(&Scalar::int(2)), p("4*s + 2"));
    }
}
