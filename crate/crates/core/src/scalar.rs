//! Exact scalars.
//!
//! A [`Scalar`] is either a rational number (concrete mode) or a Laurent
//! polynomial over ℚ in a declared, ordered [`Alphabet`] of parameter symbols
//! (generic mode). Negative exponents are only allowed on symbols flagged as
//! invertible.
//!
//! Rational constants are shared by both modes: a generic computation whose
//! result has no symbolic part collapses to [`Scalar::Concrete`], so equality
//! is always structural.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("scalars over different parameter alphabets cannot be combined")]
    ModeError,
    #[error("division by zero")]
    DivZero,
    #[error("generic divisor `{0}` is not a single monomial")]
    NotMonomial(String),
    #[error("`{0}` is not invertible")]
    NotInvertible(String),
    #[error("symbol `{0}` is not bound")]
    UnboundSymbol(String),
    #[error("symbol `{0}` is invertible and cannot be bound to 0")]
    InvertibleZero(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("invalid symbol name `{0}`")]
    InvalidName(String),
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamSymbol {
    pub name: String,
    pub invertible: bool,
}

/// Ordered, duplicate-free set of parameter symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<ParamSymbol>,
}

/// Names reserved for the polynomial variables of `ℂ[t, s]`.
pub const RESERVED_NAMES: [&str; 2] = ["t", "s"];

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<S: Into<String>>(
        symbols: impl IntoIterator<Item = (S, bool)>,
    ) -> Result<Arc<Self>, ScalarError> {
        let mut out: Vec<ParamSymbol> = Vec::new();
        for (name, invertible) in symbols {
            let name = name.into();
            if !valid_identifier(&name) || RESERVED_NAMES.contains(&name.as_str()) {
                return Err(ScalarError::InvalidName(name));
            }
            if out.iter().any(|s| s.name == name) {
                return Err(ScalarError::DuplicateSymbol(name));
            }
            out.push(ParamSymbol { name, invertible });
        }
        Ok(Arc::new(Alphabet { symbols: out }))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[ParamSymbol] {
        &self.symbols
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    /// The symbol `name` as a generic scalar.
    pub fn var(self: &Arc<Self>, name: &str) -> Result<Scalar, ScalarError> {
        let idx = self
            .index_of(name)
            .ok_or_else(|| ScalarError::UnknownSymbol(name.to_string()))?;
        let mut exps = vec![0; self.len()];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps.into_boxed_slice(), Rational::one());
        Ok(Scalar::Generic(Laurent {
            alphabet: self.clone(),
            terms,
        }))
    }
}

type Exponents = Box<[i32]>;

/// Laurent polynomial with at least one non-constant monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Laurent {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<Exponents, Rational>,
}

impl Laurent {
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Rational)> {
        self.terms.iter().map(|(e, c)| (&e[..], c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Concrete,
    Generic,
}

/// Exact scalar; see the module documentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Concrete(Rational),
    Generic(Laurent),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let bad = || ScalarError::BadRational(text.to_string());
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Serializes as `p/q` (or `p` for integers).
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

fn check_alphabets(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> Result<(), ScalarError> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(ScalarError::ModeError)
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Concrete(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Concrete(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Concrete(Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Concrete(rat(n, d))
    }

    pub fn parse_rational(text: &str) -> Result<Self, ScalarError> {
        parse_rational(text).map(Scalar::Concrete)
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Concrete(_) => Mode::Concrete,
            Scalar::Generic(_) => Mode::Generic,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Concrete(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Concrete(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Concrete(r) => Some(r),
            Scalar::Generic(_) => None,
        }
    }

    pub fn alphabet(&self) -> Option<&Arc<Alphabet>> {
        match self {
            Scalar::Concrete(_) => None,
            Scalar::Generic(l) => Some(&l.alphabet),
        }
    }

    /// Number of stored terms (0 for zero).
    pub fn term_count(&self) -> usize {
        match self {
            Scalar::Concrete(r) => usize::from(!r.is_zero()),
            Scalar::Generic(l) => l.terms.len(),
        }
    }

    /// Nonzero rational constant, or a single generic monomial.
    pub fn is_monomial(&self) -> bool {
        self.term_count() == 1
    }

    fn from_terms(alphabet: &Arc<Alphabet>, mut terms: BTreeMap<Exponents, Rational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let constant_only = terms.keys().all(|e| e.iter().all(|&x| x == 0));
        if constant_only {
            let c = terms.into_values().next().unwrap_or_else(Rational::zero);
            Scalar::Concrete(c)
        } else {
            Scalar::Generic(Laurent {
                alphabet: alphabet.clone(),
                terms,
            })
        }
    }

    fn terms_in(&self, alphabet: &Arc<Alphabet>) -> BTreeMap<Exponents, Rational> {
        match self {
            Scalar::Concrete(r) => {
                let mut m = BTreeMap::new();
                if !r.is_zero() {
                    m.insert(vec![0; alphabet.len()].into_boxed_slice(), r.clone());
                }
                m
            }
            Scalar::Generic(l) => l.terms.clone(),
        }
    }

    fn common_alphabet<'a>(&'a self, other: &'a Self) -> Result<Option<&'a Arc<Alphabet>>, ScalarError> {
        match (self, other) {
            (Scalar::Generic(a), Scalar::Generic(b)) => {
                check_alphabets(&a.alphabet, &b.alphabet)?;
                Ok(Some(&a.alphabet))
            }
            (Scalar::Generic(a), _) => Ok(Some(&a.alphabet)),
            (_, Scalar::Generic(b)) => Ok(Some(&b.alphabet)),
            _ => Ok(None),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        if let (Scalar::Concrete(a), Scalar::Concrete(b)) = (self, other) {
            return Ok(Scalar::Concrete(a + b));
        }
        let alphabet = self.common_alphabet(other)?.expect("generic operand");
        let mut terms = self.terms_in(alphabet);
        match other {
            Scalar::Concrete(r) => {
                if !r.is_zero() {
                    let key = vec![0; alphabet.len()].into_boxed_slice();
                    *terms.entry(key).or_insert_with(Rational::zero) += r;
                }
            }
            Scalar::Generic(l) => {
                for (e, c) in &l.terms {
                    *terms.entry(e.clone()).or_insert_with(Rational::zero) += c;
                }
            }
        }
        Ok(Scalar::from_terms(alphabet, terms))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        match (self, other) {
            (Scalar::Concrete(a), Scalar::Concrete(b)) => Ok(Scalar::Concrete(a * b)),
            (Scalar::Concrete(r), g) | (g, Scalar::Concrete(r)) => Ok(g.mul_rational(r)),
            (Scalar::Generic(a), Scalar::Generic(b)) => {
                check_alphabets(&a.alphabet, &b.alphabet)?;
                let mut terms: BTreeMap<Exponents, Rational> = BTreeMap::new();
                for (ea, ca) in &a.terms {
                    for (eb, cb) in &b.terms {
                        let e: Exponents = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                        *terms.entry(e).or_insert_with(Rational::zero) += ca * cb;
                    }
                }
                Ok(Scalar::from_terms(&a.alphabet, terms))
            }
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Scalar::zero();
        }
        match self {
            Scalar::Concrete(a) => Scalar::Concrete(a * r),
            Scalar::Generic(l) => Scalar::Generic(Laurent {
                alphabet: l.alphabet.clone(),
                terms: l.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect(),
            }),
        }
    }

    pub fn mul_int(&self, n: i64) -> Self {
        self.mul_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// Multiplicative inverse of a nonzero rational or of an invertible monomial.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        match self {
            Scalar::Concrete(r) if r.is_zero() => Err(ScalarError::DivZero),
            Scalar::Concrete(r) => Ok(Scalar::Concrete(r.recip())),
            Scalar::Generic(l) => {
                if l.terms.len() != 1 {
                    return Err(ScalarError::NotMonomial(self.to_string()));
                }
                let (e, c) = l.terms.iter().next().expect("one term");
                let mut inv = Vec::with_capacity(e.len());
                for (i, &x) in e.iter().enumerate() {
                    if x != 0 && !l.alphabet.symbols[i].invertible {
                        return Err(ScalarError::NotInvertible(l.alphabet.symbols[i].name.clone()));
                    }
                    inv.push(-x);
                }
                let mut terms = BTreeMap::new();
                terms.insert(inv.into_boxed_slice(), c.recip());
                Ok(Scalar::Generic(Laurent {
                    alphabet: l.alphabet.clone(),
                    terms,
                }))
            }
        }
    }

    /// Exact quotient `self / divisor`; the divisor must be a nonzero rational
    /// or a single monomial, and the quotient may only carry negative
    /// exponents on invertible symbols.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self, ScalarError> {
        match divisor {
            Scalar::Concrete(r) if r.is_zero() => Err(ScalarError::DivZero),
            Scalar::Concrete(r) => Ok(self.mul_rational(&r.recip())),
            Scalar::Generic(d) => {
                if d.terms.len() != 1 {
                    return Err(ScalarError::NotMonomial(divisor.to_string()));
                }
                if let Scalar::Generic(a) = self {
                    check_alphabets(&a.alphabet, &d.alphabet)?;
                }
                let (de, dc) = d.terms.iter().next().expect("one term");
                let alphabet = &d.alphabet;
                let mut terms = BTreeMap::new();
                for (e, c) in self.terms_in(alphabet) {
                    let q: Exponents = e.iter().zip(de.iter()).map(|(x, y)| x - y).collect();
                    for (i, &x) in q.iter().enumerate() {
                        if x < 0 && !alphabet.symbols[i].invertible {
                            return Err(ScalarError::NotInvertible(alphabet.symbols[i].name.clone()));
                        }
                    }
                    terms.insert(q, c / dc);
                }
                Ok(Scalar::from_terms(alphabet, terms))
            }
        }
    }

    /// Integer power; negative exponents need an invertible base.
    pub fn pow(&self, exp: i64) -> Result<Self, ScalarError> {
        if exp < 0 {
            return self.inverse()?.pow(-exp);
        }
        if let Scalar::Generic(l) = self {
            if l.terms.len() == 1 {
                let (e, c) = l.terms.iter().next().expect("one term");
                let k = i32::try_from(exp).expect("exponent fits in i32");
                let mut terms = BTreeMap::new();
                terms.insert(e.iter().map(|x| x * k).collect::<Exponents>(), num::pow(c.clone(), exp as usize));
                return Ok(Scalar::from_terms(&l.alphabet, terms));
            }
        }
        let mut result = Scalar::one();
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Names of symbols occurring with a nonzero exponent.
    pub fn symbols_used(&self) -> Vec<String> {
        match self {
            Scalar::Concrete(_) => Vec::new(),
            Scalar::Generic(l) => l
                .alphabet
                .symbols
                .iter()
                .enumerate()
                .filter(|(i, _)| l.terms.keys().any(|e| e[*i] != 0))
                .map(|(_, s)| s.name.clone())
                .collect(),
        }
    }

    /// Ring homomorphism to ℚ binding every occurring symbol.
    pub fn substitute_params(&self, bindings: &BTreeMap<String, Rational>) -> Result<Self, ScalarError> {
        let l = match self {
            Scalar::Concrete(_) => return Ok(self.clone()),
            Scalar::Generic(l) => l,
        };
        let mut values: Vec<Option<&Rational>> = Vec::with_capacity(l.alphabet.len());
        for (i, sym) in l.alphabet.symbols.iter().enumerate() {
            let used = l.terms.keys().any(|e| e[i] != 0);
            match bindings.get(&sym.name) {
                Some(v) => {
                    if sym.invertible && v.is_zero() {
                        return Err(ScalarError::InvertibleZero(sym.name.clone()));
                    }
                    values.push(Some(v));
                }
                None if used => return Err(ScalarError::UnboundSymbol(sym.name.clone())),
                None => values.push(None),
            }
        }
        let mut total = Rational::zero();
        for (e, c) in &l.terms {
            let mut term = c.clone();
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let v = values[i].expect("bound");
                if x > 0 {
                    term *= num::pow(v.clone(), x as usize);
                } else {
                    term /= num::pow(v.clone(), (-x) as usize);
                }
            }
            total += term;
        }
        Ok(Scalar::Concrete(total))
    }

    /// Renders for use as a coefficient: multi-term values are parenthesized.
    pub fn to_coefficient_string(&self) -> String {
        if self.term_count() > 1 {
            format!("({self})")
        } else {
            self.to_string()
        }
    }
}

fn fmt_monomial(alphabet: &Alphabet, exps: &[i32]) -> String {
    let mut parts = Vec::new();
    for (sym, &e) in alphabet.symbols.iter().zip(exps) {
        match e {
            0 => {}
            1 => parts.push(sym.name.clone()),
            e => parts.push(format!("{}^{}", sym.name, e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Concrete(r) => write!(f, "{r}"),
            Scalar::Generic(l) => {
                // Highest monomial first.
                for (k, (e, c)) in l.terms.iter().rev().enumerate() {
                    let mono = fmt_monomial(&l.alphabet, e);
                    let neg = c.is_negative();
                    let abs = c.abs();
                    if k == 0 {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, " {} ", if neg { '-' } else { '+' })?;
                    }
                    match (abs.is_one(), mono.is_empty()) {
                        (_, true) => write!(f, "{abs}")?,
                        (true, false) => write!(f, "{mono}")?,
                        (false, false) => write!(f, "{abs}*{mono}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Concrete(r) => serializer.serialize_str(&format_rational(r)),
            Scalar::Generic(l) => {
                struct Term<'a>(&'a Alphabet, &'a [i32], &'a Rational);
                impl Serialize for Term<'_> {
                    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                        struct Mono<'a>(&'a Alphabet, &'a [i32]);
                        impl Serialize for Mono<'_> {
                            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                                let mut map = serializer.serialize_map(None)?;
                                for (sym, &e) in self.0.symbols.iter().zip(self.1) {
                                    if e != 0 {
                                        map.serialize_entry(&sym.name, &e)?;
                                    }
                                }
                                map.end()
                            }
                        }
                        let mut map = serializer.serialize_map(Some(2))?;
                        map.serialize_entry("coeff", &format_rational(self.2))?;
                        map.serialize_entry("monomial", &Mono(self.0, self.1))?;
                        map.end()
                    }
                }
                let mut seq = serializer.serialize_seq(Some(l.terms.len()))?;
                for (e, c) in &l.terms {
                    seq.serialize_element(&Term(&l.alphabet, e, c))?;
                }
                seq.end()
            }
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Concrete(r)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Concrete(a), Scalar::Concrete(b)) => Some(a.cmp(b)),
            _ if self == other => Some(Ordering::Equal),
            _ => None,
        }
    }
}

// Operator impls panic on alphabet mismatch; use the `checked_*` methods where
// operands come from different sources.

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.mul_rational(&-Rational::one())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar alphabet mismatch")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect("scalar alphabet mismatch")
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$checked(rhs).expect("scalar alphabet mismatch")
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$checked(&rhs).expect("scalar alphabet mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Concrete(a), Scalar::Concrete(b)) = (&mut *self, rhs) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Concrete(a), Scalar::Concrete(b)) = (&mut *self, rhs) {
            *a -= b;
            return;
        }
        *self = &*self - rhs;
    }
}

/// Binomial coefficient `C(n, k)` with `C(n, k) = 0` for `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}
