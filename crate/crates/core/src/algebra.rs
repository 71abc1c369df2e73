//! The Virasoro algebra with bracket `[d_i, d_j] = (j − i) d_{i+j} +
//! δ_{i,−j} (i³ − i)/12 · c` and PBW normal ordering in `U(Vir)/(c − θ)`.
//!
//! The sign convention is the opposite of the common `[L_i, L_j] = (i − j)L_{i+j}`.
//! In particular `d_1 d_{−1} = d_{−1} d_1 − 2 d_0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Serialize, Serializer};

use crate::linear::Vector;
use crate::scalar::{rat, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    D(i64),
    C,
}

/// A product of generators, left to right, in any order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn from_indices(indices: &[i64]) -> Self {
        Word(indices.iter().map(|&i| Generator::D(i)).collect())
    }
}

/// A PBW monomial `d_{j_1} ⋯ d_{j_k}` with `j_1 ≤ ⋯ ≤ j_k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PbwWord(Vec<i64>);

impl PbwWord {
    pub fn empty() -> Self {
        PbwWord(Vec::new())
    }

    /// Sorts `indices` into PBW order.
    pub fn sorted(mut indices: Vec<i64>) -> Self {
        indices.sort_unstable();
        PbwWord(indices)
    }

    pub fn indices(&self) -> &[i64] {
        &self.0
    }

    pub fn into_indices(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `−Σ j`.
    pub fn level(&self) -> i64 {
        -self.0.iter().sum::<i64>()
    }

    /// Exponent of `d_j`.
    pub fn count(&self, j: i64) -> usize {
        self.0.iter().filter(|&&x| x == j).count()
    }
}

impl fmt::Display for PbwWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut k = 0;
        while k < self.0.len() {
            let j = self.0[k];
            let run = self.0[k..].iter().take_while(|&&x| x == j).count();
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if run == 1 {
                write!(f, "d[{j}]")?;
            } else {
                write!(f, "d[{j}]^{run}")?;
            }
            k += run;
        }
        Ok(())
    }
}

impl Serialize for PbwWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Element of `U(Vir)/(c − θ)` in the PBW basis.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UElement(Vector<PbwWord>);

impl fmt::Debug for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UElement({self})")
    }
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(w, c)| {
                if w.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    w.to_string()
                } else {
                    format!("{}*{w}", c.to_coefficient_string())
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl UElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: Scalar) -> Self {
        UElement(Vector::term(PbwWord::empty(), c))
    }

    /// The single generator `d_i`.
    pub fn d(i: i64) -> Self {
        UElement(Vector::basis(PbwWord(vec![i])))
    }

    pub fn from_vector(v: Vector<PbwWord>) -> Self {
        UElement(v)
    }

    pub fn as_vector(&self) -> &Vector<PbwWord> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn coeff(&self, w: &PbwWord) -> Scalar {
        self.0.coeff(w)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        UElement(self.0.scale(c))
    }

    pub fn mul(&self, other: &Self, theta: &Scalar) -> Self {
        let mut out = Vector::new();
        for (a, ca) in self.0.iter() {
            for (b, cb) in other.0.iter() {
                let mut w = a.0.clone();
                w.extend_from_slice(&b.0);
                out.add_assign_scaled(&normal_order_indices(&w, theta).0, &(ca * cb));
            }
        }
        UElement(out)
    }

    pub fn commutator(&self, other: &Self, theta: &Scalar) -> Self {
        &self.mul(other, theta) - &other.mul(self, theta)
    }
}

impl Add for &UElement {
    type Output = UElement;
    fn add(self, rhs: &UElement) -> UElement {
        UElement(&self.0 + &rhs.0)
    }
}

impl Sub for &UElement {
    type Output = UElement;
    fn sub(self, rhs: &UElement) -> UElement {
        UElement(&self.0 - &rhs.0)
    }
}

/// `(i³ − i)/12` when `i = −j`, else zero.
pub fn central_coefficient(i: i64, j: i64) -> Scalar {
    if i + j == 0 {
        Scalar::Concrete(rat(i * i * i - i, 12))
    } else {
        Scalar::zero()
    }
}

/// `[d_i, d_j]` with `c` specialized to `θ`.
pub fn bracket(i: i64, j: i64, theta: &Scalar) -> UElement {
    let mut v = Vector::new();
    v.add_term(PbwWord(vec![i + j]), Scalar::int(j - i));
    v.add_term(PbwWord::empty(), &central_coefficient(i, j) * theta);
    UElement(v)
}

/// Normal orders a word, replacing each `c` by `θ`.
pub fn normal_order(word: &Word, theta: &Scalar) -> UElement {
    let mut indices = Vec::with_capacity(word.0.len());
    let mut coeff = Scalar::one();
    for g in &word.0 {
        match g {
            Generator::D(i) => indices.push(*i),
            Generator::C => coeff = &coeff * theta,
        }
    }
    normal_order_indices(&indices, theta).scale(&coeff)
}

/// Normal orders `d_{w_1} ⋯ d_{w_k}` by adjacent transpositions.
pub fn normal_order_indices(word: &[i64], theta: &Scalar) -> UElement {
    let mut pending: BTreeMap<Vec<i64>, Scalar> = BTreeMap::new();
    pending.insert(word.to_vec(), Scalar::one());
    let mut out = Vector::new();
    while let Some((w, c)) = pending.pop_last() {
        let Some(k) = w.windows(2).position(|p| p[0] > p[1]) else {
            out.add_term(PbwWord(w), c);
            continue;
        };
        let (i, j) = (w[k], w[k + 1]);
        let mut swapped = w.clone();
        swapped.swap(k, k + 1);
        push(&mut pending, swapped, c.clone());
        let mut merged = Vec::with_capacity(w.len() - 1);
        merged.extend_from_slice(&w[..k]);
        merged.push(i + j);
        merged.extend_from_slice(&w[k + 2..]);
        push(&mut pending, merged, c.mul_int(j - i));
        let central = central_coefficient(i, j);
        if !central.is_zero() && !theta.is_zero() {
            let mut removed = Vec::with_capacity(w.len() - 2);
            removed.extend_from_slice(&w[..k]);
            removed.extend_from_slice(&w[k + 2..]);
            push(&mut pending, removed, &(&central * theta) * &c);
        }
    }
    UElement(out)
}

fn push(pending: &mut BTreeMap<Vec<i64>, Scalar>, w: Vec<i64>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match pending.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Alphabet;

    fn theta() -> Scalar {
        Alphabet::new([("theta", false)]).unwrap().var("theta").unwrap()
    }

    fn elem(terms: &[(&[i64], Scalar)]) -> UElement {
        UElement(terms.iter().map(|(w, c)| (PbwWord(w.to_vec()), c.clone())).collect())
    }

    #[test]
    fn bracket_examples() {
        let th = theta();
        assert_eq!(bracket(1, -1, &th), elem(&[(&[0], Scalar::int(-2))]));
        assert_eq!(bracket(2, -2, &th), elem(&[(&[0], Scalar::int(-4)), (&[], th.mul_rational(&rat(1, 2)))]));
        assert_eq!(bracket(0, 5, &th), elem(&[(&[5], Scalar::int(5))]));
    }

    #[test]
    fn normal_order_examples() {
        let th = theta();
        assert_eq!(
            normal_order_indices(&[1, -1], &th),
            elem(&[(&[-1, 1], Scalar::one()), (&[0], Scalar::int(-2))])
        );
        assert_eq!(
            normal_order_indices(&[2, -2], &th),
            elem(&[(&[-2, 2], Scalar::one()), (&[0], Scalar::int(-4)), (&[], th.mul_rational(&rat(1, 2)))])
        );
        assert_eq!(normal_order_indices(&[-3, -1, 2], &th), elem(&[(&[-3, -1, 2], Scalar::one())]));
    }

    #[test]
    fn central_generator_specializes() {
        let th = theta();
        let w = Word(vec![Generator::C, Generator::D(1)]);
        assert_eq!(normal_order(&w, &th), elem(&[(&[1], th.clone())]));
    }

    #[test]
    fn word_rendering() {
        assert_eq!(PbwWord::sorted(vec![-1, -3, -3]).to_string(), "d[-3]^2 d[-1]");
        assert_eq!(PbwWord::empty().to_string(), "1");
        assert_eq!(PbwWord::sorted(vec![-1, -3, -3]).level(), 7);
    }
}
