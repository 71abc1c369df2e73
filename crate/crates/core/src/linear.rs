//! Sparse vectors over [`Scalar`], exact spans and ranks, and interpolation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};

use crate::scalar::{Rational, Scalar};

/// Finitely supported map from basis keys to nonzero scalars.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for Vector<K> {
    fn default() -> Self {
        Vector { terms: BTreeMap::new() }
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for Vector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, c)| (k, c.to_string())))
            .finish()
    }
}

impl<K: Ord + Clone> Vector<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, Scalar::one())
    }

    pub fn term(key: K, coeff: Scalar) -> Self {
        let mut v = Self::new();
        v.add_term(key, coeff);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Scalar)>) -> Self {
        let mut v = Self::new();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl DoubleEndedIterator<Item = &K> {
        self.terms.keys()
    }

    pub fn get(&self, key: &K) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn into_terms(self) -> BTreeMap<K, Scalar> {
        self.terms
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), if coeff.is_one() { c.clone() } else { c * coeff });
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.add_assign_scaled(other, &Scalar::one());
    }

    pub fn sub_assign(&mut self, other: &Self) {
        self.add_assign_scaled(other, &Scalar::int(-1));
    }

    pub fn scale(&self, coeff: &Scalar) -> Self {
        if coeff.is_zero() {
            return Self::new();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * coeff))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::new();
        }
        Vector {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.mul_rational(r))).collect(),
        }
    }

    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> Vector<L> {
        let mut out = Vector::new();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (k.clone(), f(c))))
    }

    pub fn try_map_coeffs<E>(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar, E>) -> Result<Self, E> {
        let mut out = Self::new();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn filter_keys(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest key with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&K, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Whether every coefficient is a rational number.
    pub fn is_concrete(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }
}

impl<K: Ord + Clone> Add for &Vector<K> {
    type Output = Vector<K>;
    fn add(self, rhs: &Vector<K>) -> Vector<K> {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<K: Ord + Clone> Add for Vector<K> {
    type Output = Vector<K>;
    fn add(mut self, rhs: Vector<K>) -> Vector<K> {
        Vector::add_assign(&mut self, &rhs);
        self
    }
}

impl<K: Ord + Clone> Sub for &Vector<K> {
    type Output = Vector<K>;
    fn sub(self, rhs: &Vector<K>) -> Vector<K> {
        let mut out = self.clone();
        out.sub_assign(rhs);
        out
    }
}

impl<K: Ord + Clone> Sub for Vector<K> {
    type Output = Vector<K>;
    fn sub(mut self, rhs: Vector<K>) -> Vector<K> {
        Vector::sub_assign(&mut self, &rhs);
        self
    }
}

impl<K: Ord + Clone> Neg for &Vector<K> {
    type Output = Vector<K>;
    fn neg(self) -> Vector<K> {
        self.scale(&Scalar::int(-1))
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for Vector<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        Vector::from_terms(iter)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinearError {
    #[error("exact rank and span computations need rational (concrete) coefficients")]
    NotConcrete,
    #[error("interpolation nodes must be distinct")]
    RepeatedNode,
}

fn concrete(c: &Scalar) -> Result<&Rational, LinearError> {
    c.as_rational().ok_or(LinearError::NotConcrete)
}

/// Rank of a family of concrete vectors by fraction-free (Bareiss)
/// elimination over ℤ after clearing denominators row by row.
pub fn rank<K: Ord + Clone>(vectors: &[Vector<K>]) -> Result<usize, LinearError> {
    let mut columns: BTreeMap<&K, usize> = BTreeMap::new();
    for v in vectors {
        for k in v.keys() {
            let next = columns.len();
            columns.entry(k).or_insert(next);
        }
    }
    let ncols = columns.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.is_zero() {
            continue;
        }
        let mut denom_lcm = BigInt::one();
        for (_, c) in v.iter() {
            denom_lcm = denom_lcm.lcm(concrete(c)?.denom());
        }
        let mut row = vec![BigInt::zero(); ncols];
        for (k, c) in v.iter() {
            let r = concrete(c)?;
            row[columns[k]] = r.numer() * (&denom_lcm / r.denom());
        }
        rows.push(row);
    }
    Ok(bareiss_rank(rows, ncols))
}

fn bareiss_rank(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> usize {
    let nrows = rows.len();
    let mut rank = 0;
    let mut prev_pivot = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot_row) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..nrows {
            let factor = rows[r][col].clone();
            #[allow(clippy::needless_range_loop)]
            for c in col..ncols {
                let v = (&pivot * &rows[r][c] - &factor * &rows[rank][c]) / &prev_pivot;
                rows[r][c] = v;
            }
        }
        prev_pivot = pivot;
        rank += 1;
    }
    rank
}

/// Incrementally maintained span of concrete vectors, kept in reduced row
/// echelon form keyed by pivot.
#[derive(Debug, Clone)]
pub struct Span<K: Ord> {
    // pivot key -> row with coefficient 1 at the pivot and 0 at every other pivot
    rows: BTreeMap<K, Vector<K>>,
}

impl<K: Ord + Clone> Default for Span<K> {
    fn default() -> Self {
        Span { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Span<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vector<K>> {
        self.rows.values()
    }

    /// Remainder of `v` after eliminating every pivot of the span.
    pub fn reduce(&self, v: &Vector<K>) -> Result<Vector<K>, LinearError> {
        let mut out = v.clone();
        for (pivot, row) in &self.rows {
            if let Some(c) = out.get(pivot).cloned() {
                concrete(&c)?;
                out.add_assign_scaled(row, &-c);
            }
        }
        if !out.is_concrete() {
            return Err(LinearError::NotConcrete);
        }
        Ok(out)
    }

    pub fn contains(&self, v: &Vector<K>) -> Result<bool, LinearError> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Inserts `v`; returns the new normalized basis row when the span grows.
    pub fn insert(&mut self, v: &Vector<K>) -> Result<Option<Vector<K>>, LinearError> {
        let rem = self.reduce(v)?;
        let Some((pivot, lead)) = rem.leading() else {
            return Ok(None);
        };
        let pivot = pivot.clone();
        let inv = Scalar::Concrete(concrete(lead)?.recip());
        let row = rem.scale(&inv);
        for other in self.rows.values_mut() {
            if let Some(c) = other.get(&pivot).cloned() {
                other.add_assign_scaled(&row, &-c);
            }
        }
        self.rows.insert(pivot, row.clone());
        Ok(Some(row))
    }

    /// Whether every basis vector of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Span<K>) -> Result<bool, LinearError> {
        for row in self.rows.values() {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Values that can be combined linearly with rational weights.
pub trait Linear: Clone {
    fn zero_like(&self) -> Self;
    fn add_scaled(&mut self, other: &Self, weight: &Rational);
}

impl<K: Ord + Clone> Linear for Vector<K> {
    fn zero_like(&self) -> Self {
        Vector::new()
    }

    fn add_scaled(&mut self, other: &Self, weight: &Rational) {
        if weight.is_zero() {
            return;
        }
        for (k, c) in other.iter() {
            self.add_term(k.clone(), c.mul_rational(weight));
        }
    }
}

impl Linear for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }

    fn add_scaled(&mut self, other: &Self, weight: &Rational) {
        *self += &other.mul_rational(weight);
    }
}

/// Coefficients `c_0..c_{N-1}` of the unique polynomial of degree `< N`
/// through `(nodes[k], values[k])`, via the Lagrange basis.
pub fn interpolate<V: Linear>(nodes: &[Rational], values: &[V]) -> Result<Vec<V>, LinearError> {
    assert_eq!(nodes.len(), values.len(), "one value per node");
    let n = nodes.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    for i in 0..n {
        for j in i + 1..n {
            if nodes[i] == nodes[j] {
                return Err(LinearError::RepeatedNode);
            }
        }
    }
    let mut out: Vec<V> = (0..n).map(|_| values[0].zero_like()).collect();
    for k in 0..n {
        // numerator polynomial prod_{i != k} (x - x_i), low degree first
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for i in 0..n {
            if i == k {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &nodes[i];
            }
            basis = next;
            denom *= &nodes[k] - &nodes[i];
        }
        for (d, c) in basis.iter().enumerate() {
            let w = c / &denom;
            out[d].add_scaled(&values[k], &w);
        }
    }
    Ok(out)
}

/// `true` when `x` is negative; helper for rendering signed rationals.
pub fn is_negative(x: &Rational) -> bool {
    x.is_negative()
}
