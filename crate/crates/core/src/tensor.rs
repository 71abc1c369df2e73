//! Tensor products, the operators `ω^{(r)}_{l,m}`, and extraction of the
//! `m`-polynomial structure of `λ^{−m} d_m w` by interpolation.

use serde::Serialize;

use crate::algebra::PbwWord;
use crate::linear::{interpolate, rank, Vector};
use crate::module::{ModuleError, VirModule};
use crate::omega::OmegaModule;
use crate::poly::{Mono, PolyTS};
use crate::scalar::{binomial, Rational, Scalar};
use crate::whittaker::{stabilization_bound, Factor};

/// Elements of `A ⊗ B` keyed by pairs of basis tags.
pub type PairVector<A, B> = Vector<(<A as VirModule>::Basis, <B as VirModule>::Basis)>;

/// `A ⊗ B` with `d_m(a ⊗ b) = d_m a ⊗ b + a ⊗ d_m b`.
#[derive(Debug, Clone)]
pub struct Tensor<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: VirModule, B: VirModule> Tensor<A, B> {
    pub fn new(left: A, right: B) -> Self {
        Tensor { left, right }
    }

    pub fn pure(a: &Vector<A::Basis>, b: &Vector<B::Basis>) -> Vector<(A::Basis, B::Basis)> {
        let mut out = Vector::new();
        for (x, cx) in a.iter() {
            for (y, cy) in b.iter() {
                out.add_term((x.clone(), y.clone()), cx * cy);
            }
        }
        out
    }

    /// Groups a tensor by its right key: `Σ_v f_v ⊗ v`.
    pub fn by_right(v: &Vector<(A::Basis, B::Basis)>) -> Vec<(B::Basis, Vector<A::Basis>)> {
        let mut groups: std::collections::BTreeMap<B::Basis, Vector<A::Basis>> = Default::default();
        for ((a, b), c) in v.iter() {
            groups.entry(b.clone()).or_default().add_term(a.clone(), c.clone());
        }
        groups.into_iter().collect()
    }

    /// The left-factor part of `d_m w`, i.e. `Σ d_m f_v ⊗ v`.
    pub fn act_left(&self, m: i64, v: &PairVector<A, B>) -> Result<PairVector<A, B>, ModuleError> {
        let mut out = Vector::new();
        for (b, f) in Self::by_right(v) {
            for (a, c) in self.left.act(m, &f)?.into_terms() {
                out.add_term((a, b.clone()), c);
            }
        }
        Ok(out)
    }
}

impl<A: VirModule, B: VirModule> VirModule for Tensor<A, B> {
    type Basis = (A::Basis, B::Basis);

    fn act_basis(&self, m: i64, b: &Self::Basis) -> Result<Vector<Self::Basis>, ModuleError> {
        self.act(m, &Vector::basis(b.clone()))
    }

    fn central_charge(&self) -> Scalar {
        &self.left.central_charge() + &self.right.central_charge()
    }

    fn act(&self, m: i64, v: &Vector<Self::Basis>) -> Result<Vector<Self::Basis>, ModuleError> {
        let mut out = self.act_left(m, v)?;
        for (b, f) in Self::by_right(v) {
            let image = self.right.act_basis(m, &b)?;
            for (b2, c) in image.iter() {
                for (a, ca) in f.iter() {
                    out.add_term((a.clone(), b2.clone()), ca * c);
                }
            }
        }
        Ok(out)
    }
}

/// `Ω(λ,α,h) ⊗ V` with `V` Whittaker, Verma or trivial.
pub type OmegaTensor = Tensor<OmegaModule, Factor>;

/// Element `Σ_v f_v ⊗ v` of `Ω ⊗ V`.
pub type TensorElement = Vector<(Mono, PbwWord)>;

pub fn tensor_pure(f: &PolyTS, v: &Vector<PbwWord>) -> TensorElement {
    OmegaTensor::pure(f.as_vector(), v)
}

/// `Σ_v f_v ⊗ v` as pairs `(v, f_v)` with `f_v` a polynomial.
pub fn split_right(w: &TensorElement) -> Vec<(PbwWord, PolyTS)> {
    OmegaTensor::by_right(w).into_iter().map(|(b, f)| (b, PolyTS::from_vector(f))).collect()
}

pub fn join_right(parts: &[(PbwWord, PolyTS)]) -> TensorElement {
    let mut out = Vector::new();
    for (v, f) in parts {
        for (m, c) in f.terms() {
            out.add_term((*m, v.clone()), c.clone());
        }
    }
    out
}

/// Applies a `t, s`-operator to every left coefficient.
pub fn map_left(w: &TensorElement, op: impl Fn(&PolyTS) -> PolyTS) -> TensorElement {
    let parts: Vec<(PbwWord, PolyTS)> = split_right(w).into_iter().map(|(v, f)| (v, op(&f))).collect();
    join_right(&parts)
}

/// `ω^{(r)}_{l,m} = Σ_{i=0}^r C(r,i)(−1)^{r−i} d_{l−m−i} d_{m+i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OmegaWordOp {
    pub r: u32,
    pub l: i64,
    pub m: i64,
}

impl OmegaWordOp {
    pub fn new(r: u32, l: i64, m: i64) -> Self {
        OmegaWordOp { r, l, m }
    }

    /// `(coefficient, outer index, inner index)` for each summand.
    pub fn terms(&self) -> Vec<(Rational, i64, i64)> {
        let r = i64::from(self.r);
        (0..=r)
            .map(|i| {
                let sign = if (r - i) % 2 == 0 { 1 } else { -1 };
                (Rational::from_integer(binomial(r, i) * sign), self.l - self.m - i, self.m + i)
            })
            .collect()
    }
}

pub fn omega_apply<M: VirModule + ?Sized>(
    module: &M,
    op: OmegaWordOp,
    x: &Vector<M::Basis>,
) -> Result<Vector<M::Basis>, ModuleError> {
    let mut out = Vector::new();
    for (c, outer, inner) in op.terms() {
        let y = module.act(outer, &module.act(inner, x)?)?;
        out.add_assign_scaled(&y, &Scalar::Concrete(c));
    }
    Ok(out)
}

/// `Σ_{i=0}^r (−1)^{r−i} C(r,i) i^j`.
pub fn binomial_vanish(r: u32, j: u32) -> Rational {
    let r = i64::from(r);
    let mut total = num::BigInt::from(0);
    for i in 0..=r {
        let term = binomial(r, i) * num::BigInt::from(i).pow(j);
        if (r - i) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Rational::from_integer(total)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtractError {
    #[error("window of {len} nodes is too small, need at least {need}")]
    WindowTooSmall { len: usize, need: usize },
    #[error("window starts at {start}, not above the stabilization bound {k}")]
    WindowBelowK { start: i64, k: i64 },
    #[error("λ^(-m) d_m w has degree above {0} in m")]
    DegreeTooHigh(u32),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Stabilization bound of every right factor of `w`.
pub fn tensor_bound(t: &OmegaTensor, w: &TensorElement) -> Result<i64, ModuleError> {
    let mut k = 0;
    for (v, _) in split_right(w) {
        k = k.max(stabilization_bound(&t.right, &Vector::basis(v), t.right.horizon())?);
    }
    Ok(k)
}

/// Top `s`-degree of the left coefficients of `w`.
pub fn s_degree(w: &TensorElement) -> u32 {
    w.keys().map(|(m, _)| m.s).max().unwrap_or(0)
}

/// Coefficients `c_0, …, c_{r+2}` of `λ^{−m} d_m w = Σ_j c_j m^j`, with
/// `m` running over `window` (all above the stabilization bound).
/// Extra window nodes certify that the degree in `m` is at most `r + 2`.
pub fn m_expansion(t: &OmegaTensor, w: &TensorElement, window: (i64, i64)) -> Result<Vec<TensorElement>, ExtractError> {
    let r = s_degree(w);
    let need = r as usize + 3;
    let (lo, hi) = window;
    let len = (hi - lo + 1).max(0) as usize;
    if len < need {
        return Err(ExtractError::WindowTooSmall { len, need });
    }
    let k = tensor_bound(t, w)?;
    if lo <= k {
        return Err(ExtractError::WindowBelowK { start: lo, k });
    }
    let mut nodes = Vec::with_capacity(len);
    let mut values = Vec::with_capacity(len);
    for m in lo..=hi {
        let image = t.act(m, w)?;
        let inv = t.left.lambda_pow(-m);
        nodes.push(Rational::from_integer(m.into()));
        values.push(image.scale(&inv));
    }
    let mut coeffs = interpolate(&nodes, &values).map_err(ModuleError::from)?;
    if coeffs[need..].iter().any(|c| !c.is_zero()) {
        return Err(ExtractError::DegreeTooHigh(r + 2));
    }
    coeffs.truncate(need);
    Ok(coeffs)
}

/// `(−1)^j` times the `m^j` coefficient of `λ^{−m} d_m w`, which is
/// `Σ_i (C(i,j) a_i s^{i−j+1} − C(i,j−1) G(a_i) s^{i−j+1} − C(i,j−2) αF(a_i) s^{i−j+2}) ⊗ v_i`.
pub fn prop31_extract(t: &OmegaTensor, j: u32, w: &TensorElement, window: Option<(i64, i64)>) -> Result<TensorElement, ExtractError> {
    let window = match window {
        Some(win) => win,
        None => default_window(t, w)?,
    };
    let coeffs = m_expansion(t, w, window)?;
    let c = coeffs.get(j as usize).cloned().unwrap_or_default();
    Ok(if j % 2 == 0 { c } else { -&c })
}

/// `[K + 1, K + r + 4]`.
pub fn default_window(t: &OmegaTensor, w: &TensorElement) -> Result<(i64, i64), ModuleError> {
    let k = tensor_bound(t, w)?;
    Ok((k + 1, k + i64::from(s_degree(w)) + 4))
}

/// The closed form of the extracted coefficient, evaluated directly.
pub fn prop31_display(om: &OmegaModule, j: u32, w: &TensorElement) -> TensorElement {
    let alpha = &om.spec().alpha;
    let fg = om.fg();
    let j = i64::from(j);
    let mut parts = Vec::new();
    for (v, f) in split_right(w) {
        let mut acc = PolyTS::zero();
        for i in 0..=f.degree_s().unwrap_or(0) {
            let a_i = f.s_coeff(i);
            if a_i.is_zero() {
                continue;
            }
            let i = i64::from(i);
            let c0 = binomial(i, j);
            let c1 = binomial(i, j - 1);
            let c2 = binomial(i, j - 2);
            let int = |b: num::BigInt| Scalar::Concrete(Rational::from_integer(b));
            if i - j + 1 >= 0 {
                let e = (i - j + 1) as u32;
                acc = acc + a_i.mul_s_pow(e).scale(&int(c0));
                acc = acc - fg.g(&a_i).mul_s_pow(e).scale(&int(c1));
            }
            if i - j + 2 >= 0 {
                let e = (i - j + 2) as u32;
                acc = acc - fg.f(&a_i).mul_s_pow(e).scale(&(&int(c2) * alpha));
            }
        }
        parts.push((v, acc));
    }
    join_right(&parts)
}

/// Whether the vectors `d_{−m+i} v`, `i = 0..=r`, are linearly independent.
pub fn lowering_independence<M: VirModule>(module: &M, v: &Vector<M::Basis>, m: i64, r: u32) -> Result<bool, ModuleError> {
    let images: Vec<_> = (0..=i64::from(r)).map(|i| module.act(-m + i, v)).collect::<Result<_, _>>()?;
    Ok(rank(&images)? == r as usize + 1)
}
