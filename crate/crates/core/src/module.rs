//! The shared interface of every module: a basis and the action of `d_m`.

use std::fmt;

use crate::algebra::central_coefficient;
use crate::linear::{LinearError, Vector};
use crate::scalar::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("result needs level {needed}, above the cap {cap}")]
    CapExceeded { needed: i64, cap: i64 },
    #[error("generator index {0} is outside the allowed range")]
    IndexError(i64),
    #[error("invalid module parameters: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Linear(#[from] LinearError),
}

/// A (truncated) module over the Virasoro algebra.
pub trait VirModule: Send + Sync {
    type Basis: Ord + Clone + fmt::Debug + Send + Sync;

    /// `d_m` applied to a basis vector.
    fn act_basis(&self, m: i64, b: &Self::Basis) -> Result<Vector<Self::Basis>, ModuleError>;

    /// The scalar by which `c` acts.
    fn central_charge(&self) -> Scalar;

    fn act(&self, m: i64, v: &Vector<Self::Basis>) -> Result<Vector<Self::Basis>, ModuleError> {
        let mut out = Vector::new();
        for (b, c) in v.iter() {
            out.add_assign_scaled(&self.act_basis(m, b)?, c);
        }
        Ok(out)
    }

    /// `d_{m_1} d_{m_2} ⋯ d_{m_k} v`, applying the rightmost generator first.
    fn act_word(&self, word: &[i64], v: &Vector<Self::Basis>) -> Result<Vector<Self::Basis>, ModuleError> {
        let mut out = v.clone();
        for &m in word.iter().rev() {
            out = self.act(m, &out)?;
        }
        Ok(out)
    }
}

/// `(lhs, rhs)` of a relation evaluated on one vector.
pub type Sides<B> = (Vector<B>, Vector<B>);

/// Both sides of `d_i d_j x − d_j d_i x = (j − i) d_{i+j} x + δ_{i,−j}(i³ − i)/12 · c x`.
pub fn bracket_sides<M: VirModule + ?Sized>(
    module: &M,
    i: i64,
    j: i64,
    x: &Vector<M::Basis>,
) -> Result<Sides<M::Basis>, ModuleError> {
    let lhs = &module.act(i, &module.act(j, x)?)? - &module.act(j, &module.act(i, x)?)?;
    let mut rhs = module.act(i + j, x)?.scale(&Scalar::int(j - i));
    let central = &central_coefficient(i, j) * &module.central_charge();
    rhs.add_assign_scaled(x, &central);
    Ok((lhs, rhs))
}

/// Whether the bracket relation holds exactly on `x`.
pub fn bracket_check<M: VirModule + ?Sized>(
    module: &M,
    i: i64,
    j: i64,
    x: &Vector<M::Basis>,
) -> Result<bool, ModuleError> {
    let (lhs, rhs) = bracket_sides(module, i, j, x)?;
    Ok(lhs == rhs)
}
