//! The modules Ω(λ,α,h) on `ℂ[t, s]` and Ω(μ,b) on `ℂ[s]`.

use serde::Serialize;

use crate::linear::{rank, Vector};
use crate::module::{ModuleError, VirModule};
use crate::poly::{FgOperators, HPoly, Mono, PolyTS};
use crate::scalar::Scalar;

/// Parameters `(λ, α, h)` of Ω(λ,α,h).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaSpec {
    pub lambda: Scalar,
    pub alpha: Scalar,
    pub h: HPoly,
}

impl OmegaSpec {
    pub fn new(lambda: Scalar, alpha: Scalar, h: HPoly) -> Result<Self, ModuleError> {
        check_invertible("lambda", &lambda)?;
        Ok(OmegaSpec { lambda, alpha, h })
    }

    /// `deg h = 1` and `α ≠ 0`, the simplicity criterion.
    pub fn is_simple_candidate(&self) -> bool {
        self.h.degree() == 1 && !self.alpha.is_zero()
    }
}

pub(crate) fn check_invertible(name: &str, x: &Scalar) -> Result<(), ModuleError> {
    if x.is_zero() {
        return Err(ModuleError::InvalidSpec(format!("{name} must be nonzero")));
    }
    x.inverse()
        .map(|_| ())
        .map_err(|_| ModuleError::InvalidSpec(format!("{name} must be invertible")))
}

/// Ω(λ,α,h): `d_m(f s^i) = λ^m (s − m)^i (s f + m G(f) − m² α F(f))`, `c ↦ 0`.
#[derive(Debug, Clone)]
pub struct OmegaModule {
    spec: OmegaSpec,
    fg: FgOperators,
}

impl OmegaModule {
    pub fn new(spec: OmegaSpec) -> Self {
        let fg = FgOperators::new(&spec.h, &spec.alpha);
        OmegaModule { spec, fg }
    }

    pub fn spec(&self) -> &OmegaSpec {
        &self.spec
    }

    pub fn fg(&self) -> &FgOperators {
        &self.fg
    }

    pub fn lambda_pow(&self, m: i64) -> Scalar {
        self.spec.lambda.pow(m).expect("lambda is invertible")
    }

    /// `d_m x` without the `λ^m` factor: `s X + m G(X) − m² α F(X)` with `X = x(t, s − m)`.
    pub fn act_stripped(&self, m: i64, x: &PolyTS) -> PolyTS {
        let shifted = x.shift_s(m);
        let mut out = shifted.mul_s();
        if m != 0 {
            out = out + self.fg.g(&shifted).scale_int(m);
            if !self.spec.alpha.is_zero() {
                out = out - self.fg.f(&shifted).scale(&self.spec.alpha.mul_int(m * m));
            }
        }
        out
    }

    pub fn act_poly(&self, m: i64, x: &PolyTS) -> PolyTS {
        self.act_stripped(m, x).scale(&self.lambda_pow(m))
    }
}

impl VirModule for OmegaModule {
    type Basis = Mono;

    fn act_basis(&self, m: i64, b: &Mono) -> Result<Vector<Mono>, ModuleError> {
        Ok(self.act_poly(m, &PolyTS::monomial(b.t, b.s, Scalar::one())).into_vector())
    }

    fn central_charge(&self) -> Scalar {
        Scalar::zero()
    }

    fn act(&self, m: i64, v: &Vector<Mono>) -> Result<Vector<Mono>, ModuleError> {
        Ok(self.act_poly(m, &PolyTS::from_vector(v.clone())).into_vector())
    }
}

/// Parameters of Ω(μ,b); `var_id` distinguishes the variables `s_1, s_2, …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaLZSpec {
    pub mu: Scalar,
    pub b: Scalar,
    pub var_id: u8,
}

impl OmegaLZSpec {
    pub fn new(mu: Scalar, b: Scalar, var_id: u8) -> Result<Self, ModuleError> {
        check_invertible("mu", &mu)?;
        Ok(OmegaLZSpec { mu, b, var_id })
    }
}

/// Ω(μ,b): `d_m f(s) = μ^m (s + m b) f(s − m)`, `c ↦ 0`. Basis: powers of `s`.
#[derive(Debug, Clone)]
pub struct OmegaLZModule {
    spec: OmegaLZSpec,
}

impl OmegaLZModule {
    pub fn new(spec: OmegaLZSpec) -> Self {
        OmegaLZModule { spec }
    }

    pub fn spec(&self) -> &OmegaLZSpec {
        &self.spec
    }

    pub fn to_poly(v: &Vector<u32>) -> PolyTS {
        PolyTS::from_vector(v.map_keys(|&k| Mono::new(0, k)))
    }

    pub fn from_poly(p: &PolyTS) -> Vector<u32> {
        p.as_vector().map_keys(|m| m.s)
    }

    /// The factor `μ^m (s + m b) f(s − m)` without `μ^m`.
    pub fn act_stripped(&self, m: i64, v: &Vector<u32>) -> Vector<u32> {
        let shifted = Self::to_poly(v).shift_s(m);
        let out = shifted.mul_s() + shifted.scale(&self.spec.b.mul_int(m));
        Self::from_poly(&out)
    }

    pub fn mu_pow(&self, m: i64) -> Scalar {
        self.spec.mu.pow(m).expect("mu is invertible")
    }
}

impl VirModule for OmegaLZModule {
    type Basis = u32;

    fn act_basis(&self, m: i64, b: &u32) -> Result<Vector<u32>, ModuleError> {
        self.act(m, &Vector::basis(*b))
    }

    fn central_charge(&self) -> Scalar {
        Scalar::zero()
    }

    fn act(&self, m: i64, v: &Vector<u32>) -> Result<Vector<u32>, ModuleError> {
        Ok(self.act_stripped(m, v).scale(&self.mu_pow(m)))
    }
}

/// Rank of `x, d_n x, …, d_n^k x`; `k + 1` means no linear relation among
/// the iterates, so `d_n` is not locally finite on `x`'s orbit so far.
pub fn iterate_rank<M: VirModule>(module: &M, n: i64, x: &Vector<M::Basis>, k: usize) -> Result<usize, ModuleError> {
    let mut iterates = vec![x.clone()];
    for _ in 0..k {
        let next = module.act(n, iterates.last().expect("nonempty"))?;
        iterates.push(next);
    }
    Ok(rank(&iterates)?)
}
