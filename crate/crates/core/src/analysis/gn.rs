//! The sequence `b_i` and the polynomials `g_n(x) = Σ_i C(n,i) b_{n−i} x^i`.
//!
//! Polynomials in `x` are stored as [`PolyTS`] in the variable `t`.

use serde::Serialize;

use crate::poly::PolyTS;
use crate::scalar::{binomial, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GnFamily {
    pub delta_eta: Scalar,
    /// `b_0, b_1, …`: `b_0 = 1`, `b_1 = 0`, `b_{i+1} = i b_i + i Δη b_{i−1}`.
    pub b: Vec<Scalar>,
    pub g: Vec<PolyTS>,
}

pub fn build_gn(delta_eta: &Scalar, n_max: usize) -> GnFamily {
    let mut b = vec![Scalar::one(), Scalar::zero()];
    for i in 1..n_max {
        let i_s = i as i64;
        let next = &b[i].mul_int(i_s) + &(&b[i - 1] * delta_eta).mul_int(i_s);
        b.push(next);
    }
    b.truncate(n_max + 1);
    let g = (0..=n_max)
        .map(|n| {
            let coeffs: Vec<Scalar> = (0..=n)
                .map(|i| b[n - i].mul_rational(&Rational::from_integer(binomial(n as i64, i as i64))))
                .collect();
            PolyTS::from_t_coeffs(&coeffs)
        })
        .collect();
    GnFamily { delta_eta: delta_eta.clone(), b, g }
}

impl GnFamily {
    pub fn n_max(&self) -> usize {
        self.g.len() - 1
    }

    /// The linear map `x^n ↦ g_n(x)`.
    pub fn apply(&self, p: &PolyTS) -> PolyTS {
        let mut out = PolyTS::zero();
        for (m, c) in p.terms() {
            out = out + self.g[m.t as usize].mul_s_pow(m.s).scale(c);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GnIdentityReport {
    pub n_max: usize,
    /// `n` values where `g_n' = n g_{n−1}` fails.
    pub derivative_failures: Vec<usize>,
    /// `n` values where `(g_{n+1} − x g_n) − n(g_n − x g_{n−1}) = Δη n g_{n−1}` fails.
    pub recurrence_failures: Vec<usize>,
}

impl GnIdentityReport {
    pub fn passed(&self) -> bool {
        self.derivative_failures.is_empty() && self.recurrence_failures.is_empty()
    }
}

/// Checks both identities for `n ≤ n_max`; `gn` must reach `n_max + 1`.
pub fn gn_identity_check(gn: &GnFamily, n_max: usize) -> GnIdentityReport {
    assert!(gn.n_max() > n_max, "family too short");
    let g = &gn.g;
    let mut derivative_failures = Vec::new();
    let mut recurrence_failures = Vec::new();
    for n in 1..=n_max {
        let ni = n as i64;
        if g[n].d_dt() != g[n - 1].scale_int(ni) {
            derivative_failures.push(n);
        }
        let lhs = (&g[n + 1] - &g[n].mul_t()) - (&g[n] - &g[n - 1].mul_t()).scale_int(ni);
        let rhs = g[n - 1].scale(&gn.delta_eta.mul_int(ni));
        if lhs != rhs {
            recurrence_failures.push(n);
        }
    }
    GnIdentityReport { n_max, derivative_failures, recurrence_failures }
}

/// Whether `x^n ↦ g_n(x)` for `Δη` and for `−Δη` compose to the identity on `x^n`, `n ≤ n_max`.
pub fn inverse_family_check(delta_eta: &Scalar, n_max: usize) -> bool {
    let fwd = build_gn(delta_eta, n_max);
    let back = build_gn(&-delta_eta, n_max);
    (0..=n_max).all(|n| {
        let xn = PolyTS::monomial(n as u32, 0, Scalar::one());
        back.apply(&fwd.apply(&xn)) == xn && fwd.apply(&back.apply(&xn)) == xn
    })
}
