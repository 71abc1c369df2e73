//! The isomorphism `φ: Ω(λ,α_1,h_1) → Ω(λ,α_2,h_2)`, `φ(s^i h_1^n) = s^i g_n(h_2)`,
//! for `h_k = ξ_k t + η_k` with `α_1ξ_1 = α_2ξ_2`.

use serde::Serialize;

use crate::analysis::gn::{build_gn, GnFamily};
use crate::module::{ModuleError, VirModule};
use crate::omega::{OmegaModule, OmegaSpec};
use crate::poly::PolyTS;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PhiError {
    #[error("isomorphism criterion fails: {0}")]
    CriterionFailed(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

#[derive(Debug, Clone)]
pub struct IsoWitness {
    pub source: OmegaSpec,
    pub target: OmegaSpec,
    pub gn: GnFamily,
    /// `t` as a polynomial in `h_1`: `(x − η_1)/ξ_1`.
    t_in_h1: PolyTS,
}

impl IsoWitness {
    /// Builds the witness; `h_1` must be linear with invertible `ξ_1`.
    /// `g_n` is tabulated up to `n_max + 1`, since `d_m` raises degree by one.
    pub fn new(source: OmegaSpec, target: OmegaSpec, n_max: usize) -> Result<Self, PhiError> {
        for (name, spec) in [("h_1", &source), ("h_2", &target)] {
            if spec.h.degree() != 1 {
                return Err(PhiError::Unsupported(format!("{name} must have degree 1")));
            }
        }
        let xi_inv = source
            .h
            .xi()
            .inverse()
            .map_err(|_| PhiError::Unsupported("ξ_1 must be invertible".into()))?;
        let t_in_h1 = (PolyTS::t() - PolyTS::constant(source.h.eta())).scale(&xi_inv);
        let delta = &target.h.eta() - &source.h.eta();
        Ok(IsoWitness { source, target, gn: build_gn(&delta, n_max + 1), t_in_h1 })
    }

    /// Violations of `λ_1 = λ_2` and `α_1ξ_1 = α_2ξ_2`.
    pub fn criterion_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.source.lambda != self.target.lambda {
            out.push(format!("λ_1 = {} differs from λ_2 = {}", self.source.lambda, self.target.lambda));
        }
        let p1 = &self.source.alpha * &self.source.h.xi();
        let p2 = &self.target.alpha * &self.target.h.xi();
        if p1 != p2 {
            out.push(format!("α_1ξ_1 = {p1} differs from α_2ξ_2 = {p2}"));
        }
        out
    }

    /// `φ` on an arbitrary element, after rewriting it in powers of `h_1`.
    pub fn apply(&self, x: &PolyTS) -> PolyTS {
        let in_h1 = x.compose_t(&self.t_in_h1);
        self.gn.apply(&in_h1).compose_t(&self.target.h.to_poly())
    }

    /// `s^i h_1^n`.
    pub fn source_basis(&self, i: u32, n: u32) -> PolyTS {
        self.source.h.to_poly().pow(n).mul_s_pow(i)
    }

    /// `s^i g_n(h_2)`.
    pub fn target_image(&self, i: u32, n: u32) -> PolyTS {
        self.gn.g[n as usize].compose_t(&self.target.h.to_poly()).mul_s_pow(i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiReport {
    pub criterion_holds: bool,
    pub i_max: u32,
    pub n_max: u32,
    pub m_window: (i64, i64),
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.criterion_holds && self.failures.is_empty()
    }
}

/// Checks `φ ∘ d_m = d_m ∘ φ` on `s^i h_1^n` and both operator intertwinings
/// `φ(α_1F_1(h_1^n)) = α_2F_2(g_n(h_2))`, `φ(G_1(h_1^n)) = G_2(g_n(h_2))`.
/// When the criterion fails the check is refused unless `force` is set.
pub fn verify_phi(iso: &IsoWitness, i_max: u32, n_max: u32, m_window: (i64, i64), force: bool) -> Result<PhiReport, PhiError> {
    let violations = iso.criterion_violations();
    if !violations.is_empty() && !force {
        return Err(PhiError::CriterionFailed(violations.join("; ")));
    }
    if iso.gn.n_max() < n_max as usize + 1 {
        return Err(PhiError::Unsupported(format!("g_n family only reaches n = {}", iso.gn.n_max())));
    }
    let om1 = OmegaModule::new(iso.source.clone());
    let om2 = OmegaModule::new(iso.target.clone());
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 0..=n_max {
        let h1n = iso.source_basis(0, n);
        let gn_h2 = iso.target_image(0, n);
        checked += 2;
        if iso.apply(&om1.fg().f(&h1n).scale(&iso.source.alpha)) != om2.fg().f(&gn_h2).scale(&iso.target.alpha) {
            failures.push(format!("φ(α_1F_1(h_1^{n})) ≠ α_2F_2(g_{n}(h_2))"));
        }
        if iso.apply(&om1.fg().g(&h1n)) != om2.fg().g(&gn_h2) {
            failures.push(format!("φ(G_1(h_1^{n})) ≠ G_2(g_{n}(h_2))"));
        }
        for i in 0..=i_max {
            let x = iso.source_basis(i, n);
            let image = iso.target_image(i, n);
            if iso.apply(&x) != image {
                failures.push(format!("φ(s^{i} h_1^{n}) ≠ s^{i} g_{n}(h_2)"));
            }
            for m in m_window.0..=m_window.1 {
                checked += 1;
                let lhs = iso.apply(&om1.act_poly(m, &x));
                let rhs = PolyTS::from_vector(om2.act(m, image.as_vector())?);
                if lhs != rhs {
                    failures.push(format!("φ(d_{m}(s^{i} h_1^{n})) ≠ d_{m}(φ(s^{i} h_1^{n}))"));
                }
            }
        }
    }
    Ok(PhiReport { criterion_holds: violations.is_empty(), i_max, n_max, m_window, checked, failures })
}

/// Checks `F(h^n) = ξh^n − nξh^{n−1}` and
/// `G(h^n) = h^{n+1} + (αξ − n)h^n + nηh^{n−1}` for `n ≤ n_max`, `h = ξt + η`.
/// Returns the failing `n`.
pub fn closed_form_check(spec: &OmegaSpec, n_max: u32) -> Vec<u32> {
    let om = OmegaModule::new(spec.clone());
    let (xi, eta) = (spec.h.xi(), spec.h.eta());
    let h = spec.h.to_poly();
    let pw = |k: i64| if k < 0 { PolyTS::zero() } else { h.pow(k as u32) };
    let mut bad = Vec::new();
    for n in 0..=n_max {
        let k = i64::from(n);
        let f = pw(k).scale(&xi) - pw(k - 1).scale(&xi.mul_int(k));
        let axi_minus_n = &(&spec.alpha * &xi) - &Scalar::int(k);
        let g = pw(k + 1) + pw(k).scale(&axi_minus_n) + pw(k - 1).scale(&eta.mul_int(k));
        if om.fg().f(&pw(k)) != f || om.fg().g(&pw(k)) != g {
            bad.push(n);
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::HPoly;

    fn spec(lambda: i64, alpha: Scalar, xi: Scalar, eta: i64) -> OmegaSpec {
        OmegaSpec::new(Scalar::int(lambda), alpha, HPoly::linear(xi, Scalar::int(eta))).unwrap()
    }

    #[test]
    fn identity_when_parameters_agree() {
        let s = spec(3, Scalar::int(2), Scalar::int(5), 1);
        let iso = IsoWitness::new(s.clone(), s, 3).unwrap();
        let x = PolyTS::parse("t^3*s + 2*t - s^2", &|_| None).unwrap();
        assert_eq!(iso.apply(&x), x);
        assert!(verify_phi(&iso, 2, 3, (-2, 2), false).unwrap().passed());
    }

    #[test]
    fn concrete_witness_passes() {
        let iso = IsoWitness::new(
            spec(3, Scalar::int(1), Scalar::int(2), 0),
            spec(3, Scalar::int(2), Scalar::int(1), 5),
            4,
        )
        .unwrap();
        let report = verify_phi(&iso, 3, 4, (-3, 3), false).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn violated_criterion() {
        let iso = IsoWitness::new(
            spec(3, Scalar::int(1), Scalar::int(2), 0),
            spec(3, Scalar::int(1), Scalar::int(1), 5),
            2,
        )
        .unwrap();
        assert!(matches!(verify_phi(&iso, 1, 2, (-1, 1), false), Err(PhiError::CriterionFailed(_))));
        let forced = verify_phi(&iso, 1, 2, (-1, 1), true).unwrap();
        assert!(!forced.passed());
        assert!(!forced.failures.is_empty());
    }

    #[test]
    fn closed_forms() {
        assert!(closed_form_check(&spec(2, Scalar::ratio(1, 3), Scalar::int(4), -2), 8).is_empty());
    }
}
