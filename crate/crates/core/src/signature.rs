//! ω-signatures: for each `r`, whether `ω^{(r)}_{l,m}` annihilates a set of
//! sample vectors over a window of `(l, m)`.

use serde::{Deserialize, Serialize};

use crate::algebra::PbwWord;
use crate::linear::Vector;
use crate::module::{ModuleError, VirModule};
use crate::omega::{OmegaLZModule, OmegaLZSpec, OmegaModule, OmegaSpec};
use crate::poly::PolyTS;
use crate::scalar::Scalar;
use crate::tensor::{lowering_independence, omega_apply, tensor_pure, OmegaWordOp, Tensor, TensorElement};
use crate::whittaker::{stabilization_bound, Factor};

/// A set of `(l, m)` pairs, possibly depending on `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SigWindow {
    /// `m ∈ (K, K + span]` and `l − m − r ∈ (K, K + span]`: every index of
    /// `ω^{(r)}_{l,m}` lies above `K`.
    AboveK { k: i64, span: i64 },
    /// `l ∈ [l.0, l.1]`, `m ∈ [m.0, m.1]`.
    Grid { l: (i64, i64), m: (i64, i64) },
    /// `(l, −(r + 2))` for `l ∈ (K, K + span]`.
    Lowering { k: i64, span: i64 },
}

impl SigWindow {
    pub fn pairs(&self, r: u32) -> Vec<(i64, i64)> {
        let r = i64::from(r);
        let mut out = Vec::new();
        match *self {
            SigWindow::AboveK { k, span } => {
                for m in k + 1..=k + span {
                    for q in k + 1..=k + span {
                        out.push((q + m + r, m));
                    }
                }
            }
            SigWindow::Grid { l, m } => {
                for a in l.0..=l.1 {
                    for b in m.0..=m.1 {
                        out.push((a, b));
                    }
                }
            }
            SigWindow::Lowering { k, span } => {
                for l in k + 1..=k + span {
                    out.push((l, -(r + 2)));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigWitness {
    pub r: u32,
    pub l: i64,
    pub m: i64,
    /// Index into the sample list.
    pub sample: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureRecord {
    pub family: String,
    pub windows: Vec<SigWindow>,
    pub r_max: u32,
    /// `r ≤ r_max` for which every sampled `ω^{(r)}_{l,m} x` vanishes.
    pub vanishing_orders: Vec<u32>,
    /// First non-vanishing evaluation for each remaining `r`.
    pub witnesses: Vec<SigWitness>,
    pub evaluations: usize,
}

impl SignatureRecord {
    pub fn vanishes(&self, r: u32) -> bool {
        self.vanishing_orders.contains(&r)
    }

    /// Smallest `r` from which every order up to `r_max` vanishes.
    pub fn first_vanishing(&self) -> Option<u32> {
        let mut first = None;
        for r in (1..=self.r_max).rev() {
            if self.vanishes(r) {
                first = Some(r);
            } else {
                break;
            }
        }
        first
    }
}

/// Evaluates `ω^{(r)}_{l,m}` on every sample for `r ∈ 1..=r_max` and every
/// pair of the windows.
pub fn omega_signature<M: VirModule>(
    family: &str,
    module: &M,
    samples: &[Vector<M::Basis>],
    r_max: u32,
    windows: &[SigWindow],
) -> Result<SignatureRecord, ModuleError> {
    let mut vanishing_orders = Vec::new();
    let mut witnesses = Vec::new();
    let mut evaluations = 0;
    for r in 1..=r_max {
        let mut hit = None;
        'search: for w in windows {
            for (l, m) in w.pairs(r) {
                for (i, x) in samples.iter().enumerate() {
                    evaluations += 1;
                    if !omega_apply(module, OmegaWordOp::new(r, l, m), x)?.is_zero() {
                        hit = Some(SigWitness { r, l, m, sample: i });
                        break 'search;
                    }
                }
            }
        }
        match hit {
            Some(w) => witnesses.push(w),
            None => vanishing_orders.push(r),
        }
    }
    Ok(SignatureRecord {
        family: family.to_string(),
        windows: windows.to_vec(),
        r_max,
        vanishing_orders,
        witnesses,
        evaluations,
    })
}

/// The module families compared by their signatures.
#[derive(Debug, Clone)]
pub enum SignatureFamily {
    Omega(OmegaSpec),
    OmegaLZ(OmegaLZSpec),
    /// `Ω(λ,α,h) ⊗ V`.
    OmegaTensor(OmegaSpec, Factor),
    /// `Ω(μ_1,b_1) ⊗ Ω(μ_2,b_2) ⊗ W`.
    LZPair(OmegaLZSpec, OmegaLZSpec, Factor),
}

/// `Ω(μ_1,b_1) ⊗ Ω(μ_2,b_2) ⊗ W`.
pub type LZPairModule = Tensor<OmegaLZModule, Tensor<OmegaLZModule, Factor>>;
pub type LZPairBasis = (u32, (u32, PbwWord));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowPlan {
    /// Pairs with every index above the samples' stabilization bound.
    AboveK { span: i64 },
    /// A grid of small indices plus the lowering pairs `(l, −(r+2))`.
    Full { grid: i64, span: i64 },
}

fn words_bound(factor: &Factor, words: &[PbwWord]) -> Result<i64, ModuleError> {
    let mut k = 0;
    for w in words {
        k = k.max(stabilization_bound(factor, &Vector::basis(w.clone()), factor.horizon())?);
    }
    Ok(k)
}

fn plan_windows(plan: WindowPlan, k: i64) -> Vec<SigWindow> {
    match plan {
        WindowPlan::AboveK { span } => vec![SigWindow::AboveK { k, span }],
        WindowPlan::Full { grid, span } => vec![
            SigWindow::Grid { l: (-grid, grid), m: (-grid, grid) },
            SigWindow::Lowering { k, span },
        ],
    }
}

fn one_word() -> Vector<PbwWord> {
    Vector::basis(PbwWord::empty())
}

impl SignatureFamily {
    pub fn name(&self) -> &'static str {
        match self {
            SignatureFamily::Omega(_) => "Omega(lambda,alpha,h)",
            SignatureFamily::OmegaLZ(_) => "Omega(mu,b)",
            SignatureFamily::OmegaTensor(..) => "Omega(lambda,alpha,h)⊗V",
            SignatureFamily::LZPair(..) => "Omega(mu_1,b_1)⊗Omega(mu_2,b_2)⊗W",
        }
    }

    /// Signature on the fixed default samples: `1, t, s, ts` for Ω;
    /// `1, s, s²` for Ω(μ,b); `f ⊗ 𝟙` with `f ∈ {1, t, s}` for `Ω ⊗ V`;
    /// `1 ⊗ 1 ⊗ 𝟙` for the pair.
    pub fn signature(&self, r_max: u32, plan: WindowPlan) -> Result<SignatureRecord, ModuleError> {
        match self {
            SignatureFamily::Omega(spec) => {
                let om = OmegaModule::new(spec.clone());
                let samples: Vec<_> = ["1", "t", "s", "t*s"]
                    .iter()
                    .map(|p| PolyTS::parse(p, &|_| None).expect("literal").into_vector())
                    .collect();
                omega_signature(self.name(), &om, &samples, r_max, &plan_windows(plan, 0))
            }
            SignatureFamily::OmegaLZ(spec) => {
                let lz = OmegaLZModule::new(spec.clone());
                let samples: Vec<_> = (0..3u32).map(Vector::basis).collect();
                omega_signature(self.name(), &lz, &samples, r_max, &plan_windows(plan, 0))
            }
            SignatureFamily::OmegaTensor(spec, factor) => {
                let t = Tensor::new(OmegaModule::new(spec.clone()), factor.clone());
                let samples: Vec<TensorElement> =
                    [PolyTS::one(), PolyTS::t(), PolyTS::s()].iter().map(|f| tensor_pure(f, &one_word())).collect();
                let k = words_bound(factor, &[PbwWord::empty()])?;
                omega_signature(self.name(), &t, &samples, r_max, &plan_windows(plan, k))
            }
            SignatureFamily::LZPair(s1, s2, factor) => {
                let t = lz_pair(s1, s2, factor);
                let sample = Vector::basis((0u32, (0u32, PbwWord::empty())));
                let k = words_bound(factor, &[PbwWord::empty()])?;
                omega_signature(self.name(), &t, &[sample], r_max, &plan_windows(plan, k))
            }
        }
    }
}

pub fn lz_pair(s1: &OmegaLZSpec, s2: &OmegaLZSpec, w: &Factor) -> LZPairModule {
    Tensor::new(OmegaLZModule::new(s1.clone()), Tensor::new(OmegaLZModule::new(s2.clone()), w.clone()))
}

/// `24 λ^l α² (ξ² f − 2ξ ∂_t f + ∂_t² f)|_{s → s − l}` for `h = ξt + η`.
pub fn omega4_closed_form(spec: &OmegaSpec, l: i64, f: &PolyTS) -> Result<PolyTS, ModuleError> {
    let xi = spec.h.xi();
    let d1 = f.d_dt();
    let inner = f.scale(&(&xi * &xi)) - d1.scale(&xi.mul_int(2)) + d1.d_dt();
    let lam = spec.lambda.pow(l)?;
    let coeff = (&lam * &(&spec.alpha * &spec.alpha)).mul_int(24);
    Ok(inner.shift_s(l).scale(&coeff))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub checked: usize,
    /// `(r, l, m, f)` with `r ∈ {5, 6}` and a nonzero value.
    pub vanishing_failures: Vec<(u32, i64, i64, String)>,
    /// `(l, m, f)` where `ω^{(4)}` differs from the closed form.
    pub closed_form_failures: Vec<(i64, i64, String)>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.vanishing_failures.is_empty() && self.closed_form_failures.is_empty()
    }
}

/// `ω^{(5)}, ω^{(6)}` vanish and `ω^{(4)}` matches its closed form on
/// `t^a s^b` (`a ≤ a_max`, `b ≤ b_max`) for `l, m` in `range`.
pub fn omega_vanishing_check(spec: &OmegaSpec, a_max: u32, b_max: u32, range: (i64, i64)) -> Result<VanishingReport, ModuleError> {
    if spec.h.degree() != 1 {
        return Err(ModuleError::InvalidSpec("the closed form needs deg(h) = 1".into()));
    }
    let om = OmegaModule::new(spec.clone());
    let mut report = VanishingReport { checked: 0, vanishing_failures: Vec::new(), closed_form_failures: Vec::new() };
    for a in 0..=a_max {
        for b in 0..=b_max {
            let f = PolyTS::monomial(a, b, Scalar::one());
            let x = f.as_vector();
            for l in range.0..=range.1 {
                for m in range.0..=range.1 {
                    for r in [5, 6] {
                        report.checked += 1;
                        if !omega_apply(&om, OmegaWordOp::new(r, l, m), x)?.is_zero() {
                            report.vanishing_failures.push((r, l, m, f.to_string()));
                        }
                    }
                    report.checked += 1;
                    let got = PolyTS::from_vector(omega_apply(&om, OmegaWordOp::new(4, l, m), x)?);
                    if got != omega4_closed_form(spec, l, &f)? {
                        report.closed_form_failures.push((l, m, f.to_string()));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `(μ_2 − μ_1)^r (μ_1^{l−m−r} μ_2^m + (−1)^r μ_1^m μ_2^{l−m−r})`.
pub fn pair_coefficient_closed_form(mu1: &Scalar, mu2: &Scalar, r: u32, l: i64, m: i64) -> Result<Scalar, ModuleError> {
    let r_i = i64::from(r);
    let diff = (mu2 - mu1).pow(r_i)?;
    let first = &mu1.pow(l - m - r_i)? * &mu2.pow(m)?;
    let second = &mu1.pow(m)? * &mu2.pow(l - m - r_i)?;
    let sum = if r % 2 == 0 { &first + &second } else { &first - &second };
    Ok(&diff * &sum)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCoefficientRow {
    pub r: u32,
    pub l: i64,
    pub m: i64,
    pub computed: String,
    pub closed_form: String,
    pub agrees: bool,
    pub nonzero: bool,
}

/// The `s_1 ⊗ s_2 ⊗ 𝟙` coefficient of `ω^{(r)}_{l,m}(1 ⊗ 1 ⊗ 𝟙)` against
/// its closed form, over an above-`K` window.
pub fn pair_coefficient_check(
    s1: &OmegaLZSpec,
    s2: &OmegaLZSpec,
    w: &Factor,
    r: u32,
    span: i64,
) -> Result<Vec<PairCoefficientRow>, ModuleError> {
    let t = lz_pair(s1, s2, w);
    let one: Vector<LZPairBasis> = Vector::basis((0, (0, PbwWord::empty())));
    let k = words_bound(w, &[PbwWord::empty()])?;
    let mut rows = Vec::new();
    for (l, m) in (SigWindow::AboveK { k, span }).pairs(r) {
        let image = omega_apply(&t, OmegaWordOp::new(r, l, m), &one)?;
        let computed = image.coeff(&(1, (1, PbwWord::empty())));
        let closed = pair_coefficient_closed_form(&s1.mu, &s2.mu, r, l, m)?;
        rows.push(PairCoefficientRow {
            r,
            l,
            m,
            agrees: computed == closed,
            nonzero: !computed.is_zero(),
            computed: computed.to_string(),
            closed_form: closed.to_string(),
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoweringWitness {
    pub r: u32,
    pub m: i64,
    pub k: i64,
    /// `d_{−m+i} v`, `i = 0..=r`, are linearly independent.
    pub independent: bool,
    /// `f` for which `ω^{(r)}_{l,−m}(f ⊗ v) ≠ 0` at every sampled `l`.
    pub nonzero_for: Vec<String>,
    /// `f` for which `ω^{(r)}_{l,−m} f = 0` in Ω alone at every sampled `l`.
    pub vanishes_on_omega: Vec<String>,
}

/// The non-vanishing witness for `Ω ⊗ V`: `m = r + 2`, `l ∈ (K, K + span]`,
/// `v = 𝟙`, `f ∈ {1, t, s}`.
pub fn lowering_witness(spec: &OmegaSpec, factor: &Factor, r: u32, span: i64) -> Result<LoweringWitness, ModuleError> {
    let m = i64::from(r) + 2;
    let v = one_word();
    let independent = lowering_independence(factor, &v, m, r)?;
    let mut k = 0;
    for i in 0..=i64::from(r) {
        let lowered = factor.act(-m + i, &v)?;
        k = k.max(stabilization_bound(factor, &lowered, factor.horizon())?);
    }
    k = k.max(stabilization_bound(factor, &v, factor.horizon())?);
    let om = OmegaModule::new(spec.clone());
    let t = Tensor::new(om.clone(), factor.clone());
    let mut nonzero_for = Vec::new();
    let mut vanishes_on_omega = Vec::new();
    for f in [PolyTS::one(), PolyTS::t(), PolyTS::s()] {
        let mut all_nonzero = true;
        let mut all_zero_alone = true;
        for l in k + 1..=k + span {
            let op = OmegaWordOp::new(r, l, -m);
            all_nonzero &= !omega_apply(&t, op, &tensor_pure(&f, &v))?.is_zero();
            all_zero_alone &= omega_apply(&om, op, f.as_vector())?.is_zero();
        }
        if all_nonzero {
            nonzero_for.push(f.to_string());
        }
        if all_zero_alone {
            vanishes_on_omega.push(f.to_string());
        }
    }
    Ok(LoweringWitness { r, m, k, independent, nonzero_for, vanishes_on_omega })
}
