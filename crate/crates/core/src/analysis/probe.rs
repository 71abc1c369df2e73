//! Cyclic-on-window probes.
//!
//! A probe closes a seed under a fixed family of operators inside a finite
//! window and compares the exact rank of the result with the window's
//! dimension. Filling the window is consistent with irreducibility; it is
//! not a proof. For the reducible families the probe instead checks the
//! known invariant subspaces exactly.

use serde::Serialize;

use crate::algebra::PbwWord;
use crate::induced::{BModule, BModuleSpec};
use crate::linear::{interpolate, LinearError, Span, Vector};
use crate::module::{ModuleError, VirModule};
use crate::omega::{OmegaModule, OmegaSpec};
use crate::poly::{Mono, PolyTS};
use crate::scalar::{Rational, Scalar};
use crate::tensor::{default_window, m_expansion, s_degree, tensor_pure, ExtractError, OmegaTensor, Tensor, TensorElement};
use crate::whittaker::{Factor, TrivialModule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProbeError {
    #[error("probes need concrete parameters")]
    NotConcrete,
    #[error("the seed is zero")]
    ZeroSeed,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Extract(#[from] ExtractError),
}

impl From<LinearError> for ProbeError {
    fn from(e: LinearError) -> Self {
        match e {
            LinearError::NotConcrete => ProbeError::NotConcrete,
            other => ProbeError::Module(other.into()),
        }
    }
}

/// Operators applied to each spanning vector during closure.
pub type OpsFn<'a, K> = dyn Fn(&Vector<K>) -> Result<Vec<Vector<K>>, ProbeError> + 'a;

/// Closes `seeds` under `ops`, keeping only images that lie inside the window.
///
/// Operators are applied to the reduced echelon rows until nothing new
/// appears, so an image that leaves the window through a component that
/// another row cancels is not lost.
pub fn close_in_window<K: Ord + Clone>(
    seeds: &[Vector<K>],
    ops: &OpsFn<K>,
    in_window: &dyn Fn(&K) -> bool,
) -> Result<Span<K>, ProbeError> {
    let mut span = Span::new();
    for s in seeds {
        if s.keys().all(in_window) {
            span.insert(s)?;
        }
    }
    let mut done: Vec<Vector<K>> = Vec::new();
    loop {
        let pending: Vec<Vector<K>> = span.basis().filter(|r| !done.contains(r)).cloned().collect();
        if pending.is_empty() {
            return Ok(span);
        }
        for row in pending {
            for image in ops(&row)? {
                if !image.is_zero() && image.keys().all(in_window) {
                    span.insert(&image)?;
                }
            }
            done.push(row);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProbeWindow {
    pub t_max: u32,
    pub s_max: u32,
    /// Largest grade of right-factor words.
    pub grade_max: u32,
    /// `d_m` is sampled for `m` in this range.
    pub m_window: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub family: String,
    pub dim_in_window: usize,
    /// Every sampled operator maps the window part into the subspace.
    pub stable: bool,
    /// Dimension of the closure of the family's seed inside the window.
    pub generated_dim: usize,
    pub generated_equals: bool,
}

impl WitnessRecord {
    pub fn confirmed(&self) -> bool {
        self.stable && self.generated_equals && self.dim_in_window > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub criterion: String,
    /// Whether the simplicity criterion holds for these parameters.
    pub criterion_holds: bool,
    pub windows: ProbeWindow,
    pub window_dim: usize,
    pub rank: usize,
    pub filled: bool,
    pub pipeline: Vec<String>,
    pub witnesses: Vec<WitnessRecord>,
}

/// The operators used by the `Ω ⊗ V` probes: `d_m` for sampled `m` and the
/// coefficients of `λ^{−m} d_m w` as a polynomial in `m`.
fn tensor_ops(t: &OmegaTensor, v: &TensorElement, m_window: (i64, i64)) -> Result<Vec<TensorElement>, ProbeError> {
    let mut out = Vec::new();
    for m in m_window.0..=m_window.1 {
        out.push(t.act(m, v)?);
    }
    let window = default_window(t, v)?;
    out.extend(m_expansion(t, v, window)?);
    Ok(out)
}

fn word_ok(factor: &Factor, w: &PbwWord, grade_max: u32) -> bool {
    match factor {
        Factor::Whittaker(m) => m.spec().grade(w) <= i64::from(grade_max),
        Factor::Trivial(_) => w.is_empty(),
    }
}

fn window_words(factor: &Factor, grade_max: u32) -> Vec<PbwWord> {
    match factor {
        Factor::Whittaker(m) => m.spec().basis_up_to(grade_max),
        Factor::Trivial(_) => vec![PbwWord::empty()],
    }
}

/// One stage of the constructive argument: the `m^{r+2}` coefficient, which
/// removes all `s`-dependence.
fn drop_s_degree(t: &OmegaTensor, w: &TensorElement) -> Result<TensorElement, ProbeError> {
    let r = s_degree(w) as usize;
    let coeffs = m_expansion(t, w, default_window(t, w)?)?;
    Ok(coeffs[r + 2].clone())
}

/// `∂_t` recovered from the `m^1` and `m^2` coefficients of an `s`-free element:
/// `c_2 = −αF(a)`, and `F(a) = ξa − a'` when `deg h = 1`.
fn derivative_from_extraction(t: &OmegaTensor, w: &TensorElement) -> Result<TensorElement, ProbeError> {
    let coeffs = m_expansion(t, w, default_window(t, w)?)?;
    let spec = t.left.spec();
    let neg_alpha_inv = (-&spec.alpha).inverse().map_err(ModuleError::from)?;
    let f_part = coeffs[2].scale(&neg_alpha_inv);
    Ok(&w.scale(&spec.h.xi()) - &f_part)
}

fn t_degree(w: &TensorElement) -> u32 {
    w.keys().map(|(m, _)| m.t).max().unwrap_or(0)
}

/// Replays the irreducibility argument for `Ω(λ,α,h) ⊗ V` on a seed and
/// closes the result inside the window; reducible parameters get their
/// witness subspaces checked instead.
pub fn tensor_irreducibility_probe(
    omega: &OmegaSpec,
    factor: Factor,
    seed: &TensorElement,
    window: ProbeWindow,
) -> Result<ProbeReport, ProbeError> {
    if seed.is_zero() {
        return Err(ProbeError::ZeroSeed);
    }
    if !seed.is_concrete() || omega.lambda.as_rational().is_none() || omega.alpha.as_rational().is_none() {
        return Err(ProbeError::NotConcrete);
    }
    let t = Tensor::new(OmegaModule::new(omega.clone()), factor);
    let words = window_words(&t.right, window.grade_max);
    let in_window = |k: &(Mono, PbwWord)| {
        k.0.t <= window.t_max && k.0.s <= window.s_max && word_ok(&t.right, &k.1, window.grade_max)
    };
    let window_dim = (window.t_max as usize + 1) * (window.s_max as usize + 1) * words.len();
    let ops = |v: &TensorElement| tensor_ops(&t, v, window.m_window);
    let simple = omega.is_simple_candidate();
    let mut pipeline = Vec::new();
    let mut start = seed.clone();
    if simple {
        if s_degree(&start) > 0 {
            start = drop_s_degree(&t, &start)?;
            pipeline.push(format!("m^{} coefficient removed s: {} terms", s_degree(seed) + 2, start.len()));
        }
        while !start.is_zero() && t_degree(&start) > 0 {
            start = derivative_from_extraction(&t, &start)?;
            pipeline.push(format!("derivative in t: degree {}", t_degree(&start)));
        }
        pipeline.push(format!("reached {}", render(&start)));
    } else {
        pipeline.push("criterion fails; closing the seed directly".into());
    }
    let span = close_in_window(&[start], &ops, &in_window)?;
    let rank = span.dim();
    let mut witnesses = Vec::new();
    for family in witness_families(omega) {
        witnesses.push(check_witness(&t, &family, &words, window, &ops, &in_window)?);
    }
    Ok(ProbeReport {
        criterion: "deg(h) = 1 and alpha != 0".into(),
        criterion_holds: simple,
        windows: window,
        window_dim,
        rank,
        filled: rank == window_dim,
        pipeline,
        witnesses,
    })
}

fn render(w: &TensorElement) -> String {
    crate::tensor::split_right(w)
        .iter()
        .map(|(v, f)| format!("({f}) ⊗ {v}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Probe of Ω(λ,α,h) alone.
pub fn irreducibility_probe_omega(omega: &OmegaSpec, seed: &PolyTS, window: ProbeWindow) -> Result<ProbeReport, ProbeError> {
    let w = tensor_pure(seed, &Vector::basis(PbwWord::empty()));
    let window = ProbeWindow { grade_max: 0, ..window };
    tensor_irreducibility_probe(omega, Factor::Trivial(TrivialModule), &w, window)
}

/// Invariant subspaces of Ω(λ,α,h) (and of `Ω ⊗ V`, tensored with `V`).
#[derive(Debug, Clone)]
enum WitnessFamily {
    /// `t^i ℂ[t, s]`, for `α = 0`.
    DivisibleBy(u32),
    /// `t`-degree at most `i`, for constant `h`.
    DegreeAtMost(u32),
    /// `F(ℂ[t])[s]`, for `α ≠ 0` and `deg h ≥ 2`.
    ImageOfF,
}

fn witness_families(omega: &OmegaSpec) -> Vec<WitnessFamily> {
    let mut out = Vec::new();
    if omega.alpha.is_zero() {
        out.push(WitnessFamily::DivisibleBy(1));
    }
    if omega.h.degree() == 0 {
        out.push(WitnessFamily::DegreeAtMost(1));
    }
    if !omega.alpha.is_zero() && omega.h.degree() >= 2 {
        out.push(WitnessFamily::ImageOfF);
    }
    out
}

impl WitnessFamily {
    fn name(&self) -> String {
        match self {
            WitnessFamily::DivisibleBy(i) => format!("t^{i}*C[t,s]"),
            WitnessFamily::DegreeAtMost(i) => format!("deg_t <= {i}"),
            WitnessFamily::ImageOfF => "F(C[t])[s]".into(),
        }
    }
}

/// Exact membership in `F(ℂ[t])`: `F` raises degree by `deg h − 1`, so an
/// element of degree `D` can only be `F` of something of degree `D − deg h + 1`.
fn image_of_f_span(om: &OmegaModule, degree: u32) -> Span<Mono> {
    let dh = om.spec().h.degree() as u32;
    let mut span = Span::new();
    if degree + 1 >= dh {
        for a in 0..=degree + 1 - dh {
            let image = om.fg().f(&PolyTS::monomial(a, 0, Scalar::one()));
            span.insert(image.as_vector()).expect("concrete");
        }
    }
    span
}

fn in_image_of_f(om: &OmegaModule, w: &TensorElement) -> Result<bool, ProbeError> {
    for (_, f) in crate::tensor::split_right(w) {
        for i in 0..=f.degree_s().unwrap_or(0) {
            let part = f.s_coeff(i);
            if part.is_zero() {
                continue;
            }
            let span = image_of_f_span(om, part.degree_t().unwrap_or(0));
            if !span.contains(part.as_vector())? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_witness(
    t: &OmegaTensor,
    family: &WitnessFamily,
    words: &[PbwWord],
    window: ProbeWindow,
    ops: &dyn Fn(&TensorElement) -> Result<Vec<TensorElement>, ProbeError>,
    in_window: &dyn Fn(&(Mono, PbwWord)) -> bool,
) -> Result<WitnessRecord, ProbeError> {
    let om = &t.left;
    let mut basis: Vec<TensorElement> = Vec::new();
    let mut left_basis: Vec<PolyTS> = Vec::new();
    match family {
        WitnessFamily::DivisibleBy(i) | WitnessFamily::DegreeAtMost(i) => {
            for a in 0..=window.t_max {
                let keep = match family {
                    WitnessFamily::DivisibleBy(_) => a >= *i,
                    _ => a <= *i,
                };
                if keep {
                    for b in 0..=window.s_max {
                        left_basis.push(PolyTS::monomial(a, b, Scalar::one()));
                    }
                }
            }
        }
        WitnessFamily::ImageOfF => {
            let span = image_of_f_span(om, window.t_max);
            for row in span.basis() {
                for b in 0..=window.s_max {
                    left_basis.push(PolyTS::from_vector(row.clone()).mul_s_pow(b));
                }
            }
        }
    }
    for f in &left_basis {
        for w in words {
            basis.push(tensor_pure(f, &Vector::basis(w.clone())));
        }
    }
    let member = |x: &TensorElement| -> Result<bool, ProbeError> {
        Ok(match family {
            WitnessFamily::DivisibleBy(i) => x.keys().all(|(m, _)| m.t >= *i),
            WitnessFamily::DegreeAtMost(i) => x.keys().all(|(m, _)| m.t <= *i),
            WitnessFamily::ImageOfF => in_image_of_f(om, x)?,
        })
    };
    let mut stable = true;
    'outer: for b in &basis {
        for image in ops(b)? {
            if !member(&image)? {
                stable = false;
                break 'outer;
            }
        }
    }
    let seed_left = match family {
        WitnessFamily::DivisibleBy(i) | WitnessFamily::DegreeAtMost(i) => PolyTS::monomial(*i, 0, Scalar::one()),
        WitnessFamily::ImageOfF => om.fg().f(&PolyTS::one()),
    };
    let seed = tensor_pure(&seed_left, &Vector::basis(PbwWord::empty()));
    let generated = close_in_window(&[seed], ops, in_window)?;
    let mut window_part = Span::new();
    for b in &basis {
        window_part.insert(b)?;
    }
    let generated_equals = generated.dim() == window_part.dim() && generated.is_subspace_of(&window_part)?;
    Ok(WitnessRecord {
        family: family.name(),
        dim_in_window: window_part.dim(),
        stable,
        generated_dim: generated.dim(),
        generated_equals,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BProbeReport {
    pub criterion: String,
    pub criterion_holds: bool,
    pub deg_cap: u32,
    pub k_window: (i64, i64),
    /// Degrees visited by the downward induction.
    pub descent: Vec<u32>,
    pub reached_one: bool,
    pub rank: usize,
    pub filled: bool,
    pub witnesses: Vec<WitnessRecord>,
}

/// `F(f)` and `G(f)` recovered from `y_k = G(f) − (k+n)αF(f)` over the
/// `k`-window by exact interpolation in `k`; more than two nodes certify
/// that `y_k` is affine in `k`.
pub fn vandermonde_fg(b: &BModule, f: &PolyTS, k_window: (i64, i64)) -> Result<Option<(PolyTS, PolyTS)>, ProbeError> {
    let spec = b.spec();
    let n = i64::from(spec.n);
    let mut nodes = Vec::new();
    let mut ys = Vec::new();
    for k in k_window.0..=k_window.1 {
        let image = b.act(k, f)?;
        let shift = &spec.a_at(k) - &(&spec.lambda_pow(k - n) * &spec.a_at(n));
        let denom = spec.lambda_pow(k).mul_int(k - n);
        let y = (image - f.scale(&shift)).scale(&denom.inverse().map_err(ModuleError::from)?);
        nodes.push(Rational::from_integer(k.into()));
        ys.push(y.into_vector());
    }
    let c = interpolate(&nodes, &ys)?;
    if c.iter().skip(2).any(|x| !x.is_zero()) {
        return Err(ProbeError::Module(ModuleError::InvalidSpec("y_k is not affine in k".into())));
    }
    if spec.alpha.is_zero() {
        return Ok(None);
    }
    // y_k = (G − nαF) − k·αF
    let alpha_inv = spec.alpha.inverse().map_err(ModuleError::from)?;
    let f_of = PolyTS::from_vector(c[1].clone()).scale(&-alpha_inv);
    let g_of = PolyTS::from_vector(c[0].clone()) + f_of.scale(&spec.alpha.mul_int(n));
    Ok(Some((f_of, g_of)))
}

/// Probe of the `𝔟_{λ,n+1}`-module `ℂ[t]_{α,h,a}`.
pub fn irreducibility_probe_bmodule(
    spec: &BModuleSpec,
    seed: &PolyTS,
    deg_cap: u32,
    k_window: (i64, i64),
) -> Result<BProbeReport, ProbeError> {
    if seed.is_zero() {
        return Err(ProbeError::ZeroSeed);
    }
    if spec.lambda.as_rational().is_none() || spec.alpha.as_rational().is_none() || !seed.as_vector().is_concrete() {
        return Err(ProbeError::NotConcrete);
    }
    if k_window.0 <= i64::from(spec.n) {
        return Err(ModuleError::IndexError(k_window.0).into());
    }
    let b = BModule::new(spec.clone());
    let xi = spec.h.xi();
    let simple = spec.h.degree() == 1 && !spec.alpha.is_zero();
    let in_window = |m: &Mono| m.s == 0 && m.t <= deg_cap;
    let raw_ops = |v: &Vector<Mono>| -> Result<Vec<Vector<Mono>>, ProbeError> {
        let f = PolyTS::from_vector(v.clone());
        (k_window.0..=k_window.1).map(|k| Ok(b.act(k, &f)?.into_vector())).collect()
    };
    let mut descent = Vec::new();
    let mut reached_one = false;
    let mut rank = 0;
    if simple {
        // f' = ξf − F(f), then downward to a constant
        let mut f = seed.clone();
        descent.push(f.degree_t().unwrap_or(0));
        while f.degree_t().unwrap_or(0) > 0 {
            let (f_of, _) = vandermonde_fg(&b, &f, k_window)?.expect("alpha != 0");
            f = f.scale(&xi) - f_of;
            descent.push(f.degree_t().unwrap_or(0));
        }
        reached_one = !f.is_zero();
        let derived_ops = |v: &Vector<Mono>| -> Result<Vec<Vector<Mono>>, ProbeError> {
            let f = PolyTS::from_vector(v.clone());
            let mut out = raw_ops(v)?;
            if let Some((f_of, g_of)) = vandermonde_fg(&b, &f, k_window)? {
                let h_alpha = spec.h.eval(&spec.alpha);
                out.push((f.scale(&xi) - f_of).into_vector());
                out.push((g_of - f.scale(&h_alpha)).into_vector());
            }
            Ok(out)
        };
        rank = close_in_window(&[f.into_vector()], &derived_ops, &in_window)?.dim();
    }
    let mut witnesses = Vec::new();
    let om = OmegaModule::new(spec.omega_spec());
    for family in witness_families(&spec.omega_spec()) {
        witnesses.push(check_b_witness(&om, &family, deg_cap, &raw_ops, &in_window)?);
    }
    Ok(BProbeReport {
        criterion: "deg(h) = 1 and alpha != 0".into(),
        criterion_holds: simple,
        deg_cap,
        k_window,
        descent,
        reached_one,
        rank,
        filled: rank == deg_cap as usize + 1,
        witnesses,
    })
}

fn check_b_witness(
    om: &OmegaModule,
    family: &WitnessFamily,
    deg_cap: u32,
    ops: &OpsFn<Mono>,
    in_window: &dyn Fn(&Mono) -> bool,
) -> Result<WitnessRecord, ProbeError> {
    let basis: Vec<Vector<Mono>> = match family {
        WitnessFamily::DivisibleBy(i) => (*i..=deg_cap).map(|a| Vector::basis(Mono::new(a, 0))).collect(),
        WitnessFamily::DegreeAtMost(i) => (0..=(*i).min(deg_cap)).map(|a| Vector::basis(Mono::new(a, 0))).collect(),
        WitnessFamily::ImageOfF => image_of_f_span(om, deg_cap).basis().cloned().collect(),
    };
    let member = |v: &Vector<Mono>| -> Result<bool, ProbeError> {
        Ok(match family {
            WitnessFamily::DivisibleBy(i) => v.keys().all(|m| m.t >= *i),
            WitnessFamily::DegreeAtMost(i) => v.keys().all(|m| m.t <= *i),
            WitnessFamily::ImageOfF => {
                let p = PolyTS::from_vector(v.clone());
                p.is_zero() || image_of_f_span(om, p.degree_t().unwrap_or(0)).contains(v)?
            }
        })
    };
    let mut stable = true;
    'outer: for v in &basis {
        for image in ops(v)? {
            if !member(&image)? {
                stable = false;
                break 'outer;
            }
        }
    }
    let seed = match family {
        WitnessFamily::DivisibleBy(i) | WitnessFamily::DegreeAtMost(i) => Vector::basis(Mono::new(*i, 0)),
        WitnessFamily::ImageOfF => om.fg().f(&PolyTS::one()).into_vector(),
    };
    let generated = close_in_window(&[seed], ops, in_window)?;
    let mut window_part = Span::new();
    for v in &basis {
        window_part.insert(v)?;
    }
    let generated_equals = generated.dim() == window_part.dim() && generated.is_subspace_of(&window_part)?;
    Ok(WitnessRecord {
        family: family.name().replace("[s]", "").replace("C[t,s]", "C[t]"),
        dim_in_window: window_part.dim(),
        stable,
        generated_dim: generated.dim(),
        generated_equals,
    })
}
