//! The `𝔟_{λ,n+1}`-module `ℂ[t]_{α,h,a}`, the induced module
//! `Ind_{θ,λ}(ℂ[t]_{α,h,a})`, and its map to `Ω(λ,α,h) ⊗ V_{a,θ}`.
//!
//! `𝔟_{λ,n+1} = span{d_k − λ^{k−n} d_n | k ≥ n + 1}` acts on `ℂ[t]` by
//! `(d_k − λ^{k−n}d_n)∘f = (k−n)λ^k(G(f) − (k+n)αF(f)) + (a_k − λ^{k−n}a_n)f`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{normal_order_indices, PbwWord, UElement};
use crate::linear::{rank, Vector};
use crate::module::{ModuleError, VirModule};
use crate::omega::{check_invertible, OmegaModule, OmegaSpec};
use crate::poly::{FgOperators, HPoly, Mono, PolyTS};
use crate::scalar::Scalar;
use crate::tensor::{tensor_pure, OmegaTensor, Tensor, TensorElement};
use crate::whittaker::{Factor, WhittakerModule, WhittakerSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BModuleSpec {
    pub lambda: Scalar,
    pub n: u32,
    pub alpha: Scalar,
    pub h: HPoly,
    /// `(a_n, …, a_{2n})`.
    pub a: Vec<Scalar>,
}

impl BModuleSpec {
    pub fn new(lambda: Scalar, n: u32, alpha: Scalar, h: HPoly, a: Vec<Scalar>) -> Result<Self, ModuleError> {
        check_invertible("lambda", &lambda)?;
        if a.len() != n as usize + 1 {
            return Err(ModuleError::InvalidSpec(format!("expected {} character values, got {}", n + 1, a.len())));
        }
        Ok(BModuleSpec { lambda, n, alpha, h, a })
    }

    pub fn a_at(&self, k: i64) -> Scalar {
        let n = i64::from(self.n);
        if k < n || k > 2 * n {
            Scalar::zero()
        } else {
            self.a[(k - n) as usize].clone()
        }
    }

    pub fn lambda_pow(&self, k: i64) -> Scalar {
        self.lambda.pow(k).expect("lambda is invertible")
    }

    pub fn omega_spec(&self) -> OmegaSpec {
        OmegaSpec { lambda: self.lambda.clone(), alpha: self.alpha.clone(), h: self.h.clone() }
    }

    pub fn whittaker_spec(&self, theta: Scalar) -> WhittakerSpec {
        WhittakerSpec { n: self.n, a: self.a.clone(), theta }
    }
}

/// `ℂ[t]_{α,h,a}` with the action of the generators `d_k − λ^{k−n} d_n`.
#[derive(Debug, Clone)]
pub struct BModule {
    spec: BModuleSpec,
    fg: FgOperators,
}

impl BModule {
    pub fn new(spec: BModuleSpec) -> Self {
        let fg = FgOperators::new(&spec.h, &spec.alpha);
        BModule { spec, fg }
    }

    pub fn spec(&self) -> &BModuleSpec {
        &self.spec
    }

    pub fn fg(&self) -> &FgOperators {
        &self.fg
    }

    /// `(d_k − λ^{k−n} d_n) ∘ f` for `k ≥ n + 1`.
    pub fn act(&self, k: i64, f: &PolyTS) -> Result<PolyTS, ModuleError> {
        let n = i64::from(self.spec.n);
        if k <= n {
            return Err(ModuleError::IndexError(k));
        }
        if !f.is_t_only() {
            return Err(ModuleError::InvalidSpec("b-module elements are polynomials in t".into()));
        }
        let inner = &self.fg.g(f) - &self.fg.f(f).scale(&self.spec.alpha.mul_int(k + n));
        let main = inner.scale(&self.spec.lambda_pow(k).mul_int(k - n));
        let shift = &self.spec.a_at(k) - &(&self.spec.lambda_pow(k - n) * &self.spec.a_at(n));
        Ok(main + f.scale(&shift))
    }

    /// Both sides of `[B_k, B_{k'}] ∘ f`, where `B_k = d_k − λ^{k−n} d_n`:
    /// the commutator of the two actions, and the bracket computed in
    /// `U(Vir)` and re-expressed through the generators `B_q`.
    pub fn bracket_sides(&self, k: i64, k2: i64, f: &PolyTS) -> Result<(PolyTS, PolyTS), ModuleError> {
        let n = i64::from(self.spec.n);
        let lhs = &self.act(k, &self.act(k2, f)?)? - &self.act(k2, &self.act(k, f)?)?;
        let b = |q: i64| &UElement::d(q) - &UElement::d(n).scale(&self.spec.lambda_pow(q - n));
        let theta = Scalar::zero();
        let commutator = b(k).commutator(&b(k2), &theta);
        let mut rhs = PolyTS::zero();
        let mut dn_coeff = Scalar::zero();
        for (w, c) in commutator.as_vector().iter() {
            match w.indices() {
                [q] if *q == n => dn_coeff += c,
                [q] if *q > n => {
                    rhs = rhs + self.act(*q, f)?.scale(c);
                    dn_coeff += &(c * &self.spec.lambda_pow(q - n));
                }
                _ => return Err(ModuleError::InvalidSpec(format!("unexpected term {w} in the bracket"))),
            }
        }
        if !dn_coeff.is_zero() {
            return Err(ModuleError::InvalidSpec("bracket leaves the span of the generators".into()));
        }
        Ok((lhs, rhs))
    }
}

/// A basis vector `d_{j_1} ⋯ d_{j_k} ⊗ t^i` of the induced module (all `j ≤ n`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndTag {
    pub word: PbwWord,
    pub t: u32,
}

impl fmt::Display for IndTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | t^{}", self.word, self.t)
    }
}

impl Serialize for IndTag {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Words use indices in `[−level, n]`, have length `≤ len` and level `≤ level`;
/// the `t`-degree is at most `t_deg`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndCaps {
    pub level: u32,
    pub len: u32,
    pub t_deg: u32,
}

/// All basis tags within `caps`.
pub fn ind_basis(n: u32, caps: IndCaps) -> Vec<IndTag> {
    let lo = -i64::from(caps.level);
    let hi = i64::from(n);
    let mut words = Vec::new();
    fn go(start: i64, hi: i64, left: u32, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(prefix.clone());
        if left == 0 {
            return;
        }
        for j in start..=hi {
            prefix.push(j);
            go(j, hi, left - 1, prefix, out);
            prefix.pop();
        }
    }
    go(lo, hi, caps.len, &mut Vec::new(), &mut words);
    let mut tags = Vec::new();
    for w in words {
        let word = PbwWord::sorted(w);
        if word.level() > i64::from(caps.level) {
            continue;
        }
        for t in 0..=caps.t_deg {
            tags.push(IndTag { word: word.clone(), t });
        }
    }
    tags.sort();
    tags
}

/// `Ind_{θ,λ}(ℂ[t]_{α,h,a})` and the tensor module it is compared with.
#[derive(Debug, Clone)]
pub struct InducedModule {
    b: BModule,
    theta: Scalar,
    tensor: OmegaTensor,
}

impl InducedModule {
    /// `grade_cap` bounds the Whittaker factor of the tensor module.
    pub fn new(spec: BModuleSpec, theta: Scalar, grade_cap: i64) -> Self {
        let om = OmegaModule::new(spec.omega_spec());
        let v = WhittakerModule::new(spec.whittaker_spec(theta.clone()), grade_cap);
        InducedModule { b: BModule::new(spec), theta, tensor: Tensor::new(om, Factor::Whittaker(v)) }
    }

    pub fn b_module(&self) -> &BModule {
        &self.b
    }

    pub fn tensor(&self) -> &OmegaTensor {
        &self.tensor
    }

    fn n(&self) -> i64 {
        i64::from(self.b.spec.n)
    }

    /// Rewrites `word ⊗ f` into basis tags, moving every `d_p` with `p > n`
    /// across the tensor sign via `d_p = λ^{p−n} d_n + (d_p − λ^{p−n} d_n)`.
    pub fn reduce(&self, word: &[i64], f: &PolyTS) -> Result<Vector<IndTag>, ModuleError> {
        let n = self.n();
        let mut pending: Vec<(Vec<i64>, PolyTS)> = Vec::new();
        for (w, c) in normal_order_indices(word, &self.theta).as_vector().iter() {
            pending.push((w.indices().to_vec(), f.scale(c)));
        }
        let mut out = Vector::new();
        while let Some((w, g)) = pending.pop() {
            if g.is_zero() {
                continue;
            }
            match w.last() {
                Some(&p) if p > n => {
                    let prefix = &w[..w.len() - 1];
                    let mut moved = prefix.to_vec();
                    moved.push(n);
                    let lam = self.b.spec.lambda_pow(p - n);
                    for (u, c) in normal_order_indices(&moved, &self.theta).as_vector().iter() {
                        pending.push((u.indices().to_vec(), g.scale(&(c * &lam))));
                    }
                    pending.push((prefix.to_vec(), self.b.act(p, &g)?));
                }
                _ => {
                    let word = PbwWord::sorted(w);
                    for (m, c) in g.terms() {
                        out.add_term(IndTag { word: word.clone(), t: m.t }, c.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// `d_j · (x ⊗ t^i)` in the induced module.
    pub fn act_tag(&self, j: i64, tag: &IndTag) -> Result<Vector<IndTag>, ModuleError> {
        let mut word = vec![j];
        word.extend_from_slice(tag.word.indices());
        self.reduce(&word, &PolyTS::monomial(tag.t, 0, Scalar::one()))
    }

    /// `x ⊗ t^i ↦ x (t^i ⊗ 𝟙)`.
    pub fn theorem52_map(&self, tag: &IndTag) -> Result<TensorElement, ModuleError> {
        let start = tensor_pure(&PolyTS::monomial(tag.t, 0, Scalar::one()), &Vector::basis(PbwWord::empty()));
        self.tensor.act_word(tag.word.indices(), &start)
    }

    pub fn map_vector(&self, v: &Vector<IndTag>, cache: &mut BTreeMap<IndTag, TensorElement>) -> Result<TensorElement, ModuleError> {
        let mut out = Vector::new();
        for (tag, c) in v.iter() {
            if !cache.contains_key(tag) {
                let image = self.theorem52_map(tag)?;
                cache.insert(tag.clone(), image);
            }
            out.add_assign_scaled(&cache[tag], c);
        }
        Ok(out)
    }

    /// `φ(d_j · x) = d_j · φ(x)`, the two sides computed along independent paths.
    pub fn homomorphism_sides(
        &self,
        j: i64,
        tag: &IndTag,
        cache: &mut BTreeMap<IndTag, TensorElement>,
    ) -> Result<(TensorElement, TensorElement), ModuleError> {
        let lhs = self.map_vector(&self.act_tag(j, tag)?, cache)?;
        let image = self.map_vector(&Vector::basis(tag.clone()), cache)?;
        let rhs = self.tensor.act(j, &image)?;
        Ok((lhs, rhs))
    }

    /// `(d_j − λ^{j−n} d_n)(t^i ⊗ 𝟙)` against `((d_j − λ^{j−n} d_n)∘t^i) ⊗ 𝟙` for `j > n`.
    pub fn observation_sides(&self, j: i64, i: u32) -> Result<(TensorElement, TensorElement), ModuleError> {
        let n = self.n();
        let f = PolyTS::monomial(i, 0, Scalar::one());
        let one = Vector::basis(PbwWord::empty());
        let start = tensor_pure(&f, &one);
        let lhs = &self.tensor.act(j, &start)? - &self.tensor.act(n, &start)?.scale(&self.b.spec.lambda_pow(j - n));
        let rhs = tensor_pure(&self.b.act(j, &f)?, &one);
        Ok((lhs, rhs))
    }

    /// The claimed leading term `t^i s^{k_n} ⊗ (x without d_n)·𝟙` and its
    /// coefficient `λ^{n k_n}`.
    pub fn expected_leading(&self, tag: &IndTag) -> ((Mono, PbwWord), Scalar) {
        let n = self.n();
        let k_n = tag.word.count(n) as u32;
        let rest: Vec<i64> = tag.word.indices().iter().copied().filter(|&j| j != n).collect();
        let coeff = self.b.spec.lambda_pow(n * i64::from(k_n));
        ((Mono::new(tag.t, k_n), PbwWord::sorted(rest)), coeff)
    }

    /// The total order on the tensor basis: compare the exponent sequences
    /// `(…, k_{−1}, k_0, …, k_{n−1}, k_n, k_{n+1})` from the most negative
    /// index up, with `k_n` the `s`-degree and `k_{n+1}` the `t`-degree.
    pub fn basis_cmp(&self, x: &(Mono, PbwWord), y: &(Mono, PbwWord)) -> Ordering {
        let n = self.n();
        let exps = |(mono, word): &(Mono, PbwWord)| {
            let mut e: BTreeMap<i64, u32> = BTreeMap::new();
            for &j in word.indices() {
                *e.entry(j).or_default() += 1;
            }
            e.insert(n, mono.s);
            e.insert(n + 1, mono.t);
            e
        };
        let (ex, ey) = (exps(x), exps(y));
        let lo = *ex.keys().next().expect("nonempty").min(ey.keys().next().expect("nonempty"));
        for i in lo..=n + 1 {
            let a = ex.get(&i).copied().unwrap_or(0);
            let b = ey.get(&i).copied().unwrap_or(0);
            if a != b {
                return a.cmp(&b);
            }
        }
        Ordering::Equal
    }

    pub fn leading_term_order_check(&self, caps: IndCaps) -> Result<LeadingTermReport, ModuleError> {
        let tags = ind_basis(self.b.spec.n, caps);
        let mut failures = Vec::new();
        let mut images = Vec::with_capacity(tags.len());
        let mut leading_keys = std::collections::BTreeSet::new();
        for tag in &tags {
            let image = self.theorem52_map(tag)?;
            let (key, coeff) = self.expected_leading(tag);
            let actual = image.coeff(&key);
            if actual != coeff {
                failures.push(format!("{tag}: leading coefficient {actual}, expected {coeff}"));
            }
            for (other, _) in image.iter() {
                if *other != key && self.basis_cmp(other, &key) != Ordering::Less {
                    failures.push(format!("{tag}: term {} ⊗ {} is not below the leading term", other.0, other.1));
                }
            }
            leading_keys.insert(key);
            images.push(image);
        }
        let distinct = leading_keys.len() == tags.len();
        if !distinct {
            failures.push("two basis tags share a leading term".into());
        }
        let rank = if images.iter().all(Vector::is_concrete) { Some(rank(&images)?) } else { None };
        Ok(LeadingTermReport { tags: tags.len(), rank, failures })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeadingTermReport {
    pub tags: usize,
    /// Exact rank of the images, when every coefficient is rational.
    pub rank: Option<usize>,
    pub failures: Vec<String>,
}

impl LeadingTermReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.rank.is_none_or(|r| r == self.tags)
    }
}
