//! One runner per check kind. Each returns a status and a JSON payload.

use std::collections::BTreeMap;

use num::{BigInt, One};
use serde::Serialize;
use serde_json::{json, Value};
use vircalc::analysis::gn::{gn_identity_check, inverse_family_check};
use vircalc::analysis::phi::closed_form_check;
use vircalc::analysis::probe::irreducibility_probe_bmodule;
use vircalc::module::bracket_sides;
use vircalc::signature::{omega_vanishing_check, lowering_witness, lz_pair, pair_coefficient_check};
use vircalc::tensor::{binomial_vanish, join_right, map_left, prop31_display, prop31_extract, s_degree, split_right, tensor_pure};
use vircalc::{
    build_gn, irreducibility_probe_omega, tensor_irreducibility_probe, verify_phi, verma_level_basis, BModule, Factor,
    IndCaps, InducedModule, IsoWitness, Mono, OmegaLZModule, OmegaModule, PbwWord, PhiError, PolyTS, ProbeWindow,
    Rational, Scalar, SignatureFamily, Tensor, TensorElement, Vector, VirModule, WhittakerModule,
};

use crate::config::{
    BracketParams, Built, CheckSpec, ExtractParams, IdentityParams, InducedParams, IsoExpectation, IsoParams,
    ProbeExpectation, ProbeParams, Registry, SignatureParams,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The computation ran and its result is recorded without a pass/fail
    /// expectation attached.
    Finding,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Finding => "finding",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub data: Value,
}

fn pass_if(ok: bool, data: Value) -> Outcome {
    Outcome { status: if ok { Status::Pass } else { Status::Fail }, data }
}

/// At most this many failure descriptions are kept in a report.
const MAX_LISTED: usize = 20;

fn listed(failures: &[String]) -> Value {
    json!(failures.iter().take(MAX_LISTED).collect::<Vec<_>>())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

pub fn run_check(spec: &CheckSpec, reg: &Registry) -> Outcome {
    let result = match spec {
        CheckSpec::BracketCheck(p) => bracket(p, reg),
        CheckSpec::OmegaSignature(p) => signature(p, reg),
        CheckSpec::IsoCheck(p) => iso(p, reg),
        CheckSpec::IrreducibilityProbe(p) => probe(p, reg),
        CheckSpec::InducedCheck(p) => induced(p, reg),
        CheckSpec::Identities(p) => identities(p, reg),
        CheckSpec::Extract(p) => extract(p, reg),
    };
    result.unwrap_or_else(|msg| Outcome { status: Status::Fail, data: json!({ "error": msg }) })
}

type CheckResult = Result<Outcome, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn factor_basis(f: &Factor, grade: u32) -> Vec<PbwWord> {
    match f {
        Factor::Whittaker(w) => w.spec().basis_up_to(grade),
        Factor::Trivial(_) => vec![PbwWord::empty()],
    }
}

fn one_word() -> Vector<PbwWord> {
    Vector::basis(PbwWord::empty())
}

fn bracket_suite<M: VirModule>(
    module: &M,
    basis: Vec<(String, Vector<M::Basis>)>,
    window: (i64, i64),
) -> Result<(usize, Vec<String>), String> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for (label, x) in &basis {
        for i in window.0..=window.1 {
            for j in i + 1..=window.1 {
                checked += 1;
                let (lhs, rhs) = bracket_sides(module, i, j, x).map_err(err)?;
                if lhs != rhs {
                    failures.push(format!("[d_{i}, d_{j}] on {label}"));
                }
            }
        }
    }
    Ok((checked, failures))
}

fn bracket(p: &BracketParams, reg: &Registry) -> CheckResult {
    let c = &p.caps;
    let (checked, failures) = match reg.get("module", &p.module).map_err(err)? {
        Built::Omega(spec) => {
            let basis = (0..=c[0])
                .flat_map(|a| (0..=c[1]).map(move |b| (format!("t^{a} s^{b}"), PolyTS::monomial(a, b, Scalar::one()).into_vector())))
                .collect();
            bracket_suite(&OmegaModule::new(spec.clone()), basis, p.window)?
        }
        Built::OmegaLZ(spec) => {
            let basis = (0..=c[0]).map(|b| (format!("s^{b}"), Vector::basis(b))).collect();
            bracket_suite(&OmegaLZModule::new(spec.clone()), basis, p.window)?
        }
        Built::Factor(f) => {
            let basis = factor_basis(f, c[0]).into_iter().map(|w| (w.to_string(), Vector::basis(w))).collect();
            bracket_suite(f, basis, p.window)?
        }
        Built::Tensor(spec, f) => {
            let mut basis = Vec::new();
            for w in factor_basis(f, c[2]) {
                for a in 0..=c[0] {
                    for b in 0..=c[1] {
                        basis.push((format!("t^{a} s^{b} ⊗ {w}"), Vector::basis((Mono::new(a, b), w.clone()))));
                    }
                }
            }
            bracket_suite(&Tensor::new(OmegaModule::new(spec.clone()), f.clone()), basis, p.window)?
        }
        Built::LZPair(s1, s2, f) => {
            let mut basis = Vec::new();
            for w in factor_basis(f, c[2]) {
                for b1 in 0..=c[0] {
                    for b2 in 0..=c[1] {
                        basis.push((format!("s_1^{b1} ⊗ s_2^{b2} ⊗ {w}"), Vector::basis((b1, (b2, w.clone())))));
                    }
                }
            }
            bracket_suite(&lz_pair(s1, s2, f), basis, p.window)?
        }
        Built::BModule(spec) => {
            let b = BModule::new(spec.clone());
            let lo = p.window.0.max(i64::from(spec.n) + 1);
            let mut checked = 0;
            let mut failures = Vec::new();
            for d in 0..=c[0] {
                let f = PolyTS::monomial(d, 0, Scalar::one());
                for k in lo..=p.window.1 {
                    for k2 in k + 1..=p.window.1 {
                        checked += 1;
                        let (lhs, rhs) = b.bracket_sides(k, k2, &f).map_err(err)?;
                        if lhs != rhs {
                            failures.push(format!("[d_{k}, d_{k2}] on t^{d}"));
                        }
                    }
                }
            }
            (checked, failures)
        }
    };
    Ok(pass_if(
        failures.is_empty() && checked > 0,
        json!({ "window": p.window, "caps": p.caps, "checked": checked, "failure_count": failures.len(), "failures": listed(&failures) }),
    ))
}

fn signature(p: &SignatureParams, reg: &Registry) -> CheckResult {
    let built = reg.get("module", &p.module).map_err(err)?;
    let family = match built {
        Built::Omega(s) => SignatureFamily::Omega(s.clone()),
        Built::OmegaLZ(s) => SignatureFamily::OmegaLZ(s.clone()),
        Built::Tensor(s, f) => SignatureFamily::OmegaTensor(s.clone(), f.clone()),
        Built::LZPair(s1, s2, f) => SignatureFamily::LZPair(s1.clone(), s2.clone(), f.clone()),
        other => return Err(format!("no signature for {} modules", other.kind_name())),
    };
    let record = family.signature(p.r_max, p.plan).map_err(err)?;
    let mut expectations = Vec::new();
    let mut asserted = false;
    let mut ok = true;
    if let Some(orders) = &p.expect_vanishing {
        let holds = orders.iter().all(|&r| record.vanishes(r));
        expectations.push(json!({ "vanishing": orders, "holds": holds }));
        asserted = true;
        ok &= holds;
    }
    if let Some(orders) = &p.expect_nonvanishing {
        let holds = orders.iter().all(|&r| !record.vanishes(r));
        expectations.push(json!({ "nonvanishing": orders, "holds": holds }));
        asserted = true;
        ok &= holds;
    }
    let mut data = json!({
        "family": record.family,
        "first_vanishing": record.first_vanishing(),
        "signature": to_value(&record),
        "expectations": expectations,
    });
    if let (Some(cf), Built::Omega(spec)) = (&p.closed_form, built) {
        let report = omega_vanishing_check(spec, cf.a_max, cf.b_max, cf.range).map_err(err)?;
        ok &= report.passed();
        data["closed_form"] = to_value(&report);
        asserted = true;
    }
    if let (Some(lw), Built::Tensor(spec, f)) = (&p.lowering, built) {
        let mut rows = Vec::new();
        for &r in &lw.orders {
            let w = lowering_witness(spec, f, r, lw.span).map_err(err)?;
            ok &= w.independent && w.nonzero_for.len() == 3 && w.vanishes_on_omega.len() == 3;
            rows.push(to_value(&w));
        }
        data["lowering"] = json!(rows);
        asserted = true;
    }
    if let (Some(pc), Built::LZPair(s1, s2, f)) = (&p.pair_coefficients, built) {
        let mut per_order = Vec::new();
        for &r in &pc.orders {
            let rows = pair_coefficient_check(s1, s2, f, r, pc.span).map_err(err)?;
            let agree = rows.iter().all(|row| row.agrees);
            let nonzero = rows.iter().filter(|row| row.nonzero).count();
            ok &= agree && nonzero > 0;
            per_order.push(json!({ "r": r, "all_agree": agree, "nonzero_rows": nonzero, "rows": to_value(&rows) }));
        }
        data["pair_coefficients"] = json!(per_order);
        asserted = true;
    }
    let status = match (asserted, ok) {
        (false, _) => Status::Finding,
        (true, true) => Status::Pass,
        (true, false) => Status::Fail,
    };
    Ok(Outcome { status, data })
}

fn iso(p: &IsoParams, reg: &Registry) -> CheckResult {
    let source = reg.omega("source", &p.source).map_err(err)?;
    let target = reg.omega("target", &p.target).map_err(err)?;
    let witness = IsoWitness::new(source, target, p.n_max as usize).map_err(err)?;
    let violations = witness.criterion_violations();
    let expect = match p.expect {
        IsoExpectation::Isomorphic => "isomorphic",
        IsoExpectation::CriterionFailure => "criterion_failure",
    };
    match verify_phi(&witness, p.i_max, p.n_max, p.m_window, p.force) {
        Ok(report) => {
            let ok = match p.expect {
                IsoExpectation::Isomorphic => report.passed(),
                IsoExpectation::CriterionFailure => !report.criterion_holds && !report.failures.is_empty(),
            };
            let data = json!({
                "expect": expect,
                "criterion_holds": report.criterion_holds,
                "violations": violations,
                "i_max": report.i_max,
                "n_max": report.n_max,
                "m_window": report.m_window,
                "checked": report.checked,
                "failure_count": report.failures.len(),
                "failures": listed(&report.failures),
            });
            Ok(pass_if(ok, data))
        }
        Err(PhiError::CriterionFailed(msg)) => Ok(pass_if(
            p.expect == IsoExpectation::CriterionFailure,
            json!({ "expect": expect, "criterion_holds": false, "violations": violations, "refused": msg }),
        )),
        Err(e) => Err(e.to_string()),
    }
}

fn probe(p: &ProbeParams, reg: &Registry) -> CheckResult {
    let seed = reg.scalars.poly("seed", &p.seed).map_err(err)?;
    let window = ProbeWindow { t_max: p.t_max, s_max: p.s_max, grade_max: p.grade_max, m_window: p.m_window };
    let (criterion_holds, filled, confirmed, data) = match reg.get("module", &p.module).map_err(err)? {
        Built::Omega(spec) => {
            let r = irreducibility_probe_omega(spec, &seed, window).map_err(err)?;
            let confirmed = !r.witnesses.is_empty() && r.witnesses.iter().all(|w| w.confirmed());
            (r.criterion_holds, r.filled, confirmed, to_value(&r))
        }
        Built::Tensor(spec, f) => {
            let v = f.act_word(&p.word, &one_word()).map_err(err)?;
            let w = tensor_pure(&seed, &v);
            let r = tensor_irreducibility_probe(spec, f.clone(), &w, window).map_err(err)?;
            let confirmed = !r.witnesses.is_empty() && r.witnesses.iter().all(|w| w.confirmed());
            (r.criterion_holds, r.filled, confirmed, to_value(&r))
        }
        Built::BModule(spec) => {
            let k = p.k_window.ok_or("k_window is required for b_module probes")?;
            let r = irreducibility_probe_bmodule(spec, &seed, p.t_max, k).map_err(err)?;
            let confirmed = !r.witnesses.is_empty() && r.witnesses.iter().all(|w| w.confirmed());
            (r.criterion_holds, r.filled, confirmed, to_value(&r))
        }
        other => return Err(format!("no probe for {} modules", other.kind_name())),
    };
    let status = match p.expect {
        Some(ProbeExpectation::Fill) => pass_if(filled && criterion_holds, Value::Null).status,
        Some(ProbeExpectation::Reducible) => pass_if(!criterion_holds && confirmed, Value::Null).status,
        None if filled == criterion_holds => Status::Pass,
        None => Status::Finding,
    };
    Ok(Outcome { status, data })
}

/// `p(k)` by the standard recurrence over part sizes.
fn partition_count(k: usize) -> usize {
    let mut p = vec![0usize; k + 1];
    p[0] = 1;
    for part in 1..=k {
        for total in part..=k {
            p[total] += p[total - part];
        }
    }
    p[k]
}

fn induced(p: &InducedParams, reg: &Registry) -> CheckResult {
    let spec = reg.b_module("module", &p.module).map_err(err)?;
    let theta = reg.scalars.scalar("theta", &p.theta).map_err(err)?;
    let n = i64::from(spec.n);
    let mut failures = Vec::new();

    let wm = WhittakerModule::new(spec.whittaker_spec(theta.clone()), p.grade_cap);
    let one = one_word();
    let mut whittaker_checked = 0;
    for i in n..=2 * n + 3 {
        whittaker_checked += 1;
        let expected = if i <= 2 * n { spec.a[(i - n) as usize].clone() } else { Scalar::zero() };
        if wm.act(i, &one).map_err(err)? != one.scale(&expected) {
            failures.push(format!("d_{i} 𝟙 ≠ a_{i} 𝟙"));
        }
    }

    let mut verma_dims = Vec::new();
    for k in 0..=p.verma_levels {
        let dim = verma_level_basis(k).len();
        let want = partition_count(k as usize);
        if dim != want {
            failures.push(format!("Verma level {k} has dimension {dim}, p({k}) = {want}"));
        }
        verma_dims.push(dim);
    }

    let ind = InducedModule::new(spec.clone(), theta, p.grade_cap);
    let mut observation_checked = 0;
    for j in (n + 1).max(p.j_window.0)..=p.j_window.1 {
        for i in 0..=p.caps.t_deg {
            observation_checked += 1;
            let (lhs, rhs) = ind.observation_sides(j, i).map_err(err)?;
            if lhs != rhs {
                failures.push(format!("observation fails for j = {j}, t^{i}"));
            }
        }
    }

    let caps: IndCaps = p.caps.into();
    let tags = vircalc::ind_basis(spec.n, caps);
    let mut cache = BTreeMap::new();
    let mut homomorphism_checked = 0;
    for tag in &tags {
        for j in p.j_window.0..=p.j_window.1 {
            homomorphism_checked += 1;
            let (lhs, rhs) = ind.homomorphism_sides(j, tag, &mut cache).map_err(err)?;
            if lhs != rhs {
                failures.push(format!("map does not intertwine d_{j} on {tag}"));
            }
        }
    }

    let triangular = ind.leading_term_order_check(caps).map_err(err)?;
    let full_rank = triangular.rank == Some(triangular.tags);
    if !triangular.passed() {
        failures.extend(triangular.failures.iter().cloned());
    }
    if !full_rank {
        failures.push(format!("rank {:?} of {} images", triangular.rank, triangular.tags));
    }
    Ok(pass_if(
        failures.is_empty(),
        json!({
            "n": spec.n,
            "whittaker_checked": whittaker_checked,
            "verma_level_dimensions": verma_dims,
            "observation_checked": observation_checked,
            "tags": tags.len(),
            "j_window": p.j_window,
            "homomorphism_checked": homomorphism_checked,
            "triangular": triangular.passed(),
            "rank": triangular.rank,
            "failure_count": failures.len(),
            "failures": listed(&failures),
        }),
    ))
}

fn factorial(r: u32) -> BigInt {
    (1..=r).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn identities(p: &IdentityParams, reg: &Registry) -> CheckResult {
    let mut data = serde_json::Map::new();
    let mut failures = Vec::new();
    if let Some(b) = &p.binomial {
        let mut checked = 0;
        for r in 1..=b.r_max {
            for j in 0..r {
                checked += 1;
                if binomial_vanish(r, j) != Rational::from_integer(0.into()) {
                    failures.push(format!("binomial sum r = {r}, j = {j} is nonzero"));
                }
            }
        }
        for r in 0..=b.factorial_r_max {
            checked += 1;
            if binomial_vanish(r, r) != Rational::from_integer(factorial(r)) {
                failures.push(format!("binomial sum r = j = {r} differs from {r}!"));
            }
        }
        data.insert("binomial".into(), json!({ "r_max": b.r_max, "factorial_r_max": b.factorial_r_max, "checked": checked }));
    }
    if let Some(g) = &p.gn {
        let delta = reg.scalars.scalar("gn.delta_eta", &g.delta_eta).map_err(err)?;
        let n = g.n_max as usize;
        let report = gn_identity_check(&build_gn(&delta, n + 1), n);
        if !report.passed() {
            failures.push(format!("g_n identities fail: {report:?}"));
        }
        let zero = build_gn(&Scalar::zero(), n);
        let monomial = (0..=n).all(|k| zero.g[k] == PolyTS::monomial(k as u32, 0, Scalar::one()));
        if !monomial {
            failures.push("Δη = 0 does not give g_n(x) = x^n".into());
        }
        let inverse = g.inverse_n_max.map(|m| inverse_family_check(&delta, m as usize));
        if inverse == Some(false) {
            failures.push("g_n families for Δη and −Δη are not inverse".into());
        }
        data.insert(
            "gn".into(),
            json!({ "delta_eta": to_value(&delta), "report": to_value(&report), "zero_shift_monomial": monomial, "inverse": inverse }),
        );
    }
    if let Some(c) = &p.closed_forms {
        let spec = reg.omega("closed_forms.module", &c.module).map_err(err)?;
        if spec.h.degree() != 1 {
            return Err("closed forms need deg h = 1".into());
        }
        let bad = closed_form_check(&spec, c.n_max);
        if !bad.is_empty() {
            failures.push(format!("closed forms of F, G fail at n = {bad:?}"));
        }
        data.insert("closed_forms".into(), json!({ "module": c.module, "n_max": c.n_max, "failing_n": bad }));
    }
    data.insert("failures".into(), listed(&failures));
    Ok(pass_if(failures.is_empty() && data.len() > 1, Value::Object(data)))
}

fn fmt_tensor(w: &TensorElement) -> String {
    if w.is_zero() {
        return "0".into();
    }
    split_right(w).into_iter().map(|(v, f)| format!("({f}) ⊗ {v}")).collect::<Vec<_>>().join(" + ")
}

fn extract(p: &ExtractParams, reg: &Registry) -> CheckResult {
    let (spec, factor) = match reg.get("module", &p.module).map_err(err)? {
        Built::Tensor(s, f) => (s.clone(), f.clone()),
        other => return Err(format!("extraction needs a tensor module, not {}", other.kind_name())),
    };
    let om = OmegaModule::new(spec.clone());
    let t = Tensor::new(om.clone(), factor.clone());
    let mut rows = Vec::new();
    let mut ok = true;
    for (k, seed) in p.seeds.iter().enumerate() {
        let mut w = TensorElement::new();
        for term in &seed.terms {
            let f = reg.scalars.poly("seed", &term.poly).map_err(err)?;
            let v = factor.act_word(&term.word, &one_word()).map_err(err)?;
            w.add_assign(&tensor_pure(&f, &v));
        }
        if w.is_zero() {
            return Err(format!("seed {k} is zero"));
        }
        let r = s_degree(&w);
        let mut per_j = Vec::new();
        let mut seed_ok = true;
        for j in 0..=r + 2 {
            let got = prop31_extract(&t, j, &w, None).map_err(err)?;
            let agrees = got == prop31_display(&om, j, &w);
            seed_ok &= agrees;
            per_j.push(json!({ "j": j, "coefficient": fmt_tensor(&got), "matches_display": agrees }));
        }
        let zeroth = prop31_extract(&t, 0, &w, None).map_err(err)? == map_left(&w, |f| f.mul_s());
        let top = prop31_extract(&t, r + 2, &w, None).map_err(err)?;
        let neg_alpha = -&spec.alpha;
        let top_expected = join_right(
            &split_right(&w)
                .into_iter()
                .map(|(v, f)| (v, om.fg().f(&f.s_coeff(r)).scale(&neg_alpha)))
                .collect::<Vec<_>>(),
        );
        let top_ok = top == top_expected;
        seed_ok &= zeroth && top_ok;
        ok &= seed_ok;
        rows.push(json!({
            "seed": fmt_tensor(&w),
            "r": r,
            "coefficients": per_j,
            "j0_is_s_times_w": zeroth,
            "top_is_minus_alpha_F_of_a_r": top_ok,
            "top_is_plus_alpha_F_of_a_r": top == top_expected.scale(&Scalar::int(-1)),
        }));
    }
    Ok(pass_if(ok, json!({ "seeds": rows })))
}
