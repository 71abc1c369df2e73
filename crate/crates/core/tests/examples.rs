use std::collections::BTreeMap;
use std::sync::Arc;

use vircalc::analysis::gn::{gn_identity_check, inverse_family_check};
use vircalc::analysis::phi::closed_form_check;
use vircalc::tensor::{binomial_vanish, prop31_display, prop31_extract, tensor_pure};
use vircalc::*;

fn alphabet() -> Arc<Alphabet> {
    Alphabet::new([
        ("lambda", true),
        ("alpha", false),
        ("xi", false),
        ("eta", false),
        ("theta", false),
        ("h", false),
        ("mu", true),
        ("b", false),
    ])
    .unwrap()
}

fn p(a: &Arc<Alphabet>, text: &str) -> PolyTS {
    PolyTS::parse_in(text, a).unwrap()
}

fn v(a: &Arc<Alphabet>, name: &str) -> Scalar {
    a.var(name).unwrap()
}

fn generic_spec(a: &Arc<Alphabet>) -> OmegaSpec {
    OmegaSpec::new(v(a, "lambda"), v(a, "alpha"), HPoly::linear(v(a, "xi"), v(a, "eta"))).unwrap()
}

#[test]
fn scalar_arithmetic() {
    let a = alphabet();
    let (l, xi, eta) = (v(&a, "lambda"), v(&a, "xi"), v(&a, "eta"));
    assert_eq!(&Scalar::ratio(1, 2) + &Scalar::ratio(1, 3), Scalar::ratio(5, 6));
    assert!((&l + &-&l).is_zero());
    let l2 = l.pow(2).unwrap();
    let sum = &(&xi * &l2) + &(&eta * &l2);
    assert_eq!(sum.term_count(), 2);
    assert_eq!(sum, &(&xi + &eta) * &l2);
    assert_eq!(&Scalar::ratio(2, 3) * &Scalar::ratio(3, 4), Scalar::ratio(1, 2));
    assert_eq!(&l.pow(-1).unwrap() * &l, Scalar::one());
    assert_eq!(&(&xi - &eta) * &(&xi + &eta), &(&xi * &xi) - &(&eta * &eta));
}

#[test]
fn scalar_division() {
    let a = alphabet();
    let (l, al, xi, eta) = (v(&a, "lambda"), v(&a, "alpha"), v(&a, "xi"), v(&a, "eta"));
    assert_eq!(Scalar::ratio(5, 6).divide_exact(&Scalar::ratio(1, 3)).unwrap(), Scalar::ratio(5, 2));
    let num = (&(&l.pow(3).unwrap() * &(&al * &al)) * &(&xi * &xi)).mul_int(24);
    assert_eq!(num.divide_exact(&l.pow(3).unwrap()).unwrap(), (&(&al * &al) * &(&xi * &xi)).mul_int(24));
    // ξ is not invertible, so (ξ+η)/ξ has no Laurent quotient.
    assert!(matches!((&xi + &eta).divide_exact(&xi), Err(ScalarError::NotInvertible(_))));
    assert!(matches!(xi.divide_exact(&(&xi + &eta)), Err(ScalarError::NotMonomial(_))));
}

#[test]
fn scalar_substitution() {
    let a = alphabet();
    let (l, al, xi) = (v(&a, "lambda"), v(&a, "alpha"), v(&a, "xi"));
    let bind: BTreeMap<String, Rational> =
        [("lambda", rat(2, 1)), ("alpha", rat(1, 1)), ("xi", rat(3, 1))].into_iter().map(|(k, x)| (k.into(), x)).collect();
    let x = (&(&l * &(&al * &al)) * &(&xi * &xi)).mul_int(24);
    assert_eq!(x.substitute_params(&bind).unwrap(), Scalar::int(432));
    assert_eq!(Scalar::zero().substitute_params(&bind).unwrap(), Scalar::zero());
    let half: BTreeMap<String, Rational> = [("lambda".to_string(), rat(1, 2))].into();
    assert_eq!(l.pow(-2).unwrap().substitute_params(&half).unwrap(), Scalar::int(4));
}

#[test]
fn polynomial_arithmetic() {
    let a = alphabet();
    assert_eq!(PolyTS::t().checked_mul(&PolyTS::s()).unwrap(), p(&a, "t*s"));
    assert_eq!(p(&a, "s - 1").checked_mul(&p(&a, "s + 1")).unwrap(), p(&a, "s^2 - 1"));
    assert_eq!(p(&a, "xi*t").checked_mul(&p(&a, "xi*t")).unwrap(), p(&a, "xi^2*t^2"));
    assert_eq!(p(&a, "t^3*s").d_dt(), p(&a, "3*t^2*s"));
    assert!(p(&a, "s^2").d_dt().is_zero());
    assert_eq!(p(&a, "xi*t^2 + eta*t").d_dt(), p(&a, "2*xi*t + eta"));
    assert_eq!(p(&a, "s^2").shift_s(1), p(&a, "s^2 - 2*s + 1"));
    assert_eq!(PolyTS::t().shift_s(7), PolyTS::t());
    assert_eq!(PolyTS::s().shift_s(-2), p(&a, "s + 2"));
}

#[test]
fn f_and_g_operators() {
    let a = alphabet();
    let spec = generic_spec(&a);
    let al = v(&a, "alpha");
    assert_eq!(op_f(&PolyTS::one(), &spec.h, &al), p(&a, "xi"));
    assert_eq!(op_g(&PolyTS::one(), &spec.h, &al), p(&a, "xi*t + xi*alpha + eta"));
    assert!(op_f(&PolyTS::zero(), &spec.h, &al).is_zero());
    assert!(op_g(&PolyTS::zero(), &spec.h, &al).is_zero());
    let h2 = HPoly::new(vec![Scalar::zero(), Scalar::zero(), Scalar::one()]);
    assert_eq!(op_f(&PolyTS::t(), &h2, &al), p(&a, "t^2 + alpha*t - 1"));
    assert!(closed_form_check(&spec, 12).is_empty());
}

#[test]
fn brackets_and_normal_order() {
    let a = alphabet();
    let th = v(&a, "theta");
    let expect = |terms: &[(&[i64], Scalar)]| {
        UElement::from_vector(Vector::from_terms(terms.iter().map(|(w, c)| (PbwWord::sorted(w.to_vec()), c.clone()))))
    };
    assert_eq!(bracket(1, -1, &th), expect(&[(&[0], Scalar::int(-2))]));
    assert_eq!(bracket(2, -2, &th), expect(&[(&[0], Scalar::int(-4)), (&[], th.mul_rational(&rat(1, 2)))]));
    assert_eq!(bracket(0, 5, &th), expect(&[(&[5], Scalar::int(5))]));
    assert_eq!(normal_order_indices(&[1, -1], &th), expect(&[(&[-1, 1], Scalar::one()), (&[0], Scalar::int(-2))]));
    assert_eq!(
        normal_order_indices(&[2, -2], &th),
        expect(&[(&[-2, 2], Scalar::one()), (&[0], Scalar::int(-4)), (&[], th.mul_rational(&rat(1, 2)))])
    );
    assert_eq!(normal_order_indices(&[-3, -1, 2], &th), expect(&[(&[-3, -1, 2], Scalar::one())]));
    let with_c = Word(vec![Generator::D(1), Generator::C, Generator::D(-1)]);
    assert_eq!(normal_order(&with_c, &th), normal_order_indices(&[1, -1], &th).scale(&th));
}

#[test]
fn omega_actions() {
    let a = alphabet();
    let om = OmegaModule::new(generic_spec(&a));
    let x = p(&a, "eta*t^2*s^3 + t");
    assert_eq!(om.act_poly(0, &x), x.mul_s());
    assert_eq!(om.act_poly(1, &PolyTS::one()), p(&a, "lambda*(s + xi*t + eta)"));
    assert_eq!(om.act_poly(1, &PolyTS::s()), p(&a, "lambda*(s - 1)*(s + xi*t + eta)"));
    let lz = OmegaLZModule::new(OmegaLZSpec::new(v(&a, "mu"), v(&a, "b"), 1).unwrap());
    let sv = |text: &str| OmegaLZModule::from_poly(&p(&a, text));
    assert_eq!(lz.act(0, &sv("s^2")).unwrap(), sv("s^3"));
    assert_eq!(lz.act(1, &sv("1")).unwrap(), sv("mu*(s + b)"));
    assert_eq!(lz.act(-1, &sv("s")).unwrap(), sv("mu^-1*(s - b)*(s + 1)"));
    assert!(bracket_check(&om, 1, -1, p(&a, "t^2*s").as_vector()).unwrap());
    assert!(bracket_check(&om, 3, 3, &x.clone().into_vector()).unwrap());
    assert!(bracket_check(&lz, 2, -2, &sv("s^3")).unwrap());
}

#[test]
fn omega_is_not_locally_finite() {
    let om = OmegaModule::new(OmegaSpec::new(Scalar::int(2), Scalar::int(1), HPoly::linear(Scalar::int(3), Scalar::int(1))).unwrap());
    for n in [-1, 0, 1, 2] {
        assert_eq!(omega::iterate_rank(&om, n, PolyTS::one().as_vector(), 5).unwrap(), 6, "n = {n}");
    }
}

#[test]
fn whittaker_and_verma() {
    let a = alphabet();
    let (a1, a2) = (v(&a, "alpha"), v(&a, "xi"));
    let spec = WhittakerSpec::new(1, vec![a1.clone(), a2.clone()], v(&a, "theta")).unwrap();
    let w = WhittakerModule::new(spec, 4);
    let one = Vector::basis(PbwWord::empty());
    assert_eq!(w.act(1, &one).unwrap(), one.scale(&a1));
    assert_eq!(w.act(2, &one).unwrap(), one.scale(&a2));
    assert!(w.act(3, &one).unwrap().is_zero());
    let h = v(&a, "h");
    let verma = WhittakerModule::new(WhittakerSpec::verma(h.clone(), v(&a, "theta")), 6);
    let dm1 = Vector::basis(PbwWord::sorted(vec![-1]));
    assert_eq!(verma.act(1, &dm1).unwrap(), one.scale(&h.mul_int(-2)));
    assert_eq!(verma.act(0, &dm1).unwrap(), dm1.scale(&(&h - &Scalar::one())));
    assert_eq!(verma_level_basis(0), vec![PbwWord::empty()]);
    assert_eq!(verma_level_basis(3).len(), 3);
    assert!(verma_level_basis(3).contains(&PbwWord::sorted(vec![-1, -2])));
    assert_eq!(verma_level_basis(5).len(), 7);
}

fn b_spec() -> BModuleSpec {
    BModuleSpec::new(Scalar::int(2), 1, Scalar::ratio(1, 3), HPoly::linear(Scalar::int(3), Scalar::int(-2)), vec![Scalar::int(5), Scalar::int(7)])
        .unwrap()
}

#[test]
fn b_module_examples() {
    let spec = b_spec();
    let b = BModule::new(spec.clone());
    let (g1, f1) = (b.fg().g(&PolyTS::one()), b.fg().f(&PolyTS::one()));
    // k = n + 1: λ^{n+1}(G(1) − (2n+1)αF(1)) + (a_{n+1} − λ a_n)
    let expected = (g1 - f1.scale(&spec.alpha.mul_int(3))).scale(&Scalar::int(4)) + PolyTS::constant(Scalar::int(7 - 2 * 5));
    assert_eq!(b.act(2, &PolyTS::one()).unwrap(), expected);
    assert!(b.act(3, &PolyTS::zero()).unwrap().is_zero());
    let alpha0 = BModuleSpec::new(Scalar::int(2), 1, Scalar::zero(), HPoly::linear(Scalar::int(3), Scalar::int(-2)), vec![Scalar::int(5), Scalar::int(7)]).unwrap();
    let b0 = BModule::new(alpha0);
    for k in 2..=5 {
        let image = b0.act(k, &PolyTS::monomial(2, 0, Scalar::one())).unwrap();
        assert!(image.terms().all(|(m, _)| m.t >= 2));
    }
}

#[test]
fn induced_module_examples() {
    let ind = InducedModule::new(b_spec(), Scalar::ratio(1, 2), 16);
    let one = IndTag { word: PbwWord::empty(), t: 0 };
    assert_eq!(ind_basis(1, IndCaps { level: 0, len: 0, t_deg: 0 }), vec![one.clone()]);
    assert_eq!(ind_basis(1, IndCaps { level: 0, len: 2, t_deg: 1 }).len(), 12);
    let t2 = IndTag { word: PbwWord::empty(), t: 2 };
    assert_eq!(ind.theorem52_map(&t2).unwrap(), tensor_pure(&PolyTS::monomial(2, 0, Scalar::one()), &Vector::basis(PbwWord::empty())));
    let d1sq = IndTag { word: PbwWord::sorted(vec![1, 1]), t: 1 };
    let image = ind.theorem52_map(&d1sq).unwrap();
    // λ^{n k_n} = 2^2
    assert_eq!(image.coeff(&(Mono::new(1, 2), PbwWord::empty())), Scalar::int(4));
    let report = ind.leading_term_order_check(IndCaps { level: 2, len: 2, t_deg: 2 }).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.rank, Some(report.tags));
    for j in 2..=4 {
        for i in 0..=3 {
            let (l, r) = ind.observation_sides(j, i).unwrap();
            assert_eq!(l, r);
        }
    }
}

#[test]
fn tensor_examples() {
    let a = alphabet();
    let h = v(&a, "h");
    let om = OmegaModule::new(generic_spec(&a));
    let t = Tensor::new(om.clone(), Factor::Whittaker(WhittakerModule::new(WhittakerSpec::verma(h.clone(), v(&a, "theta")), 5)));
    let vh = Vector::basis(PbwWord::empty());
    let w = tensor_pure(&PolyTS::one(), &vh);
    assert_eq!(t.act(0, &w).unwrap(), &tensor_pure(&PolyTS::s(), &vh) + &w.scale(&h));
    let f = p(&a, "t^2*s + eta");
    let x = tensor_pure(&f, &vh);
    assert_eq!(t.act(3, &x).unwrap(), tensor_pure(&om.act_poly(3, &f), &vh));
    let y = tensor_pure(&p(&a, "s^2"), &Vector::basis(PbwWord::sorted(vec![-1])));
    assert_eq!(t.act(-1, &(&x + &y)).unwrap(), &t.act(-1, &x).unwrap() + &t.act(-1, &y).unwrap());
}

#[test]
fn omega_operator_examples() {
    let a = alphabet();
    let spec = generic_spec(&a);
    let om = OmegaModule::new(spec.clone());
    for (l, m) in [(0, 0), (2, -1), (-2, 3)] {
        assert!(omega_apply(&om, OmegaWordOp::new(5, l, m), p(&a, "t^2*s").as_vector()).unwrap().is_zero());
        let four = PolyTS::from_vector(omega_apply(&om, OmegaWordOp::new(4, l, m), PolyTS::one().as_vector()).unwrap());
        let expected = (&spec.lambda.pow(l).unwrap() * &(&(&spec.alpha * &spec.alpha) * &(&spec.h.xi() * &spec.h.xi()))).mul_int(24);
        assert_eq!(four, PolyTS::constant(expected));
    }
    let lz = OmegaLZModule::new(OmegaLZSpec::new(v(&a, "mu"), v(&a, "b"), 1).unwrap());
    assert!(omega_apply(&lz, OmegaWordOp::new(3, 4, -1), &Vector::basis(2)).unwrap().is_zero());
    assert_eq!(binomial_vanish(3, 2), rat(0, 1));
    assert_eq!(binomial_vanish(4, 4), rat(24, 1));
    assert_eq!(binomial_vanish(1, 0), rat(0, 1));
}

#[test]
fn extraction_examples() {
    let om = OmegaModule::new(OmegaSpec::new(Scalar::int(3), Scalar::ratio(2, 3), HPoly::linear(Scalar::int(2), Scalar::int(1))).unwrap());
    let factors = [
        Factor::Whittaker(WhittakerModule::new(WhittakerSpec::verma(Scalar::int(4), Scalar::int(1)), 8)),
        Factor::Whittaker(WhittakerModule::new(WhittakerSpec::new(1, vec![Scalar::int(2), Scalar::int(-1)], Scalar::zero()).unwrap(), 8)),
    ];
    for factor in factors {
        let t = Tensor::new(om.clone(), factor);
        let a0 = PolyTS::parse("t^2 - 3*t", &|_| None).unwrap();
        let vv = Vector::basis(PbwWord::sorted(vec![-1]));
        let w = tensor_pure(&a0, &vv);
        let alpha = Scalar::ratio(2, 3);
        assert_eq!(prop31_extract(&t, 0, &w, None).unwrap(), tensor_pure(&a0.mul_s(), &vv));
        assert_eq!(prop31_extract(&t, 2, &w, None).unwrap(), tensor_pure(&om.fg().f(&a0).scale(&-alpha), &vv));
        let w2 = &tensor_pure(&PolyTS::parse("t*s^2 + s - 1", &|_| None).unwrap(), &vv)
            + &tensor_pure(&PolyTS::parse("t^2*s", &|_| None).unwrap(), &Vector::basis(PbwWord::empty()));
        for j in 0..=4 {
            assert_eq!(prop31_extract(&t, j, &w2, None).unwrap(), prop31_display(&om, j, &w2), "j = {j}");
        }
    }
}

#[test]
fn gn_examples() {
    let zero = build_gn(&Scalar::zero(), 12);
    assert!(zero.b.iter().skip(1).all(Scalar::is_zero));
    assert_eq!(zero.g[7], PolyTS::monomial(7, 0, Scalar::one()));
    let one = build_gn(&Scalar::one(), 13);
    assert_eq!(one.b[..5], [1, 0, 1, 2, 9].map(Scalar::int));
    assert_eq!(one.g[2], PolyTS::parse("t^2 + 1", &|_| None).unwrap());
    assert!(gn_identity_check(&zero.clone(), 11).passed());
    assert!(gn_identity_check(&one, 12).passed());
    let d = alphabet().var("eta").unwrap();
    assert!(gn_identity_check(&build_gn(&d, 13), 12).passed());
    assert!(inverse_family_check(&d, 8));
}

#[test]
fn phi_examples() {
    let s = |l: i64, al: i64, xi: i64, eta: i64| OmegaSpec::new(Scalar::int(l), Scalar::int(al), HPoly::linear(Scalar::int(xi), Scalar::int(eta))).unwrap();
    let same = IsoWitness::new(s(3, 2, 5, 1), s(3, 2, 5, 1), 4).unwrap();
    assert!(verify_phi(&same, 3, 4, (-3, 3), false).unwrap().passed());
    let iso = IsoWitness::new(s(3, 1, 2, 0), s(3, 2, 1, 5), 4).unwrap();
    assert!(verify_phi(&iso, 3, 4, (-3, 3), false).unwrap().passed());
    let bad = IsoWitness::new(s(3, 1, 2, 0), s(3, 3, 1, 5), 4).unwrap();
    assert!(matches!(verify_phi(&bad, 3, 4, (-3, 3), false), Err(PhiError::CriterionFailed(_))));
    assert!(!verify_phi(&bad, 3, 4, (-3, 3), true).unwrap().failures.is_empty());
}

#[test]
fn generic_phi() {
    let a = Alphabet::new([("lambda", true), ("alpha", true), ("xi", true), ("eta1", false), ("eta2", false)]).unwrap();
    let x = |n: &str| a.var(n).unwrap();
    // α_2 = αξ, ξ_2 = 1 keeps α_1ξ_1 = α_2ξ_2 with every symbol free
    let source = OmegaSpec::new(x("lambda"), x("alpha"), HPoly::linear(x("xi"), x("eta1"))).unwrap();
    let target = OmegaSpec::new(x("lambda"), &x("alpha") * &x("xi"), HPoly::linear(Scalar::one(), x("eta2"))).unwrap();
    let iso = IsoWitness::new(source, target, 3).unwrap();
    let report = verify_phi(&iso, 2, 3, (-2, 2), false).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
}

#[test]
fn probes_are_deterministic() {
    let spec = OmegaSpec::new(Scalar::int(2), Scalar::int(1), HPoly::linear(Scalar::int(3), Scalar::int(1))).unwrap();
    let window = ProbeWindow { t_max: 4, s_max: 3, grade_max: 0, m_window: (-2, 2) };
    let seed = PolyTS::monomial(2, 1, Scalar::one());
    let first = irreducibility_probe_omega(&spec, &seed, window).unwrap();
    assert!(first.filled);
    assert_eq!(first, irreducibility_probe_omega(&spec, &seed, window).unwrap());
    let pure = tensor_pure(&PolyTS::one(), &Vector::basis(PbwWord::empty()));
    let verma = Factor::Whittaker(WhittakerModule::new(WhittakerSpec::verma(Scalar::int(1), Scalar::int(2)), 8));
    let tw = ProbeWindow { t_max: 1, s_max: 1, grade_max: 2, m_window: (-2, 2) };
    let r = tensor_irreducibility_probe(&spec, verma, &pure, tw).unwrap();
    assert!(r.filled);
    assert_eq!(r.pipeline, vec!["reached (1) ⊗ 1".to_string()]);
}
