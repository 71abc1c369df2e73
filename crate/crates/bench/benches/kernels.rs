use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use vircalc::analysis::gn::gn_identity_check;
use vircalc::module::bracket_sides;
use vircalc::tensor::tensor_pure;
use vircalc::{
    build_gn, irreducibility_probe_omega, normal_order_indices, omega_apply, Mono, OmegaModule, OmegaWordOp, PbwWord,
    PolyTS, ProbeWindow, Scalar, SignatureFamily, Tensor, Vector, VirModule, WindowPlan,
};
use vircalc_bench::{alphabet, concrete_omega, generic_omega, verma};

fn algebra(c: &mut Criterion) {
    let theta = alphabet().var("theta").unwrap();
    c.bench_function("normal_order/6 generators", |b| {
        b.iter(|| normal_order_indices(black_box(&[3, -2, 1, -1, 2, -3]), &theta))
    });
}

fn omega(c: &mut Criterion) {
    let a = alphabet();
    let om = OmegaModule::new(generic_omega(&a));
    let x = PolyTS::monomial(3, 3, Scalar::one());
    c.bench_function("omega/generic d_3 on t^3 s^3", |b| b.iter(|| om.act_poly(black_box(3), &x)));
    c.bench_function("omega/generic bracket [d_-2, d_5]", |b| {
        b.iter(|| bracket_sides(&om, -2, 5, x.as_vector()).unwrap())
    });
    c.bench_function("omega/generic ω^(4)", |b| {
        b.iter(|| omega_apply(&om, OmegaWordOp::new(4, 2, -1), x.as_vector()).unwrap())
    });
}

fn tensor(c: &mut Criterion) {
    let t = Tensor::new(OmegaModule::new(concrete_omega()), verma(12));
    let w = tensor_pure(&PolyTS::monomial(2, 1, Scalar::one()), &Vector::basis(PbwWord::sorted(vec![-2, -1])));
    c.bench_function("tensor/d_-3 on t^2 s ⊗ d_-2 d_-1", |b| b.iter(|| t.act(black_box(-3), &w).unwrap()));
    let x = Vector::basis((Mono::new(1, 1), PbwWord::sorted(vec![-1])));
    c.bench_function("tensor/bracket [d_-3, d_3]", |b| b.iter(|| bracket_sides(&t, -3, 3, &x).unwrap()));
}

fn analysis(c: &mut Criterion) {
    let d = alphabet().var("eta").unwrap();
    c.bench_function("gn/symbolic n ≤ 12", |b| b.iter(|| gn_identity_check(&build_gn(&d, 13), 12)));
    let fam = SignatureFamily::Omega(concrete_omega());
    c.bench_function("signature/omega r ≤ 6", |b| b.iter(|| fam.signature(6, WindowPlan::AboveK { span: 2 }).unwrap()));
    let window = ProbeWindow { t_max: 4, s_max: 3, grade_max: 0, m_window: (-2, 2) };
    let seed = PolyTS::monomial(2, 1, Scalar::one());
    let spec = concrete_omega();
    c.bench_function("probe/omega window 5×4", |b| b.iter(|| irreducibility_probe_omega(&spec, &seed, window).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = algebra, omega, tensor, analysis
}
criterion_main!(benches);
