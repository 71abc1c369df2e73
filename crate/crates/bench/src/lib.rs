//! Fixtures shared by the kernel benchmarks.

use std::sync::Arc;

use vircalc::{Alphabet, Factor, HPoly, OmegaSpec, Scalar, WhittakerModule, WhittakerSpec};

pub fn alphabet() -> Arc<Alphabet> {
    Alphabet::new([("lambda", true), ("alpha", false), ("xi", false), ("eta", false), ("theta", false)]).expect("valid symbols")
}

/// Ω(λ,α,ξt+η) with every parameter symbolic.
pub fn generic_omega(a: &Arc<Alphabet>) -> OmegaSpec {
    let v = |n: &str| a.var(n).expect("declared");
    OmegaSpec::new(v("lambda"), v("alpha"), HPoly::linear(v("xi"), v("eta"))).expect("λ is invertible")
}

/// Ω(2,1,3t+1).
pub fn concrete_omega() -> OmegaSpec {
    OmegaSpec::new(Scalar::int(2), Scalar::int(1), HPoly::linear(Scalar::int(3), Scalar::int(1))).expect("λ ≠ 0")
}

/// Verma module with `h = 2`, `θ = 1/2`.
pub fn verma(grade_cap: i64) -> Factor {
    Factor::Whittaker(WhittakerModule::new(WhittakerSpec::verma(Scalar::int(2), Scalar::ratio(1, 2)), grade_cap))
}
