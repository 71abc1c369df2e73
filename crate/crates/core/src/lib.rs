//! Exact computations with modules over the Virasoro algebra.
//!
//! Scalars are rationals or Laurent polynomials in declared parameters.
//! Everything downstream is exact; there is no floating point anywhere.

pub mod algebra;
pub mod analysis;
pub mod induced;
pub mod linear;
pub mod module;
pub mod omega;
pub mod poly;
pub mod scalar;
pub mod signature;
pub mod tensor;
pub mod whittaker;

pub use linear::{interpolate, rank, LinearError, Span, Vector};
pub use scalar::{binomial, rat, Alphabet, Mode, ParamSymbol, Rational, Scalar, ScalarError};
pub use poly::{op_f, op_g, FgOperators, HPoly, Mono, ParseError, PolyTS};
pub use algebra::{bracket, normal_order, normal_order_indices, Generator, PbwWord, UElement, Word};
pub use module::{bracket_check, ModuleError, VirModule};
pub use omega::{OmegaLZModule, OmegaLZSpec, OmegaModule, OmegaSpec};
pub use tensor::{omega_apply, OmegaTensor, OmegaWordOp, Tensor, TensorElement};
pub use whittaker::{verma_level_basis, Factor, TrivialModule, WhittakerModule, WhittakerSpec};
pub use induced::{ind_basis, BModule, BModuleSpec, IndCaps, IndTag, InducedModule};
pub use signature::{omega_signature, SigWindow, SignatureFamily, SignatureRecord, WindowPlan};
pub use analysis::gn::{build_gn, GnFamily};
pub use analysis::phi::{verify_phi, IsoWitness, PhiError, PhiReport};
pub use analysis::probe::{irreducibility_probe_bmodule, irreducibility_probe_omega, tensor_irreducibility_probe, ProbeReport, ProbeWindow};
