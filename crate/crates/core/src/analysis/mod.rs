//! Verifications built on the module machinery: the isomorphism `φ` and
//! its `g_n` polynomials, and cyclic-on-window probes.

pub mod gn;
pub mod phi;
pub mod probe;
