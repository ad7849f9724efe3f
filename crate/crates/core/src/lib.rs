//! Exact computer algebra for Gamma-algebras and alternative algebras
//! containing 2x2 matrix units.
//!
//! Everything is computed over Q or a prime field with exact arithmetic.
//! The crate is organised bottom-up: scalars and polynomials, algebras given
//! by structure constants, Gamma-algebras and their envelopes, Plucker
//! straightening, and normal forms in free Gamma-algebras.

pub mod algebra;
pub mod coordinatization;
pub mod error;
pub mod free_gamma;
pub mod gamma;
pub mod grassmann;
pub mod linalg;
pub mod poly;
pub mod scalar;

pub use algebra::{
    associator, builtin, check_identity, multiply, parse_builtin, AlgebraElement, AlgebraFile, BuiltinSpec,
    ElementJson, IdentityKind, IdentityOutcome, IdentityReport, StructureAlgebra,
};
pub use coordinatization::{
    envelope_b42, gamma_to_m2, phi_iso, recover_morphism, transport_morphism, BracketModule, GammaEnvelope,
};
pub use error::{Error, Result};
pub use free_gamma::{
    corollary1_envelope, embedding_oracle, fg_dimensions, fg_evaluate, fg_multiply, fg_normal_form, FgExpr, FreeGamma,
    FreeGammaElement,
};
pub use gamma::{gamma_of_commutative, grassmann_envelope, verify_gamma_conditions, GammaAlgebra};
pub use grassmann::{
    enumerate_basis, enumerate_basis_filtered, enumerate_im_basis, expand, odd_dimension, reduce_odd, straighten,
    SElement, StandardMonomial,
};
pub use poly::{MonomialOrder, NcPolynomial, Polynomial};
pub use scalar::{FieldSpec, Scalar};
