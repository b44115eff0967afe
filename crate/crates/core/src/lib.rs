//! Exact noncommutative differential forms.
//!
//! Words over point letters `x_i` and differential letters `y_i = dx_i`, the
//! differential and homotopy operator, vector fields with their contractions
//! and Lie derivatives, normal ordering in quotient algebras (Weyl algebras,
//! Q-spaces, enveloping algebras of Lie algebras with differential complexes),
//! and seeded property suites that check the identities of the calculus.

#![allow(clippy::needless_range_loop)]

pub mod calculus;
pub mod cartan;
pub mod error;
pub mod expr;
pub mod forms;
pub mod liecomplex;
pub mod qspace;
pub mod quantum;
pub mod report;
pub mod rewrite;
pub mod sample;
pub mod scalar;
pub mod suites;

pub use calculus::{
    a_t, differential, ext_differential, ext_mul, homotopy_check, homotopy_i, poincare_primitive, ExtendedForm,
};
pub use cartan::{apply, bracket, cartan_residual, contract, d_contract, Derivation};
pub use error::{Error, Result};
pub use expr::{parse, print};
pub use forms::{bigrade, form_mul, Form, Gen, GenKind, Signature, Word};
pub use rewrite::{check_d_compatibility, check_local_confluence, RewriteSystem, Strategy};
pub use scalar::{Param, ParamTable, Scalar};
