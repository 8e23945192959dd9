//! Exact computations with logarithmic one-forms on projective space.
//!
//! Polynomials, differential forms and linear algebra are generic over a
//! [`Field`] context: [`Rationals`] for exact rational arithmetic and
//! [`PrimeField`] for fast arithmetic modulo a word-sized prime. The aliases
//! below fix the field for the common cases.

pub mod baselocus;
pub mod error;
pub mod field;
pub mod forms;
pub mod json;
pub mod linalg;
pub mod logarithmic;
pub mod poly;
pub mod singular;
pub mod tangent;

pub use baselocus::{enumerate_factorizations, leq, maximal_elements, membership_check, BaseLocusComponent, Factorization};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use forms::{Form, FormSpace, IndexSet};
pub use json::{FormJson, InstanceJson, PolyJson};
pub use linalg::Matrix;
pub use logarithmic::{identity_suite, mu, DegreeVector, IdentityReport, LogInstance};
pub use poly::{Monomial, Polynomial};
pub use singular::{hilbert_check, j2_presentation, projective_vanishing_decomposition, vanishing_decomposition, HilbertRow};
pub use tangent::{
    classify_balance, dmu_apply, dmu_matrix, perturbation_identity, stability_certificate, tangent_space, Direction,
    InstanceDigest, OneFormBasis, StabilityReport,
};

pub type QPoly = Polynomial<Rationals>;
pub type FpPoly = Polynomial<PrimeField>;
pub type QForm = Form<Rationals>;
pub type FpForm = Form<PrimeField>;
pub type QInstance = LogInstance<Rationals>;
pub type FpInstance = LogInstance<PrimeField>;
pub type QMatrix = Matrix<Rationals>;
pub type FpMatrix = Matrix<PrimeField>;
