//! Asymptotic Betti numbers and torsion growth of abelian covers.
//!
//! The crate computes, for a finite complex (usually the presentation
//! 2-complex of a finitely presented group) with an epimorphism of its
//! fundamental group onto `Z^n ⊕ T`:
//!
//! * the limits `α_i` of normalised Betti numbers of finite abelian covers,
//!   realised as ranks over the fraction field of the Laurent ring;
//! * multivariable Alexander polynomials `Δ_i` and their Mahler measures,
//!   which govern the exponential growth of torsion in the covers;
//! * the finite covers themselves, with exact integral homology;
//! * the closed-form predictions for orbifold-effective epimorphisms.
//!
//! Scalar-dependent kernels are generic: exact elimination works over any
//! [`Field`] (prime fields, extension fields, rationals, cyclotomic fields)
//! and the numeric Mahler measure over any [`num_traits::Float`]. The
//! aliases below fix the concrete types used across the API.

pub mod complexes;
pub mod covers;
mod error;
pub mod gf;
pub mod invariants;
pub mod laurent;
pub mod mahler;
pub mod matrix;
pub mod presentations;
pub mod scalar;
pub mod zlinalg;

pub use error::{Error, Result};
pub use laurent::{CoeffDomain, LaurentPoly};
pub use matrix::Matrix;
pub use scalar::{Field, Fp};

/// Arbitrary-precision integers.
pub type Int = num_bigint::BigInt;
/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Floating-point type used by the numeric routines at the API surface.
pub type Real = f64;
/// Integer matrix (arbitrary precision entries).
pub type IntMatrix = Matrix<Int>;
/// Matrix of Laurent polynomials over a common domain.
pub type PolyMatrix = Matrix<LaurentPoly>;
