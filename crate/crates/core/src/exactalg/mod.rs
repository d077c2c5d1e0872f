//! Exact arithmetic: integer polynomials, their fraction field, sparse
//! matrices and a linear solver over it, zero testing, and the Laurent
//! monomials of the K-theoretic computations.

pub mod field;
pub mod gcd;
pub mod identity;
pub mod laurent;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod sparse;

pub use field::FieldElem;
pub use identity::{identity_check, CheckMode, IdentityOutcome};
pub use laurent::{ExponentQuadratic, LaurentMonomial};
pub use parse::parse_field_elem;
pub use poly::{Monomial, MultiPoly, Var, MAX_N};
pub use scalar::Scalar;
pub use sparse::{solve_linear, SolveOutcome, SparseMatrix};

/// Exact rationals.
pub type Rational = num_rational::BigRational;
