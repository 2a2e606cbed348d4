//! Exact matrix factorizations of multivariate polynomials.
//!
//! A matrix factorization of a polynomial `f` is a pair of square matrices
//! `(phi, psi)` over the polynomial ring with `phi * psi = psi * phi = f * I`.
//! This crate builds and combines such factorizations with exact rational
//! arithmetic:
//!
//! - [`poly`]: sparse multivariate polynomials over arbitrary-precision
//!   rationals, in canonical form.
//! - [`matrix`]: dense matrices of polynomials with Kronecker product, direct
//!   sum and permutation support, including the perfect shuffle.
//! - [`factorization`]: the [`MatrixFactorization`] type with exact
//!   verification, and the inductive standard method.
//! - [`tensor`]: the additive tensor product (with its three rotated
//!   variants), the multiplicative tensor product (with its anti-diagonal
//!   variant), morphisms between factorizations, and permutation witnesses
//!   for commutativity, associativity and distributivity.
//! - [`expr`]: a parser for polynomials written in summand-reduced shape
//!   (monomials plus products of sums), classification and size prediction.
//! - [`reducer`]: the improved factorization algorithm that folds per-factor
//!   standard-method factorizations with the two tensor products, plus a
//!   method-comparison report and a random instance generator.
//! - [`schema`]: the JSON wire format for factorization files.
//!
//! All values are immutable once constructed and all operations are pure, so
//! everything here can be shared freely across threads.

pub mod expr;
pub mod factorization;
pub mod matrix;
pub mod poly;
pub mod reducer;
pub mod schema;
pub mod tensor;

pub use expr::{ParseError, SizePrediction, SummandForm};
pub use factorization::{FactorError, MatrixFactorization, VerifyReport};
pub use matrix::{MatrixError, PermutationMatrix, PolyMatrix};
pub use poly::{Exponents, Monomial, Polynomial};
pub use tensor::{Morphism, MultVariant, YoshinoVariant};

/// Parses an expression and expands it into a canonical [`Polynomial`].
pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    expr::parse(text).map(|sf| sf.expand())
}
