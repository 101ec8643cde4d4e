//! Exact commutative-algebra kernel for closure-operation experiments:
//! sparse polynomials over `F_p` and the rationals, Gröbner bases with
//! explicit resource budgets, quotient-ring membership with witnesses,
//! Frobenius bracket powers with bounded tight-closure certificate search,
//! canonical axes rings with branch valuations, and reduction of rational
//! data modulo primes.
//!
//! All values are immutable after construction and all operations are pure
//! functions of their inputs; cached Gröbner bases are write-once.

pub mod axes;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod reduction;
pub mod ring;

pub use error::AlgebraError;
pub use field::{Coeff, FieldSpec};
pub use groebner::GroebnerConfig;
pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::{Ambient, Polynomial};
pub use ring::RingPresentation;
