//! Exact scalar arithmetic.
//!
//! Everything downstream of this module computes over the field of rational
//! functions in one indeterminate `q` with rational coefficients (crystal and
//! quantum-group computations) or in two indeterminates `p0`, `p1` (the Hecke
//! module). All arithmetic is exact: coefficients are arbitrary-precision
//! rationals and every value is kept in a canonical reduced form, so equality
//! is structural comparison.

pub mod laurent;
pub mod linalg;
pub mod multivar;
pub mod quantum;
pub mod ratfunc;

use thiserror::Error;

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

pub use laurent::LaurentPoly;
pub use linalg::{invert, kernel_basis, mat_vec, rank, solve, Field, LinearSolution, SolveError};
pub use multivar::{LaurentPoly2, MultiRatFunc};
pub use quantum::{quantum_binomial, quantum_factorial, quantum_integer};
pub use ratfunc::RatFunc;

/// Errors raised by scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = 0 (order {order})")]
    PoleAtZero { order: i64 },
    #[error("pole at q = 1")]
    PoleAtOne,
    #[error("quantum integer undefined for negative argument {arg}")]
    NegativeQuantumArg { arg: i64 },
}

pub(crate) fn rat_zero() -> Rat {
    <Rat as num_traits::Zero>::zero()
}

pub(crate) fn rat_one() -> Rat {
    <Rat as num_traits::One>::one()
}

pub(crate) fn rat_from(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}
