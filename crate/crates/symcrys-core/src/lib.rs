//! Exact computational kernel for symmetric crystals.
//!
//! The crate builds, over the exact field `Q(q)`:
//!
//! * the negative half of a quantized enveloping algebra, realized as words
//!   in the generators modulo the radical of the Kashiwara bilinear form
//!   ([`uqminus`]);
//! * the highest-weight module `V_theta(lambda)` attached to a Dynkin-diagram
//!   involution `theta`, realized through its symmetric bilinear form
//!   ([`vtheta`]);
//! * a carrier-generic crystal engine: string decompositions, modified root
//!   operators, crystal lattices at `q = 0`, crystal graphs, bar involution,
//!   lower/upper global bases and balanced-triple checks ([`crystal`]);
//! * the affine Hecke algebra of type B acting on Laurent polynomials, with
//!   intertwiners and exhaustive relation verification ([`heckeb`]).
//!
//! All arithmetic is exact ([`scalars`]); conjecture-sized claims are checked
//! at bounded depth and failures are reported as structured data rather than
//! panics.

pub mod crystal;
pub mod heckeb;
pub mod rootdata;
pub mod scalars;
pub mod uqminus;
pub mod vtheta;

pub use scalars::{Int, LaurentPoly, MultiRatFunc, Rat, RatFunc};
