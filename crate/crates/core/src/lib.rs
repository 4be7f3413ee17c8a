//! Exact word-algebra machinery around the balanced quasi-shuffle algebra.
//!
//! The crate is organised bottom-up:
//!
//! - [`words`] and [`poly`]: words over the alphabets `X = {x0, x1}`,
//!   `Y = {y1, y2, ...}` and `B = {b0, b1, ...}`, rational polynomials,
//!   tensors and truncated non-commutative power series.
//! - [`hopf`]: the shuffle, stuffle, SZ-stuffle and balanced quasi-shuffle
//!   products, their dual coproducts, the antipode and grouplike tests.
//! - [`maps`]: the involution `tau`, the canonical projections and the
//!   embeddings between the three word algebras.
//! - [`regularization`]: balanced, shuffle and stuffle regularization.
//! - [`linalg`]: exact rational row reduction and graded relation spaces.
//! - [`gf`]: the quotient algebra `G^f = (Q<B>, *_b) / Rel_{tau,0}`.
//! - [`zf`]: formal multiple zeta values `Z^f` and the relation spaces of the
//!   extended double shuffle relations.
//! - [`schemes`]: membership tests for `DM` and `BM`, the embedding `theta`,
//!   the projection `p`, the Ihara product and the linearized spaces.
//! - [`qseries`]: exact truncated q-expansions used to cross-check the
//!   formal layer.
//! - [`verify`]: the named verification suites shared by the CLI and tests.

pub mod error;
pub mod gf;
pub mod hopf;
pub mod json;
pub mod linalg;
pub mod maps;
pub mod poly;
pub mod qseries;
pub mod rational;
pub mod regularization;
pub mod schemes;
pub mod verify;
pub mod words;
pub mod zf;

pub use error::{Error, Result};
pub use hopf::DiamondRule;
pub use poly::{Coeff, Poly, TensorPoly, TruncatedSeries};
pub use rational::Rational;
pub use words::{Alphabet, Word};
