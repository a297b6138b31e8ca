//! Characters of compact groups and of Howe-dual representations, evaluated on
//! compact Cartan tori and cross-checked against independent oracles.
//!
//! The crate is organised bottom-up:
//!
//! - [`rootsys`]: classical root systems and their Weyl groups as signed permutations.
//! - [`torus`]: weights, torus points, monomials and Weyl denominators.
//! - [`laurent`]: exact formal Laurent sums and chamber-directed geometric expansion.
//! - [`weylchar`]: Weyl character and dimension formulas, a Gelfand–Tsetlin oracle,
//!   torus quadrature.
//! - [`howe`]: the four compact dual pairs and their combinatorial data.
//! - [`thetachar`]: characters of the dual representations, numerator forms,
//!   closed forms for `U(1)`, normalizing constants and K-type expansion.
//! - [`orbits`]: Fourier transforms of coadjoint orbits and their unitary-group oracles.

pub mod error;
pub mod howe;
pub mod laurent;
pub mod orbits;
pub mod rootsys;
pub mod thetachar;
pub mod torus;
pub mod weylchar;

pub use error::{Error, Result};

/// Exact rational scalar used for weights and coefficients.
pub type Rational = num_rational::Rational64;

/// Complex value returned by numeric evaluators; always finite.
pub type ComplexValue = num_complex::Complex64;
