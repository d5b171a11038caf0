//! Exact symbolic engine for the cyclic sum formulas of multiple zeta values
//! and multiple zeta-star values, phrased on Hoffman's word algebra `Q<x,y>`.
//!
//! The crate is organised bottom-up:
//!
//! - [`free_algebra`]: words, polynomials, indices, subspace filters, necklaces.
//! - [`zeta_maps`]: the automorphisms `γ`, `γ⁻¹`, `φ`, `α`, the linear maps `d`, `α̃`,
//!   `L_x`, and the harmonic products `∗` and `∗̄`.
//! - [`cyclic_operators`]: the tensor space with its two bimodule actions, `ρₙ`,
//!   `ρ̄ₙ`, `∂ₙ`, and the Hoffman–Ohno cyclic derivatives.
//! - [`relation_engine`]: exact sparse linear algebra and the mechanised checks
//!   (span inclusions, the key proposition, the dimension table).
//! - [`numeric_zeta`]: truncated nested sums for `ζ` and `ζ*`.
//! - [`suites`]: named range sweeps over all of the above.

pub mod cyclic_operators;
pub mod error;
pub mod free_algebra;
pub mod numeric_zeta;
pub mod relation_engine;
pub mod suites;
pub mod zeta_maps;

pub use error::{Error, Result};
pub use free_algebra::{Index, Letter, Poly, Rational, Space, Word};
