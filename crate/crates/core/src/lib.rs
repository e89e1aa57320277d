//! Exact computation of generalized ℓ-blocks and ℓ-defects.
//!
//! Everything here is exact: character values are integers or cyclotomic
//! integers, inner products are big rationals, and no floating point is used
//! anywhere. The crate is organized bottom-up:
//!
//! - [`arith`]: π-parts, cyclotomic polynomials, and the cyclotomic integer
//!   ring ℤ[ω] in its group-ring representation.
//! - [`partitions`]: hooks, β-sets, the ℓ-abacus, core/quotient/weight.
//! - [`symmetric`]: conjugacy classes and exact character tables of S_n via
//!   the Murnaghan–Nakayama rule.
//! - [`blocks`]: the generic block engine over any [`blocks::GroupModel`]:
//!   contributions, closed class sets, block partitions, defects.
//! - [`wreath`]: classes, characters and regular elements of B ≀ S_w for a
//!   small base group B.
//! - [`normalizer`]: the holomorph N = ℤ_ℓ ⋊ (ℤ/ℓ)^× and the Sylow-normalizer
//!   model (N ≀ S_w) × S_r.
//! - [`verify`]: theorem-checking sweeps pairing the definitional
//!   computations with closed-form statements.

pub mod arith;
pub mod blocks;
pub mod error;
pub mod normalizer;
pub mod partitions;
pub mod symmetric;
pub mod verify;
pub mod wreath;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
