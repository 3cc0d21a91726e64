//! Exact computations on the iterated Kapranov embedding
//! `Ω_n : M̄_{0,n+3} → ℙ¹ × ℙ² × ⋯ × ℙⁿ`.
//!
//! * [`exact`]: rationals, `ℙ¹` points, jets, Möbius maps, `Q(t)`.
//! * [`trees`]: stable leaf-labeled trees and the forgetting map.
//! * [`curves`]: marked curves, `ψ_i`, `Ω_n`, canonical forms, families.
//! * [`mr_ideal`]: the 2×2 minors cutting out the image.
//! * [`reconstruct`]: the inverse of `Ω_n` on its image.
//! * [`tangent`]: Zariski tangent spaces, by Jacobian and constructively.
//! * [`verify`]: the seeded randomized verification harness.

pub mod curves;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod mr_ideal;
pub mod reconstruct;
pub mod tangent;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
