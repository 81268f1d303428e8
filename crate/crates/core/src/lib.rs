//! Exact local p-adic machinery: Lubin-Tate formal groups, the operator Θ,
//! stable functions and their Mellin transforms, local L/ε/zeta factors,
//! a finite-level torus period, and Coleman primitives on the rigid torus.
//!
//! Every computation is generic over the coefficient ring ([`arith::Ring`]) and
//! runs either over exact rationals or over `Z/p^N` with tracked precision.

pub mod arith;
pub mod coleman;
pub mod error;
pub mod global_toy;
pub mod local_factors;
pub mod lubin_tate;
pub mod mellin;
pub mod wald_local;

pub use error::{ArithError, KernelError, Result};
