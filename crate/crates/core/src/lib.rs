//! Exact-arithmetic workbench core for additive combinatorics at desk
//! scale: finite sets in abelian ambients, convolutions and Lp norms over
//! big rationals, the control functional and its certificates, the
//! constructive decomposition pipelines, incidence counting, example
//! families, and an exact exponent calculus.
//!
//! Floating point appears only in report rendering and in log–log slope
//! fits; every asserted inequality is decided over the rationals (or their
//! real multiquadratic extensions, see [`exact`]).

pub mod ambient;
pub mod control;
pub mod decompose;
pub mod error;
pub mod exact;
pub mod exponents;
pub mod families;
pub mod incidence;
pub mod rng;

pub use error::{Error, Result};
