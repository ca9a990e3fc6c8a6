//! Exact harmonic analysis on the Laurent series field K = F_q((t)).
//!
//! Everything here works with finitely supported step functions whose values
//! are complex combinations of roots of unity scaled by powers of q, so the
//! Fourier transform, Littlewood-Paley blocks and Besov norms are computed
//! without discretization error: the only floating point involved is the
//! final complex arithmetic.

pub mod besov;
pub mod error;
pub mod field;
pub mod fourier;
pub mod gf;
pub mod operators;
pub mod step;
pub mod textio;

pub use besov::{besov_norm, lp_decompose, BesovParams};
pub use error::{Error, Result};
pub use field::{CosetId, FieldElement, FieldParams};
pub use fourier::{fourier, inverse_fourier, RadialSymbol};
pub use step::{BallSpec, Side, StepFunction};
