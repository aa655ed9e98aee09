//! Casimir force between real metals at nonzero temperature.

// `!(x > 0.0)` is how the argument checks reject NaN; index loops read
// better than iterator chains in the small dense solves.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod asymptotics;
pub mod dielectric;
pub mod error;
pub mod lifshitz;
pub mod perturbative;
pub mod quadrature;
pub mod quantities;
pub mod roughness;
pub mod specfun;

pub use asymptotics::{Method, Regime};
pub use error::{CasimirError, Result};
pub use lifshitz::{ForceBreakdown, QuadratureSettings, SumForm};
pub use quantities::{EvaluationPoint, Geometry, MaterialModel, Mode, ModeSplit, PhysicalConstants};
pub use roughness::Profile;
