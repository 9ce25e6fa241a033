//! Numerics for the induced symplectic Ginibre ensemble near its inner edge:
//! finite-N Pfaffian correlations, the bulk edge limits, gap probabilities
//! and a Metropolis sampler.

pub mod error;
pub mod finite_kernel;
pub mod gap;
pub mod limit_kernels;
pub mod model;
pub mod pfaffian;
pub mod quad;
pub mod sampler;
pub mod scaledcx;
pub mod special;

pub use error::{Error, Result};
pub use scaledcx::ScaledComplex;
