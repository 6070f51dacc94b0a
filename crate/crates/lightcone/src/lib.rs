//! Zero mean curvature surfaces in the light cone Q³₊.

pub mod calculus;
pub mod catalog;
pub mod classifier;
pub mod cli;
pub mod cone;
pub mod curves;
pub mod error;
pub mod surfaces;
pub mod weierstrass;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
