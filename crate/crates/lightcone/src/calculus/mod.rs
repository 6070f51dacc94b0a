//! Differentiation, quadrature and ODE kernels shared by every module.

pub mod fd;
pub mod generic;
pub mod jet;
pub mod ode;
pub mod quadrature;

pub use generic::{CxJet, MatJet, RealJet};
pub use jet::{seed_vars, CJet, Carrier, Elementary, Jet2, Jet3, Ring, Scale};
pub use ode::{integrate_ode, OdeSpec};
pub use quadrature::{integrate_polyline, integrate_real, integrate_segment, QuadratureSpec};
