//! Scalar numerical building blocks: complete elliptic integrals, adaptive
//! quadrature and bracketed 1D minimization.

pub mod elliptic;
pub mod minimize;
pub mod quadrature;

pub use elliptic::{complete_e, complete_k};
pub use minimize::{brent_minimize, Minimum};
pub use quadrature::{integrate, Quadrature};
