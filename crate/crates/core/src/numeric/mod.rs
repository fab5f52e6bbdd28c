//! Floating-point evaluation and quadrature.

pub mod dd;
pub mod gamma;
pub mod mc;
pub mod quadrature;
pub mod validate;
pub mod weight;
