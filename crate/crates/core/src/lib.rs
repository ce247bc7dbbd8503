//! Plane-wave dispersion and band-gap analysis for the relaxed linear
//! micromorphic continuum.
//!
//! The pipeline runs from [`material::MaterialParameters`] through the
//! characteristic scales, the longitudinal/transverse/uncoupled dispersion
//! branches, and finally an analytic and a numeric band-gap report.

pub mod bandgap;
pub mod cli;
pub mod config;
pub mod cubic;
pub mod dispersion;
pub mod error;
pub mod exec;
pub mod material;
pub mod output;
pub mod units;

pub use error::Error;
pub use exec::Execution;
