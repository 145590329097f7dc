//! Command-line companion to the core model crate: configuration parsing,
//! parameter sweeps over (j, delta, temperature), CSV/JSON/SVG emission,
//! single-point reports, and fixture-based regression checks.

pub mod config;
pub mod emit;
pub mod error;
pub mod fixtures;
pub mod report;
pub mod svg;
pub mod sweep;
