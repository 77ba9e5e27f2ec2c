//! Command-line interface and document formats for the tropical
//! intersection library: JSON schemas for cycles, functions, and integer
//! affine maps, an SVG plotter for plane cycles, and the `tropint` binary's
//! command dispatch.

pub mod commands;
pub mod doc;
pub mod plot;

pub use commands::run_command;
