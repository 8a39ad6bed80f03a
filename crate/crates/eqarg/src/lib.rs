//! Command layer, file formats and gallery for the `eqarg` tool.

pub mod catalog;
pub mod commands;
pub mod dot;
pub mod gallery;
pub mod io;
pub mod parallel;
