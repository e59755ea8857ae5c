//! Workbench around `gallai-core`: canonical JSON file formats, DOT export,
//! and the `gallai-lab` command-line front end for reproducible, file-based
//! experiments.

pub mod cli;
pub mod dot;
pub mod formats;
