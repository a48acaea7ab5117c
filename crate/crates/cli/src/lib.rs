// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: scenario files in, CSV and SVG out.

pub mod commands;
pub mod error;
pub mod output;
pub mod scenario_file;
pub mod svg;

pub use error::{CliError, Result};
