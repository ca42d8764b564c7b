//! Table-producing front end for `hyperscatter`: argument parsing, command
//! execution, CSV/JSON rendering and the `verify` suites.

pub mod commands;
pub mod config;
pub mod table;
pub mod verify;

pub use commands::run_command;
pub use config::{parse_args, RunConfig};
pub use table::Table;
