//! Command-line front end: code files in, reports out.

pub mod codefile;
pub mod error;
pub mod report;
pub mod run;

pub use codefile::{load_code_file, CodeFile};
pub use error::{CliError, CliResult};
pub use report::{Format, Report};
pub use run::{run, synthesize_file, Command, Flags, Outcome, Output, Pipeline};
