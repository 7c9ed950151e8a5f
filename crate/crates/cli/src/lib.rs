//! Front end for `spbw`: instance files, polynomial literals, commands and reports.

pub mod commands;
pub mod instance;
pub mod literal;
pub mod report;

pub use commands::{run, Command, Options, Outcome};
