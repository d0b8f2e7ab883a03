pub mod document;
pub mod run;

pub use run::{run, Outcome, EXIT_INPUT, EXIT_OK, EXIT_PRECONDITION, EXIT_VIOLATION};
