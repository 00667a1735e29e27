//! Job specifications, command runners and the example harness behind the
//! `picardcm` binary.

pub mod examples;
pub mod input;
pub mod jobs;
pub mod verify;

pub use jobs::{error_json, run, BoundInput, Command, JobOutput, JobSpec, OutputFormat, Status, EXIT_VALIDATION};
