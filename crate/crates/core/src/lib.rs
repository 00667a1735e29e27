#![allow(clippy::needless_range_loop)]

pub mod bound_engine;
pub mod error;
pub mod exact;
pub mod lattice_search;
pub mod linalg;
pub mod number_fields;
pub mod picard;
pub mod serde_q;

pub use error::{Error, Result};
