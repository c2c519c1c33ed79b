pub mod batch;
pub mod cli;
pub mod corpus;
pub mod epseq;
pub mod error;
pub mod ktheory;
pub mod linalg;
mod num_serde;
pub mod oracle;
pub mod par;
pub mod presentation;
pub mod relations;
pub mod report;
pub mod ring;
pub mod spectrum;

pub use error::{Error, Result};
