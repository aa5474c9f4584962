pub mod config;
pub mod error;
pub mod mfs;
pub mod perm;
pub mod poly;
pub mod recurrences;
pub mod series;
pub mod store;
pub mod suite;

pub use error::{Error, Result};
