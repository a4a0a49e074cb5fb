pub mod census;
pub mod classify;
pub mod error;
pub mod field;
pub mod graph;
pub mod iso;
pub mod lemma2;
pub mod poly;

pub use error::{Error, Result};
