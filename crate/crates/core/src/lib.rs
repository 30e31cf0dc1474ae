pub mod bitwords;
pub mod error;
pub mod flipseq;
pub mod hamcycle;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
