pub mod codes;
pub mod cwg;
pub mod cyc;
pub(crate) mod enumerate;
pub mod error;
pub mod gf;
pub mod invariants;
pub mod json;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod reproduce;

pub use enumerate::DEFAULT_CODEWORD_BUDGET;
pub use error::{Error, Result};
