pub mod analysis;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod riccati;
pub mod system;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::{Mat, SymMat};
pub use tolerance::Tolerances;
