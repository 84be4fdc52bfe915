pub mod barycenter;
pub mod cli;
pub mod ergodic;
pub mod error;
pub mod spaces;
pub mod transport;

pub use error::{Error, Result};
