pub mod cli;
pub mod error;
pub mod euclid;
pub mod extract;
pub mod group;
pub mod hjdegree;
pub mod limits;
pub mod magnitude;
pub mod oracle;
pub mod words;

pub use error::{Error, Result};
pub use limits::Limits;
pub use magnitude::Magnitude;
