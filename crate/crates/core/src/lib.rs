pub mod approx;
pub mod bitset;
pub mod clique;
pub mod count;
pub mod encoding;
pub mod error;
pub mod extremal;
pub mod guards;
pub mod partition;
pub mod report;
pub mod scalar;
pub mod setfam;
pub mod spread;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{BigCount, Ratio};
