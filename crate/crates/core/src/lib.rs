pub mod error;
pub mod numeric;
pub mod puiseux;
pub mod tropical;
pub mod instances;
pub mod ipm;
pub mod trop_path;

pub use error::{Error, Result};
pub mod lab;
