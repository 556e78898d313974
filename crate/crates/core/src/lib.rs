pub mod binaryforms;
pub mod error;
pub mod lattice;
pub mod lp;
pub mod matrix;
pub mod number;
pub mod planecurves;
pub mod poly;
pub mod kempfness;
pub mod rep;
pub mod stability;

pub use error::{Error, Result};
