pub mod apparatus;
pub mod error;
pub mod experiment;
pub mod fock;
pub mod hom;
pub mod quantum;
pub mod rng;

pub use error::{Error, Result};
