//! Verification engine for the 33-ray Kochen-Specker sets of Peres and
//! Penrose and the three-parameter family that contains both.

pub mod catalog;
pub mod cnf;
pub mod commands;
pub mod error;
pub mod kscolor;
pub mod majorana;
pub mod orthograph;
pub mod rays;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
