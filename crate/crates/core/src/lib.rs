//! Weyl groups, generic Iwahori-Hecke algebras, and counting the simple
//! modules of their specialisations.

pub mod error;
pub mod exactalg;
pub mod chartable;
pub mod cache;
pub mod counting;
pub mod engine;
pub mod export;
pub mod hecke;
pub mod meataxe;
pub mod rootsys;

pub use error::{Error, Result};
