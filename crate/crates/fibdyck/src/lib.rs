//! Symbolic dynamics of the Fibonacci-Dyck shift.
//!
//! The library covers bracket-matching reduction in the Dyck inverse monoid
//! D2, enumeration and multiplier classification of periodic points, the
//! circular codes of the shift with their rewriting bijections, exact
//! rational zeta-function series, and a decision procedure that compares an
//! irreducible shift of finite type against the embedding conditions.

pub mod cache;
pub mod codes;
pub mod config;
pub mod core_shift;
pub mod embed_check;
pub mod error;
pub mod eta_maps;
pub mod periodic;
pub mod series;

pub use error::{Error, Result};
