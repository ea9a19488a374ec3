//! Exact computations of singular instanton homology dimensions for
//! instanton L-space knots from their Alexander polynomials, with the
//! homological-algebra checks (cones, exact triangles, Smith normal form)
//! the computation rests on.

pub mod chain;
pub mod cli;
pub mod error;
pub mod hf_model;
pub mod laurent;
mod num_json;
pub mod report;
pub mod selftest;
pub mod staircase;
pub mod torsion;

pub use error::{Error, Result};
