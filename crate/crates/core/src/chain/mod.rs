//! Exact linear algebra over the rationals and integers: graded maps, ranks,
//! Smith normal form, mapping cones and exact triangles.

pub mod complex;
pub mod cone;
pub mod graded;
pub mod matrix;
pub mod rank;
pub mod snf;
pub mod triangle;

pub use cone::{cone, ConeReport, Ring};
pub use graded::{GradedMap, GradedModule, Shift};
pub use matrix::{parse_fraction, Matrix, QMatrix, ZMatrix};
pub use rank::{rank_f2, rank_q, rank_z};
pub use snf::{smith_normal_form, SmithForm};
pub use triangle::{octahedral_verify, triangle_dims_consistent, OctahedralReport};

/// Exact rank of a graded map over the rationals.
pub fn rank(f: &GradedMap) -> usize {
    rank_q(f.matrix())
}
