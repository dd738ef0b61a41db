//! Field and polynomial arithmetic.

pub mod field;
pub mod linalg;
pub mod matrix;
pub(crate) mod ntt;
pub mod poly;
pub mod tree;

pub use field::{Fe, FieldConfig};
pub use linalg::{solve_linear, LinearSolution};
pub use matrix::{matrix_mul, PolyMatrix};
pub use poly::*;
pub use tree::{hermite_interpolate, interpolate, multipoint_eval, vanishing_poly, HermiteInterpolator, SubproductTree};
