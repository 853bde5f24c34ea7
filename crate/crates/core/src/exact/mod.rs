//! Exact arithmetic substrate: big integers and rationals, dense
//! polynomials over Q and F_p, dense rational matrices, Hermite normal form
//! and real root isolation.

pub mod fp;
pub mod hnf;
pub mod int;
pub mod matrix;
pub mod poly;
pub mod real;

pub use fp::{count_factors_fp, FpPoly};
pub use hnf::hnf;
pub use int::{squarefree_part, ExactInt, ExactRat};
pub use matrix::{charpoly, Matrix, Solution};
pub use poly::{poly_discriminant, Poly};
