//! Exact integer matrices and lattices: Hermite and Smith normal forms,
//! saturated integer kernels, and lattice comparisons.

mod lattice;
mod matrix;
mod normal_form;
pub mod rational;

pub use lattice::{image_is_torsion_free, kernel_modulo, lattice_ops, IntLattice, LatticeComparison};
pub use matrix::IntMatrix;
pub use normal_form::{extended_gcd, hermite_normal_form, kernel_basis, rank, smith_normal_form, SmithForm};
