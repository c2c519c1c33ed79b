//! Exact integer linear algebra: Hermite and Smith forms with certificates,
//! integer kernels, cokernels and linear systems.

mod group;
mod hnf;
mod lattice;
mod matrix;
mod snf;

pub use group::FgAbelianGroup;
pub use hnf::{hermite, hnf, is_hermite, HermiteForm};
pub use lattice::{
    cokernel_invariants, kernel_basis, lattice_contains, rank, same_lattice, solve_linear,
    unit_vector,
};
pub use matrix::IntMatrix;
pub use snf::{is_smith, snf, SmithCertificate};
