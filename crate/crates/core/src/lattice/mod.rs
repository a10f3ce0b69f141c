//! Exact integer linear algebra: Smith and Hermite normal forms, integer
//! kernels (optionally modulo per-row moduli) and quotient invariants of
//! lattices `M <= L <= Z^n`.

mod hermite;
mod kernel;
mod matrix;
mod quotient;
mod smith;

pub use hermite::{hermite_basis, HermiteBasis};
pub use kernel::{kernel_basis, kernel_mod};
pub use matrix::{ext_gcd, DecimalInt, IntMatrix};
pub(crate) use quotient::quotient_of_bases;
pub use quotient::{
    canonical_invariants, cokernel_invariants, quotient_invariants, sparse_cokernel_invariants,
    AbelianInvariants, SparseColumn,
};
pub(crate) use smith::smith_with_inverse;
pub use smith::{smith_diagonal, smith_normal_form, SmithForm};
