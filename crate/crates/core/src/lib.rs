//! Cayley graphs over finitely generated abelian groups: exact chromatic
//! numbers, discrete fundamental groups computed as relation-lattice
//! quotients, discrete winding numbers and the first homology of the
//! neighborhood complex.

pub mod cayley;
pub mod chromatic;
pub mod error;
pub mod exec;
pub mod graph;
pub mod group;
pub mod harness;
pub mod lattice;
pub mod ncomplex;
pub mod pi1;
pub mod walks;

pub use error::{Error, Result};
pub use exec::Exec;
pub use group::{FgAbelianGroup, GroupElement, Subgroup};
pub use lattice::{AbelianInvariants, IntMatrix};
