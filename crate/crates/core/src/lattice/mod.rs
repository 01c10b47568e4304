//! Exact integer lattice algebra: Smith normal form, kernels, cokernels,
//! saturation, presented abelian groups and the snake lemma.

mod group;
mod matrix;
mod modular;
mod ops;
pub mod oracle;
mod presented;
mod snake;
mod snf;
mod sparse;

pub use group::FGAbelianGroup;
pub use matrix::IntegerMatrix;
pub use modular::{modular_rank, SparseMatrix, RANK_PRIME};
pub use ops::{
    cokernel, hermite_basis, image_basis, kernel_basis, lattice_contains, same_lattice, saturation, solve,
    solve_matrix, torsion_descent_data, TorsionDescent,
};
pub use oracle::brute_force_cokernel_oracle;
pub use presented::{is_exact_at, GroupHom, PresentedGroup};
pub use snake::{snake_sequence, torsor_descent_diagram, ExactSequenceReport, SnakeDiagram};
pub use snf::{smith_diagonal, smith_normal_form, SnfDecomposition};
pub use sparse::sparse_smith_diagonal;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("divisor map has a nontrivial kernel (nonconstant invertible functions)")]
    NonInjectiveDiv,
    #[error("{row} row of the diagram is not exact")]
    NotExactRow { row: &'static str },
    #[error("{square} square of the diagram does not commute")]
    NonCommutingSquare { square: &'static str },
    #[error("matrix shapes do not match")]
    ShapeMismatch,
    #[error("matrix does not induce a well-defined homomorphism")]
    NotWellDefined,
    #[error("diagram chase failed: no lift exists")]
    ChaseFailed,
    #[error("oracle enumeration needs {cells} cells, limit is {limit}")]
    OracleTooLarge { cells: u64, limit: u64 },
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}
