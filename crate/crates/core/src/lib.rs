//! Exact computations around torsors, Picard groups and Brauer–Manin
//! obstructions: integer lattice algebra, toric fans, cohomology of finite
//! groups with integral coefficients, local symbols over the rationals, and
//! the multinorm and plane-conic examples built on them.

pub mod brauer;
pub mod cohomology;
pub mod fan;
pub mod lattice;
pub mod limits;
pub mod local;
pub mod multinorm;

pub use lattice::{FGAbelianGroup, IntegerMatrix};
