//! Cohomology of cyclic groups from the 2-periodic resolution. Used as an
//! oracle for the bar complex.

use super::module::{norm_matrix, GModule};
use super::{CohomologyError, CohomologyResult, Method};
use crate::lattice::{cokernel, kernel_basis, solve_matrix, FGAbelianGroup, IntegerMatrix, LatticeError};

/// `H^0 = M^G`, `H^{2k} = M^G / N M` (k ≥ 1), `H^{2k+1} = ker N / (t − 1) M`,
/// with `t` the action of element 1 and `N = Σ t^k`.
pub fn cyclic_cohomology_oracle(m: usize, module: &GModule, n: usize) -> Result<CohomologyResult, CohomologyError> {
    let g = module.group();
    if g.order() != m || m == 0 || (0..m).any(|k| g.mul(1 % m, k) != (k + 1) % m) {
        return Err(CohomologyError::NotCyclic);
    }
    let r = module.rank();
    let t_minus_1 = module.action(1 % m).sub(&IntegerMatrix::identity(r));
    let norm = norm_matrix(module);
    let invariants = kernel_basis(&t_minus_1);
    let group = if n == 0 {
        FGAbelianGroup::free(invariants.cols())
    } else if n.is_multiple_of(2) {
        subquotient(&invariants, &norm)?
    } else {
        subquotient(&kernel_basis(&norm), &t_minus_1)?
    };
    Ok(CohomologyResult { degree: n, group, method: Method::CyclicPeriodic })
}

/// `span(outer) / span(inner)` for `inner ⊆ outer`.
fn subquotient(outer: &IntegerMatrix, inner: &IntegerMatrix) -> Result<FGAbelianGroup, CohomologyError> {
    let coords = solve_matrix(outer, inner).ok_or(LatticeError::Internal("image not contained in kernel"))?;
    Ok(cokernel(&coords))
}
