//! Finitely presented abelian groups `Z^n / span(R)` and the homomorphisms
//! between them. Subgroups are handled as lattices in `Z^n` that contain the
//! relation lattice.

use num_bigint::BigInt;

use super::group::FGAbelianGroup;
use super::matrix::IntegerMatrix;
use super::ops::{cokernel, hermite_basis, kernel_basis, same_lattice, solve_matrix};
use super::LatticeError;

/// `Z^generators / column-span(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGroup {
    generators: usize,
    relations: IntegerMatrix,
}

impl PresentedGroup {
    pub fn new(relations: IntegerMatrix) -> Self {
        PresentedGroup { generators: relations.rows(), relations }
    }

    pub fn free(rank: usize) -> Self {
        Self::new(IntegerMatrix::zeros(rank, 0))
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    /// Presentation of an abstract group in invariant-factor form.
    pub fn from_structure(g: &FGAbelianGroup) -> Self {
        let k = g.invariant_factors().len();
        let n = g.free_rank() + k;
        let mut rel = IntegerMatrix::zeros(n, k);
        for (i, d) in g.invariant_factors().iter().enumerate() {
            rel.set(g.free_rank() + i, i, d.clone());
        }
        Self::new(rel)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntegerMatrix {
        &self.relations
    }

    pub fn structure(&self) -> FGAbelianGroup {
        cokernel(&self.relations)
    }

    /// True iff `v ∈ Z^n` represents the zero class.
    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        super::ops::lattice_contains(&self.relations, v)
    }
}

/// A homomorphism of presented groups induced by an integer matrix on
/// generators (`target.generators × source.generators`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: PresentedGroup,
    target: PresentedGroup,
    matrix: IntegerMatrix,
}

impl GroupHom {
    /// Validates that relations of the source land in the relations of the target.
    pub fn new(source: PresentedGroup, target: PresentedGroup, matrix: IntegerMatrix) -> Result<Self, LatticeError> {
        if matrix.rows() != target.generators || matrix.cols() != source.generators {
            return Err(LatticeError::ShapeMismatch);
        }
        let images = &matrix * &source.relations;
        if solve_matrix(&target.relations, &images).is_none() {
            return Err(LatticeError::NotWellDefined);
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn zero(source: PresentedGroup, target: PresentedGroup) -> Self {
        let matrix = IntegerMatrix::zeros(target.generators, source.generators);
        GroupHom { source, target, matrix }
    }

    pub fn identity(group: PresentedGroup) -> Self {
        let matrix = IntegerMatrix::identity(group.generators);
        GroupHom { source: group.clone(), target: group, matrix }
    }

    pub fn source(&self) -> &PresentedGroup {
        &self.source
    }

    pub fn target(&self) -> &PresentedGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom, LatticeError> {
        if next.source != self.target {
            return Err(LatticeError::ShapeMismatch);
        }
        Ok(GroupHom { source: self.source.clone(), target: next.target.clone(), matrix: &next.matrix * &self.matrix })
    }

    /// The image as a lattice in `Z^target.generators` containing the target relations.
    pub fn image_lattice(&self) -> IntegerMatrix {
        hermite_basis(&self.matrix.hstack(&self.target.relations))
    }

    /// The kernel as a lattice in `Z^source.generators` containing the source relations.
    pub fn kernel_lattice(&self) -> IntegerMatrix {
        let n = self.source.generators;
        let stacked = self.matrix.hstack(&self.target.relations);
        let k = kernel_basis(&stacked);
        hermite_basis(&k.select_rows(0..n))
    }

    /// Inclusion of the kernel.
    pub fn kernel(&self) -> GroupHom {
        let basis = self.kernel_lattice();
        let rel = solve_matrix(&basis, &self.source.relations).expect("kernel lattice contains the relations");
        let ker = PresentedGroup::new(rel);
        GroupHom { source: ker, target: self.source.clone(), matrix: basis }
    }

    /// Projection onto the cokernel.
    pub fn cokernel(&self) -> GroupHom {
        let q = PresentedGroup::new(self.target.relations.hstack(&self.matrix));
        GroupHom { source: self.target.clone(), target: q, matrix: IntegerMatrix::identity(self.target.generators) }
    }

    pub fn is_zero(&self) -> bool {
        solve_matrix(&self.target.relations, &self.matrix).is_some()
    }

    pub fn is_injective(&self) -> bool {
        same_lattice(&self.kernel_lattice(), &self.source.relations)
    }

    pub fn is_surjective(&self) -> bool {
        same_lattice(&self.image_lattice(), &IntegerMatrix::identity(self.target.generators))
    }

    /// True iff the two maps agree as homomorphisms (their difference is zero).
    pub fn agrees_with(&self, other: &GroupHom) -> bool {
        self.source == other.source
            && self.target == other.target
            && solve_matrix(&self.target.relations, &self.matrix.sub(&other.matrix)).is_some()
    }
}

/// `im(f) = ker(g)` inside the middle group.
pub fn is_exact_at(f: &GroupHom, g: &GroupHom) -> bool {
    f.target == g.source && same_lattice(&f.image_lattice(), &g.kernel_lattice())
}
