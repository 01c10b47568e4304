//! Integral G-modules: free Z-modules with a matrix for every group element.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::One;

use super::group::FiniteGroup;
use super::CohomologyError;
use crate::lattice::{cokernel, smith_normal_form, solve_matrix, IntegerMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    group: FiniteGroup,
    rank: usize,
    action: Vec<IntegerMatrix>,
}

impl GModule {
    /// Checks that `action` is a homomorphism `G → GL_rank(Z)` on the full table.
    pub fn new(group: FiniteGroup, rank: usize, action: Vec<IntegerMatrix>) -> Result<Self, CohomologyError> {
        let bad = |msg: String| CohomologyError::BadModule(msg);
        if action.len() != group.order() {
            return Err(bad(format!("expected {} matrices, got {}", group.order(), action.len())));
        }
        if action.iter().any(|a| a.rows() != rank || a.cols() != rank) {
            return Err(bad(format!("action matrices must be {rank}×{rank}")));
        }
        if action[0] != IntegerMatrix::identity(rank) {
            return Err(bad("identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                if action[group.mul(g, h)] != &action[g] * &action[h] {
                    return Err(bad(format!("action({g}·{h}) ≠ action({g})·action({h})")));
                }
            }
        }
        Ok(GModule { group, rank, action })
    }

    /// Extends matrices given on `group.generator_ids()` to the whole group.
    pub fn from_generator_images(group: FiniteGroup, rank: usize, images: &[IntegerMatrix]) -> Result<Self, CohomologyError> {
        let gens = group.generator_ids().to_vec();
        if images.len() != gens.len() {
            return Err(CohomologyError::BadModule(format!("expected {} generator images", gens.len())));
        }
        let mut action: Vec<Option<IntegerMatrix>> = vec![None; group.order()];
        action[0] = Some(IntegerMatrix::identity(rank));
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&s, img) in gens.iter().zip(images) {
                let y = group.mul(x, s);
                if action[y].is_none() {
                    action[y] = Some(action[x].as_ref().expect("visited") * img);
                    queue.push_back(y);
                }
            }
        }
        let action = action
            .into_iter()
            .map(|a| a.ok_or_else(|| CohomologyError::BadModule("generators do not generate the group".into())))
            .collect::<Result<Vec<_>, _>>()?;
        GModule::new(group, rank, action)
    }

    /// `Z^rank` with trivial action.
    pub fn trivial(group: FiniteGroup, rank: usize) -> Self {
        let action = vec![IntegerMatrix::identity(rank); group.order()];
        GModule { group, rank, action }
    }

    /// The regular representation `Z[G]`.
    pub fn regular(group: FiniteGroup) -> Self {
        induced_module(&group, &[0]).expect("trivial subgroup")
    }

    /// Rank-1 module where generator `k` acts by `signs[k] ∈ {±1}`.
    pub fn sign(group: FiniteGroup, signs: &[i64]) -> Result<Self, CohomologyError> {
        if signs.iter().any(|s| s.abs() != 1) {
            return Err(CohomologyError::BadModule("signs must be ±1".into()));
        }
        let images: Vec<IntegerMatrix> = signs.iter().map(|&s| IntegerMatrix::from_i64(1, 1, &[s])).collect();
        GModule::from_generator_images(group, 1, &images)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntegerMatrix {
        &self.action[g]
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<Self, CohomologyError> {
        if self.group != other.group {
            return Err(CohomologyError::BadModule("direct sum of modules over different groups".into()));
        }
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(GModule { group: self.group.clone(), rank: self.rank + other.rank, action })
    }

    /// Restriction to a subgroup, given as returned by `FiniteGroup::subgroup`.
    pub fn restrict(&self, subgroup: &FiniteGroup, embedding: &[usize]) -> Self {
        let action = embedding.iter().map(|&g| self.action[g].clone()).collect();
        GModule { group: subgroup.clone(), rank: self.rank, action }
    }

    /// Pulls back along a group homomorphism `φ: H → G` given by images.
    pub fn pullback(&self, source: &FiniteGroup, images: &[usize]) -> Result<Self, CohomologyError> {
        let action = images.iter().map(|&g| self.action[g].clone()).collect();
        GModule::new(source.clone(), self.rank, action)
    }
}

/// `Z[G/H]` on left cosets `xH`, ordered by their smallest element id.
pub fn induced_module(g: &FiniteGroup, h: &[usize]) -> Result<GModule, CohomologyError> {
    if !g.is_subgroup(h) {
        return Err(CohomologyError::NotASubgroup);
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut count = 0;
    for x in g.elements() {
        if coset_of[x] == usize::MAX {
            for &y in h {
                coset_of[g.mul(x, y)] = count;
            }
            count += 1;
        }
    }
    let reps: Vec<usize> = (0..count).map(|c| coset_of.iter().position(|&k| k == c).expect("nonempty coset")).collect();
    let action = g
        .elements()
        .map(|s| {
            let mut m = IntegerMatrix::zeros(count, count);
            for (c, &x) in reps.iter().enumerate() {
                m.set(coset_of[g.mul(s, x)], c, BigInt::one());
            }
            m
        })
        .collect();
    GModule::new(g.clone(), count, action)
}

#[derive(Clone, Debug)]
pub struct QuotientModule {
    pub module: GModule,
    /// `(rank B − rank A) × rank B`, kills `A`.
    pub projection: IntegerMatrix,
    /// Basis of a complement of `A` in `B`; `projection · complement = I`.
    pub complement: IntegerMatrix,
}

/// `B / A` for a G-stable sublattice `A` (columns) with torsion-free quotient.
pub fn quotient_module(b: &GModule, a: &IntegerMatrix) -> Result<QuotientModule, CohomologyError> {
    if a.rows() != b.rank() {
        return Err(CohomologyError::BadModule("sublattice lives in the wrong rank".into()));
    }
    for g in b.group().elements() {
        if solve_matrix(a, &(b.action(g) * a)).is_none() {
            return Err(CohomologyError::NotGStable);
        }
    }
    if !cokernel(a).is_torsion_free() {
        return Err(CohomologyError::TorsionQuotient);
    }
    let snf = smith_normal_form(a);
    let (n, s) = (b.rank(), snf.rank);
    let projection = snf.u.select_rows(s..n);
    let complement = snf.u_inv.select_columns(s..n);
    debug_assert!((&projection * a).is_zero());
    let action = b.group().elements().map(|g| &(&projection * b.action(g)) * &complement).collect();
    let module = GModule::new(b.group().clone(), n - s, action)?;
    Ok(QuotientModule { module, projection, complement })
}

/// Sum of all group elements acting on `M`.
pub fn norm_matrix(m: &GModule) -> IntegerMatrix {
    m.group().elements().fold(IntegerMatrix::zeros(m.rank(), m.rank()), |acc, g| acc.add(m.action(g)))
}

/// The all-ones vector of `Z[G]`, fixed by every permutation action.
pub fn ones_vector(rank: usize) -> IntegerMatrix {
    IntegerMatrix::from_vec(rank, 1, vec![BigInt::one(); rank])
}
