//! Finite groups, integral G-modules and their cohomology in degrees 0 to 3,
//! together with the Brauer quotient of a binorm torus.

mod bar;
mod cyclic;
mod group;
mod module;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

pub use bar::{bar_cohomology, bar_cohomology_with, coboundary_matrix, cochain_dim, restriction_cochain_map, MAX_DEGREE};
pub use cyclic::cyclic_cohomology_oracle;
pub use group::{abelianization, abelianization_order, commutator_subgroup_order, group_from_spec, FiniteGroup};
pub use module::{induced_module, norm_matrix, ones_vector, quotient_module, GModule, QuotientModule};

use crate::lattice::{FGAbelianGroup, IntegerMatrix, LatticeError};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("BadGroupSpec: {0}")]
    BadGroupSpec(String),
    #[error("bad multiplication table: {0}")]
    BadGroupTable(String),
    #[error("OrderLimitExceeded: group order exceeds the limit {limit}")]
    OrderLimitExceeded { limit: usize },
    #[error("NotASubgroup: element ids are not closed under products and inverses")]
    NotASubgroup,
    #[error("bad module: {0}")]
    BadModule(String),
    #[error("NotGStable: sublattice is not stable under the group")]
    NotGStable,
    #[error("TorsionQuotient: quotient lattice has torsion")]
    TorsionQuotient,
    #[error("SizeLimitExceeded: cochain dimension {required} exceeds the limit {limit}")]
    SizeLimitExceeded { required: u64, limit: usize },
    #[error("NotCyclic: group is not cyclic:m with generator 1")]
    NotCyclic,
    #[error("degree {0} out of range 0..=3")]
    DegreeOutOfRange(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Bar,
    CyclicPeriodic,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Bar => "bar",
            Method::CyclicPeriodic => "cyclic-periodic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    pub degree: usize,
    pub group: FGAbelianGroup,
    pub method: Method,
}

/// `H^i(G, Z[G/H]) ≅ H^i(H, Z)`, both sides by the bar complex.
pub fn shapiro_check(g: &FiniteGroup, h: &[usize], i: usize, limits: &Limits) -> Result<bool, CohomologyError> {
    let (sub, _) = g.subgroup(h)?;
    let lhs = bar_cohomology_with(&induced_module(g, h)?, i, limits)?;
    let rhs = bar_cohomology_with(&GModule::trivial(sub, 1), i, limits)?;
    Ok(lhs.group == rhs.group)
}

/// `⊕_{i,j} Z/gcd(a_i, b_j)` over the invariant factors of two finite groups.
pub fn kunneth_prediction(a: &FGAbelianGroup, b: &FGAbelianGroup) -> FGAbelianGroup {
    let orders: Vec<BigInt> =
        a.invariant_factors().iter().flat_map(|x| b.invariant_factors().iter().map(move |y| x.gcd(y))).collect();
    FGAbelianGroup::new(0, orders)
}

#[derive(Clone, Debug)]
pub struct BinormReport {
    pub g1_ab: FGAbelianGroup,
    pub g2_ab: FGAbelianGroup,
    /// `H^2(G_1 × G_2, T̂)`.
    pub h2: FGAbelianGroup,
    /// `gcd(|G_1^ab|, |G_2^ab|) = 1`.
    pub vanishing_predicted: bool,
    /// `Hom(G_1^ab, Hom(G_2^ab, Q/Z))`.
    pub kunneth: FGAbelianGroup,
    pub agrees_with_kunneth: bool,
    /// `vanishing_predicted` implies `h2 = 0`.
    pub prediction_holds: bool,
}

/// The character module `T̂ = (Z[G_1] ⊕ Z[G_2]) / Z` of the binorm torus,
/// over `G = G_1 × G_2` acting through the two projections.
pub fn binorm_character_module(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<QuotientModule, CohomologyError> {
    let g = FiniteGroup::direct_product(g1, g2);
    let (r1, r2) = (GModule::regular(g1.clone()), GModule::regular(g2.clone()));
    let n2 = g2.order();
    let action: Vec<IntegerMatrix> =
        g.elements().map(|x| r1.action(x / n2).direct_sum(r2.action(x % n2))).collect();
    let permutation = GModule::new(g, g1.order() + n2, action)?;
    quotient_module(&permutation, &ones_vector(g1.order() + n2))
}

/// `Br_1 / Br_0 ≅ H^2(G_1 × G_2, T̂)` for a binorm torus with linearly
/// disjoint splitting fields.
pub fn binorm_brauer_quotient(g1: &FiniteGroup, g2: &FiniteGroup, limits: &Limits) -> Result<BinormReport, CohomologyError> {
    let t_hat = binorm_character_module(g1, g2)?;
    let h2 = bar_cohomology_with(&t_hat.module, 2, limits)?.group;
    let g1_ab = abelianization(g1);
    let g2_ab = abelianization(g2);
    let vanishing_predicted = g1_ab.torsion_order().gcd(&g2_ab.torsion_order()) == BigInt::from(1);
    let kunneth = kunneth_prediction(&g1_ab, &g2_ab);
    let agrees_with_kunneth = kunneth == h2;
    let prediction_holds = !vanishing_predicted || h2.is_trivial();
    Ok(BinormReport { g1_ab, g2_ab, h2, vanishing_predicted, kunneth, agrees_with_kunneth, prediction_holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> FiniteGroup {
        group_from_spec(s, &Limits::default()).unwrap()
    }

    #[test]
    fn shapiro_examples() {
        let l = Limits::default();
        let s3 = spec("sym:3");
        let a3: Vec<usize> = s3.elements().filter(|&x| s3.mul(x, s3.mul(x, x)) == 0).collect();
        assert!(shapiro_check(&s3, &a3, 2, &l).unwrap());
        let (sub, _) = s3.subgroup(&a3).unwrap();
        assert_eq!(bar_cohomology(&GModule::trivial(sub, 1), 2).unwrap().group, FGAbelianGroup::cyclic(3));
        let all: Vec<usize> = s3.elements().collect();
        for i in 0..3 {
            assert!(shapiro_check(&s3, &all, i, &l).unwrap());
        }
        assert!(shapiro_check(&spec("cyclic:4"), &[0, 2], 2, &l).unwrap());
        assert_eq!(shapiro_check(&s3, &[0, 3], 1, &l), Err(CohomologyError::NotASubgroup));
    }

    #[test]
    fn binorm_examples() {
        let l = Limits::default();
        let r = binorm_brauer_quotient(&spec("cyclic:2"), &spec("cyclic:3"), &l).unwrap();
        assert!(r.h2.is_trivial() && r.vanishing_predicted && r.agrees_with_kunneth);
        let r = binorm_brauer_quotient(&FiniteGroup::trivial(), &FiniteGroup::trivial(), &l).unwrap();
        assert!(r.h2.is_trivial());
        let r = binorm_brauer_quotient(&spec("cyclic:2"), &spec("cyclic:2"), &l).unwrap();
        assert_eq!(r.h2, FGAbelianGroup::cyclic(2));
        assert!(!r.vanishing_predicted && r.agrees_with_kunneth);
    }

    #[test]
    fn binorm_module_shape() {
        let t = binorm_character_module(&spec("cyclic:2"), &spec("cyclic:3")).unwrap();
        assert_eq!(t.module.rank(), 4);
        assert_eq!(t.module.group().order(), 6);
    }

    #[test]
    fn kunneth() {
        let a = FGAbelianGroup::new(0, [2, 4]);
        let b = FGAbelianGroup::new(0, [6]);
        assert_eq!(kunneth_prediction(&a, &b), FGAbelianGroup::new(0, [2, 2]));
        assert!(kunneth_prediction(&a, &FGAbelianGroup::trivial()).is_trivial());
    }
}
