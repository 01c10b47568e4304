use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d1 ⊕ … ⊕ Z/dk` in
/// invariant-factor form: `d1 | d2 | … | dk`, every `di ≥ 2`.
///
/// The representation is canonical, so `==` is isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FGAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FGAbelianGroup {
    /// Builds the group from a free rank and arbitrary cyclic orders.
    ///
    /// The orders need not form a divisibility chain; they are normalized.
    /// Orders equal to 1 are dropped, an order of 0 contributes a free summand,
    /// and signs are ignored.
    pub fn new<I>(free_rank: usize, cyclic_orders: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let mut free = free_rank;
        let mut orders: Vec<BigInt> = Vec::new();
        for d in cyclic_orders {
            let d: BigInt = d.into();
            if d.is_zero() {
                free += 1;
            } else {
                orders.push(d.abs());
            }
        }
        orders.sort();
        for i in 0..orders.len() {
            for j in i + 1..orders.len() {
                let g = orders[i].gcd(&orders[j]);
                let l = orders[i].lcm(&orders[j]);
                orders[i] = g;
                orders[j] = l;
            }
        }
        orders.retain(|d| !d.is_one());
        FGAbelianGroup { free_rank: free, invariant_factors: orders }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { free_rank: rank, invariant_factors: Vec::new() }
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::new(0, [order.into()])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Exponent of the torsion subgroup (1 when torsion free).
    pub fn torsion_exponent(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Exponent of the group; `None` when infinite.
    pub fn exponent(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_exponent())
    }

    /// The torsion subgroup.
    pub fn torsion(&self) -> Self {
        FGAbelianGroup { free_rank: 0, invariant_factors: self.invariant_factors.clone() }
    }

    /// Quotient by the torsion subgroup.
    pub fn torsion_free_part(&self) -> Self {
        Self::free(self.free_rank)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(
            self.free_rank + other.free_rank,
            self.invariant_factors.iter().chain(&other.invariant_factors).cloned(),
        )
    }

    /// Invariant factors as machine integers, when they fit.
    pub fn invariant_factors_u64(&self) -> Option<Vec<u64>> {
        self.invariant_factors.iter().map(|d| u64::try_from(d).ok()).collect()
    }
}

impl fmt::Display for FGAbelianGroup {
    /// `0`, `Z`, `Z^2`, `Z/2`, `Z ⊕ Z/2 ⊕ Z/6`, …
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_orders() {
        let g = FGAbelianGroup::new(0, [6, 4, 1]);
        assert_eq!(g.invariant_factors(), &[BigInt::from(2), BigInt::from(12)]);
        assert_eq!(FGAbelianGroup::new(0, [2, 3]), FGAbelianGroup::cyclic(6));
        assert_eq!(FGAbelianGroup::new(1, [0, 1]), FGAbelianGroup::free(2));
    }

    #[test]
    fn display() {
        assert_eq!(FGAbelianGroup::trivial().to_string(), "0");
        assert_eq!(FGAbelianGroup::free(1).to_string(), "Z");
        assert_eq!(FGAbelianGroup::new(0, [2, 2]).to_string(), "Z/2 ⊕ Z/2");
        assert_eq!(FGAbelianGroup::new(2, [3]).to_string(), "Z^2 ⊕ Z/3");
    }

    #[test]
    fn orders_and_exponents() {
        let g = FGAbelianGroup::new(0, [2, 4]);
        assert_eq!(g.order(), Some(BigInt::from(8)));
        assert_eq!(g.exponent(), Some(BigInt::from(4)));
        assert_eq!(FGAbelianGroup::free(1).order(), None);
        assert!(FGAbelianGroup::trivial().is_trivial());
    }
}
