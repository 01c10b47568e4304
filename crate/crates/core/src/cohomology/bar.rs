//! Cohomology from the normalized bar resolution.
//!
//! `C^n(G, M)` is indexed by `n`-tuples of non-identity elements (mixed radix,
//! first entry most significant) times the coordinates of `M`. For `n ≥ 1`,
//! `H^n` is finite, so it equals the torsion of `C^n / im d^{n-1}`; the free
//! part is certified to vanish by comparing `rank d^n` mod a large prime with
//! the upper bound `dim C^n − rank d^{n-1}`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::group::FiniteGroup;
use super::module::GModule;
use super::{CohomologyError, CohomologyResult, Method};
use crate::lattice::{modular_rank, sparse_smith_diagonal, FGAbelianGroup, SparseMatrix, RANK_PRIME};
use crate::limits::Limits;

pub const MAX_DEGREE: usize = 3;

/// `(|G| − 1)^n · rank M`.
pub fn cochain_dim(g: &FiniteGroup, m: &GModule, n: usize) -> usize {
    (g.order() - 1).pow(n as u32) * m.rank()
}

/// Checks `|G|^n · rank M` against the configured cap.
pub fn check_size(m: &GModule, n: usize, limits: &Limits) -> Result<(), CohomologyError> {
    let required = (m.group().order() as u128).saturating_pow(n as u32).saturating_mul(m.rank() as u128);
    if required > limits.cochain_dim as u128 {
        return Err(CohomologyError::SizeLimitExceeded {
            required: required.min(u64::MAX as u128) as u64,
            limit: limits.cochain_dim,
        });
    }
    Ok(())
}

fn action_i64(m: &GModule) -> Vec<Vec<i64>> {
    m.group()
        .elements()
        .map(|g| m.action(g).entries().iter().map(|x| x.to_i64().expect("action entries fit in i64")).collect())
        .collect()
}

/// `d^n: C^n → C^{n+1}` as a sparse matrix with rows indexed by `C^{n+1}`:
///
/// `(df)(g_1..g_{n+1}) = g_1·f(g_2..) + Σ_i (−1)^i f(..g_i g_{i+1}..) + (−1)^{n+1} f(g_1..g_n)`,
/// dropping terms whose tuple contains the identity.
pub fn coboundary_matrix(m: &GModule, n: usize) -> SparseMatrix {
    let g = m.group();
    let b = g.order() - 1;
    let r = m.rank();
    let act = action_i64(m);
    let dim_n = b.pow(n as u32);
    let rows = b.pow(n as u32 + 1);
    let mut d = SparseMatrix::new(rows * r, dim_n * r);
    let mut digits = vec![0usize; n + 1];
    for idx in 0..rows {
        let mut rest = idx;
        for slot in digits.iter_mut().rev() {
            *slot = rest % b + 1;
            rest /= b;
        }
        // g_1 · f(g_2, …, g_{n+1})
        let tail = idx % dim_n;
        let a = &act[digits[0]];
        for k in 0..r {
            for l in 0..r {
                d.add(idx * r + k, tail * r + l, a[k * r + l]);
            }
        }
        for i in 1..=n {
            let h = g.mul(digits[i - 1], digits[i]);
            if h == 0 {
                continue;
            }
            let merged = digits[..i - 1].iter().chain([&h]).chain(&digits[i + 1..]).fold(0, |acc, &x| acc * b + x - 1);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for k in 0..r {
                d.add(idx * r + k, merged * r + k, sign);
            }
        }
        let head = idx / b;
        let sign = if (n + 1).is_multiple_of(2) { 1 } else { -1 };
        for k in 0..r {
            d.add(idx * r + k, head * r + k, sign);
        }
    }
    d
}

pub fn bar_cohomology(m: &GModule, n: usize) -> Result<CohomologyResult, CohomologyError> {
    bar_cohomology_with(m, n, &Limits::default())
}

pub fn bar_cohomology_with(m: &GModule, n: usize, limits: &Limits) -> Result<CohomologyResult, CohomologyError> {
    if n > MAX_DEGREE {
        return Err(CohomologyError::DegreeOutOfRange(n));
    }
    check_size(m, n, limits)?;
    let g = m.group();
    let group = if g.order() == 1 {
        if n == 0 {
            FGAbelianGroup::free(m.rank())
        } else {
            FGAbelianGroup::trivial()
        }
    } else if n == 0 {
        let d0 = coboundary_matrix(m, 0);
        let rank = sparse_smith_diagonal(&d0).len();
        FGAbelianGroup::free(m.rank() - rank)
    } else {
        let prev = sparse_smith_diagonal(&coboundary_matrix(m, n - 1));
        let upper = cochain_dim(g, m, n) - prev.len();
        let dn = coboundary_matrix(m, n);
        let mut rank = modular_rank(&dn, RANK_PRIME, Some(upper));
        if rank < upper {
            // rank mod p only bounds the rational rank from below.
            rank = sparse_smith_diagonal(&dn).len();
        }
        let torsion = prev.into_iter().filter(|x| !x.is_one());
        FGAbelianGroup::new(upper - rank, torsion.collect::<Vec<BigInt>>())
    };
    Ok(CohomologyResult { degree: n, group, method: Method::Bar })
}

/// Restriction of cochains `C^n(G, M) → C^n(H, M|_H)` along an embedding
/// `H → G` (ids as returned by `FiniteGroup::subgroup`).
pub fn restriction_cochain_map(m: &GModule, sub: &FiniteGroup, embedding: &[usize], n: usize) -> SparseMatrix {
    let bg = m.group().order() - 1;
    let bh = sub.order() - 1;
    let r = m.rank();
    let rows = bh.pow(n as u32);
    let mut out = SparseMatrix::new(rows * r, bg.pow(n as u32) * r);
    for idx in 0..rows {
        let mut rest = idx;
        let mut digits = vec![0usize; n];
        for slot in digits.iter_mut().rev() {
            *slot = rest % bh + 1;
            rest /= bh;
        }
        let target = digits.iter().fold(0, |acc, &h| acc * bg + embedding[h] - 1);
        for k in 0..r {
            out.add(idx * r + k, target * r + k, 1);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::group_from_spec;

    fn spec(s: &str) -> FiniteGroup {
        group_from_spec(s, &Limits::default()).unwrap()
    }

    fn h(m: &GModule, n: usize) -> FGAbelianGroup {
        bar_cohomology(m, n).unwrap().group
    }

    #[test]
    fn d_squared_is_zero() {
        for s in ["cyclic:3", "sym:3", "product:cyclic:2,cyclic:2"] {
            let g = spec(s);
            for m in [GModule::trivial(g.clone(), 1), GModule::regular(g.clone())] {
                for n in 0..2 {
                    let a = coboundary_matrix(&m, n).to_dense();
                    let b = coboundary_matrix(&m, n + 1).to_dense();
                    assert!((&b * &a).is_zero(), "{s} n={n}");
                }
            }
        }
    }

    #[test]
    fn trivial_coefficients() {
        for s in ["sym:3", "cyclic:4", "cyclic:2"] {
            let g = spec(s);
            let z = GModule::trivial(g.clone(), 1);
            assert_eq!(h(&z, 0), FGAbelianGroup::free(1));
            assert!(h(&z, 1).is_trivial(), "{s}");
        }
        assert_eq!(h(&GModule::trivial(spec("cyclic:2"), 1), 2), FGAbelianGroup::cyclic(2));
        assert_eq!(h(&GModule::trivial(spec("sym:3"), 1), 2), FGAbelianGroup::cyclic(2));
        let klein = GModule::trivial(spec("product:cyclic:2,cyclic:2"), 1);
        assert_eq!(h(&klein, 2), FGAbelianGroup::new(0, [2, 2]));
        // H^3(V_4, Z) = H^2(V_4, Q/Z) = Z/2.
        assert_eq!(h(&klein, 3), FGAbelianGroup::cyclic(2));
    }

    #[test]
    fn trivial_group() {
        let m = GModule::trivial(FiniteGroup::trivial(), 2);
        assert_eq!(h(&m, 0), FGAbelianGroup::free(2));
        assert!(h(&m, 2).is_trivial());
    }

    #[test]
    fn limits() {
        let m = GModule::regular(spec("sym:4"));
        assert!(matches!(bar_cohomology(&m, 3), Err(CohomologyError::SizeLimitExceeded { .. })));
        assert!(matches!(bar_cohomology(&m, 4), Err(CohomologyError::DegreeOutOfRange(4))));
    }

    #[test]
    fn restriction_is_a_chain_map() {
        let g = spec("sym:3");
        let t = g.elements().find(|&x| x != 0 && g.mul(x, x) == 0).unwrap();
        let (sub, emb) = g.subgroup(&[0, t]).unwrap();
        let m = GModule::regular(g.clone());
        let mh = m.restrict(&sub, &emb);
        for n in 0..2 {
            let lhs = &coboundary_matrix(&mh, n).to_dense() * &restriction_cochain_map(&m, &sub, &emb, n).to_dense();
            let rhs = &restriction_cochain_map(&m, &sub, &emb, n + 1).to_dense() * &coboundary_matrix(&m, n).to_dense();
            assert_eq!(lhs, rhs);
        }
    }
}
