//! Cokernels by explicit coset enumeration, independent of the Smith form.
//!
//! `Z^m / span(A)` is recovered from the finite group `(Z/N)^m / span(A mod N)`,
//! which is `(Z/N)^(m-r) ⊕ T/NT` for `r = rank A` and `T` the torsion. When the
//! exponent of `T` divides `N` the second summand is `T` itself, and the `m - r`
//! copies of `Z/N` sit at the top of the invariant-factor chain.
//!
//! The structure of the enumerated group is read off from the counts
//! `|Q[p^k]| = #{x : p^k x = 0}`.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;

use super::group::FGAbelianGroup;
use super::matrix::IntegerMatrix;
use super::LatticeError;

/// Default cap on `N^rows` enumerated cells.
pub const DEFAULT_ORACLE_CELLS: u64 = 2_000_000;

/// Enumerates cosets modulo `N = lcm(1, …, bound)`, so any torsion exponent
/// up to `bound` is captured. The rank comes from fraction-free elimination.
pub fn brute_force_cokernel_oracle(a: &IntegerMatrix, bound: u64) -> Result<FGAbelianGroup, LatticeError> {
    let n = (1..=bound.max(1)).fold(1u64, |acc, k| acc / gcd(acc, k) * k);
    cokernel_by_enumeration(a, n, DEFAULT_ORACLE_CELLS)
}

/// Same enumeration with an explicit modulus `n`, which must be a multiple of
/// the torsion exponent for the answer to be exact.
pub fn cokernel_by_enumeration(a: &IntegerMatrix, n: u64, cell_limit: u64) -> Result<FGAbelianGroup, LatticeError> {
    let m = a.rows();
    let cells = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if cells > cell_limit as u128 {
        return Err(LatticeError::OracleTooLarge { cells: cells.min(u64::MAX as u128) as u64, limit: cell_limit });
    }
    let rank = a.rank();
    if n == 1 {
        return Ok(FGAbelianGroup::free(m - rank));
    }
    let cells = cells as usize;
    let modn = |x: &BigInt| -> u64 {
        let r = x % BigInt::from(n);
        let r = if r < BigInt::from(0) { r + BigInt::from(n) } else { r };
        u64::try_from(&r).expect("reduced mod n")
    };
    let gens: Vec<Vec<u64>> = a.columns().map(|c| c.iter().map(modn).collect()).collect();

    let encode = |v: &[u64]| v.iter().rev().fold(0usize, |acc, &x| acc * n as usize + x as usize);
    let decode = |mut code: usize| -> Vec<u64> {
        (0..m)
            .map(|_| {
                let d = (code % n as usize) as u64;
                code /= n as usize;
                d
            })
            .collect()
    };

    // Subgroup H generated by the columns, by breadth-first closure.
    let mut in_h = vec![false; cells];
    in_h[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(code) = queue.pop_front() {
        let v = decode(code);
        for g in &gens {
            let w: Vec<u64> = v.iter().zip(g).map(|(x, y)| (x + y) % n).collect();
            let c = encode(&w);
            if !in_h[c] {
                in_h[c] = true;
                queue.push_back(c);
            }
        }
    }
    let h_size = in_h.iter().filter(|&&b| b).count();

    // For each prime power p^k dividing n: |Q[p^k]| = #{x : p^k x ∈ H} / |H|.
    let mut p_parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (p, e) in factorize(n) {
        let mut prev_log = 0u32;
        let mut counts_ge: Vec<u32> = Vec::new();
        for k in 1..=e {
            let pk = p.pow(k);
            let hits = (0..cells)
                .filter(|&code| {
                    let v = decode(code);
                    let w: Vec<u64> = v.iter().map(|x| (x * pk) % n).collect();
                    in_h[encode(&w)]
                })
                .count();
            let q = (hits / h_size) as u64;
            let log = ilog_exact(q, p);
            // Number of cyclic p-factors with exponent ≥ k.
            counts_ge.push(log - prev_log);
            prev_log = log;
        }
        let mut exps = Vec::new();
        for k in 1..=e as usize {
            let ge_k = counts_ge[k - 1];
            let ge_next = counts_ge.get(k).copied().unwrap_or(0);
            for _ in 0..(ge_k - ge_next) {
                exps.push(k as u32);
            }
        }
        p_parts.insert(p, exps);
    }

    // Reassemble cyclic factors, drop the m - r copies of Z/n from the top.
    let mut factors: Vec<BigInt> = Vec::new();
    for (p, exps) in &p_parts {
        for &k in exps {
            factors.push(BigInt::from(p.pow(k)));
        }
    }
    let full = FGAbelianGroup::new(0, factors);
    let mut inv: Vec<BigInt> = full.invariant_factors().to_vec();
    let free = m - rank;
    for _ in 0..free {
        let top = inv.pop().expect("free summand present in the enumeration");
        debug_assert_eq!(top, BigInt::from(n));
    }
    Ok(FGAbelianGroup::new(free, inv))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn ilog_exact(mut q: u64, p: u64) -> u32 {
    let mut k = 0;
    while q > 1 {
        assert_eq!(q % p, 0, "subgroup count is not a power of p");
        q /= p;
        k += 1;
    }
    k
}
