//! The plane-conic complement `f(x, y, z) = p(qx + y)y + qz²`: parameter
//! conditions, local invariants of the quaternion algebra `(y, q)`, a box
//! search for integral points with `f = ±1`, and `Pic` of the complement.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::lattice::{cokernel, kernel_basis, FGAbelianGroup, IntegerMatrix};
use crate::local::{
    hensel_point, hilbert_symbol, is_prime, legendre_symbol, point_with_y, quartic_residue_symbol, LocalError,
    LocalPoint, Place, DEFAULT_PRECISION,
};

pub const DEFAULT_SEARCH_BOUND: i64 = 100;
pub const DEFAULT_PRIME_BOUND: u64 = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrauerError {
    #[error("ConditionFailed: {condition} failed")]
    ConditionFailed { condition: &'static str },
    #[error("multiplication by 0 is not injective")]
    ZeroDegree,
    #[error(transparent)]
    Local(#[from] LocalError),
}

pub const CONDITIONS: [&str; 7] =
    ["p prime", "q prime", "p ≡ 3 mod 4", "q ≡ 1 mod 8", "(p/q) = 1", "(p/q)_4 = −1", "(−q/p) = −1"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub name: &'static str,
    /// `None` when an earlier failure makes the condition meaningless.
    pub holds: Option<bool>,
}

/// Every condition, in order, evaluated where it makes sense.
pub fn condition_table(p: u64, q: u64) -> Vec<ConditionCheck> {
    let both_odd_primes = is_prime(p) && is_prime(q) && p != 2 && q != 2 && p != q;
    let leg = |a: i64, m: u64| legendre_symbol(&BigInt::from(a), m).ok();
    let pq = both_odd_primes.then(|| leg(p as i64, q)).flatten();
    let values = [
        Some(is_prime(p)),
        Some(is_prime(q)),
        Some(p % 4 == 3),
        Some(q % 8 == 1),
        pq.map(|s| s == 1),
        (pq == Some(1) && q % 4 == 1)
            .then(|| quartic_residue_symbol(&BigInt::from(p), q).ok().map(|s| s == -1))
            .flatten(),
        both_odd_primes.then(|| leg(-(q as i64), p).map(|s| s == -1)).flatten(),
    ];
    CONDITIONS.iter().zip(values).map(|(&name, holds)| ConditionCheck { name, holds }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleInstance {
    pub p: u64,
    pub q: u64,
    pub search_bound: i64,
    pub prime_bound: u64,
    pub precision: u32,
}

/// Accepts `(p, q)` iff every condition holds; otherwise names the first failure.
pub fn validate_parameters(p: u64, q: u64) -> Result<ExampleInstance, BrauerError> {
    for check in condition_table(p, q) {
        if check.holds != Some(true) {
            return Err(BrauerError::ConditionFailed { condition: check.name });
        }
    }
    Ok(ExampleInstance {
        p,
        q,
        search_bound: DEFAULT_SEARCH_BOUND,
        prime_bound: DEFAULT_PRIME_BOUND,
        precision: DEFAULT_PRECISION,
    })
}

impl ExampleInstance {
    /// `f(x, y, z)` over the integers.
    pub fn f(&self, x: i128, y: i128, z: i128) -> i128 {
        let (p, q) = (self.p as i128, self.q as i128);
        p * (q * x + y) * y + q * z * z
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseLabel {
    Real,
    Two,
    /// `l ∤ 2q` and `q` is a square mod `l`.
    QSquare,
    /// `l ∤ 2q` and `q` is not a square mod `l`, so `y_l` is a unit.
    QNonSquare,
    /// `l = q`.
    AtQ,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseLabel::Real => "l = inf: q > 0",
            CaseLabel::Two => "l = 2: q ≡ 1 mod 8",
            CaseLabel::QSquare => "l ∤ 2q, (q/l) = 1: q is a square in Z_l",
            CaseLabel::QNonSquare => "l ∤ 2q, (q/l) = −1: y_l is a unit",
            CaseLabel::AtQ => "l = q: (y_l/q) = (p/q)_4^(−1)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantEntry {
    pub place: Place,
    pub point: LocalPoint,
    pub value: i8,
    pub case: CaseLabel,
    /// The structural fact behind the case holds numerically at this point.
    pub confirmed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalInvariantReport {
    pub entries: Vec<InvariantEntry>,
    pub product: i8,
}

impl LocalInvariantReport {
    pub fn places_with_value(&self, value: i8) -> Vec<Place> {
        self.entries.iter().filter(|e| e.value == value).map(|e| e.place).collect()
    }

    /// Places where the case analysis was not numerically confirmed.
    pub fn unconfirmed(&self) -> Vec<Place> {
        self.entries.iter().filter(|e| !e.confirmed).map(|e| e.place).collect()
    }
}

/// The places evaluated: the real place, then 2, every prime up to the bound,
/// `p` and `q`, in increasing order.
pub fn invariant_places(inst: &ExampleInstance) -> Vec<Place> {
    let mut primes: Vec<u64> = (2..=inst.prime_bound).filter(|&l| is_prime(l)).collect();
    primes.extend([2, inst.p, inst.q]);
    primes.sort_unstable();
    primes.dedup();
    std::iter::once(Place::Real).chain(primes.into_iter().map(Place::Prime)).collect()
}

/// Local invariant `(y_l, q)_l` of `A = (y, q)` at each place.
///
/// At `l = p` the seed point has `y = 0`, where the symbol is undefined; the
/// point `(0, p, z)` with `qz² = 1 − p³` is used instead.
pub fn invariant_table(inst: &ExampleInstance) -> Result<LocalInvariantReport, BrauerError> {
    let (p, q) = (inst.p, inst.q);
    let q_rat = BigRational::from_integer(q.into());
    let mut entries = Vec::new();
    for place in invariant_places(inst) {
        let point = match place {
            Place::Prime(l) if l == p => LocalPoint::Padic(point_with_y(p, q, p, inst.precision, &BigInt::from(p))?),
            _ => hensel_point(p, q, place, inst.precision)?,
        };
        let y = point.y();
        let value = hilbert_symbol(&y, &q_rat, place)?;
        let (case, confirmed) = match place {
            Place::Real => (CaseLabel::Real, value == 1),
            Place::Prime(2) => (CaseLabel::Two, q % 8 == 1 && value == 1),
            Place::Prime(l) if l == q => {
                let yi = y.to_integer();
                let residue = legendre_symbol(&yi, q)?;
                let quartic = quartic_residue_symbol(&BigInt::from(p), q)?;
                // (p/q)_4 is ±1, so it is its own inverse.
                (CaseLabel::AtQ, value == residue && residue == quartic)
            }
            Place::Prime(l) => {
                let LocalPoint::Padic(pt) = &point else { unreachable!("finite place") };
                if legendre_symbol(&BigInt::from(q), l)? == 1 {
                    (CaseLabel::QSquare, value == 1)
                } else {
                    (CaseLabel::QNonSquare, pt.unit_flags[1] && value == 1)
                }
            }
        };
        entries.push(InvariantEntry { place, point, value, case, confirmed });
    }
    let product = entries.iter().map(|e| e.value).product();
    Ok(LocalInvariantReport { entries, product })
}

/// Why `f = −1` has no solution: modulo `p`, `f ≡ qz²` never hits `−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularCertificate {
    pub prime: u64,
    /// `(−q/p)`.
    pub legendre_minus_q: i8,
    /// Enumerating `qz² mod p` over all residues `z` confirms `−1` is missed.
    pub enumeration_confirms: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub bound: i64,
    /// All `(x, y, z)` in the box with `f = ±1`, sorted.
    pub solutions: Vec<[i64; 3]>,
    pub minus_one_certificate: ModularCertificate,
}

/// Every `(x, y, z) ∈ [−B, B]³` with `f = ±1`. `f` is linear in `x` once
/// `y ≠ 0`, so each `(y, z)` pair needs one division.
pub fn integral_search(inst: &ExampleInstance) -> SearchReport {
    let bound = inst.search_bound.max(0);
    let (p, q) = (inst.p as i128, inst.q as i128);
    let b = bound as i128;
    let mut solutions = Vec::new();
    for y in -b..=b {
        for z in -b..=b {
            for t in [-1i128, 1] {
                if y == 0 {
                    if q * z * z == t {
                        solutions.extend((-b..=b).map(|x| [x as i64, 0, z as i64]));
                    }
                    continue;
                }
                let num = t - p * y * y - q * z * z;
                let den = p * q * y;
                if num % den == 0 {
                    let x = num / den;
                    if x.abs() <= b {
                        debug_assert_eq!(inst.f(x, y, z), t);
                        solutions.push([x as i64, y as i64, z as i64]);
                    }
                }
            }
        }
    }
    solutions.sort_unstable();
    solutions.dedup();
    let residues: Vec<u64> = (0..inst.p).map(|z| (inst.q % inst.p) * (z * z % inst.p) % inst.p).collect();
    let minus_one = inst.p - 1;
    let certificate = ModularCertificate {
        prime: inst.p,
        legendre_minus_q: legendre_symbol(&BigInt::from(-(inst.q as i64)), inst.p).unwrap_or(0),
        enumeration_confirms: !residues.contains(&minus_one),
    };
    SearchReport { bound, solutions, minus_one_certificate: certificate }
}

/// `Pic` of the complement of a degree-`d` curve in `P²`: `coker(×d on Z)`,
/// after checking `×d` is injective (only constant invertible functions).
pub fn pic_of_complement(d: i64) -> Result<FGAbelianGroup, BrauerError> {
    let m = IntegerMatrix::from_i64(1, 1, &[d]);
    if d.is_zero() || kernel_basis(&m).cols() != 0 {
        return Err(BrauerError::ZeroDegree);
    }
    Ok(cokernel(&m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(validate_parameters(19, 17).is_ok());
        assert_eq!(validate_parameters(19, 5), Err(BrauerError::ConditionFailed { condition: "q ≡ 1 mod 8" }));
        let three_mod_17 = legendre_symbol(&BigInt::from(3), 17).unwrap();
        let expected = if three_mod_17 == 1 { "(p/q)_4 = −1" } else { "(p/q) = 1" };
        assert_eq!(validate_parameters(3, 17), Err(BrauerError::ConditionFailed { condition: expected }));
        assert_eq!(validate_parameters(21, 17), Err(BrauerError::ConditionFailed { condition: "p prime" }));
        assert_eq!(validate_parameters(17, 17), Err(BrauerError::ConditionFailed { condition: "p ≡ 3 mod 4" }));
    }

    #[test]
    fn table_19_17() {
        let inst = validate_parameters(19, 17).unwrap();
        let rep = invariant_table(&inst).unwrap();
        assert_eq!(rep.product, -1);
        assert_eq!(rep.places_with_value(-1), vec![Place::Prime(17)]);
        assert!(rep.unconfirmed().is_empty());
        assert_eq!(rep.entries[0].place, Place::Real);
        assert_eq!(rep.entries[0].value, 1);
        assert_eq!(rep.entries[1].place, Place::Prime(2));
        assert_eq!(rep.entries[1].value, 1);
        // 26 primes below 100 (including 17 and 19), plus the real place.
        assert_eq!(rep.entries.len(), 26);
    }

    #[test]
    fn search() {
        let mut inst = validate_parameters(19, 17).unwrap();
        inst.search_bound = 30;
        let rep = integral_search(&inst);
        assert!(rep.solutions.is_empty());
        assert_eq!(rep.minus_one_certificate.legendre_minus_q, -1);
        assert!(rep.minus_one_certificate.enumeration_confirms);
        inst.search_bound = 0;
        assert!(integral_search(&inst).solutions.is_empty());
    }

    #[test]
    fn search_finds_planted_solutions() {
        // Without the conditions, f = 1 can have solutions: p = 3, q = 1 gives
        // f = 3(x + y)y + z², solved by (0, 0, ±1).
        let inst = ExampleInstance { p: 3, q: 1, search_bound: 2, prime_bound: 10, precision: 5 };
        let rep = integral_search(&inst);
        let brute: Vec<[i64; 3]> = (-2..=2)
            .flat_map(|x| (-2..=2).flat_map(move |y| (-2..=2).map(move |z| [x, y, z])))
            .filter(|&[x, y, z]| inst.f(x as i128, y as i128, z as i128).abs() == 1)
            .collect();
        assert!(!brute.is_empty());
        assert_eq!(rep.solutions, brute);
    }

    #[test]
    fn pic() {
        assert_eq!(pic_of_complement(2).unwrap(), FGAbelianGroup::cyclic(2));
        assert_eq!(pic_of_complement(5).unwrap(), FGAbelianGroup::cyclic(5));
        assert!(pic_of_complement(1).unwrap().is_trivial());
        assert_eq!(pic_of_complement(0), Err(BrauerError::ZeroDegree));
    }
}
