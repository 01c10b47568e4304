//! Residue symbols, Hilbert symbols at every place of Q, square roots modulo
//! prime powers and local points on `p(qx + y)y + qz² = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub const DEFAULT_PRECISION: u32 = 20;
pub const MAX_PRECISION: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("NotOddPrime: {0} is not an odd prime")]
    NotOddPrime(BigInt),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("NotQuarticEligible: {reason}")]
    NotQuarticEligible { reason: String },
    #[error("EvenPrimeUnsupported: square roots modulo powers of 2 are not supported")]
    EvenPrimeUnsupported,
    #[error("{a} is not a unit modulo {p}")]
    NotAUnit { a: BigInt, p: u64 },
    #[error("Hilbert symbol arguments must be nonzero")]
    ZeroArgument,
    #[error("NoSeedApplies: {0}")]
    NoSeedApplies(String),
    #[error("PrecisionLimit: precision {requested} outside 1..={max}")]
    PrecisionLimit { requested: u32, max: u32 },
    #[error("lifted point fails f ≡ 1 at {place}")]
    VerificationFailed { place: Place },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(u64),
}

impl Place {
    pub fn prime(p: u64) -> Result<Self, LocalError> {
        if is_prime(p) {
            Ok(Place::Prime(p))
        } else {
            Err(LocalError::NotPrime(p))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the first twelve prime bases suffice below 2^64.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors of `|n|` by trial division.
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

fn check_odd_prime(p: u64) -> Result<(), LocalError> {
    if p == 2 || !is_prime(p) {
        return Err(LocalError::NotOddPrime(p.into()));
    }
    Ok(())
}

fn residue(a: &BigInt, m: u64) -> u64 {
    a.mod_floor(&BigInt::from(m)).to_u64().expect("residue below modulus")
}

/// Euler's criterion `a^((p−1)/2) mod p ∈ {−1, 0, 1}`.
pub fn legendre_symbol(a: &BigInt, p: u64) -> Result<i8, LocalError> {
    check_odd_prime(p)?;
    Ok(match pow_mod(residue(a, p), (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    })
}

/// `a^((q−1)/4) mod q ∈ {±1}` for a quadratic residue `a` and `q ≡ 1 mod 4`.
pub fn quartic_residue_symbol(a: &BigInt, q: u64) -> Result<i8, LocalError> {
    check_odd_prime(q)?;
    if q % 4 != 1 {
        return Err(LocalError::NotQuarticEligible { reason: format!("{q} ≢ 1 mod 4") });
    }
    if legendre_symbol(a, q)? != 1 {
        return Err(LocalError::NotQuarticEligible { reason: format!("{a} is not a nonzero square mod {q}") });
    }
    Ok(if pow_mod(residue(a, q), (q - 1) / 4, q) == 1 { 1 } else { -1 })
}

/// Tonelli–Shanks for an odd prime and a nonzero quadratic residue.
fn sqrt_mod_prime(a: u64, p: u64) -> u64 {
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1).expect("non-residue exists");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// `r` with `r² ≡ a (mod p^k)` and `r < p^k / 2`, or `None` when `a` is a
/// non-residue mod `p`. Requires `p` odd and `p ∤ a`.
pub fn sqrt_mod_prime_power(a: &BigInt, p: u64, k: u32) -> Result<Option<BigInt>, LocalError> {
    if p == 2 {
        return Err(LocalError::EvenPrimeUnsupported);
    }
    check_odd_prime(p)?;
    check_precision(k)?;
    match legendre_symbol(a, p)? {
        0 => return Err(LocalError::NotAUnit { a: a.clone(), p }),
        -1 => return Ok(None),
        _ => {}
    }
    let modulus = BigInt::from(p).pow(k);
    let a = a.mod_floor(&modulus);
    let mut r = BigInt::from(sqrt_mod_prime(residue(&a, p), p));
    // Newton steps double the precision: r ← r − (r² − a)/(2r).
    let mut prec = 1u32;
    while prec < k {
        prec = (2 * prec).min(k);
        let m = BigInt::from(p).pow(prec);
        let inv = mod_inverse(&(BigInt::from(2) * &r), &m).expect("2r is a unit");
        r = (&r - (&r * &r - &a) * inv).mod_floor(&m);
    }
    let other = &modulus - &r;
    debug_assert_eq!((&r * &r - &a).mod_floor(&modulus), BigInt::zero());
    Ok(Some(if other < r { other } else { r }))
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn check_precision(k: u32) -> Result<(), LocalError> {
    if k == 0 || k > MAX_PRECISION {
        return Err(LocalError::PrecisionLimit { requested: k, max: MAX_PRECISION });
    }
    Ok(())
}

/// `(v, unit)` with `n = p^v · unit`.
fn split_valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut v = 0;
    let mut u = n.clone();
    while (&u % p).is_zero() {
        u /= p;
        v += 1;
    }
    (v, u)
}

/// Replaces `a = n/d` by the integer `n·d`, equal to `a` up to squares.
fn square_class_integer(a: &BigRational) -> BigInt {
    a.numer() * a.denom()
}

/// The Hilbert symbol `(a, b)_v`.
///
/// With `a = p^α u`, `b = p^β w`:
/// * odd `p`: `(−1)^{αβε(p)} (u/p)^β (w/p)^α`, `ε(p) = (p−1)/2`;
/// * `p = 2`: `(−1)^{ε(u)ε(w) + αω(w) + βω(u)}` with `ε(u) = (u−1)/2` and
///   `ω(u) = (u²−1)/8` taken mod 2;
/// * real place: `−1` iff `a < 0` and `b < 0`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: Place) -> Result<i8, LocalError> {
    if a.is_zero() || b.is_zero() {
        return Err(LocalError::ZeroArgument);
    }
    let (a, b) = (square_class_integer(a), square_class_integer(b));
    let p = match v {
        Place::Real => return Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) => p,
    };
    let pb = BigInt::from(p);
    let (alpha, u) = split_valuation(&a, &pb);
    let (beta, w) = split_valuation(&b, &pb);
    if p == 2 {
        let eps = |x: &BigInt| -> BigInt { (x - BigInt::one()).div_floor(&BigInt::from(2)).mod_floor(&BigInt::from(2)) };
        let omega = |x: &BigInt| -> BigInt { (x * x - BigInt::one()).div_floor(&BigInt::from(8)).mod_floor(&BigInt::from(2)) };
        let e = eps(&u) * eps(&w) + BigInt::from(alpha) * omega(&w) + BigInt::from(beta) * omega(&u);
        return Ok(if e.is_even() { 1 } else { -1 });
    }
    if !is_prime(p) {
        return Err(LocalError::NotPrime(p));
    }
    let mut s: i8 = if alpha as u64 * beta as u64 % 2 == 1 && (p - 1) / 2 % 2 == 1 { -1 } else { 1 };
    if beta % 2 == 1 {
        s *= legendre_symbol(&u, p)?;
    }
    if alpha % 2 == 1 {
        s *= legendre_symbol(&w, p)?;
    }
    Ok(s)
}

/// The real place and every prime dividing `2ab`.
pub fn relevant_places(a: &BigRational, b: &BigRational) -> Vec<Place> {
    let mut primes: Vec<BigInt> = [a.numer(), a.denom(), b.numer(), b.denom()]
        .into_iter()
        .flat_map(prime_factors)
        .chain([BigInt::from(2)])
        .collect();
    primes.sort();
    primes.dedup();
    std::iter::once(Place::Real)
        .chain(primes.iter().map(|p| Place::Prime(p.to_u64().expect("prime factor fits in u64"))))
        .collect()
}

/// Hilbert reciprocity: `Π_v (a, b)_v = 1`.
pub fn product_formula_check(a: &BigRational, b: &BigRational) -> Result<bool, LocalError> {
    let mut prod = 1;
    for v in relevant_places(a, b) {
        prod *= hilbert_symbol(a, b, v)?;
    }
    Ok(prod == 1)
}

/// `f(x, y, z) = p(qx + y)y + qz²`.
pub fn conic_form<T>(p: &T, q: &T, x: &T, y: &T, z: &T) -> T
where
    T: Clone + std::ops::Add<Output = T> + std::ops::Mul<Output = T>,
{
    p.clone() * (q.clone() * x.clone() + y.clone()) * y.clone() + q.clone() * z.clone() * z.clone()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicPoint {
    pub prime: u64,
    pub precision: u32,
    /// Residues modulo `prime^precision`.
    pub coords: [BigInt; 3],
    pub unit_flags: [bool; 3],
}

impl PadicPoint {
    fn new(prime: u64, precision: u32, coords: [BigInt; 3]) -> Self {
        let pb = BigInt::from(prime);
        let unit_flags = [0, 1, 2].map(|i| !(&coords[i] % &pb).is_zero());
        PadicPoint { prime, precision, coords, unit_flags }
    }

    pub fn modulus(&self) -> BigInt {
        BigInt::from(self.prime).pow(self.precision)
    }

    /// `f ≡ 1 (mod prime^precision)`.
    pub fn satisfies(&self, p: u64, q: u64) -> bool {
        let [x, y, z] = &self.coords;
        let f = conic_form(&BigInt::from(p), &BigInt::from(q), x, y, z);
        (f - BigInt::one()).mod_floor(&self.modulus()).is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalPoint {
    Real([BigRational; 3]),
    Padic(PadicPoint),
}

impl LocalPoint {
    pub fn y(&self) -> BigRational {
        match self {
            LocalPoint::Real(c) => c[1].clone(),
            LocalPoint::Padic(pt) => BigRational::from_integer(pt.coords[1].clone()),
        }
    }
}

/// A point of `f = 1` over `Z_v` (or `R`), from the case-specific seeds:
/// `((1−p)/(pq), 1, 0)` when `v ∤ pq` or `v` is real, `(0, 0, √(q⁻¹))` at
/// `v = p` and `(0, √(p⁻¹), 0)` at `v = q`.
pub fn hensel_point(p: u64, q: u64, v: Place, precision: u32) -> Result<LocalPoint, LocalError> {
    check_precision(precision)?;
    if p == q {
        return Err(LocalError::NoSeedApplies("p = q".into()));
    }
    let (pb, qb) = (BigInt::from(p), BigInt::from(q));
    let l = match v {
        Place::Real => {
            let x = BigRational::new(BigInt::one() - &pb, &pb * &qb);
            let one = BigRational::one();
            let zero = BigRational::zero();
            let pr = BigRational::from_integer(pb);
            let qr = BigRational::from_integer(qb);
            if conic_form(&pr, &qr, &x, &one, &zero) != one {
                return Err(LocalError::VerificationFailed { place: v });
            }
            return Ok(LocalPoint::Real([x, one, zero]));
        }
        Place::Prime(l) => l,
    };
    let modulus = BigInt::from(l).pow(precision);
    let coords = if l != p && l != q {
        let inv = mod_inverse(&(&pb * &qb), &modulus)
            .ok_or_else(|| LocalError::NoSeedApplies(format!("pq is not invertible at {l}")))?;
        let x = ((BigInt::one() - &pb) * inv).mod_floor(&modulus);
        [x, BigInt::one(), BigInt::zero()]
    } else {
        let (other, root_of) = if l == p { (&qb, "q") } else { (&pb, "p") };
        let inv = mod_inverse(other, &modulus)
            .ok_or_else(|| LocalError::NoSeedApplies(format!("{root_of} is not a unit at {l}")))?;
        let r = sqrt_mod_prime_power(&inv, l, precision)
            .map_err(|e| LocalError::NoSeedApplies(e.to_string()))?
            .ok_or_else(|| LocalError::NoSeedApplies(format!("{root_of}⁻¹ is not a square mod {l}")))?;
        if l == p {
            [BigInt::zero(), BigInt::zero(), r]
        } else {
            [BigInt::zero(), r, BigInt::zero()]
        }
    };
    let point = PadicPoint::new(l, precision, coords);
    if !point.satisfies(p, q) {
        return Err(LocalError::VerificationFailed { place: v });
    }
    Ok(LocalPoint::Padic(point))
}

/// A point `(0, y, z)` over `Z_l` with prescribed `y`: solves
/// `qz² ≡ 1 − p y²`, which needs the right side to be a unit square times `q`.
pub fn point_with_y(p: u64, q: u64, l: u64, precision: u32, y: &BigInt) -> Result<PadicPoint, LocalError> {
    check_precision(precision)?;
    let modulus = BigInt::from(l).pow(precision);
    let (pb, qb) = (BigInt::from(p), BigInt::from(q));
    let inv_q = mod_inverse(&qb, &modulus).ok_or_else(|| LocalError::NoSeedApplies(format!("q is not a unit at {l}")))?;
    let target = ((BigInt::one() - &pb * y * y) * inv_q).mod_floor(&modulus);
    let z = sqrt_mod_prime_power(&target, l, precision)
        .map_err(|e| LocalError::NoSeedApplies(e.to_string()))?
        .ok_or_else(|| LocalError::NoSeedApplies(format!("(1 − p y²)/q is not a square mod {l}")))?;
    let point = PadicPoint::new(l, precision, [BigInt::zero(), y.mod_floor(&modulus), z]);
    if !point.satisfies(p, q) {
        return Err(LocalError::VerificationFailed { place: Place::Prime(l) });
    }
    Ok(point)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime(u64::MAX));
    }

    #[test]
    fn legendre_pinned() {
        assert_eq!(legendre_symbol(&b(19), 17).unwrap(), 1);
        assert_eq!(legendre_symbol(&b(-17), 19).unwrap(), -1);
        assert_eq!(legendre_symbol(&b(34), 17).unwrap(), 0);
        assert_eq!(legendre_symbol(&b(17), 19).unwrap() * legendre_symbol(&b(19), 17).unwrap(), 1);
        assert!(matches!(legendre_symbol(&b(3), 2), Err(LocalError::NotOddPrime(_))));
        assert!(matches!(legendre_symbol(&b(3), 15), Err(LocalError::NotOddPrime(_))));
    }

    #[test]
    fn legendre_matches_squares() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                let expected = if squares.contains(&a) { 1 } else { -1 };
                assert_eq!(legendre_symbol(&b(a as i64), p).unwrap(), expected);
            }
        }
    }

    #[test]
    fn quartic_pinned() {
        assert_eq!(quartic_residue_symbol(&b(19), 17).unwrap(), -1);
        assert_eq!(quartic_residue_symbol(&b(1), 17).unwrap(), 1);
        assert_eq!(quartic_residue_symbol(&b(16), 17).unwrap(), 1);
        assert!(matches!(quartic_residue_symbol(&b(3), 17), Err(LocalError::NotQuarticEligible { .. })));
        assert!(matches!(quartic_residue_symbol(&b(2), 7), Err(LocalError::NotQuarticEligible { .. })));
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_mod_prime_power(&b(4), 7, 1).unwrap(), Some(b(2)));
        assert_eq!(sqrt_mod_prime_power(&b(3), 7, 1).unwrap(), None);
        assert_eq!(sqrt_mod_prime_power(&b(3), 2, 1), Err(LocalError::EvenPrimeUnsupported));
        assert!(matches!(sqrt_mod_prime_power(&b(14), 7, 1), Err(LocalError::NotAUnit { .. })));
        let inv = mod_inverse(&b(17), &b(19).pow(10)).unwrap();
        let root = sqrt_mod_prime_power(&inv, 19, 10).unwrap().unwrap();
        let m = b(19).pow(10);
        assert_eq!((&root * &root - &inv).mod_floor(&m), b(0));
        assert!(root < &m / 2);
        for p in [3u64, 5, 13, 17, 41, 97] {
            for a in 1..p as i64 {
                if let Some(r) = sqrt_mod_prime_power(&b(a), p, 6).unwrap() {
                    let m = b(p as i64).pow(6);
                    assert_eq!((&r * &r - a).mod_floor(&m), b(0));
                }
            }
        }
    }

    /// Brute-force local solvability of `z² = ax² + by²` with a primitive
    /// vector mod `p^e`, enough by Hensel when `v_p(a), v_p(b) ≤ 1`.
    fn hilbert_oracle(a: i64, b: i64, p: i64) -> i8 {
        let m = if p == 2 { 32 } else { p * p * p };
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    if x % p == 0 && y % p == 0 && z % p == 0 {
                        continue;
                    }
                    if (z * z - a * x * x - b * y * y).rem_euclid(m) == 0 {
                        return 1;
                    }
                }
            }
        }
        -1
    }

    #[test]
    fn hilbert_against_oracle() {
        let vals = [-6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 15];
        for &p in &[2i64, 3] {
            for &a in &vals {
                for &c in &vals {
                    let sym = hilbert_symbol(&r(a), &r(c), Place::Prime(p as u64)).unwrap();
                    assert_eq!(sym, hilbert_oracle(a, c, p), "({a},{c})_{p}");
                }
            }
        }
        for (a, c) in [(5, 2), (2, 3), (5, 5), (-1, 5), (10, 3), (-5, 7)] {
            assert_eq!(hilbert_symbol(&r(a), &r(c), Place::Prime(5)).unwrap(), hilbert_oracle(a, c, 5), "({a},{c})_5");
        }
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&r(-1), &r(-1), Place::Real).unwrap(), -1);
        assert_eq!(hilbert_symbol(&r(-1), &r(-1), Place::Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&r(-1), &r(-1), Place::Prime(3)).unwrap(), 1);
        for v in [Place::Real, Place::Prime(2), Place::Prime(17)] {
            assert_eq!(hilbert_symbol(&r(1), &r(-7), v).unwrap(), 1);
        }
        for u in 1..17 {
            let expected = legendre_symbol(&b(u), 17).unwrap();
            assert_eq!(hilbert_symbol(&r(u), &r(17), Place::Prime(17)).unwrap(), expected);
        }
        // Rational arguments only matter up to squares.
        let half = BigRational::new(b(1), b(2));
        assert_eq!(
            hilbert_symbol(&half, &r(3), Place::Prime(3)).unwrap(),
            hilbert_symbol(&r(2), &r(3), Place::Prime(3)).unwrap()
        );
        assert_eq!(hilbert_symbol(&r(0), &r(3), Place::Real), Err(LocalError::ZeroArgument));
    }

    #[test]
    fn reciprocity() {
        assert!(product_formula_check(&r(-1), &r(-1)).unwrap());
        assert!(product_formula_check(&r(1), &r(91)).unwrap());
        for a in [-50i64, -17, -6, -1, 2, 3, 12, 35, 49] {
            for c in [-33i64, -2, 5, 7, 18, 50] {
                assert!(product_formula_check(&r(a), &r(c)).unwrap(), "({a},{c})");
            }
        }
    }

    #[test]
    fn local_points() {
        let (p, q) = (19, 17);
        match hensel_point(p, q, Place::Prime(3), 10).unwrap() {
            LocalPoint::Padic(pt) => {
                assert_eq!(pt.coords[1], b(1));
                assert!(pt.unit_flags[1]);
            }
            other => panic!("{other:?}"),
        }
        match hensel_point(p, q, Place::Prime(19), 10).unwrap() {
            LocalPoint::Padic(pt) => {
                assert_eq!((pt.coords[0].clone(), pt.coords[1].clone()), (b(0), b(0)));
                assert_eq!((b(17) * &pt.coords[2] * &pt.coords[2] - b(1)).mod_floor(&pt.modulus()), b(0));
            }
            other => panic!("{other:?}"),
        }
        match hensel_point(p, q, Place::Prime(17), 10).unwrap() {
            LocalPoint::Padic(pt) => {
                assert_eq!((pt.coords[0].clone(), pt.coords[2].clone()), (b(0), b(0)));
                assert_eq!((b(19) * &pt.coords[1] * &pt.coords[1] - b(1)).mod_floor(&pt.modulus()), b(0));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(hensel_point(p, q, Place::Prime(2), 20).unwrap(), LocalPoint::Padic(_)));
        assert!(matches!(hensel_point(p, q, Place::Real, 20).unwrap(), LocalPoint::Real(_)));
        assert!(matches!(hensel_point(p, q, Place::Prime(3), 0), Err(LocalError::PrecisionLimit { .. })));
        let alt = point_with_y(p, q, 19, 12, &b(19)).unwrap();
        assert!(alt.satisfies(p, q));
    }
}
