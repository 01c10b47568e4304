//! Multinorm varieties `Π N_{K_i/k}(w_i) = c Π N_{L_j/k}(z_j)^{s_j}` over the
//! algebraic closure, where they become `w_1⋯w_{m'} = c z_1^{r_1}⋯z_{n'}^{r_{n'}}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lattice::{cokernel, kernel_basis, same_lattice, smith_normal_form, FGAbelianGroup, IntegerMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultinormError {
    #[error("bad multinorm spec: {0}")]
    BadSpec(String),
    #[error("NotOnVariety: the point does not satisfy the equation")]
    NotOnVariety,
    #[error("point has {got} coordinates, expected {expected}")]
    WrongDimension { got: usize, expected: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiNormSpec {
    pub degrees_k: Vec<u32>,
    pub degrees_l: Vec<u32>,
    pub exponents: Vec<u32>,
    pub c: BigRational,
}

impl MultiNormSpec {
    pub fn new(degrees_k: Vec<u32>, degrees_l: Vec<u32>, exponents: Vec<u32>, c: BigRational) -> Result<Self, MultinormError> {
        let bad = |m: &str| Err(MultinormError::BadSpec(m.to_string()));
        if degrees_k.is_empty() || degrees_l.is_empty() {
            return bad("degree lists must be non-empty");
        }
        if degrees_l.len() != exponents.len() {
            return bad("need one exponent per L-factor");
        }
        if degrees_k.iter().chain(&degrees_l).chain(&exponents).any(|&d| d == 0) {
            return bad("degrees and exponents must be at least 1");
        }
        if c.is_zero() {
            return bad("c must be nonzero");
        }
        Ok(MultiNormSpec { degrees_k, degrees_l, exponents, c })
    }

    /// Spec with `c = 1`.
    pub fn with_unit_constant(degrees_k: Vec<u32>, degrees_l: Vec<u32>, exponents: Vec<u32>) -> Result<Self, MultinormError> {
        Self::new(degrees_k, degrees_l, exponents, BigRational::one())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricShape {
    pub m_prime: usize,
    pub r_list: Vec<u32>,
}

impl GeometricShape {
    pub fn n_prime(&self) -> usize {
        self.r_list.len()
    }
}

pub fn geometric_shape(spec: &MultiNormSpec) -> GeometricShape {
    let m_prime = spec.degrees_k.iter().map(|&m| m as usize).sum();
    let r_list = spec.degrees_l.iter().zip(&spec.exponents).flat_map(|(&d, &s)| std::iter::repeat_n(s, d as usize)).collect();
    GeometricShape { m_prime, r_list }
}

/// Rows `D_ij` in `i`-major order, columns `w_1..w_{m'}` then `z_1..z_{n'}`:
/// `div(w_i) = Σ_j r_j D_ij`, `div(z_j) = Σ_i D_ij`.
pub fn divisor_matrix_multinorm(shape: &GeometricShape) -> IntegerMatrix {
    let (m, n) = (shape.m_prime, shape.n_prime());
    let mut d = IntegerMatrix::zeros(m * n, m + n);
    for i in 0..m {
        for (j, &r) in shape.r_list.iter().enumerate() {
            d.set(i * n + j, i, BigInt::from(r));
            d.set(i * n + j, m + j, BigInt::one());
        }
    }
    d
}

/// `(1, …, 1, −r_1, …, −r_{n'})`.
pub fn relation_vector(shape: &GeometricShape) -> IntegerMatrix {
    let mut v: Vec<BigInt> = vec![BigInt::one(); shape.m_prime];
    v.extend(shape.r_list.iter().map(|&r| -BigInt::from(r)));
    IntegerMatrix::from_vec(v.len(), 1, v)
}

/// The kernel of the divisor matrix is exactly the line of the defining
/// relation, so invertible functions are constant.
pub fn units_check(shape: &GeometricShape) -> bool {
    let k = kernel_basis(&divisor_matrix_multinorm(shape));
    k.cols() == 1 && same_lattice(&k, &relation_vector(shape))
}

/// The divisor map on `T̂ = Z^{m'+n'} / relation`, in a basis of a complement.
pub fn induced_divisor_map(shape: &GeometricShape) -> IntegerMatrix {
    let rel = relation_vector(shape);
    let snf = smith_normal_form(&rel);
    let complement = snf.u_inv.select_columns(1..rel.rows());
    &divisor_matrix_multinorm(shape) * &complement
}

/// `Pic(X̄) = coker(T̂ → Z^{m'n'})`.
pub fn pic_multinorm(shape: &GeometricShape) -> FGAbelianGroup {
    let induced = induced_divisor_map(shape);
    debug_assert_eq!(kernel_basis(&induced).cols(), 0, "induced divisor map is injective");
    cokernel(&induced)
}

/// `m'n' − (m' + n' − 1)`.
pub fn expected_pic_rank(shape: &GeometricShape) -> usize {
    let (m, n) = (shape.m_prime, shape.n_prime());
    m * n + 1 - (m + n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorsionCriterion {
    pub gcd_is_one: bool,
    pub pic_torsion_free: bool,
}

pub fn torsion_free_criterion(spec: &MultiNormSpec) -> TorsionCriterion {
    let g = spec.exponents.iter().fold(0u32, |g, &s| g.gcd(&s));
    let pic = pic_multinorm(&geometric_shape(spec));
    TorsionCriterion { gcd_is_one: g == 1, pic_torsion_free: pic.is_torsion_free() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorCharacterMap {
    /// Rows `u_{(i,j,α,β)}` (`α < m_i`, `β < d_j`, lexicographic), columns
    /// the geometric `w` then `z` coordinates.
    pub matrix: IntegerMatrix,
    /// Row of the divisor matrix matching each `u`-row.
    pub divisor_rows: Vec<usize>,
    pub agrees_with_divisor_matrix: bool,
}

/// Characters of `w_{i,α}` and `z_{j,β}` in terms of the split coordinates
/// `u_{(i,j,α,β)}` of `K_i ⊗ L_j`: the `w` side carries exponent `s_j`, the
/// `z` side exponent 1.
pub fn torsor_character_map(spec: &MultiNormSpec) -> TorsorCharacterMap {
    let shape = geometric_shape(spec);
    let (m, n) = (shape.m_prime, shape.n_prime());
    let k_offsets: Vec<usize> = offsets(&spec.degrees_k);
    let l_offsets: Vec<usize> = offsets(&spec.degrees_l);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut divisor_rows = Vec::new();
    for (i, &mi) in spec.degrees_k.iter().enumerate() {
        for (j, (&dj, &sj)) in spec.degrees_l.iter().zip(&spec.exponents).enumerate() {
            for alpha in 0..mi as usize {
                for beta in 0..dj as usize {
                    let (w, z) = (k_offsets[i] + alpha, l_offsets[j] + beta);
                    let mut row = vec![BigInt::zero(); m + n];
                    row[w] = BigInt::from(sj);
                    row[m + z] = BigInt::one();
                    rows.push(row);
                    divisor_rows.push(w * n + z);
                }
            }
        }
    }
    let matrix = IntegerMatrix::from_rows(&rows);
    let div = divisor_matrix_multinorm(&shape);
    let mut seen = vec![false; div.rows()];
    let agrees = rows.len() == div.rows()
        && divisor_rows.iter().enumerate().all(|(u, &d)| {
            let fresh = !std::mem::replace(&mut seen[d], true);
            fresh && matrix.row(u) == div.row(d)
        });
    TorsorCharacterMap { matrix, divisor_rows, agrees_with_divisor_matrix: agrees }
}

fn offsets(degrees: &[u32]) -> Vec<usize> {
    degrees
        .iter()
        .scan(0usize, |acc, &d| {
            let start = *acc;
            *acc += d as usize;
            Some(start)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothPointReport {
    pub gradient: Vec<BigRational>,
    pub smooth: bool,
    /// At least two `w` coordinates vanish.
    pub in_w: bool,
}

/// Exact gradient of `F = Π w_i − c Π z_j^{r_j}` at a point of `F = 0`.
pub fn smooth_point_check(shape: &GeometricShape, point: &[BigRational], c: &BigRational) -> Result<SmoothPointReport, MultinormError> {
    let (m, n) = (shape.m_prime, shape.n_prime());
    if point.len() != m + n {
        return Err(MultinormError::WrongDimension { got: point.len(), expected: m + n });
    }
    let (w, z) = point.split_at(m);
    let prod_except = |skip: Option<usize>, f: &dyn Fn(usize) -> BigRational, len: usize| -> BigRational {
        (0..len).filter(|&k| Some(k) != skip).fold(BigRational::one(), |acc, k| acc * f(k))
    };
    let w_term = |k: usize| w[k].clone();
    let z_term = |k: usize| pow(&z[k], shape.r_list[k]);
    let value = prod_except(None, &w_term, m) - c * prod_except(None, &z_term, n);
    if !value.is_zero() {
        return Err(MultinormError::NotOnVariety);
    }
    let mut gradient: Vec<BigRational> = (0..m).map(|i| prod_except(Some(i), &w_term, m)).collect();
    for (j, &r) in shape.r_list.iter().enumerate() {
        let dz = BigRational::from_integer(r.into()) * pow(&z[j], r - 1) * prod_except(Some(j), &z_term, n);
        gradient.push(-(c * dz));
    }
    let smooth = gradient.iter().any(|g| !g.is_zero());
    let in_w = w.iter().filter(|x| x.is_zero()).count() >= 2;
    Ok(SmoothPointReport { gradient, smooth, in_w })
}

fn pow(x: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(k: &[u32], l: &[u32], s: &[u32]) -> MultiNormSpec {
        MultiNormSpec::with_unit_constant(k.to_vec(), l.to_vec(), s.to_vec()).unwrap()
    }

    fn shape(m: usize, r: &[u32]) -> GeometricShape {
        GeometricShape { m_prime: m, r_list: r.to_vec() }
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn shapes() {
        assert_eq!(geometric_shape(&spec(&[2], &[1], &[2])), shape(2, &[2]));
        assert_eq!(geometric_shape(&spec(&[1], &[1], &[1])), shape(1, &[1]));
        assert_eq!(geometric_shape(&spec(&[2, 3], &[2], &[3])), shape(5, &[3, 3]));
        assert!(MultiNormSpec::with_unit_constant(vec![], vec![1], vec![1]).is_err());
        assert!(MultiNormSpec::with_unit_constant(vec![1], vec![1], vec![1, 2]).is_err());
        assert!(MultiNormSpec::with_unit_constant(vec![1], vec![0], vec![1]).is_err());
        assert!(MultiNormSpec::new(vec![1], vec![1], vec![1], q(0)).is_err());
    }

    #[test]
    fn divisor_matrices() {
        assert_eq!(divisor_matrix_multinorm(&shape(2, &[2])), IntegerMatrix::from_i64(2, 3, &[2, 0, 1, 0, 2, 1]));
        assert_eq!(divisor_matrix_multinorm(&shape(1, &[1])), IntegerMatrix::from_i64(1, 2, &[1, 1]));
        let d = divisor_matrix_multinorm(&shape(2, &[1, 1]));
        #[rustfmt::skip]
        let expected = IntegerMatrix::from_i64(4, 4, &[
            1, 0, 1, 0,
            1, 0, 0, 1,
            0, 1, 1, 0,
            0, 1, 0, 1,
        ]);
        assert_eq!(d, expected);
    }

    #[test]
    fn units() {
        assert!(units_check(&shape(2, &[2])));
        assert_eq!(kernel_basis(&divisor_matrix_multinorm(&shape(2, &[2]))).column(0).len(), 3);
        assert!(same_lattice(
            &kernel_basis(&divisor_matrix_multinorm(&shape(2, &[2]))),
            &IntegerMatrix::from_i64(3, 1, &[1, 1, -2])
        ));
        assert!(units_check(&shape(1, &[1])));
        assert!(units_check(&shape(3, &[2, 4, 1])));
    }

    #[test]
    fn pic_family() {
        // c·x_1⋯x_n = y²: n linear factors and one z with exponent 2.
        for n in 2..=5usize {
            let pic = pic_multinorm(&shape(n, &[2]));
            assert_eq!(pic, FGAbelianGroup::new(0, vec![2; n - 1]), "n = {n}");
        }
        assert!(pic_multinorm(&shape(1, &[1])).is_trivial());
    }

    #[test]
    fn pic_matches_direct_cokernel() {
        for (m, r) in [(2, vec![2]), (3, vec![2, 4]), (2, vec![3, 3]), (4, vec![1, 2])] {
            let s = shape(m, &r);
            assert_eq!(pic_multinorm(&s), cokernel(&divisor_matrix_multinorm(&s)));
            assert_eq!(pic_multinorm(&s).free_rank(), expected_pic_rank(&s));
        }
    }

    #[test]
    fn criterion() {
        let c = torsion_free_criterion(&spec(&[1, 1], &[1, 1], &[2, 3]));
        assert_eq!(c, TorsionCriterion { gcd_is_one: true, pic_torsion_free: true });
        let c = torsion_free_criterion(&spec(&[1, 1], &[1], &[2]));
        assert_eq!(c, TorsionCriterion { gcd_is_one: false, pic_torsion_free: false });
        let c = torsion_free_criterion(&spec(&[1], &[1], &[1]));
        assert_eq!(c, TorsionCriterion { gcd_is_one: true, pic_torsion_free: true });
    }

    #[test]
    fn torsor_maps() {
        let t = torsor_character_map(&spec(&[1], &[1], &[1]));
        assert_eq!(t.matrix, IntegerMatrix::from_i64(1, 2, &[1, 1]));
        assert!(t.agrees_with_divisor_matrix);
        let t = torsor_character_map(&spec(&[1, 1], &[1], &[2]));
        assert_eq!(t.matrix, IntegerMatrix::from_i64(2, 3, &[2, 0, 1, 0, 2, 1]));
        assert!(t.agrees_with_divisor_matrix);
        let t = torsor_character_map(&spec(&[2], &[2], &[1]));
        assert_eq!(t.matrix.rows(), 4);
        assert!(t.agrees_with_divisor_matrix);
        let t = torsor_character_map(&spec(&[2, 1], &[1, 3], &[2, 3]));
        assert!(t.agrees_with_divisor_matrix);
    }

    #[test]
    fn smooth_points() {
        let s = shape(2, &[2]);
        let one = q(1);
        let rep = smooth_point_check(&s, &[q(1), q(1), q(1)], &one).unwrap();
        assert!(rep.smooth && !rep.in_w);
        let rep = smooth_point_check(&s, &[q(0), q(0), q(0)], &one).unwrap();
        assert!(!rep.smooth && rep.in_w);
        let rep = smooth_point_check(&s, &[q(0), q(1), q(0)], &one).unwrap();
        assert!(rep.smooth);
        assert_eq!(rep.gradient, vec![q(1), q(0), q(0)]);
        assert_eq!(smooth_point_check(&s, &[q(1), q(2), q(1)], &one), Err(MultinormError::NotOnVariety));
        assert!(matches!(smooth_point_check(&s, &[q(1)], &one), Err(MultinormError::WrongDimension { .. })));
        let half = BigRational::new(1.into(), 2.into());
        let rep = smooth_point_check(&s, &[q(2), q(1), q(2)], &half).unwrap();
        assert!(rep.smooth);
    }
}
