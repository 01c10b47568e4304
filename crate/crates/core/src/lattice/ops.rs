//! Kernels, cokernels, saturations and integer solves, all read off the
//! Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::group::FGAbelianGroup;
use super::matrix::IntegerMatrix;
use super::snf::{smith_diagonal, smith_normal_form};
use super::LatticeError;

/// `Z^rows / column-span(a)`.
pub fn cokernel(a: &IntegerMatrix) -> FGAbelianGroup {
    let diag = smith_diagonal(a);
    FGAbelianGroup::new(a.rows() - diag.len(), diag)
}

/// A basis of `ker(a) ⊆ Z^cols` as the columns of the result, in Hermite
/// normal form. The result has zero columns when the kernel is trivial.
pub fn kernel_basis(a: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(a);
    let basis = snf.v.select_columns(snf.rank..a.cols());
    hermite_basis(&basis)
}

/// Columns spanning `{v : n·v ∈ span(a) for some n ≥ 1}`, in Hermite normal form.
pub fn saturation(a: &IntegerMatrix) -> IntegerMatrix {
    let snf = smith_normal_form(a);
    hermite_basis(&snf.u_inv.select_columns(0..snf.rank))
}

/// Canonical basis of the lattice spanned by the columns of `gens`.
///
/// The basis vectors are returned as columns in echelon form with respect to
/// the coordinate order: each has a positive leading entry, leading positions
/// strictly increase, and entries in a pivot row to the left of the pivot
/// column are reduced into `[0, pivot)`. Two generating sets span the same
/// lattice iff their Hermite bases are equal.
pub fn hermite_basis(gens: &IntegerMatrix) -> IntegerMatrix {
    let n = gens.rows();
    let mut vecs: Vec<Vec<BigInt>> = gens.columns().filter(|c| c.iter().any(|x| !x.is_zero())).collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for coord in 0..n {
        let mut active: Vec<Vec<BigInt>> = Vec::new();
        let mut rest: Vec<Vec<BigInt>> = Vec::new();
        for v in vecs.drain(..) {
            if v[coord].is_zero() {
                rest.push(v);
            } else {
                active.push(v);
            }
        }
        // Euclid on the coordinate until a single vector carries it.
        while active.len() > 1 {
            let (imin, _) = active
                .iter()
                .enumerate()
                .min_by(|a, b| a.1[coord].magnitude().cmp(b.1[coord].magnitude()))
                .expect("nonempty");
            let pivot = active.swap_remove(imin);
            let mut next = vec![pivot.clone()];
            for mut v in active.drain(..) {
                let q = v[coord].div_floor(&pivot[coord]);
                for (x, p) in v.iter_mut().zip(&pivot) {
                    *x -= &q * p;
                }
                if v[coord].is_zero() {
                    if v.iter().any(|x| !x.is_zero()) {
                        rest.push(v);
                    }
                } else {
                    next.push(v);
                }
            }
            active = next;
        }
        if let Some(mut p) = active.pop() {
            if p[coord].is_negative() {
                for x in p.iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            basis.push(p);
        }
        vecs = rest;
    }
    // Reduce earlier vectors by later pivots.
    let pivots: Vec<usize> =
        basis.iter().map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero")).collect();
    for k in 0..basis.len() {
        let pc = pivots[k];
        for i in 0..k {
            let q = basis[i][pc].div_floor(&basis[k][pc]);
            if !q.is_zero() {
                let pk = basis[k].clone();
                for (x, p) in basis[i].iter_mut().zip(&pk) {
                    *x -= &q * p;
                }
            }
        }
    }
    IntegerMatrix::from_columns(n, &basis)
}

/// True iff the two generating sets span the same lattice.
pub fn same_lattice(a: &IntegerMatrix, b: &IntegerMatrix) -> bool {
    hermite_basis(a) == hermite_basis(b)
}

/// An integer solution of `a · x = v`, if one exists.
pub fn solve(a: &IntegerMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    solve_with(&snf, v)
}

fn solve_with(snf: &super::snf::SnfDecomposition, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let y = snf.u.mul_vec(v);
    let mut z = vec![BigInt::zero(); snf.v.rows()];
    for (i, yi) in y.iter().enumerate() {
        if i < snf.rank {
            let d = snf.d.get(i, i);
            let (q, r) = yi.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !yi.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&z))
}

/// Columnwise integer solve of `a · X = b`.
pub fn solve_matrix(a: &IntegerMatrix, b: &IntegerMatrix) -> Option<IntegerMatrix> {
    assert_eq!(a.rows(), b.rows(), "solve shape mismatch");
    let snf = smith_normal_form(a);
    let cols: Option<Vec<Vec<BigInt>>> = b.columns().map(|c| solve_with(&snf, &c)).collect();
    Some(IntegerMatrix::from_columns(a.cols(), &cols?))
}

/// True iff `v` lies in the column span of `a`.
pub fn lattice_contains(a: &IntegerMatrix, v: &[BigInt]) -> bool {
    solve(a, v).is_some()
}

/// An injective matrix with the same image as `a` (its Hermite basis).
/// The cokernel is unchanged.
pub fn image_basis(a: &IntegerMatrix) -> IntegerMatrix {
    hermite_basis(a)
}

/// Picard-type data attached to an injective character-to-divisor map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionDescent {
    /// `coker(div)`.
    pub pic: FGAbelianGroup,
    /// Torsion subgroup of `pic`.
    pub torsion: FGAbelianGroup,
    /// Preimage of the torsion subgroup in the divisor lattice (columns).
    pub preimage: IntegerMatrix,
    /// `preimage / im(div) ≅ torsion` and `Z^n / preimage` is torsion free.
    pub check: bool,
}

/// Preimage of the torsion of `coker(div)` together with the consistency
/// checks of the descent diagram.
pub fn torsion_descent_data(div: &IntegerMatrix) -> Result<TorsionDescent, LatticeError> {
    if kernel_basis(div).cols() != 0 {
        return Err(LatticeError::NonInjectiveDiv);
    }
    let pic = cokernel(div);
    let torsion = pic.torsion();
    let preimage = saturation(div);
    let coords = solve_matrix(&preimage, div).ok_or(LatticeError::Internal("div image outside its saturation"))?;
    let check = cokernel(&coords) == torsion && cokernel(&preimage).is_torsion_free();
    Ok(TorsionDescent { pic, torsion, preimage, check })
}
