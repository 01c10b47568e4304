//! The snake lemma for a map of exact rows
//!
//! ```text
//!        A  --f-->  B  --g-->  C  --> 0
//!        |a         |b         |c
//! 0 -->  A' --f'--> B' --g'--> C'
//! ```
//!
//! producing `ker a → ker b → ker c → coker a → coker b → coker c`, with the
//! connecting map computed by an explicit diagram chase.

use num_bigint::BigInt;

use super::group::FGAbelianGroup;
use super::matrix::IntegerMatrix;
use super::ops::{saturation, solve, solve_matrix};
use super::presented::{is_exact_at, GroupHom, PresentedGroup};
use super::LatticeError;

#[derive(Clone, Debug)]
pub struct SnakeDiagram {
    pub f: GroupHom,
    pub g: GroupHom,
    pub f_prime: GroupHom,
    pub g_prime: GroupHom,
    pub a: GroupHom,
    pub b: GroupHom,
    pub c: GroupHom,
}

/// Terms, maps and exactness flags of a chain of homomorphisms.
///
/// `exact_at[k]` is true iff the image of `maps[k]` equals the kernel of
/// `maps[k + 1]`, i.e. exactness at `terms[k + 1]`.
#[derive(Clone, Debug)]
pub struct ExactSequenceReport {
    pub terms: Vec<FGAbelianGroup>,
    pub maps: Vec<GroupHom>,
    pub exact_at: Vec<bool>,
}

impl ExactSequenceReport {
    pub fn from_maps(maps: Vec<GroupHom>) -> Self {
        let mut terms: Vec<FGAbelianGroup> = maps.iter().map(|m| m.source().structure()).collect();
        if let Some(last) = maps.last() {
            terms.push(last.target().structure());
        }
        let exact_at = maps.windows(2).map(|w| is_exact_at(&w[0], &w[1])).collect();
        ExactSequenceReport { terms, maps, exact_at }
    }

    pub fn is_exact(&self) -> bool {
        self.exact_at.iter().all(|&e| e)
    }
}

impl SnakeDiagram {
    fn validate(&self) -> Result<(), LatticeError> {
        let chained = [
            (&self.f, &self.g),
            (&self.f_prime, &self.g_prime),
        ];
        for (x, y) in chained {
            if x.target() != y.source() {
                return Err(LatticeError::ShapeMismatch);
            }
        }
        let verticals = [
            (&self.a, self.f.source(), self.f_prime.source()),
            (&self.b, self.f.target(), self.f_prime.target()),
            (&self.c, self.g.target(), self.g_prime.target()),
        ];
        for (v, s, t) in verticals {
            if v.source() != s || v.target() != t {
                return Err(LatticeError::ShapeMismatch);
            }
        }
        if !is_exact_at(&self.f, &self.g) || !self.g.is_surjective() {
            return Err(LatticeError::NotExactRow { row: "top" });
        }
        if !is_exact_at(&self.f_prime, &self.g_prime) || !self.f_prime.is_injective() {
            return Err(LatticeError::NotExactRow { row: "bottom" });
        }
        if !self.f.then(&self.b)?.agrees_with(&self.a.then(&self.f_prime)?) {
            return Err(LatticeError::NonCommutingSquare { square: "left" });
        }
        if !self.g.then(&self.c)?.agrees_with(&self.b.then(&self.g_prime)?) {
            return Err(LatticeError::NonCommutingSquare { square: "right" });
        }
        Ok(())
    }
}

/// Runs the snake lemma. The report has the eight terms
/// `0, ker a, ker b, ker c, coker a, coker b, coker c, 0`.
pub fn snake_sequence(d: &SnakeDiagram) -> Result<ExactSequenceReport, LatticeError> {
    d.validate()?;
    let ka = d.a.kernel();
    let kb = d.b.kernel();
    let kc = d.c.kernel();
    let ca = d.a.cokernel();
    let cb = d.b.cokernel();
    let cc = d.c.cokernel();

    let restrict = |inc_src: &GroupHom, inc_dst: &GroupHom, m: &IntegerMatrix| -> Result<GroupHom, LatticeError> {
        let pushed = m * inc_src.matrix();
        let coords = solve_matrix(inc_dst.matrix(), &pushed).ok_or(LatticeError::ChaseFailed)?;
        GroupHom::new(inc_src.source().clone(), inc_dst.source().clone(), coords)
    };
    let ka_kb = restrict(&ka, &kb, d.f.matrix())?;
    let kb_kc = restrict(&kb, &kc, d.g.matrix())?;

    // Connecting map: lift x ∈ ker c to B, push down by b, pull back along f'.
    let lift_g = d.g.matrix().hstack(d.g.target().relations());
    let pull_f = d.f_prime.matrix().hstack(d.f_prime.target().relations());
    let n_b = d.g.source().generators();
    let n_a2 = d.f_prime.source().generators();
    let mut delta_cols: Vec<Vec<BigInt>> = Vec::new();
    for x in kc.matrix().columns() {
        let y = solve(&lift_g, &x).ok_or(LatticeError::ChaseFailed)?;
        let by = d.b.matrix().mul_vec(&y[..n_b]);
        let w = solve(&pull_f, &by).ok_or(LatticeError::ChaseFailed)?;
        delta_cols.push(w[..n_a2].to_vec());
    }
    let delta = GroupHom::new(
        kc.source().clone(),
        ca.target().clone(),
        IntegerMatrix::from_columns(n_a2, &delta_cols),
    )?;

    let ca_cb = GroupHom::new(ca.target().clone(), cb.target().clone(), d.f_prime.matrix().clone())?;
    let cb_cc = GroupHom::new(cb.target().clone(), cc.target().clone(), d.g_prime.matrix().clone())?;

    let maps = vec![
        GroupHom::zero(PresentedGroup::zero(), ka.source().clone()),
        ka_kb,
        kb_kc,
        delta,
        ca_cb,
        cb_cc,
        GroupHom::zero(cc.target().clone(), PresentedGroup::zero()),
    ];
    Ok(ExactSequenceReport::from_maps(maps))
}

/// The Picard comparison diagram for the torsor of torsion type over an
/// injective character-to-divisor map `div: T → Div`:
///
/// ```text
/// 0 → T  --div--> Div --> Pic        --> 0
///     |i          |id     |s
/// 0 → M  ------>  Div --> Div / M    --> 0
/// ```
///
/// where `M` is the preimage of the torsion of `Pic` (the saturation of the
/// image) and `i` is `div` corestricted to `M`.
pub fn torsor_descent_diagram(div: &IntegerMatrix) -> Result<SnakeDiagram, LatticeError> {
    if super::ops::kernel_basis(div).cols() != 0 {
        return Err(LatticeError::NonInjectiveDiv);
    }
    let t = PresentedGroup::free(div.cols());
    let n = div.rows();
    let divisors = PresentedGroup::free(n);
    let pic = PresentedGroup::new(div.clone());
    let m_basis = saturation(div);
    let m = PresentedGroup::free(m_basis.cols());
    let quotient = PresentedGroup::new(m_basis.clone());
    let i = solve_matrix(&m_basis, div).ok_or(LatticeError::Internal("div image outside its saturation"))?;

    Ok(SnakeDiagram {
        f: GroupHom::new(t.clone(), divisors.clone(), div.clone())?,
        g: GroupHom::new(divisors.clone(), pic.clone(), IntegerMatrix::identity(n))?,
        f_prime: GroupHom::new(m.clone(), divisors.clone(), m_basis)?,
        g_prime: GroupHom::new(divisors.clone(), quotient.clone(), IntegerMatrix::identity(n))?,
        a: GroupHom::new(t, m, i)?,
        b: GroupHom::identity(divisors),
        c: GroupHom::new(pic, quotient, IntegerMatrix::identity(n))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hom(s: &PresentedGroup, t: &PresentedGroup, r: usize, c: usize, e: &[i64]) -> GroupHom {
        GroupHom::new(s.clone(), t.clone(), IntegerMatrix::from_i64(r, c, e)).unwrap()
    }

    #[test]
    fn times_two_on_z_to_z_mod_two() {
        let z = PresentedGroup::free(1);
        let z2 = PresentedGroup::from_structure(&FGAbelianGroup::cyclic(2));
        let f = hom(&z, &z, 1, 1, &[2]);
        let g = hom(&z, &z2, 1, 1, &[1]);
        let d = SnakeDiagram {
            f: f.clone(),
            g: g.clone(),
            f_prime: f,
            g_prime: g,
            a: hom(&z, &z, 1, 1, &[2]),
            b: hom(&z, &z, 1, 1, &[2]),
            c: hom(&z2, &z2, 1, 1, &[2]),
        };
        let rep = snake_sequence(&d).unwrap();
        let c2 = FGAbelianGroup::cyclic(2);
        let zero = FGAbelianGroup::trivial();
        assert_eq!(rep.terms, vec![zero.clone(), zero.clone(), zero.clone(), c2.clone(), c2.clone(), c2.clone(), c2, zero]);
        assert!(rep.is_exact());
        assert_eq!(rep.exact_at.len(), 6);
    }

    #[test]
    fn identity_verticals() {
        let z = PresentedGroup::free(1);
        let z2 = PresentedGroup::free(2);
        let f = hom(&z, &z2, 2, 1, &[1, 0]);
        let g = hom(&z2, &z, 1, 2, &[0, 1]);
        let d = SnakeDiagram {
            f: f.clone(),
            g: g.clone(),
            f_prime: f,
            g_prime: g,
            a: GroupHom::identity(z.clone()),
            b: GroupHom::identity(z2),
            c: GroupHom::identity(z),
        };
        let rep = snake_sequence(&d).unwrap();
        assert!(rep.terms.iter().all(FGAbelianGroup::is_trivial));
        assert!(rep.is_exact());
    }

    #[test]
    fn rejects_bad_diagrams() {
        let z = PresentedGroup::free(1);
        let f = hom(&z, &z, 1, 1, &[1]);
        let not_exact = hom(&z, &z, 1, 1, &[1]);
        let d = SnakeDiagram {
            f: f.clone(),
            g: not_exact.clone(),
            f_prime: f.clone(),
            g_prime: GroupHom::zero(z.clone(), z.clone()),
            a: f.clone(),
            b: f.clone(),
            c: f.clone(),
        };
        assert_eq!(snake_sequence(&d).unwrap_err(), LatticeError::NotExactRow { row: "top" });

        let zero = PresentedGroup::zero();
        let to0 = GroupHom::zero(z.clone(), zero.clone());
        let d = SnakeDiagram {
            f: f.clone(),
            g: to0.clone(),
            f_prime: f.clone(),
            g_prime: to0,
            a: hom(&z, &z, 1, 1, &[2]),
            b: hom(&z, &z, 1, 1, &[3]),
            c: GroupHom::identity(zero),
        };
        assert_eq!(snake_sequence(&d).unwrap_err(), LatticeError::NonCommutingSquare { square: "left" });
    }

    #[test]
    fn multinorm_descent_diagram() {
        // Injective form of the divisor map of w1 w2 = z^2.
        let div = super::super::ops::image_basis(&IntegerMatrix::from_i64(2, 3, &[2, 0, 1, 0, 2, 1]));
        let d = torsor_descent_diagram(&div).unwrap();
        let rep = snake_sequence(&d).unwrap();
        assert!(rep.is_exact());
        let c2 = FGAbelianGroup::cyclic(2);
        // ker s and coker i are the torsion, coker s is torsion free.
        assert_eq!(rep.terms[3], c2);
        assert_eq!(rep.terms[4], c2);
        assert!(rep.terms[6].is_torsion_free());
        assert!(rep.maps[4].is_zero());
    }
}
