//! Simplicial fans, the character-to-divisor map, class groups and the
//! lattice data of the Cox construction.
//!
//! Fan file format (UTF-8, line oriented, `#` starts a comment):
//!
//! ```text
//! rank 2
//! ray 1 0
//! ray 0 1
//! ray -1 -1
//! cone 0 1
//! cone 1 2
//! cone 2 0
//! action 0 -1 1 -1   # optional, repeatable; n*n entries, row-major
//! ```

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{
    cokernel, hermite_basis, kernel_basis, smith_diagonal, smith_normal_form, solve_matrix, torsion_descent_data,
    FGAbelianGroup, IntegerMatrix, LatticeError, TorsionDescent,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("ray {index} is not primitive")]
    NonPrimitiveRay { index: usize },
    #[error("cone {cone} has linearly dependent rays")]
    DependentConeRays { cone: usize },
    #[error("ray {ray} lies in no listed cone")]
    RayNotInCone { ray: usize },
    #[error("cone {cone} refers to missing ray {ray}")]
    BadRayIndex { cone: usize, ray: usize },
    #[error("bad Galois action {generator}: {reason}")]
    BadGaloisAction { generator: usize, reason: String },
    #[error("FanDoesNotSpan: the rays do not span the ambient space")]
    FanDoesNotSpan,
    #[error("fan has no Galois action")]
    MissingGaloisAction,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// One generator of a Galois action: a unimodular matrix on `N` together with
/// the permutation it induces on ray indices (`u_{perm[i]} = matrix · u_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisGenerator {
    pub matrix: IntegerMatrix,
    pub ray_permutation: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GaloisFanAction {
    pub generators: Vec<GaloisGenerator>,
}

/// A simplicial fan in `N = Z^rank`, given by primitive rays and maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
    galois: Option<GaloisFanAction>,
}

impl Fan {
    /// Validates rays, cones and any action matrices.
    pub fn new(
        rank: usize,
        rays: Vec<Vec<i64>>,
        cones: Vec<Vec<usize>>,
        actions: Vec<IntegerMatrix>,
    ) -> Result<Self, FanError> {
        for (index, r) in rays.iter().enumerate() {
            assert_eq!(r.len(), rank, "ray dimension mismatch");
            let g = r.iter().fold(0i64, |g, &x| g.gcd(&x));
            if g != 1 {
                return Err(FanError::NonPrimitiveRay { index });
            }
        }
        let mut covered = vec![false; rays.len()];
        for (ci, cone) in cones.iter().enumerate() {
            for &ray in cone {
                if ray >= rays.len() {
                    return Err(FanError::BadRayIndex { cone: ci, ray });
                }
                covered[ray] = true;
            }
            let m = ray_matrix(&rays, cone, rank);
            if m.rank() != cone.len() {
                return Err(FanError::DependentConeRays { cone: ci });
            }
        }
        if let Some(ray) = covered.iter().position(|&c| !c) {
            return Err(FanError::RayNotInCone { ray });
        }
        let galois = if actions.is_empty() {
            None
        } else {
            let generators = actions
                .into_iter()
                .enumerate()
                .map(|(gi, a)| derive_permutation(&rays, rank, gi, a))
                .collect::<Result<Vec<_>, _>>()?;
            Some(GaloisFanAction { generators })
        };
        Ok(Fan { rank, rays, cones, galois })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn galois(&self) -> Option<&GaloisFanAction> {
        self.galois.as_ref()
    }

    /// Ray vectors of a cone as the columns of a `rank × k` matrix.
    pub fn cone_matrix(&self, cone: usize) -> IntegerMatrix {
        ray_matrix(&self.rays, &self.cones[cone], self.rank)
    }
}

fn ray_matrix(rays: &[Vec<i64>], cone: &[usize], rank: usize) -> IntegerMatrix {
    let cols: Vec<Vec<i64>> = cone.iter().map(|&i| rays[i].clone()).collect();
    IntegerMatrix::from_columns(rank, &cols)
}

fn derive_permutation(rays: &[Vec<i64>], rank: usize, gi: usize, a: IntegerMatrix) -> Result<GaloisGenerator, FanError> {
    let bad = |reason: &str| FanError::BadGaloisAction { generator: gi, reason: reason.to_string() };
    if a.rows() != rank || a.cols() != rank {
        return Err(bad("matrix has the wrong size"));
    }
    if !a.is_unimodular() {
        return Err(bad("matrix is not unimodular"));
    }
    let mut perm = Vec::with_capacity(rays.len());
    for r in rays {
        let v: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
        let image = a.mul_vec(&v);
        let target = rays
            .iter()
            .position(|s| s.iter().zip(&image).all(|(x, y)| BigInt::from(*x) == *y))
            .ok_or_else(|| bad("a ray is not mapped to a ray"))?;
        perm.push(target);
    }
    let mut seen = vec![false; rays.len()];
    for &p in &perm {
        if std::mem::replace(&mut seen[p], true) {
            return Err(bad("induced ray map is not a permutation"));
        }
    }
    Ok(GaloisGenerator { matrix: a, ray_permutation: perm })
}

/// Parses the fan file format.
pub fn parse_fan(text: &str) -> Result<Fan, FanError> {
    let mut rank: Option<usize> = None;
    let mut rays = Vec::new();
    let mut cones = Vec::new();
    let mut actions = Vec::new();
    let mut cone_lines = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens: Vec<(usize, &str)> = Vec::new();
        let mut offset = 0;
        for tok in content.split_whitespace() {
            let pos = content[offset..].find(tok).expect("token from this line") + offset;
            tokens.push((pos + 1, tok));
            offset = pos + tok.len();
        }
        let Some(&(kw_col, keyword)) = tokens.first() else { continue };
        let err = |column: usize, message: String| FanError::Parse { line: line_no, column, message };
        let ints = |expected: Option<usize>| -> Result<Vec<i64>, FanError> {
            let args = &tokens[1..];
            if let Some(n) = expected {
                if args.len() != n {
                    let col = args.get(n).map_or(kw_col, |t| t.0);
                    return Err(err(col, format!("expected {n} integers after '{keyword}', found {}", args.len())));
                }
            }
            args.iter()
                .map(|&(c, t)| t.parse::<i64>().map_err(|_| err(c, format!("'{t}' is not an integer"))))
                .collect()
        };
        match (keyword, rank) {
            ("rank", None) => {
                let v = ints(Some(1))?;
                if v[0] < 0 {
                    return Err(err(tokens[1].0, "rank must be non-negative".into()));
                }
                rank = Some(v[0] as usize);
            }
            ("rank", Some(_)) => return Err(err(kw_col, "rank given more than once".into())),
            (_, None) => return Err(err(kw_col, "first line must be 'rank <n>'".into())),
            ("ray", Some(n)) => rays.push(ints(Some(n))?),
            ("cone", Some(_)) => {
                let v = ints(None)?;
                if v.is_empty() {
                    return Err(err(kw_col, "cone needs at least one ray index".into()));
                }
                let mut idx = Vec::with_capacity(v.len());
                for (k, &x) in v.iter().enumerate() {
                    if x < 0 {
                        return Err(err(tokens[k + 1].0, "ray index must be non-negative".into()));
                    }
                    idx.push(x as usize);
                }
                cones.push(idx);
                cone_lines.push(line_no);
            }
            ("action", Some(n)) => {
                let v = ints(Some(n * n))?;
                actions.push(IntegerMatrix::from_i64(n, n, &v));
            }
            (other, Some(_)) => return Err(err(kw_col, format!("unknown keyword '{other}'"))),
        }
    }
    let Some(rank) = rank else {
        return Err(FanError::Parse { line: 1, column: 1, message: "missing 'rank <n>' line".into() });
    };
    Fan::new(rank, rays, cones, actions)
}

/// Rows `u_ρ`: the map `χ ↦ Σ χ(u_ρ) D_ρ` from characters to torus-invariant divisors.
pub fn divisor_map(fan: &Fan) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(fan.rays.len(), fan.rank);
    for (i, r) in fan.rays.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            m.set(i, j, BigInt::from(x));
        }
    }
    m
}

/// True iff the rays span `Q^rank`, computed as a rank by fraction-free
/// elimination (independently of the Smith form).
pub fn spans_ambient(fan: &Fan) -> bool {
    divisor_map(fan).rank() == fan.rank
}

/// True iff every cone's rays extend to a basis of `N`.
pub fn is_smooth_fan(fan: &Fan) -> bool {
    (0..fan.cones.len()).all(|c| smith_diagonal(&fan.cone_matrix(c)).iter().all(One::is_one))
}

/// Class group `coker(div)`. Requires the rays to span.
pub fn class_group(fan: &Fan) -> Result<FGAbelianGroup, FanError> {
    if !spans_ambient(fan) {
        return Err(FanError::FanDoesNotSpan);
    }
    Ok(cokernel(&divisor_map(fan)))
}

/// Torsion descent data of the divisor map of a spanning fan.
pub fn fan_torsion_descent(fan: &Fan) -> Result<TorsionDescent, FanError> {
    if !spans_ambient(fan) {
        return Err(FanError::FanDoesNotSpan);
    }
    Ok(torsion_descent_data(&divisor_map(fan))?)
}

/// Lattice data of the Cox construction: `g̃: Z^#rays → N`, `D̃_ρ ↦ u_ρ`, and the
/// fan `C'` of coordinate rays in `Z^#rays`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxData {
    pub tilde_rank: usize,
    /// `rank × #rays`; column ρ is `u_ρ`.
    pub g_tilde: IntegerMatrix,
    /// Cones of `C'` as index sets of coordinate rays; the zero cone comes first.
    pub subfan_c_prime: Vec<Vec<usize>>,
    /// Multiplier `m` with `g̃(e_ρ) = m · u_ρ`, `None` when not a positive multiple.
    pub ray_multipliers: Vec<Option<BigInt>>,
    /// `g̃` maps the coordinate ray `R_ρ` onto the generator of ρ.
    pub ray_image_certificate: Vec<bool>,
}

impl CoxData {
    pub fn all_certified(&self) -> bool {
        self.ray_image_certificate.iter().all(|&b| b)
    }
}

pub fn cox_construction(fan: &Fan) -> Result<CoxData, FanError> {
    if !spans_ambient(fan) {
        return Err(FanError::FanDoesNotSpan);
    }
    let n = fan.rays.len();
    let g_tilde = divisor_map(fan).transpose();
    let mut subfan = vec![Vec::new()];
    subfan.extend((0..n).map(|i| vec![i]));
    let mut multipliers = Vec::with_capacity(n);
    for (rho, u) in fan.rays.iter().enumerate() {
        let mut e = vec![BigInt::zero(); n];
        e[rho] = BigInt::one();
        let image = g_tilde.mul_vec(&e);
        multipliers.push(positive_multiple(&image, u));
    }
    let certificate = multipliers.iter().map(|m| m.as_ref().is_some_and(One::is_one)).collect();
    Ok(CoxData { tilde_rank: n, g_tilde, subfan_c_prime: subfan, ray_multipliers: multipliers, ray_image_certificate: certificate })
}

/// `Some(m)` with `v = m·u`, `m > 0`.
fn positive_multiple(v: &[BigInt], u: &[i64]) -> Option<BigInt> {
    let k = u.iter().position(|&x| x != 0)?;
    let (m, r) = v[k].div_rem(&BigInt::from(u[k]));
    if !r.is_zero() || !m.is_positive() {
        return None;
    }
    v.iter().zip(u).all(|(a, &b)| *a == &m * b).then_some(m)
}

/// `M = M1 ⊕ M2` with the divisor map factoring through `M1` with finite cokernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSplitting {
    /// Basis of `M1` (the saturation of the image), in ambient coordinates.
    pub m1_basis: IntegerMatrix,
    /// Basis of a complement `M2`, in ambient coordinates.
    pub m2_basis: IntegerMatrix,
    /// `T → M1` in the `m1_basis` coordinates (square).
    pub d: IntegerMatrix,
    pub cokernel_d: FGAbelianGroup,
    pub finite_cokernel: bool,
}

pub fn split_divisor_lattice(div: &IntegerMatrix) -> Result<DivisorSplitting, FanError> {
    if kernel_basis(div).cols() != 0 {
        return Err(LatticeError::NonInjectiveDiv.into());
    }
    let snf = smith_normal_form(div);
    let m1_basis = hermite_basis(&snf.u_inv.select_columns(0..snf.rank));
    let m2_basis = hermite_basis(&snf.u_inv.select_columns(snf.rank..div.rows()));
    let d = solve_matrix(&m1_basis, div).ok_or(LatticeError::Internal("image outside its saturation"))?;
    let cokernel_d = cokernel(&d);
    let finite_cokernel = cokernel_d.is_finite();
    Ok(DivisorSplitting { m1_basis, m2_basis, d, cokernel_d, finite_cokernel })
}

/// Orbit sizes of the ray permutation group, listed by smallest ray index.
pub fn orbit_permutation_structure(fan: &Fan) -> Result<Vec<usize>, FanError> {
    let action = fan.galois.as_ref().ok_or(FanError::MissingGaloisAction)?;
    let n = fan.rays.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in &action.generators {
        for (i, &j) in g.ray_permutation.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut sizes: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        match sizes.iter_mut().find(|(r, _)| *r == root) {
            Some(entry) => entry.1 += 1,
            None => sizes.push((root, 1)),
        }
    }
    Ok(sizes.into_iter().map(|(_, s)| s).collect())
}

/// Checks `P_σ · div · A_σᵀ = div` for every generator: the divisor map
/// intertwines the dual lattice action on characters with the ray permutation.
pub fn galois_intertwines(fan: &Fan) -> Result<bool, FanError> {
    let action = fan.galois.as_ref().ok_or(FanError::MissingGaloisAction)?;
    let div = divisor_map(fan);
    let n = fan.rays.len();
    for g in &action.generators {
        let mut perm = IntegerMatrix::zeros(n, n);
        for (i, &j) in g.ray_permutation.iter().enumerate() {
            perm.set(j, i, BigInt::one());
        }
        let lhs = &(&perm * &div) * &g.matrix.transpose();
        if lhs != div {
            return Ok(false);
        }
    }
    Ok(true)
}
