//! Smith normal form over the integers.
//!
//! Pivoting always moves the entry of least absolute value (first in
//! row-major scan order among ties) into the pivot position, so the
//! transforms are reproducible run to run.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntegerMatrix;

/// `U · A · V = D` with `U`, `V` unimodular and `diag(D)` a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Inverse of `u`, maintained alongside it. Its first `rank` columns span
    /// the saturation of the column span of `A`.
    pub u_inv: IntegerMatrix,
    pub rank: usize,
}

impl SnfDecomposition {
    /// The nonzero diagonal entries of `D` (including units).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Checks `U·A·V = D`, unimodularity and the divisibility chain.
    pub fn verify(&self, a: &IntegerMatrix) -> bool {
        let uav = &(&self.u * a) * &self.v;
        if uav != self.d || !self.u.is_unimodular() || !self.v.is_unimodular() {
            return false;
        }
        if &self.u * &self.u_inv != IntegerMatrix::identity(self.u.rows()) {
            return false;
        }
        for i in 0..self.d.rows() {
            for j in 0..self.d.cols() {
                if i != j && !self.d.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        is_divisibility_chain(&self.diagonal())
    }
}

pub(crate) fn is_divisibility_chain(diag: &[BigInt]) -> bool {
    diag.iter().all(|d| d.is_positive()) && diag.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
}

/// Row and column operations applied during reduction, recorded on the
/// optional transform matrices.
struct Transforms {
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
}

impl Transforms {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.u.add_row_multiple(dst, src, k);
        // E = I + k e_dst e_src^T, so U^{-1} picks up E^{-1} on the right.
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.v.swap_cols(a, b);
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.v.add_col_multiple(dst, src, k);
    }
}

/// Working copy as a vector of rows; cheaper row swaps than the flat layout.
struct Work {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    t: Option<Transforms>,
}

impl Work {
    fn swap_rows(&mut self, x: usize, y: usize) {
        if x != y {
            self.a.swap(x, y);
            if let Some(t) = &mut self.t {
                t.swap_rows(x, y);
            }
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        if x != y {
            for row in &mut self.a {
                row.swap(x, y);
            }
            if let Some(t) = &mut self.t {
                t.swap_cols(x, y);
            }
        }
    }

    /// `row[dst] += k * row[src]`, touching columns from `from` on.
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt, from: usize) {
        let (s, d) = if src < dst {
            let (lo, hi) = self.a.split_at_mut(dst);
            (&lo[src], &mut hi[0])
        } else {
            let (lo, hi) = self.a.split_at_mut(src);
            (&hi[0], &mut lo[dst])
        };
        for j in from..self.cols {
            if !s[j].is_zero() {
                d[j] += &s[j] * k;
            }
        }
        if let Some(t) = &mut self.t {
            t.add_row_multiple(dst, src, k);
        }
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt, from: usize) {
        for i in from..self.rows {
            let row = &mut self.a[i];
            if !row[src].is_zero() {
                let delta = &row[src] * k;
                row[dst] += delta;
            }
        }
        if let Some(t) = &mut self.t {
            t.add_col_multiple(dst, src, k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            let v = std::mem::take(x);
            *x = -v;
        }
        if let Some(t) = &mut self.t {
            t.negate_row(i);
        }
    }

    /// Least nonzero |entry| in the block `[t.., t..]`, row-major first on ties.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((_, _, b)) => x.magnitude() < b.magnitude(),
                };
                if better {
                    if x.magnitude().is_one() {
                        return Some((i, j));
                    }
                    best = Some((i, j, x));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clears column `t` below and row `t` right of the pivot, then enforces
    /// that the pivot divides the remaining block.
    fn reduce_at(&mut self, t: usize) {
        loop {
            let mut residue = false;
            for i in t + 1..self.rows {
                if self.a[i][t].is_zero() {
                    continue;
                }
                let q = self.a[i][t].div_floor(&self.a[t][t]);
                if !q.is_zero() {
                    self.add_row_multiple(i, t, &-q, t);
                }
                if !self.a[i][t].is_zero() {
                    residue = true;
                }
            }
            for j in t + 1..self.cols {
                if self.a[t][j].is_zero() {
                    continue;
                }
                let q = self.a[t][j].div_floor(&self.a[t][t]);
                if !q.is_zero() {
                    self.add_col_multiple(j, t, &-q, t);
                }
                if !self.a[t][j].is_zero() {
                    residue = true;
                }
            }
            if residue {
                // Bring the smallest leftover in row/column t into the pivot.
                let mut best = (t, t);
                let mut best_mag = self.a[t][t].magnitude().clone();
                for i in t + 1..self.rows {
                    let m = self.a[i][t].magnitude();
                    if !m.is_zero() && *m < best_mag {
                        best = (i, t);
                        best_mag = m.clone();
                    }
                }
                for j in t + 1..self.cols {
                    let m = self.a[t][j].magnitude();
                    if !m.is_zero() && *m < best_mag {
                        best = (t, j);
                        best_mag = m.clone();
                    }
                }
                self.swap_rows(t, best.0);
                self.swap_cols(t, best.1);
                continue;
            }
            let pivot = self.a[t][t].clone();
            if !pivot.magnitude().is_one() {
                let offender = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&pivot)));
                if let Some(i) = offender {
                    self.add_row_multiple(t, i, &BigInt::one(), t);
                    continue;
                }
            }
            break;
        }
        if self.a[t][t].is_negative() {
            self.negate_row(t);
        }
    }

    fn run(&mut self) -> usize {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((i, j)) = self.find_pivot(t) else { break };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            self.reduce_at(t);
            t += 1;
        }
        t
    }
}

fn work_from(a: &IntegerMatrix, track: bool) -> Work {
    Work {
        a: a.to_rows(),
        rows: a.rows(),
        cols: a.cols(),
        t: track.then(|| Transforms {
            u: IntegerMatrix::identity(a.rows()),
            u_inv: IntegerMatrix::identity(a.rows()),
            v: IntegerMatrix::identity(a.cols()),
        }),
    }
}

/// Full Smith normal form with transforms.
pub fn smith_normal_form(a: &IntegerMatrix) -> SnfDecomposition {
    let mut w = work_from(a, true);
    let rank = w.run();
    let t = w.t.expect("transforms tracked");
    let mut d = IntegerMatrix::zeros(a.rows(), a.cols());
    for i in 0..rank {
        d.set(i, i, std::mem::take(&mut w.a[i][i]));
    }
    SnfDecomposition { u: t.u, d, v: t.v, u_inv: t.u_inv, rank }
}

/// Nonzero diagonal of the Smith form (units included), without building
/// transforms. The length of the result is the rank of `a`.
pub fn smith_diagonal(a: &IntegerMatrix) -> Vec<BigInt> {
    if let Some(d) = small_diagonal(a) {
        return d.into_iter().map(BigInt::from).collect();
    }
    big_diagonal(a)
}

fn big_diagonal(a: &IntegerMatrix) -> Vec<BigInt> {
    let mut w = work_from(a, false);
    let rank = w.run();
    (0..rank).map(|i| std::mem::take(&mut w.a[i][i])).collect()
}

/// The same elimination on `i64` entries; `None` on overflow or when an
/// entry does not fit.
fn small_diagonal(a: &IntegerMatrix) -> Option<Vec<i64>> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m: Vec<Vec<i64>> =
        (0..rows).map(|i| a.row(i).iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>()).collect::<Option<_>>()?;
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let smallest = |m: &Vec<Vec<i64>>| {
            (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].unsigned_abs())
        };
        let Some((pi, pj)) = smallest(&m) else { break };
        m.swap(t, pi);
        m.iter_mut().for_each(|r| r.swap(t, pj));
        loop {
            let p = m[t][t];
            let mut best: Option<(usize, usize)> = None;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(p);
                if q != 0 {
                    let (top, rest) = m.split_at_mut(i);
                    for (x, &y) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                        *x = x.checked_sub(q.checked_mul(y)?)?;
                    }
                }
                if m[i][t] != 0 && best.is_none_or(|(bi, bj)| m[i][t].unsigned_abs() < m[bi][bj].unsigned_abs()) {
                    best = Some((i, t));
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(p);
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] = row[j].checked_sub(q.checked_mul(row[t])?)?;
                    }
                }
                if m[t][j] != 0 && best.is_none_or(|(bi, bj)| m[t][j].unsigned_abs() < m[bi][bj].unsigned_abs()) {
                    best = Some((t, j));
                }
            }
            if let Some((i, j)) = best {
                m.swap(t, i);
                m.iter_mut().for_each(|r| r.swap(t, j));
                continue;
            }
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match offender {
                Some(i) => {
                    let (top, rest) = m.split_at_mut(i);
                    for (x, &y) in top[t][t..].iter_mut().zip(&rest[0][t..]) {
                        *x = x.checked_add(y)?;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].checked_abs()?);
    }
    Some(diag)
}
