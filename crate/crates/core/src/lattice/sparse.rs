//! Smith invariants of large sparse matrices: eliminate unit pivots in place,
//! then hand the small leftover block to the dense Smith form.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::One;

use super::matrix::IntegerMatrix;
use super::modular::SparseMatrix;
use super::snf::smith_diagonal;

/// Nonzero Smith diagonal of `m`, identical to `smith_diagonal(&m.to_dense())`.
pub fn sparse_smith_diagonal(m: &SparseMatrix) -> Vec<BigInt> {
    match reduce_units(m) {
        Some((ones, rest)) => {
            let mut d = vec![BigInt::one(); ones];
            d.extend(smith_diagonal(&rest));
            d
        }
        // Entry growth past i64: start over densely.
        None => smith_diagonal(&m.to_dense()),
    }
}

struct Reducer {
    rows: Vec<Vec<(usize, i64)>>,
    col_rows: Vec<HashSet<usize>>,
}

impl Reducer {
    fn entry(&self, r: usize, c: usize) -> i64 {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |e| e.0).map_or(0, |k| row[k].1)
    }

    /// `row[t] -= k * row[p]`.
    fn subtract(&mut self, t: usize, p: usize, k: i64) -> Option<()> {
        let (src, dst) = (&self.rows[p], &self.rows[t]);
        let mut out = Vec::with_capacity(src.len() + dst.len());
        let (mut a, mut b) = (0, 0);
        while a < dst.len() || b < src.len() {
            let ja = dst.get(a).map_or(usize::MAX, |e| e.0);
            let jb = src.get(b).map_or(usize::MAX, |e| e.0);
            if ja < jb {
                out.push(dst[a]);
                a += 1;
            } else {
                let base = if ja == jb { dst[a].1 } else { 0 };
                let v = base.checked_sub(src[b].1.checked_mul(k)?)?;
                if ja == jb {
                    a += 1;
                    if v == 0 {
                        self.col_rows[jb].remove(&t);
                    }
                } else {
                    self.col_rows[jb].insert(t);
                }
                if v != 0 {
                    out.push((jb, v));
                }
                b += 1;
            }
        }
        self.rows[t] = out;
        Some(())
    }

    fn pivot(&mut self, r: usize, c: usize) -> Option<()> {
        let u = self.entry(r, c);
        let others: Vec<usize> = self.col_rows[c].iter().copied().filter(|&t| t != r).collect();
        for t in others {
            let v = self.entry(t, c);
            self.subtract(t, r, v * u)?;
        }
        for (j, _) in std::mem::take(&mut self.rows[r]) {
            self.col_rows[j].remove(&r);
        }
        Some(())
    }
}

fn reduce_units(m: &SparseMatrix) -> Option<(usize, IntegerMatrix)> {
    let mut red = Reducer {
        rows: (0..m.rows()).map(|i| m.row(i).to_vec()).collect(),
        col_rows: vec![HashSet::new(); m.cols()],
    };
    for (i, row) in red.rows.iter().enumerate() {
        for &(j, _) in row {
            red.col_rows[j].insert(i);
        }
    }
    let mut ones = 0;
    loop {
        let mut order: Vec<usize> = (0..m.cols()).filter(|&c| !red.col_rows[c].is_empty()).collect();
        order.sort_by_key(|&c| (red.col_rows[c].len(), c));
        let mut progress = false;
        for c in order {
            // Sorted so the choice does not depend on hash order.
            let mut candidates: Vec<usize> = red.col_rows[c].iter().copied().collect();
            candidates.sort_unstable();
            let best = candidates
                .into_iter()
                .filter(|&r| red.entry(r, c).abs() == 1)
                .min_by_key(|&r| (red.rows[r].len(), r));
            if let Some(r) = best {
                red.pivot(r, c)?;
                ones += 1;
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..m.rows()).filter(|&r| !red.rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols()).filter(|&c| !red.col_rows[c].is_empty()).collect();
    let mut rest = IntegerMatrix::zeros(live_rows.len(), live_cols.len());
    for (i, &r) in live_rows.iter().enumerate() {
        for &(c, v) in &red.rows[r] {
            let j = live_cols.binary_search(&c).expect("live column");
            rest.set(i, j, BigInt::from(v));
        }
    }
    Some((ones, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn agrees_with_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (r, c) = (rng.gen_range(1..8), rng.gen_range(1..8));
            let mut s = SparseMatrix::new(r, c);
            for i in 0..r {
                for j in 0..c {
                    if rng.gen_bool(0.4) {
                        s.add(i, j, rng.gen_range(-4..=4));
                    }
                }
            }
            assert_eq!(sparse_smith_diagonal(&s), smith_diagonal(&s.to_dense()));
        }
    }

    #[test]
    fn no_units() {
        let mut s = SparseMatrix::new(2, 2);
        s.add(0, 0, 2);
        s.add(1, 1, 3);
        assert_eq!(sparse_smith_diagonal(&s), vec![BigInt::from(1), BigInt::from(6)]);
    }
}
