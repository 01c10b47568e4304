//! Sparse elimination over a prime field, for ranks of large coboundary
//! matrices. A rank mod p is a lower bound for the rank over the rationals.

/// Mersenne prime 2^31 - 1; products of two residues fit in a `u64`.
pub const RANK_PRIME: u64 = 2_147_483_647;

/// Row-wise sparse integer matrix with machine-size entries.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds `value` to entry `(i, j)`.
    pub fn add(&mut self, i: usize, j: usize, value: i64) {
        if value == 0 {
            return;
        }
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => {
                row[k].1 += value;
                if row[k].1 == 0 {
                    row.remove(k);
                }
            }
            Err(k) => row.insert(k, (j, value)),
        }
    }

    pub fn row(&self, i: usize) -> &[(usize, i64)] {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> super::IntegerMatrix {
        let mut m = super::IntegerMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for &(j, v) in row {
                m.set(i, j, v.into());
            }
        }
        m
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Rank of `m` modulo the prime `p` (which must be below 2^32).
///
/// Stops early once `stop_at` pivots are found.
pub fn modular_rank(m: &SparseMatrix, p: u64, stop_at: Option<usize>) -> usize {
    assert!(p < (1 << 32), "modulus too large for u64 products");
    let reduce = |v: i64| -> u64 { v.rem_euclid(p as i64) as u64 };
    let mut order: Vec<usize> = (0..m.rows).collect();
    order.sort_by_key(|&i| m.data[i].len());

    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; m.cols];
    let limit = stop_at.unwrap_or(usize::MAX).min(m.rows.min(m.cols));
    let mut rank = 0;
    let mut scratch: Vec<(usize, u64)> = Vec::new();
    for i in order {
        if rank >= limit {
            break;
        }
        let mut row: Vec<(usize, u64)> =
            m.data[i].iter().map(|&(j, v)| (j, reduce(v))).filter(|e| e.1 != 0).collect();
        while let Some(&(lead, coef)) = row.first() {
            match &pivots[lead] {
                Some(piv) => {
                    // row -= coef * piv, with piv's leading entry equal to 1.
                    let factor = p - coef;
                    scratch.clear();
                    let (mut a, mut b) = (0, 0);
                    while a < row.len() || b < piv.len() {
                        let ja = row.get(a).map_or(usize::MAX, |e| e.0);
                        let jb = piv.get(b).map_or(usize::MAX, |e| e.0);
                        if ja < jb {
                            scratch.push(row[a]);
                            a += 1;
                        } else if jb < ja {
                            scratch.push((jb, piv[b].1 * factor % p));
                            b += 1;
                        } else {
                            let v = (row[a].1 + piv[b].1 * factor) % p;
                            if v != 0 {
                                scratch.push((ja, v));
                            }
                            a += 1;
                            b += 1;
                        }
                    }
                    std::mem::swap(&mut row, &mut scratch);
                }
                None => {
                    let inv = inv_mod(coef, p);
                    for e in row.iter_mut() {
                        e.1 = e.1 * inv % p;
                    }
                    pivots[lead] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_matches_dense() {
        let mut s = SparseMatrix::new(3, 3);
        for (i, j, v) in [(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4), (2, 2, 7)] {
            s.add(i, j, v);
        }
        assert_eq!(modular_rank(&s, RANK_PRIME, None), 2);
        assert_eq!(s.to_dense().rank(), 2);
        assert_eq!(modular_rank(&s, 7, None), 1);
    }

    #[test]
    fn cancelling_adds() {
        let mut s = SparseMatrix::new(1, 2);
        s.add(0, 1, 3);
        s.add(0, 1, -3);
        assert_eq!(s.nnz(), 0);
        assert_eq!(modular_rank(&s, RANK_PRIME, None), 0);
    }
}
