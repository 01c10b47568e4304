//! Finite groups as validated multiplication tables.
//!
//! Groups built from permutations number their elements by sorting the
//! permutations lexicographically, so element 0 is the identity, element `k`
//! of `cyclic:m` is `g^k`, and in a direct product `(a, b)` has id
//! `a · |B| + b`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::One;

use super::CohomologyError;
use crate::lattice::{cokernel, FGAbelianGroup, IntegerMatrix};
use crate::limits::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates identity (element 0), closure, associativity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self, CohomologyError> {
        let n = table.len();
        let bad = |msg: &str| CohomologyError::BadGroupTable(msg.to_string());
        if n == 0 {
            return Err(bad("empty table"));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(bad("table is not square with entries in range"));
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(bad("element 0 is not the identity"));
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            let inv = (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0).ok_or_else(|| bad("missing inverse"))?;
            inverses[a] = inv;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                if (0..n).any(|c| table[ab][c] != table[a][table[b][c]]) {
                    return Err(bad("multiplication is not associative"));
                }
            }
        }
        if generators.iter().any(|&g| g >= n) {
            return Err(bad("generator out of range"));
        }
        Ok(FiniteGroup { order: n, table: table.concat(), inverses, generators })
    }

    /// Closure of permutation generators (images of `0..degree`), composed as
    /// functions: `(στ)(x) = σ(τ(x))`.
    pub fn from_permutations(gens: &[Vec<usize>], max_order: usize) -> Result<Self, CohomologyError> {
        let degree = gens.first().map_or(0, Vec::len);
        for g in gens {
            let distinct: BTreeSet<usize> = g.iter().copied().collect();
            if g.len() != degree || distinct.len() != degree || g.iter().any(|&x| x >= degree) {
                return Err(CohomologyError::BadGroupSpec(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let compose = |s: &[usize], t: &[usize]| -> Vec<usize> { t.iter().map(|&x| s[x]).collect() };
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q = compose(&p, g);
                if !seen.contains(&q) {
                    if seen.len() >= max_order {
                        return Err(CohomologyError::OrderLimitExceeded { limit: max_order });
                    }
                    seen.insert(q.clone());
                    queue.push_back(q);
                }
            }
        }
        let elements: Vec<Vec<usize>> = seen.into_iter().collect();
        let index: HashMap<&[usize], usize> = elements.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let table: Vec<Vec<usize>> =
            elements.iter().map(|a| elements.iter().map(|b| index[compose(a, b).as_slice()]).collect()).collect();
        let generators = gens.iter().map(|g| index[g.as_slice()]).collect();
        Self::from_table(table, generators)
    }

    pub fn trivial() -> Self {
        Self::from_table(vec![vec![0]], vec![]).expect("trivial group")
    }

    pub fn cyclic(m: usize) -> Result<Self, CohomologyError> {
        if m == 0 {
            return Err(CohomologyError::BadGroupSpec("cyclic group order must be positive".into()));
        }
        Self::from_permutations(&[(1..=m).map(|i| i % m).collect()], m)
    }

    /// Symmetric group on `n` points, capped at `max_order`.
    pub fn symmetric(n: usize, max_order: usize) -> Result<Self, CohomologyError> {
        if n == 0 {
            return Err(CohomologyError::BadGroupSpec("sym needs n ≥ 1".into()));
        }
        let mut gens = vec![(1..=n).map(|i| i % n).collect::<Vec<_>>()];
        if n > 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
        }
        Self::from_permutations(&gens, max_order)
    }

    /// `A × B` with `(a, b) ↦ a · |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let nb = b.order;
        let n = a.order * nb;
        let table = (0..n)
            .map(|x| (0..n).map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)).collect())
            .collect();
        let mut generators: Vec<usize> = a.generators.iter().map(|&g| g * nb).collect();
        generators.extend(b.generators.iter().copied());
        FiniteGroup::from_table(table, generators).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn generator_ids(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// True iff `ids` is closed under products and inverses and contains 0.
    pub fn is_subgroup(&self, ids: &[usize]) -> bool {
        let set: BTreeSet<usize> = ids.iter().copied().collect();
        set.contains(&0)
            && set.iter().all(|&x| x < self.order)
            && set.iter().all(|&a| set.contains(&self.inv(a)) && set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// The subgroup on `ids` with its elements renumbered in increasing id
    /// order, plus the embedding into `self`.
    pub fn subgroup(&self, ids: &[usize]) -> Result<(FiniteGroup, Vec<usize>), CohomologyError> {
        if !self.is_subgroup(ids) {
            return Err(CohomologyError::NotASubgroup);
        }
        let embedding: Vec<usize> = ids.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let pos: HashMap<usize, usize> = embedding.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let table = embedding.iter().map(|&a| embedding.iter().map(|&b| pos[&self.mul(a, b)]).collect()).collect();
        let generators = (1..embedding.len()).collect();
        Ok((FiniteGroup::from_table(table, generators)?, embedding))
    }

    /// All elements as ids `0..order`.
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }
}

/// Parses `cyclic:<m>`, `sym:<n>`, `product:<spec>,<spec>`,
/// `perm:[i0,i1,..];[..]` or `trivial`.
pub fn group_from_spec(spec: &str, limits: &Limits) -> Result<FiniteGroup, CohomologyError> {
    let spec = strip_parens(spec.trim());
    let bad = |msg: String| CohomologyError::BadGroupSpec(msg);
    let g = if spec == "trivial" {
        FiniteGroup::trivial()
    } else if let Some(rest) = spec.strip_prefix("cyclic:") {
        let m: usize = rest.trim().parse().map_err(|_| bad(format!("bad cyclic order '{rest}'")))?;
        if m > limits.group_order {
            return Err(CohomologyError::OrderLimitExceeded { limit: limits.group_order });
        }
        FiniteGroup::cyclic(m)?
    } else if let Some(rest) = spec.strip_prefix("sym:") {
        let n: usize = rest.trim().parse().map_err(|_| bad(format!("bad symmetric degree '{rest}'")))?;
        FiniteGroup::symmetric(n, limits.group_order)?
    } else if let Some(rest) = spec.strip_prefix("product:") {
        let cut = top_level_comma(rest).ok_or_else(|| bad(format!("product needs two factors: '{rest}'")))?;
        let a = group_from_spec(&rest[..cut], limits)?;
        let b = group_from_spec(&rest[cut + 1..], limits)?;
        if a.order() * b.order() > limits.group_order {
            return Err(CohomologyError::OrderLimitExceeded { limit: limits.group_order });
        }
        FiniteGroup::direct_product(&a, &b)
    } else if let Some(rest) = spec.strip_prefix("perm:") {
        let gens = rest
            .split(';')
            .map(|part| {
                let inner = part
                    .trim()
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| bad(format!("expected [..] in '{part}'")))?;
                inner
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| s.trim().parse::<usize>().map_err(|_| bad(format!("bad image '{s}'"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        FiniteGroup::from_permutations(&gens, limits.group_order)?
    } else {
        return Err(bad(format!("unknown group spec '{spec}'")));
    };
    Ok(g)
}

fn strip_parens(s: &str) -> &str {
    let mut s = s;
    while s.starts_with('(') && s.ends_with(')') && matching_close(s) == Some(s.len() - 1) {
        s = s[1..s.len() - 1].trim();
    }
    s
}

fn matching_close(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// `G^{ab}` as `Z^G / ⟨e_g + e_h − e_{gh}⟩`.
pub fn abelianization(g: &FiniteGroup) -> FGAbelianGroup {
    let n = g.order();
    let mut rel = IntegerMatrix::zeros(n, n * n);
    for a in 0..n {
        for b in 0..n {
            let col = a * n + b;
            let ab = g.mul(a, b);
            for (idx, coef) in [(a, 1), (b, 1), (ab, -1)] {
                let v = rel.get(idx, col) + BigInt::from(coef);
                rel.set(idx, col, v);
            }
        }
    }
    let ab = cokernel(&rel);
    debug_assert!(ab.is_finite());
    ab
}

/// Order of the commutator subgroup, by closing the set of commutators.
pub fn commutator_subgroup_order(g: &FiniteGroup) -> usize {
    let mut set: BTreeSet<usize> = BTreeSet::from([0]);
    for a in g.elements() {
        for b in g.elements() {
            set.insert(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
        }
    }
    loop {
        let next: BTreeSet<usize> = set.iter().flat_map(|&x| set.iter().map(move |&y| (x, y))).map(|(x, y)| g.mul(x, y)).collect();
        if next.len() == set.len() {
            return set.len();
        }
        set = next.union(&set).copied().collect();
    }
}

/// `|G^{ab}|` as an integer.
pub fn abelianization_order(g: &FiniteGroup) -> BigInt {
    abelianization(g).order().unwrap_or_else(BigInt::one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> FiniteGroup {
        group_from_spec(s, &Limits::default()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(spec("cyclic:2").order(), 2);
        assert_eq!(spec("sym:3").order(), 6);
        assert_eq!(spec("sym:4").order(), 24);
        assert_eq!(spec("product:cyclic:2,cyclic:2").order(), 4);
        assert_eq!(spec("product:(product:cyclic:2,cyclic:2),cyclic:3").order(), 12);
        assert_eq!(spec("perm:[1,2,0];[1,0,2]").order(), 6);
        assert_eq!(spec("trivial").order(), 1);
        assert_eq!(spec("sym:1").order(), 1);
        assert_eq!(spec("sym:2").order(), 2);
    }

    #[test]
    fn spec_errors() {
        let l = Limits::default();
        assert!(matches!(group_from_spec("dihedral:4", &l), Err(CohomologyError::BadGroupSpec(_))));
        assert!(matches!(group_from_spec("cyclic:x", &l), Err(CohomologyError::BadGroupSpec(_))));
        assert!(matches!(group_from_spec("perm:[1,1]", &l), Err(CohomologyError::BadGroupSpec(_))));
        assert!(matches!(group_from_spec("sym:5", &l), Err(CohomologyError::OrderLimitExceeded { limit: 24 })));
        assert!(matches!(group_from_spec("cyclic:25", &l), Err(CohomologyError::OrderLimitExceeded { .. })));
        let small = Limits { group_order: 5, ..l };
        assert!(matches!(
            group_from_spec("product:cyclic:2,cyclic:3", &small),
            Err(CohomologyError::OrderLimitExceeded { limit: 5 })
        ));
    }

    #[test]
    fn cyclic_numbering() {
        let g = spec("cyclic:5");
        for k in 0..5 {
            assert_eq!(g.mul(1, k), (k + 1) % 5);
        }
        assert_eq!(g.generator_ids(), &[1]);
    }

    #[test]
    fn product_numbering() {
        let g = spec("product:cyclic:2,cyclic:3");
        let h = FiniteGroup::direct_product(&spec("cyclic:2"), &spec("cyclic:3"));
        assert_eq!(g, h);
        assert_eq!(g.mul(3, 1), 4);
    }

    #[test]
    fn bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], vec![]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], vec![]).is_err());
    }

    #[test]
    fn abelianizations() {
        assert_eq!(abelianization(&spec("sym:3")), FGAbelianGroup::cyclic(2));
        assert_eq!(abelianization(&spec("cyclic:6")), FGAbelianGroup::cyclic(6));
        assert_eq!(abelianization(&spec("product:cyclic:2,cyclic:2")), FGAbelianGroup::new(0, [2, 2]));
        assert_eq!(abelianization(&spec("sym:4")), FGAbelianGroup::cyclic(2));
        assert!(abelianization(&FiniteGroup::trivial()).is_trivial());
        for s in ["sym:3", "sym:4", "cyclic:4", "product:cyclic:2,sym:3"] {
            let g = spec(s);
            let expected = BigInt::from(g.order() / commutator_subgroup_order(&g));
            assert_eq!(abelianization_order(&g), expected, "{s}");
        }
    }

    #[test]
    fn subgroups() {
        let g = spec("cyclic:4");
        let (h, emb) = g.subgroup(&[2, 0]).unwrap();
        assert_eq!(h.order(), 2);
        assert_eq!(emb, vec![0, 2]);
        assert_eq!(g.subgroup(&[0, 1]), Err(CohomologyError::NotASubgroup));
        let s3 = spec("sym:3");
        let a3: Vec<usize> = s3.elements().filter(|&x| s3.mul(x, s3.mul(x, x)) == 0).collect();
        assert_eq!(s3.subgroup(&a3).unwrap().0.order(), 3);
    }
}
