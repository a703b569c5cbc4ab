//! Multi-indexed Whitney numbers.
//!
//! `W_I` counts flags `X_1 <= ... <= X_k` with `rk X_j = i_j`; `w_I` sums the
//! left Möbius function `μ_k` over the same flags.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::flags::FlagSpace;
use crate::integer::Integer;
use crate::mobius::mobius_left;
use crate::poset::Poset;
use crate::{Error, Result};

/// Weakly increasing sequence of rank levels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(levels: Vec<usize>) -> Result<MultiIndex> {
        if levels.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMultiIndex(levels));
        }
        Ok(MultiIndex(levels))
    }

    /// Sorts the levels first.
    pub fn from_unsorted(mut levels: Vec<usize>) -> MultiIndex {
        levels.sort_unstable();
        MultiIndex(levels)
    }

    pub fn empty() -> MultiIndex {
        MultiIndex(Vec::new())
    }

    pub fn levels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check(&self, p: &Poset) -> Result<()> {
        let max = p.top_rank();
        match self.0.iter().find(|&&i| i > max) {
            Some(&index) => Err(Error::IndexOutOfRange { index, max }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All weakly increasing `k`-tuples over `0..=r`, lexicographic.
pub fn multi_indices(r: usize, k: usize) -> Vec<MultiIndex> {
    fn go(r: usize, k: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if cur.len() == k {
            out.push(MultiIndex(cur.clone()));
            return;
        }
        for i in lo..=r {
            cur.push(i);
            go(r, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(r, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// `W_I` by pushing a count vector up through the prescribed rank levels; a
/// repeated level is the identity step.
pub fn whitney_second(p: &Poset, index: &MultiIndex) -> Result<Integer> {
    index.check(p)?;
    let Some((&first, rest)) = index.0.split_first() else {
        return Ok(Integer::from(1));
    };
    let mut counts = vec![Integer::from(0); p.len()];
    for &x in p.level(first) {
        counts[x] = Integer::from(1);
    }
    let mut current = first;
    for &next in rest {
        if next == current {
            continue;
        }
        let upper = p.level(next);
        let lower = p.level(current);
        let stepped: Vec<Integer> = upper
            .par_iter()
            .map(|&y| lower.iter().filter(|&&x| p.leq(x, y)).map(|&x| &counts[x]).sum())
            .collect();
        for &x in lower {
            counts[x] = Integer::from(0);
        }
        for (&y, v) in upper.iter().zip(stepped) {
            counts[y] = v;
        }
        current = next;
    }
    Ok(p.level(current).iter().map(|&x| &counts[x]).sum())
}

/// `W_I` by walking every flag with the prescribed ranks.
pub fn whitney_second_naive(p: &Poset, index: &MultiIndex) -> Result<Integer> {
    index.check(p)?;
    fn walk(p: &Poset, levels: &[usize], last: usize) -> u128 {
        match levels.split_first() {
            None => 1,
            Some((&r, rest)) => p.up_set(last).filter(|&y| p.rank(y) == r).map(|y| walk(p, rest, y)).sum(),
        }
    }
    let Some((&first, rest)) = index.0.split_first() else {
        return Ok(Integer::from(1));
    };
    let total: u128 = p.level(first).iter().map(|&x| walk(p, rest, x)).sum();
    Ok(Integer::from(total))
}

/// `w_I = Σ μ_k(X)` over flags with `rk X_j = i_j`, `k = |I| >= 2`.
pub fn whitney_first(p: &Poset, index: &MultiIndex) -> Result<Integer> {
    index.check(p)?;
    let k = index.len();
    match k {
        0 => return Ok(Integer::from(1)),
        1 => return Err(Error::InvalidArity(1)),
        _ => {}
    }
    let levels = &index.0;
    let top = levels[k - 1];
    let shared = Arc::new(p.clone());
    let parts: Vec<Result<Integer>> = p
        .level(levels[0])
        .par_iter()
        .map(|&x| {
            let space = FlagSpace::rooted_truncated(shared.clone(), k, x, top)?;
            let mu = mobius_left(&space)?;
            Ok(mu
                .iter()
                .filter(|(f, _)| f.iter().zip(levels).all(|(&e, &r)| p.rank(e) == r))
                .map(|(_, v)| v)
                .sum())
        })
        .collect();
    parts.into_iter().sum()
}

fn subset_levels(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn check_subset_size(n: usize) -> Result<()> {
    if n > 40 {
        return Err(Error::SizeLimitExceeded { what: format!("2^{n} index subsets"), limit: 40 });
    }
    Ok(())
}

/// `Σ_{I ⊆ [n-1]} (-1)^{|I|+1} W_{I ∪ {n}}`, which equals `w_{(0,n)}`.
pub fn whitney_first_via_interpolation(p: &Poset, n: usize) -> Result<Integer> {
    p.require_bottom()?;
    if n == 0 || n > p.top_rank() {
        return Err(Error::IndexOutOfRange { index: n, max: p.top_rank() });
    }
    check_subset_size(n - 1)?;
    let terms: Vec<Result<Integer>> = (0..1u64 << (n - 1))
        .into_par_iter()
        .map(|mask| {
            let mut levels = subset_levels(mask, n - 1);
            levels.push(n);
            let w = whitney_second(p, &MultiIndex(levels))?;
            Ok(if mask.count_ones() % 2 == 0 { -w } else { w })
        })
        .collect();
    terms.into_iter().sum()
}

/// Region counts `(a, b)` of an arrangement with intersection poset `p`:
/// `a = Σ_{I ⊆ [r]} (-1)^{|I| + max I} W_I` and
/// `b = (-1)^r Σ_{I ⊆ [r]} (-1)^{|I|} W_I`, with `W_∅ = 1` and `max ∅ = 0`.
pub fn region_counts(p: &Poset) -> Result<(Integer, Integer)> {
    p.require_bottom()?;
    let r = p.top_rank();
    check_subset_size(r)?;
    let terms: Vec<Result<(Integer, Integer)>> = (0..1u64 << r)
        .into_par_iter()
        .map(|mask| {
            let levels = subset_levels(mask, r);
            let size = levels.len();
            let max = levels.last().copied().unwrap_or(0);
            let w = whitney_second(p, &MultiIndex(levels))?;
            let a = if (size + max) % 2 == 0 { w.clone() } else { -w.clone() };
            let b = if size % 2 == 0 { w } else { -w };
            Ok((a, b))
        })
        .collect();
    let mut a = Integer::from(0);
    let mut b = Integer::from(0);
    for t in terms {
        let (x, y) = t?;
        a += x;
        b += y;
    }
    Ok((a, if r % 2 == 0 { b } else { -b }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn second_kind_examples() {
        let b3 = boolean_lattice(3).unwrap();
        assert_eq!(whitney_second(&b3, &mi(&[1, 2])).unwrap(), 6);
        assert_eq!(whitney_second(&b3, &MultiIndex::empty()).unwrap(), 1);
        let p4 = partition_lattice(4).unwrap();
        assert_eq!(whitney_second(&p4, &mi(&[1])).unwrap(), 6);
        assert_eq!(whitney_second(&p4, &mi(&[2])).unwrap(), 7);
        assert_eq!(whitney_second(&p4, &mi(&[4])), Err(Error::IndexOutOfRange { index: 4, max: 3 }));
        assert_eq!(MultiIndex::new(vec![2, 1]), Err(Error::InvalidMultiIndex(vec![2, 1])));
    }

    #[test]
    fn fast_matches_naive() {
        for p in [boolean_lattice(4).unwrap(), partition_lattice(5).unwrap(), uniform_flats(3, 6).unwrap(), figure1()] {
            for k in 0..=3 {
                for index in multi_indices(p.top_rank(), k) {
                    assert_eq!(whitney_second(&p, &index).unwrap(), whitney_second_naive(&p, &index).unwrap());
                }
            }
        }
    }

    #[test]
    fn first_kind_examples() {
        let b2 = boolean_lattice(2).unwrap();
        assert_eq!(whitney_first(&b2, &mi(&[0, 1])).unwrap(), -2);
        assert_eq!(whitney_first(&figure1(), &mi(&[0, 2])).unwrap(), 2);
        let p4 = partition_lattice(4).unwrap();
        for j in 0..=3 {
            assert_eq!(whitney_first(&p4, &mi(&[j, j])).unwrap(), p4.level(j).len() as i64);
        }
        assert_eq!(whitney_first(&p4, &mi(&[1])), Err(Error::InvalidArity(1)));
    }

    #[test]
    fn interpolation_examples() {
        let b2 = boolean_lattice(2).unwrap();
        assert_eq!(whitney_first_via_interpolation(&b2, 1).unwrap(), -2);
        assert_eq!(whitney_first_via_interpolation(&b2, 2).unwrap(), 1);
        assert_eq!(whitney_first_via_interpolation(&figure1(), 2).unwrap(), 2);
        assert!(whitney_first_via_interpolation(&b2, 3).is_err());
    }

    #[test]
    fn region_count_examples() {
        let pairs = [(boolean_lattice(2).unwrap(), 4), (figure1(), 6), (chain(1).unwrap(), 2), (boolean_lattice(1).unwrap(), 2)];
        for (p, a) in pairs {
            assert_eq!(region_counts(&p).unwrap(), (Integer::from(a), Integer::from(0)));
        }
        let two = Poset::from_covers(vec!["p", "q"], &[]).unwrap();
        assert_eq!(region_counts(&two), Err(Error::NotBoundedBelow));
    }

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(multi_indices(2, 2).len(), 6);
        assert_eq!(multi_indices(3, 0), vec![MultiIndex::empty()]);
    }
}
