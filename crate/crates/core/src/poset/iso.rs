//! Small-scale poset isomorphism.
//!
//! Elements are first bucketed by an invariant signature (rank, cover degrees,
//! up/down set sizes, refined once by the multiset of neighbour signatures),
//! then matched by backtracking. Exponential in the worst case; intended for
//! the test families, not for large inputs.

use std::collections::HashMap;

use super::Poset;

type Signature = (usize, usize, usize, usize, usize, Vec<u64>);

fn signatures(p: &Poset) -> Vec<Signature> {
    let base: Vec<(usize, usize, usize, usize, usize)> = (0..p.len())
        .map(|x| {
            (
                p.rank(x),
                p.upper_covers(x).len(),
                p.lower_covers(x).len(),
                p.up_set(x).count(),
                p.down_set(x).count(),
            )
        })
        .collect();
    let mut ids: HashMap<(usize, usize, usize, usize, usize), u64> = HashMap::new();
    let mut sorted = base.clone();
    sorted.sort();
    sorted.dedup();
    for (i, s) in sorted.into_iter().enumerate() {
        ids.insert(s, i as u64);
    }
    (0..p.len())
        .map(|x| {
            let mut neigh: Vec<u64> = p
                .upper_covers(x)
                .iter()
                .map(|&y| ids[&base[y]] * 2)
                .chain(p.lower_covers(x).iter().map(|&y| ids[&base[y]] * 2 + 1))
                .collect();
            neigh.sort_unstable();
            let (a, b, c, d, e) = base[x];
            (a, b, c, d, e, neigh)
        })
        .collect()
}

pub fn is_isomorphic(p: &Poset, q: &Poset) -> bool {
    find_isomorphism(p, q).is_some()
}

/// An order isomorphism `p -> q` as a map of element indices, if one exists.
pub fn find_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    if p.len() != q.len()
        || p.covers().len() != q.covers().len()
        || p.level_sizes() != q.level_sizes()
        || p.relation_count() != q.relation_count()
    {
        return None;
    }
    let sp = signatures(p);
    let sq = signatures(q);
    let mut a = sp.clone();
    let mut b = sq.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&x| (p.rank(x), x));
    let candidates: Vec<Vec<usize>> = order
        .iter()
        .map(|&x| (0..q.len()).filter(|&y| sq[y] == sp[x]).collect())
        .collect();
    let mut map = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    if extend(p, q, &order, &candidates, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    p: &Poset,
    q: &Poset,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for &y in &candidates[depth] {
        if used[y] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&a| {
            let b = map[a];
            p.leq(a, x) == q.leq(b, y) && p.leq(x, a) == q.leq(y, b)
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(p, q, order, candidates, depth + 1, map, used) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::super::generators::*;
    use super::*;

    #[test]
    fn isomorphism_is_order_preserving() {
        let p = partition_lattice(3).unwrap();
        let q = figure1();
        let map = find_isomorphism(&p, &q).unwrap();
        for x in 0..p.len() {
            for y in 0..p.len() {
                assert_eq!(p.leq(x, y), q.leq(map[x], map[y]));
            }
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        assert!(!is_isomorphic(&chain(3).unwrap(), &boolean_lattice(2).unwrap()));
        assert!(!is_isomorphic(&uniform_flats(2, 4).unwrap(), &uniform_flats(2, 3).unwrap()));
        // same size and level profile, different order
        let n = Poset::from_covers(vec!["a", "b", "c", "d"], &[(0, 2), (1, 2), (1, 3)]).unwrap();
        let z = Poset::from_covers(vec!["a", "b", "c", "d"], &[(0, 2), (0, 3), (1, 3)]).unwrap();
        let x = Poset::from_covers(vec!["a", "b", "c", "d"], &[(0, 2), (1, 2), (0, 3)]).unwrap();
        assert!(is_isomorphic(&n, &z));
        assert!(is_isomorphic(&n, &x));
        let w = Poset::from_covers(vec!["a", "b", "c", "d"], &[(0, 2), (1, 2), (0, 3), (1, 3)]).unwrap();
        assert!(!is_isomorphic(&n, &w));
    }

    #[test]
    fn pairwise_rank_two_fixtures() {
        let ps = [partition_lattice(3).unwrap(), uniform_flats(2, 3).unwrap(), figure1()];
        for a in &ps {
            for b in &ps {
                assert!(is_isomorphic(a, b));
            }
        }
    }
}
