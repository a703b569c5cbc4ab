//! Left and right generalized Möbius functions.
//!
//! `μ_k` is the solution of `μ_k * ζ = δ_[k]`. At a flag `X` the convolution
//! contains `μ_k(X)` itself (the interleaving `Y = (X_2, ..., X_k)`) plus terms
//! `μ_k(X_1, Y)` of strictly smaller rank sum, all sharing `X_1`; so flags are
//! solved per first coordinate in increasing rank-sum order.
//!
//! `μ^r` solves `ζ * μ^r = δ_[k]`; the unknown term is `Y = (X_1, ..., X_{k-1})`
//! and the others have strictly larger rank sum and share `X_k`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::flags::{for_each_interleaving, FlagSpace};
use crate::incidence::IncidenceFunction;
use crate::integer::Integer;
use crate::poset::Poset;
use crate::{Error, Result};

fn is_constant(x: &[usize]) -> bool {
    x.iter().all(|&e| e == x[0])
}

/// `μ_k` on every flag of `space` (complete, rooted or truncated).
pub fn mobius_left(space: &Arc<FlagSpace>) -> Result<IncidenceFunction> {
    let k = space.arity();
    if k < 2 {
        return Err(Error::InvalidArity(k));
    }
    let p = space.poset().clone();
    // flags are lexicographic, so each first coordinate owns a contiguous block
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=space.len() {
        if i == space.len() || space.flag(i)[0] != space.flag(start)[0] {
            blocks.push(start..i);
            start = i;
        }
    }
    let mut values = vec![Integer::from(0); space.len()];
    let mut slices = Vec::with_capacity(blocks.len());
    let mut rest: &mut [Integer] = &mut values;
    for range in &blocks {
        let (head, tail) = rest.split_at_mut(range.len());
        slices.push((range.clone(), head));
        rest = tail;
    }
    slices.into_par_iter().for_each(|(range, out)| {
        let mut order: Vec<usize> = range.clone().collect();
        order.sort_by_key(|&i| space.rank_sum(i));
        let mut arg = Vec::with_capacity(k);
        for i in order {
            let x = space.flag(i);
            let mut acc = if is_constant(x) { Integer::from(1) } else { Integer::from(0) };
            for_each_interleaving(&p, x, |y| {
                if y == &x[1..] {
                    return;
                }
                arg.clear();
                arg.push(x[0]);
                arg.extend_from_slice(y);
                let j = space.position(&arg).expect("interleavings stay in the space");
                acc -= &out[j - range.start];
            });
            out[i - range.start] = acc;
        }
    });
    IncidenceFunction::from_values(space.clone(), values)
}

/// `μ^r` on all flags; needs the complete flag space.
pub fn mobius_right(space: &Arc<FlagSpace>) -> Result<IncidenceFunction> {
    let k = space.arity();
    if k < 2 {
        return Err(Error::InvalidArity(k));
    }
    if !space.is_complete() {
        return Err(Error::InvalidParams("right Möbius function needs every flag".into()));
    }
    let p = space.poset();
    let mut order: Vec<usize> = (0..space.len()).collect();
    order.sort_by(|&a, &b| space.rank_sum(b).cmp(&space.rank_sum(a)).then(a.cmp(&b)));
    let mut values = vec![Integer::from(0); space.len()];
    let mut arg = Vec::with_capacity(k);
    for i in order {
        let x = space.flag(i);
        let mut acc = if is_constant(x) { Integer::from(1) } else { Integer::from(0) };
        for_each_interleaving(p, x, |y| {
            if y == &x[..k - 1] {
                return;
            }
            arg.clear();
            arg.extend_from_slice(y);
            arg.push(x[k - 1]);
            let j = space.position(&arg).expect("interleavings are flags");
            acc -= &values[j];
        });
        values[i] = acc;
    }
    IncidenceFunction::from_values(space.clone(), values)
}

/// `μ_k` on the flags starting at `root`.
pub fn mobius_left_rooted(poset: &Arc<Poset>, k: usize, root: usize) -> Result<IncidenceFunction> {
    mobius_left(&FlagSpace::rooted(poset.clone(), k, root)?)
}

/// Row `y ↦ μ(x, y)` of the classical Möbius function, zero unless `x <= y`.
pub fn mobius_from(p: &Poset, x: usize) -> Vec<Integer> {
    let mut row = vec![Integer::from(0); p.len()];
    let mut ups: Vec<usize> = p.up_set(x).collect();
    ups.sort_by_key(|&y| p.rank(y));
    for y in ups {
        row[y] = if y == x {
            Integer::from(1)
        } else {
            let mut acc = Integer::from(0);
            for z in p.interval(x, y) {
                if z != y {
                    acc -= &row[z];
                }
            }
            acc
        };
    }
    row
}

/// Classical Möbius function `μ(x, y)` as a dense table, zero off the order.
#[derive(Clone, Debug)]
pub struct MobiusTable {
    n: usize,
    values: Vec<Integer>,
}

impl MobiusTable {
    pub fn new(p: &Poset) -> MobiusTable {
        let n = p.len();
        let rows: Vec<Vec<Integer>> = (0..n).into_par_iter().map(|x| mobius_from(p, x)).collect();
        MobiusTable { n, values: rows.concat() }
    }

    pub fn get(&self, x: usize, y: usize) -> &Integer {
        &self.values[x * self.n + y]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::incidence::{delta_all, zeta_fn};

    fn arc(p: Poset) -> Arc<Poset> {
        Arc::new(p)
    }

    #[test]
    fn figure1_arity_three() {
        let p = arc(figure1());
        let s = FlagSpace::new(p.clone(), 3).unwrap();
        let mu = mobius_left(&s).unwrap();
        let (o, a, one) = (0, p.index_of("a").unwrap(), p.index_of("1").unwrap());
        assert_eq!(mu.get(&[o, a, one]), -2);
        assert_eq!(mu.get(&[o, one, one]), 4);
        assert_eq!(mu.get(&[o, o, one]), 2);
        let mr = mobius_right(&s).unwrap();
        assert_eq!(mr.get(&[o, one, one]), 2);
    }

    #[test]
    fn defining_equations_hold() {
        for p in [figure1(), boolean_lattice(3).unwrap(), partition_lattice(4).unwrap(), chain(3).unwrap()] {
            let p = arc(p);
            for k in 2..=4 {
                let s = FlagSpace::new(p.clone(), k).unwrap();
                let z = zeta_fn(&s).unwrap();
                let d = delta_all(&s).unwrap();
                let mu = mobius_left(&s).unwrap();
                assert_eq!(mu.convolve(&z).unwrap(), d);
                let mr = mobius_right(&s).unwrap();
                assert_eq!(z.convolve(&mr).unwrap(), d);
            }
        }
    }

    #[test]
    fn rooted_matches_complete() {
        let p = arc(partition_lattice(4).unwrap());
        let full = mobius_left(&FlagSpace::new(p.clone(), 3).unwrap()).unwrap();
        let root = p.bottom().unwrap();
        let rooted = mobius_left_rooted(&p, 3, root).unwrap();
        assert!(rooted.agrees_with(&full));
        let truncated = mobius_left(&FlagSpace::rooted_truncated(p.clone(), 3, root, 2).unwrap()).unwrap();
        assert!(truncated.agrees_with(&full));
    }

    #[test]
    fn table_matches_arity_two() {
        let p = arc(partition_lattice(4).unwrap());
        let t = MobiusTable::new(&p);
        let mu = mobius_left(&FlagSpace::new(p.clone(), 2).unwrap()).unwrap();
        for (x, v) in mu.iter() {
            assert_eq!(t.get(x[0], x[1]), v);
        }
        // μ(0̂, 1̂) on the partition lattice of [n] is (-1)^{n-1} (n-1)!
        assert_eq!(*t.get(p.bottom().unwrap(), p.top().unwrap()), -6);
    }
}
