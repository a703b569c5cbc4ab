//! Brute-force oracles that only use the order relation of a poset.

#![allow(dead_code)]

use std::collections::HashMap;

use flagalg::generators::*;
use flagalg::{Integer, Poset};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Every weakly increasing `k`-tuple, by trying all tuples.
pub fn all_flags(p: &Poset, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for f in &out {
            for x in 0..p.len() {
                if f.last().is_none_or(|&l| p.leq(l, x)) {
                    let mut g = f.clone();
                    g.push(x);
                    next.push(g);
                }
            }
        }
        out = next;
    }
    out
}

/// Classical Möbius function from its defining recursion.
pub fn mobius_classical(p: &Poset) -> HashMap<(usize, usize), i64> {
    let mut mu = HashMap::new();
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&x| p.rank(x));
    for x in 0..p.len() {
        for &y in &order {
            if !p.leq(x, y) {
                continue;
            }
            let v = if x == y {
                1
            } else {
                -order.iter().filter(|&&z| p.leq(x, z) && p.lt(z, y)).map(|&z| mu[&(x, z)]).sum::<i64>()
            };
            mu.insert((x, y), v);
        }
    }
    mu
}

/// Solves `μ_k * ζ = δ_[k]` as one dense linear system over all `k`-flags:
/// `Σ_Y μ(X_1, Y_1, ..., Y_{k-1}) = [X_1 = X_k]` with `X_i <= Y_i <= X_{i+1}`.
pub fn mobius_k_oracle(p: &Poset, k: usize) -> HashMap<Vec<usize>, BigInt> {
    mobius_oracle(p, k, false)
}

/// Solves `ζ * μ^r = δ_[k]`: `Σ_Y μ^r(Y_1, ..., Y_{k-1}, X_k) = [X_1 = X_k]`.
pub fn mobius_right_oracle(p: &Poset, k: usize) -> HashMap<Vec<usize>, BigInt> {
    mobius_oracle(p, k, true)
}

fn mobius_oracle(p: &Poset, k: usize, right: bool) -> HashMap<Vec<usize>, BigInt> {
    let flags = all_flags(p, k);
    let index: HashMap<&Vec<usize>, usize> = flags.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let n = flags.len();
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for x in &flags {
        let mut row = vec![BigRational::zero(); n + 1];
        for y in all_flags(p, k - 1) {
            if (0..k - 1).all(|i| p.leq(x[i], y[i]) && p.leq(y[i], x[i + 1])) {
                let f = if right {
                    let mut f = y.clone();
                    f.push(x[k - 1]);
                    f
                } else {
                    let mut f = vec![x[0]];
                    f.extend(&y);
                    f
                };
                row[index[&f]] += BigRational::one();
            }
        }
        if x[0] == x[k - 1] {
            row[n] = BigRational::one();
        }
        rows.push(row);
    }
    let solution = solve(rows, n);
    flags.into_iter().zip(solution).map(|(f, v)| {
        assert!(v.is_integer(), "non-integral Möbius value");
        (f, v.to_integer())
    }).collect()
}

/// Gauss-Jordan on an augmented square system with a unique solution.
fn solve(mut m: Vec<Vec<BigRational>>, n: usize) -> Vec<BigRational> {
    for c in 0..n {
        let pivot = (c..n).find(|&r| !m[r][c].is_zero()).expect("singular system");
        m.swap(c, pivot);
        let inv = m[c][c].clone().recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        let prow = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let factor = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &factor * pv;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n].clone()).collect()
}

/// `W_I` by enumerating all tuples with the prescribed ranks.
pub fn whitney_naive(p: &Poset, levels: &[usize]) -> u64 {
    all_flags(p, levels.len())
        .iter()
        .filter(|f| f.iter().zip(levels).all(|(&x, &r)| p.rank(x) == r))
        .count() as u64
}

pub fn multinomial(n: usize, levels: &[usize]) -> u64 {
    fn factorial(m: usize) -> u64 {
        (1..=m as u64).product()
    }
    let mut parts = Vec::new();
    let mut prev = 0;
    for &i in levels.iter().chain(std::iter::once(&n)) {
        parts.push(i - prev);
        prev = i;
    }
    factorial(n) / parts.into_iter().map(factorial).product::<u64>()
}

/// `χ_1` evaluated at `t`, from the classical Möbius function.
pub fn chi1_at(p: &Poset, t: i64) -> i64 {
    let bottom = p.bottom().expect("bounded below");
    let mu = mobius_classical(p);
    let r = p.top_rank() as u32;
    (0..p.len()).map(|x| mu[&(bottom, x)] * t.pow(r - p.rank(x) as u32)).sum()
}

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn big(v: &Integer) -> BigInt {
    v.to_big()
}

/// Bounded posets used across the acceptance and lemma checks.
pub fn test_posets() -> Vec<(String, Poset)> {
    let mut out: Vec<(String, Poset)> = Vec::new();
    for n in 1..=5 {
        out.push((format!("B_{n}"), boolean_lattice(n).unwrap()));
    }
    out.push(("U_3,6".into(), uniform_flats(3, 6).unwrap()));
    for n in 2..=5 {
        out.push((format!("Pi_{n}"), partition_lattice(n).unwrap()));
    }
    out.push(("figure1".into(), figure1()));
    for seed in 0..20 {
        out.push((format!("random {seed}"), random_graded_bounded(seed, 30)));
    }
    out
}
