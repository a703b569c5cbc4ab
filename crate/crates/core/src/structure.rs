//! Executable witnesses that the flag algebra of arity at least 3 is neither
//! associative nor unital.
//!
//! A one-sided unit `u` would satisfy `f * u = f` (right) or `u * f = f` (left)
//! for every `f`; restricting to a few `f` gives a linear system in the values
//! of `u`, which is checked for solvability over the rationals.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::flags::{for_each_interleaving, FlagSpace};
use crate::incidence::{delta_set, zeta_fn, IncidenceFunction};
use crate::Result;

/// `(f*g)*h - f*(g*h)`.
pub fn associator(f: &IncidenceFunction, g: &IncidenceFunction, h: &IncidenceFunction) -> Result<IncidenceFunction> {
    let left = f.convolve(g)?.convolve(h)?;
    let right = f.convolve(&g.convolve(h)?)?;
    left.sub(&right)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `u * f = f`
    Left,
    /// `f * u = f`
    Right,
}

/// Dense system `A u = b`; one column per flag of the space.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub rows: Vec<Vec<BigRational>>,
    pub rhs: Vec<BigRational>,
}

fn rational(v: &crate::Integer) -> BigRational {
    BigRational::from_integer(v.to_big())
}

/// Unit equations for each `f` at each listed flag (all flags when `at` is
/// `None`).
pub fn unit_system(side: Side, fs: &[IncidenceFunction], at: Option<&[Vec<usize>]>) -> LinearSystem {
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for f in fs {
        let space = f.space();
        let p = space.poset();
        let n = space.arity();
        let flags: Vec<Vec<usize>> = match at {
            Some(list) => list.to_vec(),
            None => space.iter().map(<[usize]>::to_vec).collect(),
        };
        for x in flags {
            let mut row = vec![BigRational::zero(); space.len()];
            let mut left = Vec::with_capacity(n);
            let mut right = Vec::with_capacity(n);
            for_each_interleaving(p, &x, |y| {
                left.clear();
                left.push(x[0]);
                left.extend_from_slice(y);
                right.clear();
                right.extend_from_slice(y);
                right.push(x[n - 1]);
                let (coefficient, unknown) = match side {
                    Side::Right => (f.get(&left), &right),
                    Side::Left => (f.get(&right), &left),
                };
                if !coefficient.is_zero() {
                    let col = space.position(unknown).expect("interleavings are flags");
                    row[col] += rational(&coefficient);
                }
            });
            rows.push(row);
            rhs.push(rational(&f.get(&x)));
        }
    }
    LinearSystem { rows, rhs }
}

impl LinearSystem {
    /// Gaussian elimination on `[A | b]`: solvable iff no row reduces to
    /// `0 = nonzero`.
    pub fn is_feasible(&self) -> bool {
        let mut m: Vec<Vec<BigRational>> = self
            .rows
            .iter()
            .zip(&self.rhs)
            .map(|(r, b)| {
                let mut r = r.clone();
                r.push(b.clone());
                r
            })
            .collect();
        let cols = self.rows.first().map_or(0, Vec::len);
        let mut pivot_row = 0;
        for c in 0..cols {
            let Some(p) = (pivot_row..m.len()).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(pivot_row, p);
            let inv = BigRational::one() / m[pivot_row][c].clone();
            for v in m[pivot_row].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot = m[pivot_row].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != pivot_row && !row[c].is_zero() {
                    let factor = row[c].clone();
                    for (v, pv) in row.iter_mut().zip(&pivot).skip(c) {
                        *v -= &factor * pv;
                    }
                }
            }
            pivot_row += 1;
        }
        m[pivot_row..].iter().all(|row| row[cols].is_zero())
    }
}

/// The three functions whose unit equations are jointly inconsistent:
/// `δ_{1,n}, δ_{n-2,n-1}, ζ` for a right unit and `δ_{1,n}, δ_{2,3}, ζ` for a
/// left unit.
pub fn unit_obstructions(space: &Arc<FlagSpace>, side: Side) -> Result<Vec<IncidenceFunction>> {
    let n = space.arity();
    let middle = match side {
        Side::Right => [n.saturating_sub(2).max(1), n.saturating_sub(1).max(1)],
        Side::Left => [2.min(n), 3.min(n)],
    };
    Ok(vec![delta_set(space, &[1, n])?, delta_set(space, &middle)?, zeta_fn(space)?])
}

/// Flags `(x, ..., x, y)` and `(x, ..., x, y, y)` for a cover `x ⋖ y`; the unit
/// equations at these flags only involve the interval `[x, y]`.
pub fn cover_flags(n: usize, x: usize, y: usize) -> Vec<Vec<usize>> {
    let mut a = vec![x; n];
    a[n - 1] = y;
    let mut b = vec![x; n];
    b[n - 1] = y;
    b[n - 2] = y;
    vec![a, b]
}

/// Whether a one-sided unit is ruled out by the obstruction equations, over the
/// whole flag space.
pub fn unit_infeasible(space: &Arc<FlagSpace>, side: Side) -> Result<bool> {
    let fs = unit_obstructions(space, side)?;
    Ok(!unit_system(side, &fs, None).is_feasible())
}
