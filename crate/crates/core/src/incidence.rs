//! Functions on partial flags and their interleaved convolution
//! `(f*g)(X) = sum_Y f(X_1, Y) g(Y, X_n)` over `X_i <= Y_i <= X_{i+1}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::flags::{for_each_interleaving, Flag, FlagSpace};
use crate::integer::Integer;
use crate::{Error, Result};

/// Exact commutative coefficient ring.
pub trait Ring:
    Clone
    + Zero
    + One
    + PartialEq
    + Send
    + Sync
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + Zero
        + One
        + PartialEq
        + Send
        + Sync
        + fmt::Display
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Values stored densely in the order of the flag space.
#[derive(Clone, Debug)]
pub struct IncidenceFunction<R = Integer> {
    space: Arc<FlagSpace>,
    values: Vec<R>,
}

fn require_arity(space: &FlagSpace) -> Result<()> {
    if space.arity() < 2 {
        return Err(Error::InvalidArity(space.arity()));
    }
    Ok(())
}

impl<R: Ring> IncidenceFunction<R> {
    pub fn from_values(space: Arc<FlagSpace>, values: Vec<R>) -> Result<Self> {
        require_arity(&space)?;
        if values.len() != space.len() {
            return Err(Error::InvalidParams(format!(
                "{} values for {} flags",
                values.len(),
                space.len()
            )));
        }
        Ok(IncidenceFunction { space, values })
    }

    pub fn from_fn(space: &Arc<FlagSpace>, f: impl Fn(&[usize]) -> R) -> Result<Self> {
        require_arity(space)?;
        let values = space.iter().map(f).collect();
        Ok(IncidenceFunction { space: space.clone(), values })
    }

    pub fn zero(space: &Arc<FlagSpace>) -> Result<Self> {
        IncidenceFunction::from_fn(space, |_| R::zero())
    }

    pub fn space(&self) -> &Arc<FlagSpace> {
        &self.space
    }

    pub fn arity(&self) -> usize {
        self.space.arity()
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    /// Value at `flag`; zero for tuples outside the flag space.
    pub fn get(&self, flag: &[usize]) -> R {
        self.space.position(flag).map_or_else(R::zero, |i| self.values[i].clone())
    }

    pub fn try_get(&self, flag: &[usize]) -> Result<&R> {
        self.space
            .position(flag)
            .map(|i| &self.values[i])
            .ok_or_else(|| Error::FlagNotInPoset(flag.to_vec()))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch(self.arity(), other.arity()));
        }
        if !self.space.same_poset(&other.space) {
            return Err(Error::PosetMismatch);
        }
        Ok(())
    }

    /// Interleaved convolution. The result lives on `self`'s flag space; `g`
    /// must be defined on all flags.
    pub fn convolve(&self, g: &Self) -> Result<Self> {
        self.check_compatible(g)?;
        if !g.space.is_complete() {
            return Err(Error::InvalidParams("right convolution factor must be defined on every flag".into()));
        }
        let p = self.space.poset().clone();
        let n = self.arity();
        let values: Vec<R> = (0..self.space.len())
            .into_par_iter()
            .map(|i| {
                let x = self.space.flag(i);
                let mut left = Vec::with_capacity(n);
                let mut right = Vec::with_capacity(n);
                let mut acc = R::zero();
                for_each_interleaving(&p, x, |y| {
                    left.clear();
                    left.push(x[0]);
                    left.extend_from_slice(y);
                    let a = self.get(&left);
                    if a.is_zero() {
                        return;
                    }
                    right.clear();
                    right.extend_from_slice(y);
                    right.push(x[n - 1]);
                    acc = acc.clone() + a * g.get(&right);
                });
                acc
            })
            .collect();
        Ok(IncidenceFunction { space: self.space.clone(), values })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Result<Self> {
        self.check_compatible(other)?;
        if !self.space.same_as(&other.space) {
            return Err(Error::InvalidParams("functions are defined on different flag sets".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect();
        Ok(IncidenceFunction { space: self.space.clone(), values })
    }

    /// Equal values on every flag of `self`'s space.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.arity() == other.arity()
            && self.space.same_poset(&other.space)
            && self.space.iter().zip(&self.values).all(|(x, v)| *v == other.get(x))
    }

    /// One line per flag, `(labels, ...) -> value`, in lexicographic order.
    pub fn dump(&self) -> String {
        let p = self.space.poset();
        let mut out = String::new();
        for (x, v) in self.space.iter().zip(&self.values) {
            let labels: Vec<&str> = x.iter().map(|&e| p.label(e)).collect();
            out.push_str(&format!("({}) -> {}\n", labels.join(", "), v));
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize], &R)> {
        self.space.iter().zip(&self.values)
    }
}

impl<R: Ring> PartialEq for IncidenceFunction<R> {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_as(&other.space) && self.values == other.values
    }
}

/// `δ_I`: 1 where all coordinates listed in `I` (1-based) coincide.
pub fn delta_set<R: Ring>(space: &Arc<FlagSpace>, indices: &[usize]) -> Result<IncidenceFunction<R>> {
    let n = space.arity();
    if indices.is_empty() {
        return Err(Error::InvalidParams("delta needs a nonempty index set".into()));
    }
    for &i in indices {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
    }
    IncidenceFunction::from_fn(space, |x| {
        let first = x[indices[0] - 1];
        if indices.iter().all(|&i| x[i - 1] == first) {
            R::one()
        } else {
            R::zero()
        }
    })
}

/// `δ_[n]`: 1 on constant flags.
pub fn delta_all<R: Ring>(space: &Arc<FlagSpace>) -> Result<IncidenceFunction<R>> {
    let all: Vec<usize> = (1..=space.arity()).collect();
    delta_set(space, &all)
}

pub fn zeta_fn<R: Ring>(space: &Arc<FlagSpace>) -> Result<IncidenceFunction<R>> {
    IncidenceFunction::from_fn(space, |_| R::one())
}

/// Characteristic function of a set of flags.
pub fn indicator<R: Ring>(space: &Arc<FlagSpace>, set: &[Flag]) -> Result<IncidenceFunction<R>> {
    let mut f = IncidenceFunction::zero(space)?;
    for x in set {
        let i = space.position(x).ok_or_else(|| Error::FlagNotInPoset(x.clone()))?;
        f.values[i] = R::one();
    }
    Ok(f)
}
