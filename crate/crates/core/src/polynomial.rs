//! Sparse univariate integer polynomials in `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::integer::Integer;
use crate::multipoly::MultiPoly;
use crate::Result;

/// Invariant: no stored coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coefficients: BTreeMap<u32, Integer>,
}

impl Polynomial {
    pub fn constant(c: impl Into<Integer>) -> Polynomial {
        Polynomial::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<Integer>, degree: u32) -> Polynomial {
        let mut p = Polynomial::default();
        p.add_term(degree, c.into());
        p
    }

    pub fn t() -> Polynomial {
        Polynomial::monomial(1, 1)
    }

    pub fn from_coefficients(coefficients: &[i64]) -> Polynomial {
        let mut p = Polynomial::default();
        for (d, &c) in coefficients.iter().enumerate() {
            p.add_term(d as u32, Integer::from(c));
        }
        p
    }

    pub fn add_term(&mut self, degree: u32, c: Integer) {
        if c.is_zero() {
            return;
        }
        let slot = self.coefficients.entry(degree).or_insert_with(Integer::zero);
        *slot += c;
        if slot.is_zero() {
            self.coefficients.remove(&degree);
        }
    }

    pub fn coefficient(&self, degree: u32) -> Integer {
        self.coefficients.get(&degree).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coefficients.keys().next_back().copied()
    }

    /// `(degree, coefficient)` pairs, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Integer)> {
        self.coefficients.iter().map(|(&d, c)| (d, c))
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        self.coefficients.iter().map(|(&d, c)| c * &x.pow(d)).sum()
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        (0..n).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// `self(q)` for a multivariate `q`.
    pub fn compose(&self, q: &MultiPoly) -> MultiPoly {
        let Some(top) = self.degree() else {
            return MultiPoly::zero(q.vars());
        };
        let mut out = MultiPoly::zero(q.vars());
        for d in (0..=top).rev() {
            out = &(&out * q) + &MultiPoly::constant(q.vars(), self.coefficient(d));
        }
        out
    }

    pub fn to_multi(&self) -> MultiPoly {
        let mut m = MultiPoly::zero(1);
        for (d, c) in self.terms() {
            m.add_term(vec![d], c.clone());
        }
        m
    }

    pub fn from_multi(m: &MultiPoly) -> Option<Polynomial> {
        if m.vars() != 1 {
            return None;
        }
        let mut p = Polynomial::default();
        for (e, c) in m.terms() {
            p.add_term(e[0], c.clone());
        }
        Some(p)
    }

    fn names() -> Vec<String> {
        vec!["t".to_owned()]
    }

    pub fn to_json(&self) -> String {
        self.to_multi().to_json_with(&Polynomial::names())
    }

    pub fn from_json(text: &str) -> Result<Polynomial> {
        let (m, names) = MultiPoly::from_json(text)?;
        Polynomial::from_multi(&m).ok_or(crate::Error::VariableCountMismatch(1, names.len()))
    }

    pub fn to_latex(&self) -> String {
        self.to_multi().to_latex().replace("t_1", "t")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_multi().to_text_with(&Polynomial::names()))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coefficients: self.coefficients.iter().map(|(&d, c)| (d, -c)).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::default();
        for (da, ca) in self.terms() {
            for (db, cb) in rhs.terms() {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial { (&self).$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial::default()
    }
    fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Polynomial::constant(1)
    }
}
