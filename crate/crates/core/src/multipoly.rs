//! Sparse integer polynomials in `t1, ..., tk`.
//!
//! Terms print in graded lexicographic order with `t1 > t2 > ...`, e.g.
//! `t1^2*t2^2 - 3*t1^2*t2 + 2*t1^2 + 3*t1*t2 - 6*t1 + 4`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::integer::Integer;
use crate::{Error, Result};

/// Invariant: no stored coefficient is zero; every exponent vector has
/// length `vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Integer>,
}

fn graded_lex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
    let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl MultiPoly {
    pub fn zero(vars: usize) -> MultiPoly {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: impl Into<Integer>) -> MultiPoly {
        MultiPoly::monomial(vars, vec![0; vars], c)
    }

    pub fn one(vars: usize) -> MultiPoly {
        MultiPoly::constant(vars, 1)
    }

    /// The variable `t_{j+1}`.
    pub fn var(vars: usize, j: usize) -> MultiPoly {
        let mut e = vec![0; vars];
        e[j] = 1;
        MultiPoly::monomial(vars, e, 1)
    }

    pub fn monomial(vars: usize, exponents: Vec<u32>, c: impl Into<Integer>) -> MultiPoly {
        assert_eq!(exponents.len(), vars, "exponent vector length");
        let mut p = MultiPoly::zero(vars);
        p.add_term(exponents, c.into());
        p
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Integer) {
        assert_eq!(exponents.len(), self.vars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponents).or_insert_with(Integer::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Integer {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    /// Terms in print order.
    pub fn terms(&self) -> Vec<(&[u32], &Integer)> {
        let mut v: Vec<(&[u32], &Integer)> = self.terms.iter().map(|(e, c)| (e.as_slice(), c)).collect();
        v.sort_by(|a, b| graded_lex(a.0, b.0));
        v
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.vars);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableCountMismatch(self.vars, other.vars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        Ok(self * other)
    }

    pub fn eval(&self, point: &[Integer]) -> Result<Integer> {
        if point.len() != self.vars {
            return Err(Error::VariableCountMismatch(self.vars, point.len()));
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| e.iter().zip(point).fold(c.clone(), |acc, (&d, x)| acc * x.pow(d)))
            .sum())
    }

    fn render(&self, names: &[String], latex: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (e, c)) in self.terms().into_iter().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let magnitude = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (name, &d) in names.iter().zip(e) {
                match (d, latex) {
                    (0, _) => {}
                    (1, _) => factors.push(name.clone()),
                    (d, false) => factors.push(format!("{name}^{d}")),
                    (d, true) => factors.push(format!("{name}^{{{d}}}")),
                }
            }
            let sep = if latex { "" } else { "*" };
            if factors.is_empty() {
                out.push_str(&magnitude.to_string());
            } else if magnitude == 1 {
                out.push_str(&factors.join(sep));
            } else {
                out.push_str(&format!("{magnitude}{sep}{}", factors.join(sep)));
            }
        }
        out
    }

    pub fn variable_names(vars: usize) -> Vec<String> {
        (1..=vars).map(|j| format!("t{j}")).collect()
    }

    pub fn to_latex(&self) -> String {
        let names: Vec<String> = (1..=self.vars).map(|j| format!("t_{j}")).collect();
        self.render(&names, true)
    }

    pub fn to_text_with(&self, names: &[String]) -> String {
        self.render(names, false)
    }

    pub fn to_json_with(&self, names: &[String]) -> String {
        let doc = PolyJson {
            schema: 1,
            variables: names.to_vec(),
            terms: self.terms().into_iter().map(|(e, c)| (e.to_vec(), c.clone())).collect(),
        };
        serde_json::to_string(&doc).expect("polynomial serialization is infallible")
    }

    pub fn to_json(&self) -> String {
        self.to_json_with(&MultiPoly::variable_names(self.vars))
    }

    /// Parses the JSON form; returns the polynomial and its variable names.
    pub fn from_json(text: &str) -> Result<(MultiPoly, Vec<String>)> {
        let doc: PolyJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.schema != 1 {
            return Err(Error::Parse(format!("unsupported schema version {}", doc.schema)));
        }
        let vars = doc.variables.len();
        let mut p = MultiPoly::zero(vars);
        for (e, c) in doc.terms {
            if e.len() != vars {
                return Err(Error::VariableCountMismatch(vars, e.len()));
            }
            p.add_term(e, c);
        }
        Ok((p, doc.variables))
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    schema: u32,
    variables: Vec<String>,
    terms: Vec<(Vec<u32>, Integer)>,
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&MultiPoly::variable_names(self.vars), false))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "variable count");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { vars: self.vars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "variable count");
        let mut out = MultiPoly::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Mul<&Integer> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &Integer) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * rhs);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(vars: usize, j: usize) -> MultiPoly {
        MultiPoly::var(vars, j)
    }

    #[test]
    fn graded_lex_printing() {
        let (t1, t2) = (t(2, 0), t(2, 1));
        let one = MultiPoly::one(2);
        let base = &(&(&t1 * &t2) - &t1) + &one;
        assert_eq!(base.to_string(), "t1*t2 - t1 + 1");
        let sq = base.pow(2);
        assert_eq!(sq.to_string(), "t1^2*t2^2 - 2*t1^2*t2 + t1^2 + 2*t1*t2 - 2*t1 + 1");
        assert_eq!((-&sq).to_string(), "-t1^2*t2^2 + 2*t1^2*t2 - t1^2 - 2*t1*t2 + 2*t1 - 1");
        assert_eq!(MultiPoly::zero(3).to_string(), "0");
        assert_eq!(sq.to_latex(), "t_1^{2}t_2^{2} - 2t_1^{2}t_2 + t_1^{2} + 2t_1t_2 - 2t_1 + 1");
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = t(2, 0);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).coefficient(&[1, 0]), 0);
    }

    #[test]
    fn json_round_trip() {
        let p = &(&t(2, 0) * &t(2, 1)).pow(3) - &MultiPoly::constant(2, 7);
        let text = p.to_json();
        let (q, names) = MultiPoly::from_json(&text).unwrap();
        assert_eq!(q, p);
        assert_eq!(names, vec!["t1", "t2"]);
        assert_eq!(q.to_json(), text);
        assert_eq!(text, r#"{"schema":1,"variables":["t1","t2"],"terms":[[[3,3],1],[[0,0],-7]]}"#);
    }

    #[test]
    fn mismatched_variables() {
        assert_eq!(t(1, 0).checked_add(&t(2, 0)), Err(Error::VariableCountMismatch(1, 2)));
    }

    #[test]
    fn evaluation() {
        let p = &t(2, 0).pow(2) - &t(2, 1);
        assert_eq!(p.eval(&[Integer::from(3), Integer::from(4)]).unwrap(), 5);
    }
}
