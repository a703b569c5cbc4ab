//! Kazhdan-Lusztig polynomials of graded bounded posets, by the defining
//! recursion and by the closed Whitney-number formula.
//!
//! For an upper interval `[F, 1̂]` of rank `ρ` the defining equation is
//! `t^ρ P(1/t) - P(t) = R_F(t)` with `R_F = Σ_{G > F} χ([F,G], t) P([G,1̂], t)`
//! and `deg P < ρ/2`, so the top half of `R_F` is read off as `P` and the
//! bottom half must be its negated mirror.

use num_traits::Zero;
use rayon::prelude::*;

use crate::integer::Integer;
use crate::kl_index::{index_family, instantiate, top_heavy, SymbolicIndexTerm};
use crate::mobius::{mobius_from, MobiusTable};
use crate::poset::Poset;
use crate::polynomial::Polynomial;
use crate::whitney::{whitney_second, MultiIndex};
use crate::{Error, Result};

/// `χ_1(P, t) = Σ_X μ(0̂, X) t^{rk P - rk X}`.
pub fn char_poly1(p: &Poset) -> Result<Polynomial> {
    let bottom = p.require_bottom()?;
    let r = p.top_rank();
    let row = mobius_from(p, bottom);
    let mut out = Polynomial::default();
    for (x, mu) in row.into_iter().enumerate() {
        out.add_term((r - p.rank(x)) as u32, mu);
    }
    Ok(out)
}

fn require_bounded(p: &Poset) -> Result<(usize, usize)> {
    match (p.bottom(), p.top()) {
        (Some(b), Some(t)) => Ok((b, t)),
        _ => Err(Error::NotBounded),
    }
}

/// KL polynomials of every upper interval `[F, 1̂]`, indexed by `F`.
pub fn kl_upper_intervals(p: &Poset) -> Result<Vec<Polynomial>> {
    require_bounded(p)?;
    let r = p.top_rank();
    let mu = MobiusTable::new(p);
    let n = p.len();
    // h[Z] = Σ_{G >= Z} t^{rk G - rk Z} P([G, 1̂])
    let mut kl = vec![Polynomial::default(); n];
    let mut h = vec![Polynomial::default(); n];
    for rank in (0..=r).rev() {
        let level = p.level(rank);
        let solved: Vec<Result<(Polynomial, Polynomial)>> = level
            .par_iter()
            .map(|&f| {
                let mut above = Polynomial::default();
                let mut r_f = Polynomial::default();
                for g in p.up_set(f).filter(|&g| g != f) {
                    above = &above + &(&Polynomial::monomial(1, (p.rank(g) - rank) as u32) * &kl[g]);
                    let m = mu.get(f, g);
                    if *m != 0 {
                        r_f = &r_f + &(&h[g] * &Polynomial::constant(m.clone()));
                    }
                }
                r_f = &r_f + &above;
                let poly = solve_functional_equation(f, r - rank, &r_f)?;
                let h_f = &poly + &above;
                Ok((poly, h_f))
            })
            .collect();
        for (&f, result) in level.iter().zip(solved) {
            let (poly, h_f) = result?;
            kl[f] = poly;
            h[f] = h_f;
        }
    }
    Ok(kl)
}

/// Solves `t^ρ P(1/t) - P(t) = R` under `deg P < ρ/2`, checking every
/// coefficient of `R` for consistency.
fn solve_functional_equation(element: usize, rho: usize, rhs: &Polynomial) -> Result<Polynomial> {
    let fail = |detail: String| Error::InconsistentRecursion { element, detail };
    if rho == 0 {
        if !rhs.is_zero() {
            return Err(fail(format!("nonzero right-hand side {rhs} at the top")));
        }
        return Ok(Polynomial::constant(1));
    }
    if rhs.degree().is_some_and(|d| d as usize > rho) {
        return Err(fail(format!("right-hand side {rhs} has degree above {rho}")));
    }
    let mut poly = Polynomial::default();
    for i in 0..rho.div_ceil(2) {
        let c = rhs.coefficient((rho - i) as u32);
        let mirror = rhs.coefficient(i as u32);
        if mirror != -&c {
            return Err(fail(format!("coefficient of t^{i} is {mirror}, expected {}", -&c)));
        }
        poly.add_term(i as u32, c);
    }
    if rho % 2 == 0 {
        let middle = rhs.coefficient((rho / 2) as u32);
        if middle != 0 {
            return Err(fail(format!("middle coefficient of t^{} is {middle}", rho / 2)));
        }
    }
    if poly.coefficient(0) != 1 {
        return Err(fail(format!("constant term {} is not 1", poly.coefficient(0))));
    }
    Ok(poly)
}

/// KL polynomial of a bounded graded poset by the defining recursion.
pub fn kl_recursive(p: &Poset) -> Result<Polynomial> {
    let (bottom, _) = require_bounded(p)?;
    let mut all = kl_upper_intervals(p)?;
    Ok(std::mem::take(&mut all[bottom]))
}

fn require_lattice(p: &Poset) -> Result<()> {
    if !p.is_lattice() {
        return Err(Error::NotLattice);
    }
    Ok(())
}

/// One signed pair of the closed formula, instantiated at the lattice rank.
#[derive(Clone, Debug)]
pub struct PairTerm {
    pub positive: bool,
    pub index: MultiIndex,
    pub partner: MultiIndex,
    pub w_index: Integer,
    pub w_partner: Integer,
}

impl PairTerm {
    pub fn contribution(&self) -> Integer {
        let d = &self.w_partner - &self.w_index;
        if self.positive {
            d
        } else {
            -d
        }
    }
}

fn pair_term(p: &Poset, term: &SymbolicIndexTerm, r: usize) -> Result<PairTerm> {
    let index = instantiate(&term.entries, r)?;
    let partner = instantiate(&top_heavy(term)?, r)?;
    Ok(PairTerm {
        positive: term.is_positive(),
        w_index: whitney_second(p, &index)?,
        w_partner: whitney_second(p, &partner)?,
        index,
        partner,
    })
}

/// The instantiated pairs `(I, t(I))` of `S_k` with their Whitney numbers.
/// Skips the lattice check.
pub fn coefficient_pairs(p: &Poset, k: usize) -> Result<Vec<PairTerm>> {
    let r = p.top_rank();
    if k == 0 || 2 * k >= r {
        return Err(Error::RankTooSmall { rank: r, detail: format!("coefficient {k} needs 1 <= k < r/2") });
    }
    let family = index_family(k)?;
    family.par_iter().map(|t| pair_term(p, t, r)).collect()
}

/// `Σ_{I ∈ S_k} (-1)^{s(I)} (W_{t(I)} - W_I)` without checking that `p` is a
/// lattice.
pub fn kl_coefficient_unchecked(p: &Poset, k: usize) -> Result<Integer> {
    Ok(coefficient_pairs(p, k)?.iter().map(PairTerm::contribution).sum())
}

/// Degree-`k` coefficient of the KL polynomial of a lattice, `1 <= k < r/2`.
pub fn kl_coefficient(p: &Poset, k: usize) -> Result<Integer> {
    require_lattice(p)?;
    kl_coefficient_unchecked(p, k)
}

pub fn kl_closed_unchecked(p: &Poset) -> Result<Polynomial> {
    require_bounded(p)?;
    let r = p.top_rank();
    let mut out = Polynomial::constant(1);
    for k in (1..).take_while(|&k| 2 * k < r) {
        out.add_term(k as u32, kl_coefficient_unchecked(p, k)?);
    }
    Ok(out)
}

/// KL polynomial of a lattice by the closed Whitney-number formula.
pub fn kl_closed(p: &Poset) -> Result<Polynomial> {
    require_lattice(p)?;
    kl_closed_unchecked(p)
}

fn w(p: &Poset, levels: &[usize]) -> Result<Integer> {
    whitney_second(p, &MultiIndex::new(levels.to_vec())?)
}

/// `W_{r-1} - W_1`, the linear coefficient; needs `r >= 3`.
pub fn linear_coefficient_formula(p: &Poset) -> Result<Integer> {
    let r = p.top_rank();
    if r < 3 {
        return Err(Error::RankTooSmall { rank: r, detail: "linear coefficient needs r >= 3".into() });
    }
    Ok(w(p, &[r - 1])? - w(p, &[1])?)
}

/// `W_{1,2} - W_{1,r-1} + W_{r-3,r-1} - W_{r-3,r-2} + W_{r-2} - W_2`, the
/// quadratic coefficient; needs `r >= 5`.
pub fn quadratic_coefficient_formula(p: &Poset) -> Result<Integer> {
    let r = p.top_rank();
    if r < 5 {
        return Err(Error::RankTooSmall { rank: r, detail: "quadratic coefficient needs r >= 5".into() });
    }
    Ok(w(p, &[1, 2])? - w(p, &[1, r - 1])? + w(p, &[r - 3, r - 1])? - w(p, &[r - 3, r - 2])? + w(p, &[r - 2])?
        - w(p, &[2])?)
}
