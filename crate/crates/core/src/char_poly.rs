//! Generalized characteristic polynomials
//! `χ_k(P) = Σ μ_{k+1}(0̂, X_1, ..., X_k) t_1^{r - rk X_1} ... t_k^{r - rk X_k}`
//! over flags `X_1 <= ... <= X_k`, with `r = rk P`.

use std::sync::Arc;

use crate::flags::FlagSpace;
use crate::integer::Integer;
use crate::limits::Limits;
use crate::mobius::mobius_left;
use crate::multipoly::MultiPoly;
use crate::poset::Poset;
use crate::{Error, Result};

pub fn char_poly_k(p: &Poset, k: usize) -> Result<MultiPoly> {
    if k == 0 {
        return Err(Error::InvalidArity(0));
    }
    let bottom = p.require_bottom()?;
    let r = p.top_rank();
    let space = FlagSpace::rooted(Arc::new(p.clone()), k + 1, bottom)?;
    let mu = mobius_left(&space)?;
    let mut out = MultiPoly::zero(k);
    for (flag, value) in mu.iter() {
        let exponents: Vec<u32> = flag[1..].iter().map(|&x| (r - p.rank(x)) as u32).collect();
        out.add_term(exponents, value.clone());
    }
    Ok(out)
}

/// `Σ_{i=0}^{m} (-1)^i t_1 ⋯ t_{m-i}` in `vars` variables.
fn alternating_prefix_sum(vars: usize, m: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(vars);
    for i in 0..=m {
        let mut e = vec![0u32; vars];
        for slot in e.iter_mut().take(m - i) {
            *slot = 1;
        }
        out.add_term(e, Integer::sign_power(i));
    }
    out
}

/// `χ_k(B_n) = (Σ_{i=0}^{k} (-1)^i t_1 ⋯ t_{k-i})^n`.
pub fn boolean_char_k(n: usize, k: usize) -> Result<MultiPoly> {
    if k == 0 {
        return Err(Error::InvalidArity(0));
    }
    if n > Limits::MAX_BOOLEAN_RANK {
        return Err(Error::SizeLimitExceeded {
            what: format!("Boolean lattice of rank {n}"),
            limit: Limits::MAX_BOOLEAN_RANK as u64,
        });
    }
    Ok(alternating_prefix_sum(k, k).pow(n as u32))
}

/// The would-be deletion-restriction right-hand side
/// `χ_k(A') - (Σ_{i=0}^{k-1} (-1)^i t_1 ⋯ t_{k-1-i}) χ_k(A'')`.
pub fn dr_rhs(deletion: &MultiPoly, restriction: &MultiPoly, k: usize) -> Result<MultiPoly> {
    for p in [deletion, restriction] {
        if p.vars() != k {
            return Err(Error::VariableCountMismatch(k, p.vars()));
        }
    }
    if k == 0 {
        return Err(Error::InvalidArity(0));
    }
    let factor = alternating_prefix_sum(k, k - 1);
    deletion.checked_sub(&(&factor * restriction))
}
