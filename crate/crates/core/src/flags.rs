//! Enumeration of partial flags `X_1 <= X_2 <= ... <= X_n`.
//!
//! A [`FlagSpace`] lists the flags of one arity in lexicographic order of
//! element indices, stored flat. Each flag is also packed into a `u128` key
//! (first coordinate most significant), so the key list is sorted and lookup is
//! a binary search.

use std::sync::Arc;

use crate::limits::Limits;
use crate::poset::Poset;
use crate::{Error, Result};

pub type Flag = Vec<usize>;

#[derive(Debug)]
pub struct FlagSpace {
    poset: Arc<Poset>,
    arity: usize,
    root: Option<usize>,
    max_rank: Option<usize>,
    bits: u32,
    data: Vec<usize>,
    keys: Vec<u128>,
}

/// Number of flags of the given arity, saturating; optionally only those with
/// `X_1 = root` and all ranks at most `max_rank`.
pub fn count_flags(p: &Poset, arity: usize, root: Option<usize>, max_rank: Option<usize>) -> u128 {
    if arity == 0 {
        return 1;
    }
    let allowed = |x: usize| max_rank.is_none_or(|m| p.rank(x) <= m);
    // ways[x] = number of flags of the current length starting at x
    let mut ways: Vec<u128> = (0..p.len()).map(|x| u128::from(allowed(x))).collect();
    for _ in 1..arity {
        let next: Vec<u128> = (0..p.len())
            .map(|x| {
                if !allowed(x) {
                    return 0;
                }
                p.up_set(x).fold(0u128, |acc, y| acc.saturating_add(ways[y]))
            })
            .collect();
        ways = next;
    }
    match root {
        Some(r) => ways[r],
        None => ways.iter().fold(0u128, |a, &b| a.saturating_add(b)),
    }
}

fn key_bits(n: usize) -> u32 {
    (usize::BITS - n.saturating_sub(1).leading_zeros()).max(1)
}

impl FlagSpace {
    /// All flags of the given arity.
    pub fn new(poset: Arc<Poset>, arity: usize) -> Result<Arc<FlagSpace>> {
        FlagSpace::build(poset, arity, None, None, Limits::current().max_flags)
    }

    /// Flags with `X_1 = root`. Closed under everything the left Möbius
    /// recursion looks up.
    pub fn rooted(poset: Arc<Poset>, arity: usize, root: usize) -> Result<Arc<FlagSpace>> {
        FlagSpace::build(poset, arity, Some(root), None, Limits::current().max_flags)
    }

    /// Flags with `X_1 = root` and every entry of rank at most `max_rank`.
    pub fn rooted_truncated(poset: Arc<Poset>, arity: usize, root: usize, max_rank: usize) -> Result<Arc<FlagSpace>> {
        FlagSpace::build(poset, arity, Some(root), Some(max_rank), Limits::current().max_flags)
    }

    fn build(
        poset: Arc<Poset>,
        arity: usize,
        root: Option<usize>,
        max_rank: Option<usize>,
        limit: u64,
    ) -> Result<Arc<FlagSpace>> {
        if arity == 0 {
            return Err(Error::InvalidArity(0));
        }
        if let Some(r) = root {
            if r >= poset.len() {
                return Err(Error::ElementOutOfRange { index: r, size: poset.len() });
            }
        }
        let bits = key_bits(poset.len());
        if u64::from(bits) * arity as u64 > 128 {
            return Err(Error::SizeLimitExceeded {
                what: format!("flag arity {arity} on {} elements", poset.len()),
                limit: u64::from(128 / bits),
            });
        }
        let count = count_flags(&poset, arity, root, max_rank);
        if count > u128::from(limit) {
            return Err(Error::EnumerationLimitExceeded { count, limit });
        }
        let count = count as usize;
        let mut data = Vec::with_capacity(count * arity);
        let mut current = Vec::with_capacity(arity);
        let starts: Vec<usize> = match root {
            Some(r) => vec![r],
            None => (0..poset.len()).collect(),
        };
        for x in starts {
            if max_rank.is_none_or(|m| poset.rank(x) <= m) {
                current.push(x);
                extend(&poset, arity, max_rank, &mut current, &mut data);
                current.pop();
            }
        }
        let keys = data.chunks_exact(arity).map(|f| pack(bits, f)).collect();
        Ok(Arc::new(FlagSpace { poset, arity, root, max_rank, bits, data, keys }))
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn is_complete(&self) -> bool {
        self.root.is_none() && self.max_rank.is_none()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn flag(&self, i: usize) -> &[usize] {
        &self.data[i * self.arity..(i + 1) * self.arity]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.data.chunks_exact(self.arity)
    }

    /// Position of a flag in the enumeration order.
    pub fn position(&self, flag: &[usize]) -> Option<usize> {
        if flag.len() != self.arity || flag.iter().any(|&x| x >= self.poset.len()) {
            return None;
        }
        self.keys.binary_search(&pack(self.bits, flag)).ok()
    }

    pub fn rank_sum(&self, i: usize) -> usize {
        self.flag(i).iter().map(|&x| self.poset.rank(x)).sum()
    }

    /// Same poset and same set of flags.
    pub fn same_as(&self, other: &FlagSpace) -> bool {
        std::ptr::eq(self, other)
            || (self.arity == other.arity
                && self.root == other.root
                && self.max_rank == other.max_rank
                && (Arc::ptr_eq(&self.poset, &other.poset) || self.poset == other.poset))
    }

    pub fn same_poset(&self, other: &FlagSpace) -> bool {
        Arc::ptr_eq(&self.poset, &other.poset) || self.poset == other.poset
    }
}

fn pack(bits: u32, flag: &[usize]) -> u128 {
    flag.iter().fold(0u128, |acc, &x| (acc << bits) | x as u128)
}

fn extend(p: &Poset, arity: usize, max_rank: Option<usize>, current: &mut Vec<usize>, out: &mut Vec<usize>) {
    if current.len() == arity {
        out.extend_from_slice(current);
        return;
    }
    let last = *current.last().expect("flags start nonempty");
    let ups: Vec<usize> = p.up_set(last).collect();
    for y in ups {
        if max_rank.is_none_or(|m| p.rank(y) <= m) {
            current.push(y);
            extend(p, arity, max_rank, current, out);
            current.pop();
        }
    }
}

/// All flags of arity `n` in lexicographic order.
pub fn flags(p: &Poset, n: usize) -> Result<Vec<Flag>> {
    let space = FlagSpace::new(Arc::new(p.clone()), n)?;
    Ok(space.iter().map(<[usize]>::to_vec).collect())
}

/// Calls `visit` on every tuple `(Y_1, ..., Y_{n-1})` with
/// `X_i <= Y_i <= X_{i+1}`, in lexicographic order.
pub fn for_each_interleaving(p: &Poset, x: &[usize], mut visit: impl FnMut(&[usize])) {
    let intervals: Vec<Vec<usize>> = x.windows(2).map(|w| p.interval(w[0], w[1])).collect();
    let mut pos = vec![0usize; intervals.len()];
    let mut y: Vec<usize> = intervals.iter().map(|v| v[0]).collect();
    loop {
        visit(&y);
        let mut i = intervals.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            pos[i] += 1;
            if pos[i] < intervals[i].len() {
                y[i] = intervals[i][pos[i]];
                break;
            }
            pos[i] = 0;
            y[i] = intervals[i][0];
        }
    }
}
