//! Finite graded posets.
//!
//! A [`Poset`] is built from its cover relations. The order relation is stored
//! closed as a dense bit matrix (both directions), ranks are recomputed from
//! the covers and gradedness is enforced at construction, so every downstream
//! computation may index by rank without further checks.

mod bits;
pub mod generators;
pub mod io;
pub mod iso;

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

pub use bits::{ones, BitMatrix};

use crate::limits::Limits;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    name: Option<String>,
    labels: Vec<String>,
    up: BitMatrix,
    down: BitMatrix,
    covers: Vec<(usize, usize)>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    rank: Vec<usize>,
    levels: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub graded: bool,
    pub bounded_below: bool,
    pub bounded_above: bool,
    pub lattice: bool,
}

pub(crate) fn check_relation_size(n: usize) -> Result<()> {
    let limit = Limits::current().max_relation_bits;
    let bits = (n as u128) * (n as u128);
    if bits > limit as u128 {
        return Err(Error::SizeLimitExceeded {
            what: format!("order relation of {n} elements ({bits} bits)"),
            limit,
        });
    }
    Ok(())
}

impl Poset {
    pub fn from_covers<S: Into<String>>(labels: Vec<S>, covers: &[(usize, usize)]) -> Result<Poset> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidParams("a poset needs at least one element".into()));
        }
        check_relation_size(n)?;

        let mut seen = HashSet::with_capacity(covers.len());
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for &(a, b) in covers {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::ElementOutOfRange { index, size: n });
                }
            }
            if a == b {
                return Err(Error::CycleDetected(a));
            }
            if !seen.insert((a, b)) {
                return Err(Error::DuplicateCover(a, b));
            }
            upper_covers[a].push(b);
            lower_covers[b].push(a);
        }
        for v in upper_covers.iter_mut().chain(lower_covers.iter_mut()) {
            v.sort_unstable();
        }

        // Kahn's algorithm; leftover in-degree means a cycle.
        let mut indeg: Vec<usize> = lower_covers.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in &upper_covers[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if order.len() < n {
            let culprit = (0..n).find(|&x| indeg[x] > 0).unwrap_or(0);
            return Err(Error::CycleDetected(culprit));
        }

        let mut rank = vec![0usize; n];
        for &x in &order {
            for &y in &upper_covers[x] {
                rank[y] = rank[y].max(rank[x] + 1);
            }
        }
        let mut cover_list: Vec<(usize, usize)> = covers.to_vec();
        cover_list.sort_unstable();
        for &(a, b) in &cover_list {
            if rank[b] != rank[a] + 1 {
                return Err(Error::NotGraded {
                    lower: a,
                    upper: b,
                    lower_rank: rank[a],
                    upper_rank: rank[b],
                });
            }
        }

        let mut up = BitMatrix::new(n);
        for &x in order.iter().rev() {
            up.set(x, x);
            for &y in &upper_covers[x] {
                up.or_rows(x, y);
            }
        }
        let down = up.transpose();

        let top = rank.iter().copied().max().unwrap_or(0);
        let mut levels = vec![Vec::new(); top + 1];
        for x in 0..n {
            levels[rank[x]].push(x);
        }

        Ok(Poset {
            name: None,
            labels,
            up,
            down,
            covers: cover_list,
            upper_covers,
            lower_covers,
            rank,
            levels,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Rank of the poset: the largest element rank.
    pub fn top_rank(&self) -> usize {
        self.levels.len() - 1
    }

    /// Elements of rank `j`; empty above the top rank.
    pub fn level(&self, j: usize) -> &[usize] {
        self.levels.get(j).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up.get(x, y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// Bit row of `{y : y >= x}`.
    pub fn up_row(&self, x: usize) -> &[u64] {
        self.up.row(x)
    }

    /// Bit row of `{y : y <= x}`.
    pub fn down_row(&self, x: usize) -> &[u64] {
        self.down.row(x)
    }

    pub fn up_set(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        ones(self.up.row(x))
    }

    pub fn down_set(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        ones(self.down.row(x))
    }

    /// Elements `z` with `x <= z <= y`, ascending by index.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        let a = self.up.row(x);
        let b = self.down.row(y);
        let mut out = Vec::new();
        for (wi, (p, q)) in a.iter().zip(b).enumerate() {
            let mut w = p & q;
            while w != 0 {
                out.push(wi * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lower_covers[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper_covers[x].is_empty()).collect()
    }

    /// The unique minimal element, if there is one.
    pub fn bottom(&self) -> Option<usize> {
        match self.levels[0].as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<usize> {
        match self.maximal_elements().as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }

    pub fn require_bottom(&self) -> Result<usize> {
        self.bottom().ok_or(Error::NotBoundedBelow)
    }

    pub fn relation_count(&self) -> usize {
        self.up.count_ones()
    }

    fn check_element(&self, x: usize) -> Result<()> {
        if x >= self.len() {
            return Err(Error::ElementOutOfRange { index: x, size: self.len() });
        }
        Ok(())
    }

    /// Induced subposet on a convex subset; covers of the subset are exactly the
    /// covers of `self` between its members.
    fn induced_convex(&self, members: &[usize]) -> Result<Poset> {
        let mut position = vec![usize::MAX; self.len()];
        for (i, &x) in members.iter().enumerate() {
            position[x] = i;
        }
        let labels: Vec<String> = members.iter().map(|&x| self.labels[x].clone()).collect();
        let covers: Vec<(usize, usize)> = self
            .covers
            .iter()
            .filter(|&&(a, b)| position[a] != usize::MAX && position[b] != usize::MAX)
            .map(|&(a, b)| (position[a], position[b]))
            .collect();
        Poset::from_covers(labels, &covers)
    }

    /// `{y : y <= x}` with inherited ranks.
    pub fn localization(&self, x: usize) -> Result<Poset> {
        self.check_element(x)?;
        let members: Vec<usize> = self.down_set(x).collect();
        self.induced_convex(&members)
    }

    /// `{y : y >= x}` with ranks shifted so that `x` has rank 0.
    pub fn restriction(&self, x: usize) -> Result<Poset> {
        self.check_element(x)?;
        let members: Vec<usize> = self.up_set(x).collect();
        self.induced_convex(&members)
    }

    /// Cartesian product with the componentwise order; element `(a, b)` has
    /// index `a * q.len() + b`.
    pub fn product(p: &Poset, q: &Poset) -> Result<Poset> {
        let m = q.len();
        check_relation_size(p.len() * m)?;
        let mut labels = Vec::with_capacity(p.len() * m);
        for a in 0..p.len() {
            for b in 0..m {
                labels.push(format!("({},{})", p.labels[a], q.labels[b]));
            }
        }
        let mut covers = Vec::new();
        for a in 0..p.len() {
            for b in 0..m {
                for &c in &p.upper_covers[a] {
                    covers.push((a * m + b, c * m + b));
                }
                for &d in &q.upper_covers[b] {
                    covers.push((a * m + b, a * m + d));
                }
            }
        }
        let mut out = Poset::from_covers(labels, &covers)?;
        if let (Some(a), Some(b)) = (p.name(), q.name()) {
            out.name = Some(format!("product:({a},{b})"));
        }
        Ok(out)
    }

    /// Same elements relabelled so that indices are sorted by `(rank, label)`.
    pub fn canonical(&self) -> Poset {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| (self.rank[a], &self.labels[a]).cmp(&(self.rank[b], &self.labels[b])));
        let mut position = vec![0; self.len()];
        for (i, &x) in order.iter().enumerate() {
            position[x] = i;
        }
        let labels: Vec<String> = order.iter().map(|&x| self.labels[x].clone()).collect();
        let covers: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (position[a], position[b])).collect();
        let mut out = Poset::from_covers(labels, &covers).expect("relabelling preserves validity");
        out.name = self.name.clone();
        out
    }

    pub fn is_lattice(&self) -> bool {
        if self.bottom().is_none() || self.top().is_none() {
            return false;
        }
        let mut scratch = Vec::new();
        for x in 0..self.len() {
            for y in (x + 1)..self.len() {
                if self.leq(x, y) || self.leq(y, x) {
                    continue;
                }
                if and_least(&self.up, x, y, &self.rank, true, &mut scratch).is_none()
                    || and_least(&self.down, x, y, &self.rank, false, &mut scratch).is_none()
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn validate(&self) -> Diagnostics {
        let graded = self.covers.iter().all(|&(a, b)| self.rank[b] == self.rank[a] + 1);
        Diagnostics {
            graded,
            bounded_below: self.bottom().is_some(),
            bounded_above: self.top().is_some(),
            lattice: self.is_lattice(),
        }
    }
}

/// Least element of `rows[x] & rows[y]` (least in the order the rows encode:
/// upward rows give joins, downward rows give meets).
fn and_least(rows: &BitMatrix, x: usize, y: usize, rank: &[usize], upward: bool, scratch: &mut Vec<u64>) -> Option<usize> {
    bits::and_into(rows.row(x), rows.row(y), scratch);
    let mut best: Option<usize> = None;
    let mut ties = 0;
    for z in ones(scratch) {
        let better = match best {
            None => true,
            Some(b) => {
                if upward {
                    rank[z] < rank[b]
                } else {
                    rank[z] > rank[b]
                }
            }
        };
        if better {
            best = Some(z);
            ties = 1;
        } else if best.is_some_and(|b| rank[b] == rank[z]) {
            ties += 1;
        }
    }
    let z = best?;
    if ties != 1 {
        return None;
    }
    bits::is_subset(scratch, rows.row(z)).then_some(z)
}
