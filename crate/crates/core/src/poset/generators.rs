//! Families of graded posets used throughout the test suite and the CLI.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_relation_size, Poset};
use crate::limits::Limits;
use crate::{Error, Result};

fn subset_label(mask: u64, n: usize) -> String {
    let items: Vec<String> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Subsets of `[n]` ordered by inclusion.
pub fn boolean_lattice(n: usize) -> Result<Poset> {
    if n > Limits::MAX_BOOLEAN_RANK {
        return Err(Error::SizeLimitExceeded {
            what: format!("boolean lattice of rank {n}"),
            limit: Limits::MAX_BOOLEAN_RANK as u64,
        });
    }
    let size = 1usize << n;
    check_relation_size(size)?;
    let labels: Vec<String> = (0..size as u64).map(|m| subset_label(m, n)).collect();
    let mut covers = Vec::new();
    for m in 0..size {
        for i in 0..n {
            if m >> i & 1 == 0 {
                covers.push((m, m | 1 << i));
            }
        }
    }
    Ok(Poset::from_covers(labels, &covers)?.with_name(format!("boolean:{n}")))
}

/// The total order `0 < 1 < ... < m`.
pub fn chain(m: usize) -> Result<Poset> {
    check_relation_size(m + 1)?;
    let labels: Vec<String> = (0..=m).map(|i| i.to_string()).collect();
    let covers: Vec<(usize, usize)> = (0..m).map(|i| (i, i + 1)).collect();
    Ok(Poset::from_covers(labels, &covers)?.with_name(format!("chain:{m}")))
}

/// Three atoms under a common top: the rank-2 lattice of three concurrent lines.
pub fn figure1() -> Poset {
    Poset::from_covers(
        vec!["0", "a", "b", "c", "1"],
        &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
    )
    .expect("fixed fixture")
    .with_name("figure1")
}

/// Lattice of flats of the uniform matroid of rank `m` on `n` elements: every
/// subset of size below `m`, plus the full ground set.
pub fn uniform_flats(m: usize, n: usize) -> Result<Poset> {
    if m == 0 || m > n {
        return Err(Error::InvalidParams(format!("uniform flats need 1 <= m <= n, got m={m}, n={n}")));
    }
    if n > 62 {
        return Err(Error::SizeLimitExceeded { what: format!("ground set of size {n}"), limit: 62 });
    }
    let full: u64 = (1u64 << n) - 1;
    let mut count: u128 = 1;
    let mut binom: u128 = 1;
    for j in 0..m {
        if j > 0 {
            binom = binom * (n - j + 1) as u128 / j as u128;
        }
        count += binom;
    }
    if count > usize::MAX as u128 / 2 {
        return Err(Error::SizeLimitExceeded { what: "uniform flats".into(), limit: 0 });
    }
    check_relation_size(count as usize)?;

    let mut masks: Vec<u64> = Vec::with_capacity(count as usize);
    for size in 0..m {
        subsets_of_size(n, size, &mut masks);
    }
    masks.push(full);
    let index: HashMap<u64, usize> = masks.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let labels: Vec<String> = masks.iter().map(|&s| subset_label(s, n)).collect();
    let mut covers = Vec::new();
    for (i, &s) in masks.iter().enumerate() {
        let size = s.count_ones() as usize;
        if s == full {
            continue;
        }
        if size + 1 < m {
            for e in 0..n {
                if s >> e & 1 == 0 {
                    covers.push((i, index[&(s | 1 << e)]));
                }
            }
        } else {
            covers.push((i, index[&full]));
        }
    }
    Ok(Poset::from_covers(labels, &covers)?.with_name(format!("uniform:{m},{n}")))
}

/// Appends the `size`-subsets of `[n]` in increasing numeric order.
fn subsets_of_size(n: usize, size: usize, out: &mut Vec<u64>) {
    if size == 0 {
        out.push(0);
        return;
    }
    let limit = 1u64 << n;
    let mut s: u64 = (1u64 << size) - 1;
    while s < limit {
        out.push(s);
        // Gosper's hack: next integer with the same popcount
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

/// Set partitions of `[n]` ordered by refinement, finer below coarser.
pub fn partition_lattice(n: usize) -> Result<Poset> {
    if n == 0 || n > Limits::MAX_PARTITION_N {
        return Err(Error::InvalidParams(format!(
            "partition lattice needs 1 <= n <= {}, got {n}",
            Limits::MAX_PARTITION_N
        )));
    }
    let mut partitions: Vec<Vec<u8>> = Vec::new();
    let mut rgs = vec![0u8; n];
    restricted_growth(&mut rgs, 1, 0, &mut partitions);
    check_relation_size(partitions.len())?;
    // rank = n - blocks
    partitions.sort_by_key(|p| std::cmp::Reverse(block_count(p)));
    let index: HashMap<Vec<u8>, usize> = partitions.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let labels: Vec<String> = partitions.iter().map(|p| partition_label(p)).collect();
    let mut covers = Vec::new();
    for (i, p) in partitions.iter().enumerate() {
        let blocks = block_count(p);
        for a in 0..blocks {
            for b in (a + 1)..blocks {
                let merged: Vec<u8> = p.iter().map(|&x| if x as usize == b { a as u8 } else { x }).collect();
                covers.push((i, index[&normalize_rgs(&merged)]));
            }
        }
    }
    Ok(Poset::from_covers(labels, &covers)?.with_name(format!("partition:{n}")))
}

fn restricted_growth(rgs: &mut Vec<u8>, pos: usize, max: u8, out: &mut Vec<Vec<u8>>) {
    if pos == rgs.len() {
        out.push(rgs.clone());
        return;
    }
    for v in 0..=max + 1 {
        rgs[pos] = v;
        restricted_growth(rgs, pos + 1, max.max(v), out);
    }
}

fn block_count(p: &[u8]) -> usize {
    p.iter().copied().max().map_or(0, |m| m as usize + 1)
}

fn normalize_rgs(p: &[u8]) -> Vec<u8> {
    let mut relabel: HashMap<u8, u8> = HashMap::new();
    p.iter()
        .map(|x| {
            let next = relabel.len() as u8;
            *relabel.entry(*x).or_insert(next)
        })
        .collect()
}

fn partition_label(p: &[u8]) -> String {
    let blocks = block_count(p);
    let parts: Vec<String> = (0..blocks)
        .map(|b| {
            p.iter()
                .enumerate()
                .filter(|(_, &x)| x as usize == b)
                .map(|(i, _)| (i + 1).to_string())
                .collect::<String>()
        })
        .collect();
    parts.join("|")
}

/// A random graded poset with a unique bottom and top and at most
/// `max_elements` elements (at least 3). Deterministic in `seed`.
pub fn random_graded_bounded(seed: u64, max_elements: usize) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_elements = max_elements.max(3);
    let rank = rng.gen_range(2..=5usize).min(max_elements - 1);
    let mut budget = max_elements - 2 - (rank - 1);
    let mut sizes = vec![1usize];
    for _ in 1..rank {
        let extra = rng.gen_range(0..=budget.min(3));
        budget -= extra;
        sizes.push(1 + extra);
    }
    sizes.push(1);

    let mut levels: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    for &s in &sizes {
        levels.push((next..next + s).collect());
        next += s;
    }
    let mut covers = Vec::new();
    for j in 1..levels.len() {
        let below = &levels[j - 1];
        let mut covered = vec![false; below.len()];
        for &y in &levels[j] {
            let k = rng.gen_range(1..=below.len());
            let mut picks: Vec<usize> = (0..below.len()).collect();
            picks.shuffle(&mut rng);
            for &p in &picks[..k] {
                covers.push((below[p], y));
                covered[p] = true;
            }
        }
        // everything below the top needs an upper cover so that the top is unique
        for (p, c) in covered.iter().enumerate() {
            if !c {
                let y = levels[j][rng.gen_range(0..levels[j].len())];
                covers.push((below[p], y));
            }
        }
    }
    let labels: Vec<String> = (0..next).map(|i| format!("v{i}")).collect();
    Poset::from_covers(labels, &covers)
        .expect("levelled construction is graded")
        .with_name(format!("random:{seed}"))
}
