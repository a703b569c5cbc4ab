//! The acceptance checks as a library routine, reported per criterion.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::char_poly::{boolean_char_k, char_poly_k, dr_rhs};
use crate::flags::{count_flags, FlagSpace};
use crate::generators::*;
use crate::incidence::{delta_set, zeta_fn};
use crate::integer::Integer;
use crate::kl_index::{
    decompositions, index_family, instantiate, max_shift, parse_row, render_entries, top_heavy, top_heavy_closed,
    Decomposition, SymbolicEntry,
};
use crate::kl_poly::{
    char_poly1, kl_closed, kl_coefficient, kl_recursive, linear_coefficient_formula, quadratic_coefficient_formula,
};
use crate::mobius::{mobius_left, mobius_right};
use crate::poset::Poset;
use crate::structure::{associator, cover_flags, unit_obstructions, unit_system, Side};
use crate::whitney::{
    multi_indices, region_counts, whitney_first, whitney_first_via_interpolation, whitney_second, MultiIndex,
};
use crate::Result;

/// The signed brackets of each row of the published index table, one row per
/// line as `k: +[1], ...`.
pub const TABLE1: &str = include_str!("table1.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub number: usize,
    pub title: &'static str,
    pub status: Status,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms = self.elapsed.as_secs_f64() * 1000.0;
        match &self.status {
            Status::Pass => write!(f, "PASS {:>2} {} ({ms:.1} ms)", self.number, self.title),
            Status::Fail(why) => write!(f, "FAIL {:>2} {} ({ms:.1} ms)\n{why}", self.number, self.title),
            Status::Skipped(why) => write!(f, "SKIPPED {:>2} {} ({ms:.1} ms): {why}", self.number, self.title),
        }
    }
}

/// `Ok(None)` passes, `Ok(Some(reason))` fails.
type Check = Result<Option<String>>;

fn mismatch(what: impl fmt::Display, got: impl fmt::Debug, expected: impl fmt::Debug) -> Option<String> {
    Some(format!("{what}: got {got:?}, expected {expected:?}"))
}

macro_rules! ensure_eq {
    ($got:expr, $expected:expr, $($what:tt)*) => {{
        let (got, expected) = ($got, $expected);
        if got != expected {
            return Ok(mismatch(format!($($what)*), got, expected));
        }
    }};
}

fn labelled(name: &str, p: Poset) -> (String, Poset) {
    (name.to_owned(), p)
}

/// Bounded posets shared by the interpolation, summation and region checks.
pub fn test_posets() -> Result<Vec<(String, Poset)>> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(labelled(&format!("boolean:{n}"), boolean_lattice(n)?));
    }
    out.push(labelled("uniform:3,6", uniform_flats(3, 6)?));
    for n in 2..=5 {
        out.push(labelled(&format!("partition:{n}"), partition_lattice(n)?));
    }
    out.push(labelled("figure1", figure1()));
    for seed in 0..20 {
        out.push(labelled(&format!("random:{seed}"), random_graded_bounded(seed, 30)));
    }
    Ok(out)
}

/// Multiset difference between the computed index family and a table, as
/// human-readable lines; empty when they agree.
pub fn table1_diff(table: &str, max_k: usize) -> Result<Vec<String>> {
    type Key = (bool, Vec<SymbolicEntry>);
    let mut rows: BTreeMap<usize, Vec<Key>> = BTreeMap::new();
    for line in table.lines().filter(|l| !l.trim().is_empty()) {
        let (k, row) = line
            .split_once(':')
            .ok_or_else(|| crate::Error::Parse(format!("table line without row number: {line:?}")))?;
        let k: usize = k.trim().parse().map_err(|_| crate::Error::Parse(format!("bad row number in {line:?}")))?;
        rows.insert(k, parse_row(row)?);
    }
    let render = |(positive, entries): &Key| format!("{}{}", if *positive { '+' } else { '-' }, render_entries(entries));
    let mut diff = Vec::new();
    for k in 1..=max_k {
        let mut balance: BTreeMap<Key, i64> = BTreeMap::new();
        for term in index_family(k)?.iter() {
            *balance.entry((term.is_positive(), term.entries.clone())).or_default() += 1;
        }
        let printed = rows.get(&k).cloned().unwrap_or_default();
        for key in &printed {
            *balance.entry(key.clone()).or_default() -= 1;
        }
        let computed_len = index_family(k)?.len();
        let extra: Vec<String> = balance.iter().filter(|(_, &v)| v > 0).map(|(key, _)| render(key)).collect();
        let missing: Vec<String> = balance.iter().filter(|(_, &v)| v < 0).map(|(key, _)| render(key)).collect();
        if !extra.is_empty() || !missing.is_empty() {
            diff.push(format!("  row {k}: computed {computed_len} terms, table {} terms", printed.len()));
            if !extra.is_empty() {
                diff.push(format!("    only computed: {}", extra.join(", ")));
            }
            if !missing.is_empty() {
                diff.push(format!("    only in table: {}", missing.join(", ")));
            }
        }
    }
    Ok(diff)
}

fn criterion_1(table: &str) -> Check {
    let diff = table1_diff(table, 5)?;
    Ok(if diff.is_empty() { None } else { Some(diff.join("\n")) })
}

fn criterion_2() -> Check {
    let p = Arc::new(figure1());
    let space = FlagSpace::new(p.clone(), 3)?;
    let left = mobius_left(&space)?;
    let right = mobius_right(&space)?;
    let id = |l: &str| p.index_of(l).expect("figure1 labels");
    let (zero, a, one) = (id("0"), id("a"), id("1"));
    ensure_eq!(left.get(&[zero, a, one]), Integer::from(-2), "μ_3(0,a,1)");
    ensure_eq!(left.get(&[zero, one, one]), Integer::from(4), "μ_3(0,1,1)");
    ensure_eq!(right.get(&[zero, one, one]), Integer::from(2), "μ^r_3(0,1,1)");
    Ok(None)
}

fn multinomial(n: usize, levels: &[usize]) -> Integer {
    let mut parts = Vec::with_capacity(levels.len() + 1);
    let mut prev = 0;
    for &i in levels.iter().chain(std::iter::once(&n)) {
        parts.push(i - prev);
        prev = i;
    }
    // after each step `acc` is a product of complete binomials times
    // C(placed, j), so the division is exact
    let mut acc = 1u128;
    let mut placed = 0u128;
    for part in parts {
        for j in 1..=part as u128 {
            placed += 1;
            acc = acc * placed / j;
        }
    }
    Integer::from(acc)
}

/// Checks `μ_k(X) = (-1)^{Σ rk X_j}` on every flag of `B_n`. Flags whose
/// first element is not the bottom break it whenever `k rk X_1` is odd; the
/// report then states whether the rebased sign `(-1)^{Σ (rk X_j - rk X_1)}`
/// holds instead.
fn boolean_mobius_report() -> Result<Option<String>> {
    let mut broken = Vec::new();
    let mut checked = 0usize;
    let mut rebased_holds = true;
    let mut all_off_bottom = true;
    for n in 0..=4 {
        let p = Arc::new(boolean_lattice(n)?);
        for k in 2..=4 {
            let mu = mobius_left(&FlagSpace::new(p.clone(), k)?)?;
            for (flag, value) in mu.iter() {
                checked += 1;
                let total: usize = flag.iter().map(|&x| p.rank(x)).sum();
                let base = p.rank(flag[0]);
                rebased_holds &= *value == Integer::sign_power(total - k * base);
                if *value != Integer::sign_power(total) {
                    all_off_bottom &= base > 0;
                    let labels: Vec<&str> = flag.iter().map(|&x| p.label(x)).collect();
                    broken.push(format!("μ_{k}({}) = {value} on B_{n}", labels.join(", ")));
                }
            }
        }
    }
    if broken.is_empty() {
        return Ok(None);
    }
    Ok(Some(format!(
        "(-1)^(sum of ranks) fails on {} of {checked} flags, first {}; failures {} a non-bottom first element; \
         the rebased sign (-1)^(sum of (rk X_j - rk X_1)) {} on all {checked} flags",
        broken.len(),
        broken[..broken.len().min(3)].join(", "),
        if all_off_bottom { "all have" } else { "do not all have" },
        if rebased_holds { "holds" } else { "fails" },
    )))
}

fn criterion_3() -> Check {
    let mobius = boolean_mobius_report()?;
    for n in 0..=6 {
        let p = boolean_lattice(n)?;
        for k in 1..=3 {
            for index in multi_indices(n, k) {
                ensure_eq!(whitney_second(&p, &index)?, multinomial(n, index.levels()), "W_{index}(B_{n})");
            }
        }
    }
    Ok(mobius)
}

fn criterion_4(posets: &[(String, Poset)]) -> Check {
    for (name, p) in posets {
        for n in 1..=p.top_rank() {
            let direct = whitney_first(p, &MultiIndex::new(vec![0, n])?)?;
            ensure_eq!(whitney_first_via_interpolation(p, n)?, direct, "w_(0,{n}) on {name}");
        }
    }
    Ok(None)
}

/// Subsets of `lo..=hi` as sorted level lists.
fn subsets(lo: usize, hi: usize) -> Vec<Vec<usize>> {
    if hi < lo {
        return vec![Vec::new()];
    }
    let width = hi - lo + 1;
    (0..1u64 << width).map(|m| (0..width).filter(|b| m >> b & 1 == 1).map(|b| lo + b).collect()).collect()
}

fn w(p: &Poset, levels: Vec<usize>) -> Result<Integer> {
    whitney_second(p, &MultiIndex::from_unsorted(levels))
}

fn criterion_5(posets: &[(String, Poset)]) -> Check {
    for (name, p) in posets {
        let r = p.top_rank();
        let locals: Vec<Poset> = (0..p.len()).map(|x| p.localization(x)).collect::<Result<_>>()?;
        let uppers: Vec<Poset> = (0..p.len()).map(|x| p.restriction(x)).collect::<Result<_>>()?;
        for n in 1..=r {
            for i in subsets(1, n - 1) {
                let sum: Integer = p.level(n).iter().map(|&x| w(&locals[x], i.clone())).sum::<Result<_>>()?;
                let mut with_n = i.clone();
                with_n.push(n);
                ensure_eq!(sum, w(p, with_n)?, "localization sum on {name} with I = {i:?}, n = {n}");
            }
        }
        for t in 0..=r {
            for i in subsets(1, r - t) {
                let sum: Integer = p.level(t).iter().map(|&x| w(&uppers[x], i.clone())).sum::<Result<_>>()?;
                let mut shifted: Vec<usize> = i.iter().map(|&j| j + t).collect();
                shifted.push(t);
                ensure_eq!(sum, w(p, shifted)?, "restriction sum on {name} with I = {i:?}, t = {t}");
            }
        }
        for k in 0..=r {
            for i in subsets(1, k.saturating_sub(1)) {
                for j in subsets(1, r - k) {
                    let mut sum = Integer::from(0);
                    for &f in p.level(k) {
                        sum += w(&locals[f], i.clone())? * w(&uppers[f], j.clone())?;
                    }
                    let mut levels = i.clone();
                    levels.push(k);
                    levels.extend(j.iter().map(|&x| x + k));
                    ensure_eq!(sum, w(p, levels)?, "split sum on {name} with I = {i:?}, k = {k}, J = {j:?}");
                }
            }
        }
    }
    Ok(None)
}

fn kl_lattices() -> Result<Vec<(String, Poset)>> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(labelled(&format!("boolean:{n}"), boolean_lattice(n)?));
    }
    for n in 1..=7 {
        for m in 1..=n {
            out.push(labelled(&format!("uniform:{m},{n}"), uniform_flats(m, n)?));
        }
    }
    for n in 2..=6 {
        out.push(labelled(&format!("partition:{n}"), partition_lattice(n)?));
    }
    Ok(out)
}

fn criterion_6() -> Check {
    for (name, p) in kl_lattices()? {
        ensure_eq!(kl_closed(&p)?, kl_recursive(&p)?, "KL polynomial of {name}");
    }
    Ok(None)
}

fn criterion_7() -> Check {
    for (name, p) in kl_lattices()?.into_iter().filter(|(_, p)| p.top_rank() >= 5) {
        let poly = kl_closed(&p)?;
        ensure_eq!(poly.coefficient(0), Integer::from(1), "constant KL coefficient of {name}");
        ensure_eq!(linear_coefficient_formula(&p)?, kl_coefficient(&p, 1)?, "linear KL coefficient of {name}");
        ensure_eq!(quadratic_coefficient_formula(&p)?, kl_coefficient(&p, 2)?, "quadratic KL coefficient of {name}");
    }
    Ok(None)
}

fn criterion_8() -> Check {
    let chi = char_poly_k(&uniform_flats(2, 3)?, 2)?;
    ensure_eq!(
        chi.to_string(),
        "t1^2*t2^2 - 3*t1^2*t2 + 2*t1^2 + 3*t1*t2 - 6*t1 + 4".to_owned(),
        "χ_2 of the rank-2 uniform matroid on 3 elements"
    );
    let rhs = dr_rhs(&char_poly_k(&boolean_lattice(2)?, 2)?, &char_poly_k(&boolean_lattice(1)?, 2)?, 2)?;
    ensure_eq!(chi.checked_sub(&rhs)?.to_string(), "-2*t1 + 2".to_owned(), "deletion-restriction defect");
    Ok(None)
}

fn product_pairs() -> Result<Vec<(String, Poset, Poset)>> {
    let b = boolean_lattice;
    let c = chain;
    Ok(vec![
        ("B1 x B1".into(), b(1)?, b(1)?),
        ("B1 x B2".into(), b(1)?, b(2)?),
        ("C2 x B1".into(), c(2)?, b(1)?),
        ("C2 x C2".into(), c(2)?, c(2)?),
        ("figure1 x B1".into(), figure1(), b(1)?),
        ("figure1 x C1".into(), figure1(), c(1)?),
        ("U23 x B1".into(), uniform_flats(2, 3)?, b(1)?),
        ("U23 x C2".into(), uniform_flats(2, 3)?, c(2)?),
        ("Pi3 x C1".into(), partition_lattice(3)?, c(1)?),
        ("figure1 x figure1".into(), figure1(), figure1()),
    ])
}

fn criterion_9() -> Check {
    for n in 1..=4 {
        let p = boolean_lattice(n)?;
        for k in 1..=3 {
            ensure_eq!(boolean_char_k(n, k)?, char_poly_k(&p, k)?, "χ_{k}(B_{n})");
        }
    }
    for (name, p, q) in product_pairs()? {
        let prod = Poset::product(&p, &q)?;
        let bottom = prod.require_bottom()?;
        for k in 1..=3 {
            if count_flags(&prod, k + 1, Some(bottom), None) > 2500 {
                continue;
            }
            let expected = char_poly_k(&p, k)?.checked_mul(&char_poly_k(&q, k)?)?;
            ensure_eq!(char_poly_k(&prod, k)?, expected, "χ_{k} of {name}");
        }
    }
    Ok(None)
}

fn criterion_10(posets: &[(String, Poset)]) -> Check {
    let chain2 = Arc::new(chain(2)?);
    let space = FlagSpace::new(chain2, 3)?;
    let assoc = associator(&delta_set(&space, &[1, 2])?, &delta_set(&space, &[2, 3])?, &zeta_fn(&space)?)?;
    if assoc.get(&[0, 1, 2]) == 0 {
        return Ok(Some("(δ12*δ23)*ζ and δ12*(δ23*ζ) agree at (0,1,2) on chain(2)".into()));
    }
    for (name, p) in posets {
        let Some(&(x, y)) = p.covers().first() else { continue };
        let shared = Arc::new(p.clone());
        for n in 3..=4 {
            let space = FlagSpace::new(shared.clone(), n)?;
            let at = cover_flags(n, x, y);
            for side in [Side::Left, Side::Right] {
                let system = unit_system(side, &unit_obstructions(&space, side)?, Some(&at));
                if system.is_feasible() {
                    return Ok(Some(format!("{side:?} unit equations feasible on {name} at arity {n}")));
                }
            }
        }
    }
    Ok(None)
}

fn criterion_11(posets: &[(String, Poset)]) -> Check {
    for (name, p) in posets {
        let (a, b) = region_counts(p)?;
        let chi = char_poly1(p)?;
        let sign = Integer::sign_power(p.top_rank());
        ensure_eq!(a, &sign * &chi.eval(&Integer::from(-1)), "a on {name}");
        ensure_eq!(b, &sign * &chi.eval(&Integer::from(1)), "b on {name}");
    }
    ensure_eq!(region_counts(&boolean_lattice(2)?)?.0, Integer::from(4), "a(B_2)");
    ensure_eq!(region_counts(&figure1())?.0, Integer::from(6), "a(figure1)");
    Ok(None)
}

fn criterion_12() -> Check {
    for k in 1..=6 {
        let family = index_family(k)?;
        for term in family.iter() {
            let found = decompositions(&term.entries, k)?;
            let expected = usize::from(matches!(term.decomposition, Decomposition::T { .. }));
            ensure_eq!(found.len(), expected, "decompositions of {} in S_{k}", render_entries(&term.entries));
            let partner = top_heavy(term)?;
            ensure_eq!(top_heavy_closed(&term.entries)?, partner.clone(), "closed top-heavy partner");
            let r = 2 * k + 1;
            instantiate(&term.entries, r)?;
            instantiate(&partner, r)?;
        }
        let widest = family.iter().filter_map(|t| max_shift(&t.entries)).max();
        let expected = if k == 1 { None } else { Some(2 * k as u32 - 1) };
        ensure_eq!(widest, expected, "largest shift in S_{k}");
    }
    Ok(None)
}

fn timed(number: usize, title: &'static str, check: impl FnOnce() -> Check) -> CriterionReport {
    let start = Instant::now();
    let status = match check() {
        Ok(None) => Status::Pass,
        Ok(Some(why)) => Status::Fail(why),
        Err(e) if e.is_limit() => Status::Skipped(e.to_string()),
        Err(e) => Status::Fail(format!("error: {e}")),
    };
    CriterionReport { number, title, status, elapsed: start.elapsed() }
}

/// Runs all criteria; `table` replaces the built-in index table.
pub fn run(table: Option<&str>) -> Vec<CriterionReport> {
    let table = table.unwrap_or(TABLE1);
    let posets = test_posets();
    let with_posets = |check: fn(&[(String, Poset)]) -> Check| {
        let posets = &posets;
        move || check(posets.as_ref().map_err(Clone::clone)?)
    };
    vec![
        timed(1, "index table reproduction", || criterion_1(table)),
        timed(2, "figure1 Möbius values", criterion_2),
        timed(3, "Boolean Möbius and Whitney numbers", criterion_3),
        timed(4, "interpolation", with_posets(criterion_4)),
        timed(5, "Whitney summation identities", with_posets(criterion_5)),
        timed(6, "KL closed formula equals recursion", criterion_6),
        timed(7, "low-degree KL coefficient formulas", criterion_7),
        timed(8, "χ_2 worked example", criterion_8),
        timed(9, "Boolean χ_k and product formula", criterion_9),
        timed(10, "non-associativity and no unit", with_posets(criterion_10)),
        timed(11, "region counts", with_posets(criterion_11)),
        timed(12, "index family structure", criterion_12),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_table_names_the_row() {
        let corrupted = TABLE1.replacen("+[2], ", "-[2], ", 1);
        let report = timed(1, "index table reproduction", || criterion_1(&corrupted));
        let Status::Fail(why) = report.status else { panic!("expected a failure") };
        assert!(why.contains("row 2"), "{why}");
        assert!(why.contains("only computed: +[2]"), "{why}");
        assert!(why.contains("only in table: -[2]"), "{why}");
    }

    #[test]
    fn first_three_rows_match() {
        assert!(table1_diff(TABLE1, 3).unwrap().is_empty());
    }

    #[test]
    fn limit_errors_are_skips() {
        let report = timed(0, "cap", || Err(crate::Error::CapExceeded { k: 99, cap: 8 }));
        assert!(matches!(report.status, Status::Skipped(_)));
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(4, &[1, 3]), 12);
        assert_eq!(multinomial(6, &[]), 1);
        assert_eq!(multinomial(6, &[2, 2]), 15);
    }
}
