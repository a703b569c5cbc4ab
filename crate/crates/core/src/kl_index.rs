//! Symbolic index sets for the closed Kazhdan-Lusztig coefficient formula.
//!
//! An index set is a set of entries `c` or `r - c`, with `r` the rank of the
//! lattice left symbolic. `S_1 = {{1}}` and `S_k` is `A_k` (subsets of `[k]`
//! containing `k`) together with the terms `α ⊔ {r - s} ⊔ F_s(β)` for
//! `3 <= s <= 2k - 1`, `max(1, s - k) <= i < s/2`, `α ∈ A_{k-s+i}`, `β ∈ S_i`.
//! `A_0 = {∅}` and `A_t = ∅` for `t < 0`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{json, Value};

use crate::limits::Limits;
use crate::whitney::MultiIndex;
use crate::{Error, Result};

/// `Const(c)` is the integer `c`; `RShift(c)` is `r - c`. Ordered as their
/// values are for large `r`: constants ascending, then `r - c` with `c`
/// descending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolicEntry {
    Const(u32),
    RShift(u32),
}

use SymbolicEntry::{Const, RShift};

impl Ord for SymbolicEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Const(a), Const(b)) => a.cmp(b),
            (RShift(a), RShift(b)) => b.cmp(a),
            (Const(_), RShift(_)) => Ordering::Less,
            (RShift(_), Const(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for SymbolicEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SymbolicEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Const(c) => write!(f, "{c}"),
            RShift(c) => write!(f, "r - {c}"),
        }
    }
}

impl SymbolicEntry {
    pub fn eval(self, r: usize) -> Option<usize> {
        match self {
            Const(c) => Some(c as usize),
            RShift(c) => r.checked_sub(c as usize),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// Member of `A_k`.
    A { k: u32 },
    /// `α ⊔ {r - s} ⊔ F_s(β)` with `β ∈ S_i`.
    T { k: u32, s: u32, i: u32, alpha: Vec<u32>, beta: Arc<SymbolicIndexTerm> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicIndexTerm {
    /// Sorted ascending.
    pub entries: Vec<SymbolicEntry>,
    /// The term enters the coefficient with sign `(-1)^sign`.
    pub sign: usize,
    pub decomposition: Decomposition,
}

impl SymbolicIndexTerm {
    pub fn k(&self) -> u32 {
        match &self.decomposition {
            Decomposition::A { k } | Decomposition::T { k, .. } => *k,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign % 2 == 0
    }
}

/// Subsets of `[t]` containing `t`, in order of the bitmask on `[t-1]`.
pub fn a_family(t: i64) -> Vec<Vec<u32>> {
    match t {
        t if t < 0 => Vec::new(),
        0 => vec![Vec::new()],
        t => {
            let t = t as u32;
            (0..1u64 << (t - 1))
                .map(|mask| {
                    let mut set: Vec<u32> = (0..t - 1).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
                    set.push(t);
                    set
                })
                .collect()
        }
    }
}

/// `f_s`: `c ↦ r - (s - c)` for `c < s`, identity on `r - c`.
pub fn shift_entry(s: u32, e: SymbolicEntry) -> Result<SymbolicEntry> {
    match e {
        Const(c) if c < s => Ok(RShift(s - c)),
        Const(c) => Err(Error::InvalidShift { s, c }),
        RShift(c) => Ok(RShift(c)),
    }
}

fn shift_all(s: u32, entries: &[SymbolicEntry]) -> Result<Vec<SymbolicEntry>> {
    entries.iter().map(|&e| shift_entry(s, e)).collect()
}

fn sorted(mut v: Vec<SymbolicEntry>) -> Vec<SymbolicEntry> {
    v.sort();
    v
}

pub type Family = Arc<Vec<Arc<SymbolicIndexTerm>>>;

fn cache() -> &'static Mutex<Vec<Family>> {
    static CACHE: OnceLock<Mutex<Vec<Family>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// `S_k`: the `A_k` terms in mask order, then the composite terms by `s`, `i`,
/// `α` (mask order) and `β` (order of `S_i`).
pub fn index_family(k: usize) -> Result<Family> {
    if k == 0 {
        return Err(Error::InvalidParams("index families start at k = 1".into()));
    }
    let cap = Limits::current().max_index_k;
    if k > cap {
        return Err(Error::CapExceeded { k, cap });
    }
    let mut families = cache().lock().expect("index family cache poisoned");
    while families.len() < k {
        let next = build_family(families.len() + 1, &families)?;
        families.push(Arc::new(next));
    }
    Ok(families[k - 1].clone())
}

fn build_family(k: usize, lower: &[Family]) -> Result<Vec<Arc<SymbolicIndexTerm>>> {
    let k32 = k as u32;
    let mut out: Vec<Arc<SymbolicIndexTerm>> = a_family(k as i64)
        .into_iter()
        .map(|set| {
            Arc::new(SymbolicIndexTerm {
                sign: set.len() - 1,
                entries: set.into_iter().map(Const).collect(),
                decomposition: Decomposition::A { k: k32 },
            })
        })
        .collect();
    for s in 3..2 * k32 {
        let mut i = 1.max(s.saturating_sub(k32));
        while 2 * i < s {
            let alphas = a_family(k as i64 - s as i64 + i as i64);
            for alpha in &alphas {
                for beta in lower[i as usize - 1].iter() {
                    let mut entries: Vec<SymbolicEntry> = alpha.iter().map(|&c| Const(c)).collect();
                    entries.push(RShift(s));
                    entries.extend(shift_all(s, &beta.entries)?);
                    out.push(Arc::new(SymbolicIndexTerm {
                        entries: sorted(entries),
                        sign: alpha.len() + beta.sign,
                        decomposition: Decomposition::T { k: k32, s, i, alpha: alpha.clone(), beta: beta.clone() },
                    }));
                }
            }
            i += 1;
        }
    }
    Ok(out)
}

/// Gap of an `A_k` member: `k` for `{k}`, else `k - max(I \ {k})`.
fn gap(consts: &[u32]) -> u32 {
    let k = consts[consts.len() - 1];
    match consts.len() {
        1 => k,
        n => k - consts[n - 2],
    }
}

fn malformed(entries: &[SymbolicEntry], why: &str) -> Error {
    Error::MalformedTerm(format!("{}: {why}", render_entries(entries)))
}

/// Top-heavy partner `t(I)` following the decomposition: for `A_k` members the
/// top entry `k` becomes `r - d(I)`; for composite terms
/// `t(α ⊔ {r-s} ⊔ F_s(β)) = α ⊔ {r-s} ⊔ F_s(t(β))`.
pub fn top_heavy(term: &SymbolicIndexTerm) -> Result<Vec<SymbolicEntry>> {
    match &term.decomposition {
        Decomposition::A { .. } => {
            let consts: Vec<u32> = term
                .entries
                .iter()
                .map(|e| match e {
                    Const(c) => Ok(*c),
                    RShift(_) => Err(malformed(&term.entries, "A-type term with an r-shifted entry")),
                })
                .collect::<Result<_>>()?;
            if consts.is_empty() {
                return Err(malformed(&term.entries, "empty term"));
            }
            let mut out: Vec<SymbolicEntry> = consts[..consts.len() - 1].iter().map(|&c| Const(c)).collect();
            out.push(RShift(gap(&consts)));
            Ok(sorted(out))
        }
        Decomposition::T { s, alpha, beta, .. } => {
            let mut out: Vec<SymbolicEntry> = alpha.iter().map(|&c| Const(c)).collect();
            out.push(RShift(*s));
            out.extend(shift_all(*s, &top_heavy(beta)?)?);
            let out = sorted(out);
            if out.windows(2).any(|w| w[0] == w[1]) {
                return Err(malformed(&term.entries, "top-heavy partner repeats an entry"));
            }
            Ok(out)
        }
    }
}

/// Top-heavy partner from the entries alone: with no `r`-shifted entries use
/// the `A_k` rule; otherwise drop `r - c_1` and add `r - (c_2 - c_1)`, where
/// `c_1 < c_2` are the two smallest shifts.
pub fn top_heavy_closed(entries: &[SymbolicEntry]) -> Result<Vec<SymbolicEntry>> {
    let mut shifts: Vec<u32> = entries.iter().filter_map(|e| if let RShift(c) = e { Some(*c) } else { None }).collect();
    if shifts.is_empty() {
        let consts: Vec<u32> = entries.iter().filter_map(|e| if let Const(c) = e { Some(*c) } else { None }).collect();
        if consts.is_empty() {
            return Err(malformed(entries, "empty term"));
        }
        let mut out: Vec<SymbolicEntry> = consts[..consts.len() - 1].iter().map(|&c| Const(c)).collect();
        out.push(RShift(gap(&consts)));
        return Ok(sorted(out));
    }
    if shifts.len() < 2 {
        return Err(malformed(entries, "needs at least two r-shifted entries"));
    }
    shifts.sort_unstable();
    let (c1, c2) = (shifts[0], shifts[1]);
    let replacement = RShift(c2 - c1);
    let mut out: Vec<SymbolicEntry> = entries.iter().copied().filter(|&e| e != RShift(c1)).collect();
    if out.contains(&replacement) {
        return Err(malformed(entries, "closed-form partner repeats an entry"));
    }
    out.push(replacement);
    Ok(sorted(out))
}

/// Substitutes `r`; the result must be strictly increasing inside `[1, r-1]`.
pub fn instantiate(entries: &[SymbolicEntry], r: usize) -> Result<MultiIndex> {
    let mut values = Vec::with_capacity(entries.len());
    for &e in entries {
        match e.eval(r) {
            Some(v) if v >= 1 && v < r => values.push(v),
            _ => {
                return Err(Error::RankTooSmall {
                    rank: r,
                    detail: format!("entry {e} leaves [1, r - 1]"),
                })
            }
        }
    }
    values.sort_unstable();
    if values.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RankTooSmall {
            rank: r,
            detail: format!("entries of {} collide", render_entries(entries)),
        });
    }
    MultiIndex::new(values)
}

pub fn render_entries(entries: &[SymbolicEntry]) -> String {
    let parts: Vec<String> = entries.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn render_term(term: &SymbolicIndexTerm) -> String {
    format!("{}{}", if term.is_positive() { '+' } else { '-' }, render_entries(&term.entries))
}

/// One table row: signed brackets such as `+[r - 4, r - 3]`, comma separated.
pub fn render_table(k: usize) -> Result<String> {
    let family = index_family(k)?;
    let parts: Vec<String> = family.iter().map(|t| render_term(t)).collect();
    Ok(parts.join(", "))
}

pub fn render_latex(k: usize) -> Result<String> {
    let family = index_family(k)?;
    let parts: Vec<String> = family
        .iter()
        .map(|t| {
            let entries: Vec<String> = t
                .entries
                .iter()
                .map(|e| match e {
                    Const(c) => c.to_string(),
                    RShift(c) => format!("r-{c}"),
                })
                .collect();
            format!("{}\\{{{}\\}}", if t.is_positive() { '+' } else { '-' }, entries.join(","))
        })
        .collect();
    Ok(format!("{k} & ${}$ \\\\", parts.join(", ")))
}

fn entries_json(entries: &[SymbolicEntry]) -> Value {
    Value::Array(entries.iter().map(|e| Value::String(e.to_string())).collect())
}

pub fn term_json(term: &SymbolicIndexTerm) -> Result<Value> {
    let decomposition = match &term.decomposition {
        Decomposition::A { k } => json!({"type": "A", "k": k}),
        Decomposition::T { k, s, i, alpha, beta } => {
            json!({"type": "T", "k": k, "s": s, "i": i, "alpha": alpha, "beta": entries_json(&beta.entries)})
        }
    };
    Ok(json!({
        "entries": entries_json(&term.entries),
        "sign": term.sign,
        "top_heavy": entries_json(&top_heavy(term)?),
        "decomposition": decomposition,
    }))
}

pub fn family_json(k: usize) -> Result<Value> {
    let family = index_family(k)?;
    let terms: Vec<Value> = family.iter().map(|t| term_json(t)).collect::<Result<_>>()?;
    Ok(json!({"schema": 1, "k": k, "terms": terms}))
}

/// Parses one signed bracket such as `-[1, r - 3, r - 2]` into
/// `(positive, entries)`.
pub fn parse_term(text: &str) -> Result<(bool, Vec<SymbolicEntry>)> {
    let bad = || Error::Parse(format!("malformed index term {text:?}"));
    let text = text.trim();
    let (positive, rest) = match text.chars().next() {
        Some('+') => (true, &text[1..]),
        Some('-') => (false, &text[1..]),
        _ => return Err(bad()),
    };
    let inner = rest.trim().strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(bad)?;
    let mut entries = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let entry = match part.strip_prefix('r') {
            Some(shift) => {
                let c = shift.trim().strip_prefix('-').ok_or_else(bad)?.trim();
                RShift(c.parse().map_err(|_| bad())?)
            }
            None => Const(part.parse().map_err(|_| bad())?),
        };
        entries.push(entry);
    }
    Ok((positive, sorted(entries)))
}

/// Parses a full row of signed brackets.
pub fn parse_row(text: &str) -> Result<Vec<(bool, Vec<SymbolicEntry>)>> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (pos, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth == 0 {
                    out.push(parse_term(&text[start..=pos])?);
                    start = pos + 1;
                }
            }
            ',' if depth == 0 => start = pos + 1,
            _ => {}
        }
    }
    if !text[start..].trim().is_empty() {
        return Err(Error::Parse(format!("trailing text {:?}", &text[start..])));
    }
    Ok(out)
}

/// `(s, i, α, position of β in S_i)`.
pub type Split = (u32, u32, Vec<u32>, usize);

/// Every way of writing `entries` as `α ⊔ {r - s} ⊔ F_s(β)` with `β ∈ S_i`.
pub fn decompositions(entries: &[SymbolicEntry], k: usize) -> Result<Vec<Split>> {
    let k32 = k as u32;
    let mut found = Vec::new();
    for s in 3..2 * k32 {
        let mut i = 1.max(s.saturating_sub(k32));
        while 2 * i < s {
            for alpha in a_family(k as i64 - s as i64 + i as i64) {
                for (pos, beta) in index_family(i as usize)?.iter().enumerate() {
                    let mut candidate: Vec<SymbolicEntry> = alpha.iter().map(|&c| Const(c)).collect();
                    candidate.push(RShift(s));
                    candidate.extend(shift_all(s, &beta.entries)?);
                    if sorted(candidate) == entries {
                        found.push((s, i, alpha.clone(), pos));
                    }
                }
            }
            i += 1;
        }
    }
    Ok(found)
}

/// Largest `c` among the `r - c` entries.
pub fn max_shift(entries: &[SymbolicEntry]) -> Option<u32> {
    entries.iter().filter_map(|e| if let RShift(c) = e { Some(*c) } else { None }).max()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_families() {
        assert_eq!(a_family(1), vec![vec![1]]);
        assert_eq!(a_family(2), vec![vec![2], vec![1, 2]]);
        assert_eq!(a_family(0), vec![Vec::<u32>::new()]);
        assert!(a_family(-1).is_empty());
        assert_eq!(a_family(4).len(), 8);
    }

    #[test]
    fn shifts() {
        assert_eq!(shift_entry(3, Const(1)), Ok(RShift(2)));
        assert_eq!(shift_entry(5, Const(2)), Ok(RShift(3)));
        assert_eq!(shift_entry(7, RShift(3)), Ok(RShift(3)));
        assert_eq!(shift_entry(3, Const(3)), Err(Error::InvalidShift { s: 3, c: 3 }));
    }

    #[test]
    fn low_rows() {
        assert_eq!(render_table(1).unwrap(), "+[1]");
        let mut row2: Vec<String> = index_family(2).unwrap().iter().map(|t| render_term(t)).collect();
        row2.sort();
        assert_eq!(row2, vec!["+[2]", "+[r - 3, r - 2]", "-[1, 2]"]);
        let row3 = render_table(3).unwrap();
        assert!(row3.contains("-[1, r - 3, r - 2]"));
        assert!(row3.contains("-[r - 5, r - 4, r - 3]"));
        assert_eq!(index_family(3).unwrap().len(), 9);
    }

    #[test]
    fn family_sizes_are_powers_of_three() {
        for k in 1..=6 {
            assert_eq!(index_family(k).unwrap().len(), 3usize.pow(k as u32 - 1));
        }
        assert!(matches!(index_family(99), Err(Error::CapExceeded { k: 99, .. })));
    }

    #[test]
    fn partners() {
        let s2 = index_family(2).unwrap();
        let partner = |t: &SymbolicIndexTerm| render_entries(&top_heavy(t).unwrap());
        let by_entries = |text: &str| s2.iter().find(|t| render_entries(&t.entries) == text).unwrap().clone();
        assert_eq!(partner(&by_entries("[2]")), "[r - 2]");
        assert_eq!(partner(&by_entries("[1, 2]")), "[1, r - 1]");
        assert_eq!(partner(&by_entries("[r - 3, r - 2]")), "[r - 3, r - 1]");
    }

    #[test]
    fn instantiation() {
        let mi = |v: &[usize]| MultiIndex::new(v.to_vec()).unwrap();
        assert_eq!(instantiate(&[RShift(3), RShift(2)], 5).unwrap(), mi(&[2, 3]));
        assert_eq!(instantiate(&[Const(1), RShift(3), RShift(2)], 7).unwrap(), mi(&[1, 4, 5]));
        assert_eq!(instantiate(&[RShift(7), RShift(5), RShift(4), RShift(3)], 9).unwrap(), mi(&[2, 4, 5, 6]));
        assert!(matches!(instantiate(&[Const(2), RShift(2)], 4), Err(Error::RankTooSmall { .. })));
    }

    #[test]
    fn parsing_round_trips() {
        let row = "+[2], +[r - 3, r - 2], -[1, 2]";
        let parsed = parse_row(row).unwrap();
        assert_eq!(parsed.len(), 3);
        assert_eq!(parsed[1], (true, vec![RShift(3), RShift(2)]));
        assert_eq!(parsed[2], (false, vec![Const(1), Const(2)]));
        assert!(parse_term("*[1]").is_err());
        assert!(parse_term("+[r + 1]").is_err());
    }

    #[test]
    fn json_has_all_fields() {
        let v = family_json(2).unwrap();
        let terms = v["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 3);
        assert!(terms.iter().all(|t| t.get("top_heavy").is_some() && t.get("decomposition").is_some()));
    }
}
