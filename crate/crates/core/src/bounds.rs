//! Counting bounds on `z(m,n;s)` and their propagation over a table.
//!
//! `z(m,n;s)` here always forbids the balanced `K_{s,s}`, so the table is
//! symmetric in `(m,n)` and stored once per unordered pair.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("composition into zero parts")]
    ZeroParts,
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
    #[error("row {row}: {message}")]
    Csv { row: usize, message: String },
    #[error("entry ({m},{n}): {message}")]
    InvalidEntry { m: usize, n: usize, message: String },
    #[error("upper bound {upper} at ({m},{n}) falls below lower bound {lower}; derivation: {}", chain.join(" <- "))]
    Inconsistent { m: usize, n: usize, lower: u64, upper: u64, chain: Vec<String> },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Parts of a composition of `total()` into `count()` non-negative parts, largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub parts: Vec<usize>,
}

impl Composition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Composition { parts }
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn count(&self) -> usize {
        self.parts.len()
    }

    pub fn is_balanced(&self) -> bool {
        match (self.parts.first(), self.parts.last()) {
            (Some(a), Some(b)) => a - b <= 1,
            _ => true,
        }
    }
}

/// The composition of `p` into `k` parts that differ by at most one.
pub fn balanced_composition(p: usize, k: usize) -> Result<Composition, BoundsError> {
    if k == 0 {
        return Err(BoundsError::ZeroParts);
    }
    let (q, r) = (p / k, p % k);
    let parts = std::iter::repeat_n(q + 1, r).chain(std::iter::repeat_n(q, k - r)).collect();
    Ok(Composition { parts })
}

/// `C(n, k)`, or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `Σ C(a_i, s)` over the parts.
pub fn star_sum(c: &Composition, s: usize) -> Result<u128, BoundsError> {
    c.parts.iter().try_fold(0u128, |acc, &a| {
        binomial(a as u64, s as u64).and_then(|b| acc.checked_add(b)).ok_or(BoundsError::Overflow("star sum"))
    })
}

fn balanced_star_sum(e: usize, k: usize, s: usize) -> Option<u128> {
    let (q, r) = (e / k, e % k);
    let lo = binomial(q as u64, s as u64)?;
    let hi = binomial(q as u64 + 1, s as u64)?;
    lo.checked_mul((k - r) as u128)?.checked_add(hi.checked_mul(r as u128)?)
}

fn star_one_side(m: usize, n: usize, s: usize) -> usize {
    let cap = binomial(n as u64, s as u64).and_then(|c| c.checked_mul(s as u128 - 1));
    let Some(cap) = cap else { return m * n };
    let (mut lo, mut hi) = (0usize, m * n);
    // the balanced star sum is non-decreasing in e
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match balanced_star_sum(mid, m, s) {
            Some(v) if v <= cap => lo = mid,
            _ => hi = mid - 1,
        }
    }
    lo
}

/// Largest edge count allowed by star counting from both sides.
pub fn star_bound_max_edges(m: usize, n: usize, s: usize) -> usize {
    if m < s || n < s || s == 0 {
        return m * n;
    }
    star_one_side(m, n, s).min(star_one_side(n, m, s))
}

/// Largest `w` with `w - ⌊w/m⌋ <= u_prev`: an upper bound on `z(m,n;s)`
/// given `z(m-1,n;s) <= u_prev`.
pub fn density_step_bound(u_prev: u64, m: u64) -> u64 {
    assert!(m >= 2, "density step needs at least two vertices on the removed side");
    u_prev + u_prev / (m - 1)
}

/// Bounds for one cell of a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub lower: u64,
    pub upper: u64,
    pub exact: bool,
    pub note: Option<String>,
}

impl Entry {
    pub fn exact(value: u64) -> Self {
        Entry { lower: value, upper: value, exact: true, note: None }
    }

    pub fn range(lower: u64, upper: u64) -> Self {
        Entry { lower, upper, exact: false, note: None }
    }

    fn check(&self, m: usize, n: usize) -> Result<(), BoundsError> {
        let bad = |message: &str| Err(BoundsError::InvalidEntry { m, n, message: message.to_string() });
        if self.lower > self.upper {
            return bad(&format!("lower {} exceeds upper {}", self.lower, self.upper));
        }
        if self.exact && self.lower != self.upper {
            return bad("marked exact but lower != upper");
        }
        if self.upper > (m * n) as u64 {
            return bad(&format!("upper {} exceeds m*n", self.upper));
        }
        Ok(())
    }
}

/// Bounds on `z(m,n;s)` for a fixed `s`, keyed by unordered `(m,n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundTable {
    s: usize,
    entries: BTreeMap<(usize, usize), Entry>,
}

fn norm(m: usize, n: usize) -> (usize, usize) {
    (m.min(n), m.max(n))
}

impl BoundTable {
    pub fn new(s: usize) -> Self {
        BoundTable { s, entries: BTreeMap::new() }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, m: usize, n: usize) -> Option<&Entry> {
        self.entries.get(&norm(m, n))
    }

    /// Value forced by the definition alone, if any.
    pub fn intrinsic(&self, m: usize, n: usize) -> Option<u64> {
        if m < self.s || n < self.s {
            Some((m * n) as u64)
        } else if self.s == 1 {
            Some(0)
        } else {
            None
        }
    }

    /// Best known upper bound: stored entry or intrinsic value.
    pub fn upper(&self, m: usize, n: usize) -> Option<u64> {
        match (self.get(m, n), self.intrinsic(m, n)) {
            (Some(e), Some(v)) => Some(e.upper.min(v)),
            (Some(e), None) => Some(e.upper),
            (None, v) => v,
        }
    }

    pub fn lower(&self, m: usize, n: usize) -> Option<u64> {
        match (self.get(m, n), self.intrinsic(m, n)) {
            (_, Some(v)) => Some(v),
            (Some(e), None) => Some(e.lower),
            (None, None) => None,
        }
    }

    pub fn insert(&mut self, m: usize, n: usize, entry: Entry) -> Result<(), BoundsError> {
        entry.check(m, n)?;
        self.entries.insert(norm(m, n), entry);
        Ok(())
    }

    /// Entries with `m <= n`, ordered by `(m, n)`.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Entry)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    /// Entries trusted as seeds for propagation: exact values and exhaustively computed uppers.
    pub fn seeds(&self) -> BoundTable {
        let entries = self
            .entries
            .iter()
            .filter(|(_, e)| e.exact || e.note.as_deref() == Some("exhaustive"))
            .map(|(&k, e)| (k, e.clone()))
            .collect();
        BoundTable { s: self.s, entries }
    }

    /// Only the exact entries.
    pub fn exact_entries(&self) -> BoundTable {
        let entries = self.entries.iter().filter(|(_, e)| e.exact).map(|(&k, e)| (k, e.clone())).collect();
        BoundTable { s: self.s, entries }
    }

    pub fn from_csv_str(text: &str) -> Result<Self, BoundsError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let headers = rdr.headers().map_err(|e| BoundsError::Csv { row: 1, message: e.to_string() })?.clone();
        let expected = ["m", "n", "s", "lower", "upper", "exact"];
        let names: Vec<&str> = headers.iter().collect();
        if names.len() < 6 || names[..6] != expected || names.len() > 7 || (names.len() == 7 && names[6] != "note") {
            return Err(BoundsError::Csv { row: 1, message: format!("expected header {}[,note]", expected.join(",")) });
        }
        let mut table: Option<BoundTable> = None;
        for (idx, rec) in rdr.records().enumerate() {
            let row = idx + 2;
            let rec = rec.map_err(|e| BoundsError::Csv { row, message: e.to_string() })?;
            let num = |i: usize| -> Result<u64, BoundsError> {
                rec.get(i)
                    .unwrap_or("")
                    .parse::<u64>()
                    .map_err(|_| BoundsError::Csv { row, message: format!("column {} is not a number", expected[i]) })
            };
            let (m, n, s) = (num(0)? as usize, num(1)? as usize, num(2)? as usize);
            let exact = match rec.get(5).unwrap_or("") {
                "true" => true,
                "false" => false,
                other => {
                    return Err(BoundsError::Csv {
                        row,
                        message: format!("exact must be true or false, got {other:?}"),
                    })
                }
            };
            let note = rec.get(6).filter(|s| !s.is_empty()).map(str::to_string);
            let entry = Entry { lower: num(3)?, upper: num(4)?, exact, note };
            let t = table.get_or_insert_with(|| BoundTable::new(s));
            if t.s != s {
                return Err(BoundsError::Csv { row, message: format!("s = {s} but table has s = {}", t.s) });
            }
            if m == 0 || n == 0 {
                return Err(BoundsError::Csv { row, message: "part sizes must be positive".into() });
            }
            t.insert(m, n, entry).map_err(|e| BoundsError::Csv { row, message: e.to_string() })?;
        }
        table.ok_or(BoundsError::Csv { row: 2, message: "table has no rows".into() })
    }

    pub fn to_csv_string(&self) -> String {
        let with_note = self.entries.values().any(|e| e.note.is_some());
        let mut out = String::from("m,n,s,lower,upper,exact");
        if with_note {
            out.push_str(",note");
        }
        out.push('\n');
        for (&(m, n), e) in &self.entries {
            out.push_str(&format!("{m},{n},{},{},{},{}", self.s, e.lower, e.upper, e.exact));
            if with_note {
                out.push(',');
                out.push_str(e.note.as_deref().unwrap_or(""));
            }
            out.push('\n');
        }
        out
    }

    pub fn load(path: &Path) -> Result<Self, BoundsError> {
        Self::from_csv_str(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), BoundsError> {
        std::fs::write(path, self.to_csv_string())?;
        Ok(())
    }

    /// Internal consistency: per-entry invariants and monotonicity of
    /// upper and lower bounds between stored neighbours.
    pub fn verify(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for (&(m, n), e) in &self.entries {
            if let Err(err) = e.check(m, n) {
                problems.push(err.to_string());
            }
            for (a, b) in [(m + 1, n), (m, n + 1)] {
                if let Some(next) = self.get(a, b) {
                    if e.upper > next.upper {
                        problems.push(format!("upper({m},{n}) = {} > upper({a},{b}) = {}", e.upper, next.upper));
                    }
                    if e.lower > next.upper {
                        problems.push(format!("lower({m},{n}) = {} > upper({a},{b}) = {}", e.lower, next.upper));
                    }
                }
            }
        }
        problems
    }
}

/// Why a cell has its current upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Intrinsic,
    Seed,
    Star,
    /// Density step removing a left vertex from `(m-1, n)`.
    DensityLeft,
    /// Density step removing a right vertex from `(m, n-1)`.
    DensityRight,
    /// Inherited from the larger cell `(m+1, n)`.
    MonotoneLeft,
    /// Inherited from the larger cell `(m, n+1)`.
    MonotoneRight,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Origin::Intrinsic => "intrinsic",
            Origin::Seed => "seed",
            Origin::Star => "star counting",
            Origin::DensityLeft => "density (left)",
            Origin::DensityRight => "density (right)",
            Origin::MonotoneLeft => "monotone (left)",
            Origin::MonotoneRight => "monotone (right)",
        };
        f.write_str(s)
    }
}

/// Output of [`z_bound_traced`].
#[derive(Clone, Debug)]
pub struct Propagation {
    pub table: BoundTable,
    /// Keyed by ordered `(m, n)` as traversed.
    pub origins: BTreeMap<(usize, usize), Origin>,
    pub sweeps: usize,
}

impl Propagation {
    /// Cells where the propagated upper bound is strictly below `published`.
    pub fn improvements(&self, published: &BoundTable) -> Vec<((usize, usize), u64, u64)> {
        published
            .iter()
            .filter_map(|(k, e)| {
                let ours = self.table.get(k.0, k.1)?.upper;
                (ours < e.upper).then_some((k, e.upper, ours))
            })
            .collect()
    }
}

/// Propagates upper bounds over `1..=max_m × 1..=max_n` to a fixpoint.
pub fn z_bound(table: &BoundTable, max_m: usize, max_n: usize) -> Result<BoundTable, BoundsError> {
    Ok(z_bound_traced(table, max_m, max_n)?.table)
}

pub fn z_bound_traced(table: &BoundTable, max_m: usize, max_n: usize) -> Result<Propagation, BoundsError> {
    let s = table.s;
    let mut upper: BTreeMap<(usize, usize), (u64, Origin)> = BTreeMap::new();
    let mut lower: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for ((m, n), e) in table.iter() {
        upper.insert((m, n), (e.upper, Origin::Seed));
        lower.insert((m, n), e.lower);
    }
    let get = |map: &BTreeMap<(usize, usize), (u64, Origin)>, i: usize, j: usize| map.get(&norm(i, j)).map(|x| x.0);

    // lower bounds only grow along both axes
    let lim = max_m.max(max_n);
    let mut changed = true;
    while changed {
        changed = false;
        for i in 1..=lim {
            for j in i..=lim {
                let mut best = lower.get(&(i, j)).copied().unwrap_or(0);
                if let Some(v) = table.intrinsic(i, j) {
                    best = best.max(v);
                }
                for (a, b) in [(i - 1, j), (i, j - 1)] {
                    if a >= 1 && b >= 1 {
                        best = best.max(lower.get(&norm(a, b)).copied().unwrap_or(0));
                    }
                }
                if best > lower.get(&(i, j)).copied().unwrap_or(0) {
                    lower.insert((i, j), best);
                    changed = true;
                }
            }
        }
    }

    let mut star_cache: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut origins: BTreeMap<(usize, usize), Origin> = BTreeMap::new();
    let mut sweeps = 0;
    let mut changed = true;
    while changed {
        changed = false;
        sweeps += 1;
        for i in 1..=max_m {
            for j in 1..=max_n {
                let mut cands: Vec<(u64, Origin)> = Vec::with_capacity(6);
                if let Some(v) = table.intrinsic(i, j) {
                    cands.push((v, Origin::Intrinsic));
                }
                if let Some(&cur) = upper.get(&norm(i, j)) {
                    cands.push(cur);
                }
                let st = *star_cache.entry(norm(i, j)).or_insert_with(|| star_bound_max_edges(i, j, s) as u64);
                cands.push((st, Origin::Star));
                if i > 1 {
                    if let Some(u) = get(&upper, i - 1, j) {
                        cands.push((density_step_bound(u, i as u64), Origin::DensityLeft));
                    }
                }
                if j > 1 {
                    if let Some(u) = get(&upper, i, j - 1) {
                        cands.push((density_step_bound(u, j as u64), Origin::DensityRight));
                    }
                }
                if let Some(u) = get(&upper, i + 1, j) {
                    cands.push((u, Origin::MonotoneLeft));
                }
                if let Some(u) = get(&upper, i, j + 1) {
                    cands.push((u, Origin::MonotoneRight));
                }
                // ties keep the earliest candidate, so a stable value keeps its origin
                let best = cands.iter().copied().min_by_key(|c| c.0).unwrap();
                let cur = upper.get(&norm(i, j)).map(|x| x.0);
                if cur != Some(best.0) {
                    upper.insert(norm(i, j), best);
                    origins.insert((i, j), best.1);
                    changed = true;
                } else {
                    origins.entry((i, j)).or_insert(best.1);
                }
                let lo = lower.get(&norm(i, j)).copied().unwrap_or(0);
                if best.0 < lo {
                    let chain = derivation_chain(&origins, i, j);
                    return Err(BoundsError::Inconsistent { m: i, n: j, lower: lo, upper: best.0, chain });
                }
            }
        }
    }

    let mut out = BoundTable::new(s);
    let cells: BTreeSet<(usize, usize)> = upper.keys().copied().collect();
    for (m, n) in cells {
        let (u, _) = upper[&(m, n)];
        let lo = lower.get(&(m, n)).copied().unwrap_or(0).min(u);
        let note = table.get(m, n).and_then(|e| e.note.clone());
        out.insert(m, n, Entry { lower: lo, upper: u, exact: lo == u, note })?;
    }
    Ok(Propagation { table: out, origins, sweeps })
}

fn derivation_chain(origins: &BTreeMap<(usize, usize), Origin>, m: usize, n: usize) -> Vec<String> {
    let mut chain = Vec::new();
    let mut seen = BTreeSet::new();
    let (mut i, mut j) = (m, n);
    while seen.insert((i, j)) {
        let Some(&o) = origins.get(&(i, j)).or_else(|| origins.get(&(j, i))) else {
            chain.push(format!("({i},{j}) seed"));
            break;
        };
        chain.push(format!("({i},{j}) {o}"));
        (i, j) = match o {
            Origin::DensityLeft => (i - 1, j),
            Origin::DensityRight => (i, j - 1),
            Origin::MonotoneLeft => (i + 1, j),
            Origin::MonotoneRight => (i, j + 1),
            Origin::Intrinsic | Origin::Seed | Origin::Star => break,
        };
    }
    chain
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn all_compositions(p: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 1 {
            return vec![vec![p]];
        }
        (0..=p)
            .flat_map(|first| {
                all_compositions(p - first, k - 1).into_iter().map(move |mut rest| {
                    rest.push(first);
                    rest
                })
            })
            .collect()
    }

    #[test]
    fn balanced_parts() {
        assert_eq!(balanced_composition(10, 4).unwrap().parts, vec![3, 3, 2, 2]);
        assert_eq!(balanced_composition(12, 4).unwrap().parts, vec![3, 3, 3, 3]);
        assert!(balanced_composition(3, 0).is_err());
        assert!(balanced_composition(0, 3).unwrap().is_balanced());
    }

    #[test]
    fn balanced_minimises_star_sum() {
        for p in 0..=14 {
            for k in 1..=4 {
                for s in 1..=4 {
                    let bal = star_sum(&balanced_composition(p, k).unwrap(), s).unwrap();
                    let min =
                        all_compositions(p, k).into_iter().map(|c| star_sum(&Composition::new(c), s).unwrap()).min();
                    assert_eq!(Some(bal), min, "p={p} k={k} s={s}");
                }
            }
        }
    }

    #[test]
    fn star_sums() {
        assert_eq!(star_sum(&Composition::new(vec![3, 2, 2, 2]), 2).unwrap(), 6);
        assert_eq!(star_sum(&Composition::new(vec![3, 3, 2, 2]), 2).unwrap(), 8);
        assert_eq!(star_sum(&Composition::new(vec![1, 1, 1]), 2).unwrap(), 0);
    }

    #[test]
    fn binomials_checked() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(2, 5), Some(0));
        assert_eq!(binomial(60, 30), Some(118264581564861424));
        assert_eq!(binomial(200, 100), None);
    }

    #[test]
    fn star_bound_examples() {
        assert_eq!(star_bound_max_edges(4, 4, 2), 9);
        assert_eq!(star_bound_max_edges(1, 7, 2), 7);
        assert_eq!(star_bound_max_edges(2, 5, 3), 10);
        assert!(star_bound_max_edges(6, 6, 3) >= 26);
        assert_eq!(star_bound_max_edges(5, 5, 1), 0);
    }

    #[test]
    fn density_matches_scan() {
        for u in 0..200u64 {
            for m in 2..12u64 {
                let mut w = u;
                while (w + 1) - (w + 1) / m <= u {
                    w += 1;
                }
                assert_eq!(density_step_bound(u, m), w, "u={u} m={m}");
            }
        }
        assert_eq!(density_step_bound(9, 5), 11);
        assert_eq!(density_step_bound(3, 2), 6);
        assert_eq!(density_step_bound(0, 7), 0);
    }

    #[test]
    fn base_row_reproduces_worked_examples() {
        let t = z_bound(&BoundTable::new(2), 5, 5).unwrap();
        assert_eq!(t.upper(4, 4), Some(9));
        assert!(t.upper(4, 5).unwrap() <= 11);
        assert_eq!(t.upper(1, 5), Some(5));
    }

    #[test]
    fn inconsistent_seed_reports_chain() {
        let mut t = BoundTable::new(2);
        t.insert(3, 3, Entry::range(7, 7)).unwrap();
        let err = z_bound(&t, 4, 4).unwrap_err();
        match err {
            BoundsError::Inconsistent { lower, upper, chain, .. } => {
                assert!(upper < lower);
                assert!(!chain.is_empty());
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let text = "m,n,s,lower,upper,exact\n1,1,2,1,1,true\n32,32,2,189,190,false\n";
        let t = BoundTable::from_csv_str(text).unwrap();
        assert_eq!(t.to_csv_string(), text);
        assert_eq!(t.get(32, 32), Some(&Entry::range(189, 190)));
        let bad = "m,n,s,lower,upper,exact\n3,3,2,7,6,false\n";
        assert!(matches!(BoundTable::from_csv_str(bad), Err(BoundsError::Csv { row: 2, .. })));
        let bad = "m,n,s,lower,upper,exact\n3,3,2,6,6,true\n3,4,x,6,6,true\n";
        assert!(matches!(BoundTable::from_csv_str(bad), Err(BoundsError::Csv { row: 3, .. })));
        assert!(BoundTable::from_csv_str("a,b\n").is_err());
    }

    #[test]
    fn symmetric_lookup() {
        let mut t = BoundTable::new(3);
        t.insert(7, 6, Entry::exact(29)).unwrap();
        assert_eq!(t.upper(6, 7), Some(29));
        assert_eq!(t.upper(2, 9), Some(18));
        assert_eq!(t.lower(2, 9), Some(18));
        assert_eq!(t.upper(8, 8), None);
    }

    proptest! {
        #[test]
        fn weaker_seeds_never_help(bump in 0u64..4, cell in 0usize..3) {
            let mut strong = BoundTable::new(2);
            let seeds = [(3usize, 3usize, 6u64), (4, 4, 9), (5, 5, 12)];
            for &(m, n, v) in &seeds {
                strong.insert(m, n, Entry::exact(v)).unwrap();
            }
            let mut weak = strong.clone();
            let (m, n, v) = seeds[cell];
            weak.insert(m, n, Entry::range(v, v + bump)).unwrap();
            let a = z_bound(&strong, 7, 7).unwrap();
            let b = z_bound(&weak, 7, 7).unwrap();
            for i in 1..=7 {
                for j in 1..=7 {
                    prop_assert!(a.upper(i, j) <= b.upper(i, j));
                }
            }
        }

        #[test]
        fn propagated_uppers_are_monotone(max in 3usize..9, s in 2usize..4) {
            let t = z_bound(&BoundTable::new(s), max, max).unwrap();
            for i in 1..max {
                for j in 1..max {
                    prop_assert!(t.upper(i, j) <= t.upper(i + 1, j));
                    prop_assert!(t.upper(i, j) <= t.upper(i, j + 1));
                }
            }
        }
    }
}
