//! Edge colorings of `K_{n,n}`, witness verification, and Ramsey upper
//! bounds from Zarankiewicz tables.
//!
//! If `Σ z(n;s_i) < n²` then every `k`-coloring of `K_{n,n}` has some color
//! `i` with more than `z(n;s_i)` edges, hence a monochromatic `K_{s_i,s_i}`,
//! so `b(s_1,…,s_k) <= n`.

use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::biclique::Biclique;
use crate::bigraph::BiGraph;
use crate::bounds::BoundTable;

#[derive(Debug, Error)]
pub enum RamseyError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("color {color} out of range 1..={k}")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("spec has {found} sizes but the coloring has {expected} colors")]
    SpecLength { expected: usize, found: usize },
    #[error("bad avoidance spec {0:?}")]
    BadSpec(String),
    #[error("expected {expected} tables, got {found}")]
    TableCount { expected: usize, found: usize },
    #[error("table {index} is for s = {found}, spec needs s = {expected}")]
    TableMismatch { index: usize, expected: usize, found: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A `k`-coloring of the edges of `K_{n,n}`; colors are `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    n: usize,
    k: usize,
    cells: Vec<u8>,
}

impl Coloring {
    pub fn new(n: usize, k: usize, cells: Vec<u8>) -> Result<Self, RamseyError> {
        assert_eq!(cells.len(), n * n);
        if let Some(&c) = cells.iter().find(|&&c| c == 0 || c as usize > k) {
            return Err(RamseyError::ColorOutOfRange { color: c as usize, k });
        }
        Ok(Coloring { n, k, cells })
    }

    /// Colors graph edges 1 and non-edges 2.
    pub fn from_graph(g: &BiGraph) -> Self {
        assert_eq!(g.m(), g.n(), "coloring needs a square graph");
        let n = g.m();
        let cells = (0..n * n).map(|x| if g.has_edge(x / n, x % n) { 1 } else { 2 }).collect();
        Coloring { n, k: 2, cells }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.n + j] as usize
    }

    /// Edges of color `i`.
    pub fn color_class(&self, i: usize) -> Result<BiGraph, RamseyError> {
        if i == 0 || i > self.k {
            return Err(RamseyError::ColorOutOfRange { color: i, k: self.k });
        }
        Ok(BiGraph::from_fn(self.n, self.n, |a, b| self.get(a, b) == i))
    }

    pub fn reflect(&self) -> Coloring {
        let n = self.n;
        let cells = (0..n * n).map(|x| self.cells[(x % n) * n + x / n]).collect();
        Coloring { n, k: self.k, cells }
    }

    /// Format: `n k`, then `n` lines of `n` digits in `1..=k`; `#` starts a comment line.
    pub fn from_text(text: &str) -> Result<Self, RamseyError> {
        let err = |line: usize, column: usize, message: String| RamseyError::Parse { line, column, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| err(1, 1, "missing header \"n k\"".into()))?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        let parsed: Vec<Option<usize>> = nums.iter().map(|t| t.parse().ok()).collect();
        let (n, k) = match parsed.as_slice() {
            [Some(n), Some(k)] if *n >= 1 && (1..=9).contains(k) => (*n, *k),
            _ => return Err(err(hl, 1, format!("bad header {header:?}, expected \"n k\" with 1 <= k <= 9"))),
        };
        let mut cells = Vec::with_capacity(n * n);
        let mut last = hl;
        for r in 0..n {
            let (ln, row) = lines.next().ok_or_else(|| err(last + 1, 1, format!("expected {n} rows, found {r}")))?;
            last = ln;
            let row = row.trim();
            if row.chars().count() != n {
                return Err(err(ln, 1, format!("expected {n} cells, found {}", row.chars().count())));
            }
            for (col, ch) in row.chars().enumerate() {
                match ch.to_digit(10) {
                    Some(d) if d >= 1 && d as usize <= k => cells.push(d as u8),
                    _ => return Err(err(ln, col + 1, format!("illegal cell {ch:?}, expected a color in 1..={k}"))),
                }
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(err(ln, 1, "trailing content".into()));
        }
        Ok(Coloring { n, k, cells })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.k);
        for row in self.cells.chunks(self.n) {
            out.extend(row.iter().map(|&c| char::from(b'0' + c)));
            out.push('\n');
        }
        out
    }

    pub fn load(path: &Path) -> Result<Self, RamseyError> {
        Coloring::from_text(&std::fs::read_to_string(path)?)
    }
}

/// Biclique orders `s_1, …, s_k`, one per color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidanceSpec {
    pub sizes: Vec<usize>,
}

impl AvoidanceSpec {
    pub fn new(sizes: Vec<usize>) -> Result<Self, RamseyError> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(RamseyError::BadSpec(format!("{sizes:?}")));
        }
        Ok(AvoidanceSpec { sizes })
    }

    /// Parses `2,2,3`.
    pub fn parse(text: &str) -> Result<Self, RamseyError> {
        let sizes: Option<Vec<usize>> = text.split(',').map(|t| t.trim().parse().ok()).collect();
        AvoidanceSpec::new(sizes.ok_or_else(|| RamseyError::BadSpec(text.to_string()))?)
    }
}

impl fmt::Display for AvoidanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(|s| s.to_string()).collect();
        write!(f, "b({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorReport {
    pub color: usize,
    pub edges: usize,
    pub forbidden: usize,
    /// An embedded `K_{s,s}` when the color fails.
    pub certificate: Option<Biclique>,
}

impl ColorReport {
    pub fn passed(&self) -> bool {
        self.certificate.is_none()
    }
}

impl fmt::Display for ColorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "color {}: edges={}, forbidden={}, verdict={verdict}", self.color, self.edges, self.forbidden)?;
        if let Some(b) = &self.certificate {
            let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            write!(f, ", certificate={};{}", list(&b.rows), list(&b.cols))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub n: usize,
    pub spec: AvoidanceSpec,
    pub colors: Vec<ColorReport>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.colors.iter().all(ColorReport::passed)
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.colors {
            writeln!(f, "{c}")?;
        }
        if self.passed() {
            write!(f, "witness: PASS, {} < {}", self.n, self.spec)
        } else {
            write!(f, "witness: FAIL")
        }
    }
}

/// Checks each color class for its forbidden biclique.
pub fn verify_witness(c: &Coloring, spec: &AvoidanceSpec) -> Result<WitnessReport, RamseyError> {
    if spec.sizes.len() != c.k() {
        return Err(RamseyError::SpecLength { expected: c.k(), found: spec.sizes.len() });
    }
    let colors = spec
        .sizes
        .par_iter()
        .enumerate()
        .map(|(idx, &s)| {
            let g = c.color_class(idx + 1).expect("color in range");
            ColorReport { color: idx + 1, edges: g.edge_count(), forbidden: s, certificate: g.find_biclique(s, s) }
        })
        .collect();
    Ok(WitnessReport { n: c.n(), spec: spec.clone(), colors })
}

/// Whether the per-color upper bounds cannot cover all `n²` edges.
pub fn upper_bound_check(n: u64, z_uppers: &[u64]) -> bool {
    let total: u128 = z_uppers.iter().map(|&z| z as u128).sum();
    total < (n as u128) * (n as u128)
}

/// The first `n` at which [`upper_bound_check`] succeeds, with the entries used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyDerivation {
    pub n: usize,
    pub uppers: Vec<u64>,
    /// Sizes at which the check ran and failed, with their totals.
    pub inconclusive: Vec<(usize, u64)>,
    /// Sizes skipped because some table lacked the entry.
    pub skipped: Vec<usize>,
}

impl RamseyDerivation {
    pub fn total(&self) -> u64 {
        self.uppers.iter().sum()
    }
}

/// Least `n <= n_max` for which the tables prove `b(s_1,…,s_k) <= n`.
pub fn derive_ramsey_upper(
    tables: &[BoundTable],
    spec: &AvoidanceSpec,
    n_max: usize,
) -> Result<Option<RamseyDerivation>, RamseyError> {
    if tables.len() != spec.sizes.len() {
        return Err(RamseyError::TableCount { expected: spec.sizes.len(), found: tables.len() });
    }
    for (index, (t, &s)) in tables.iter().zip(&spec.sizes).enumerate() {
        if t.s() != s {
            return Err(RamseyError::TableMismatch { index, expected: s, found: t.s() });
        }
    }
    let mut inconclusive = Vec::new();
    let mut skipped = Vec::new();
    for n in 1..=n_max {
        let uppers: Option<Vec<u64>> = tables.iter().map(|t| t.upper(n, n)).collect();
        let Some(uppers) = uppers else {
            log::warn!("no upper bound for n = {n} in every table; skipping");
            skipped.push(n);
            continue;
        };
        if upper_bound_check(n as u64, &uppers) {
            return Ok(Some(RamseyDerivation { n, uppers, inconclusive, skipped }));
        }
        inconclusive.push((n, uppers.iter().sum()));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn parse_and_classes() {
        let c = Coloring::from_text("2 2\n12\n21").unwrap();
        assert_eq!(c.color_class(1).unwrap(), BiGraph::from_fn(2, 2, |i, j| i == j));
        assert!(c.color_class(3).is_err());
        assert_eq!(Coloring::from_text(&c.to_text()).unwrap(), c);
        let err = Coloring::from_text("2 2\n12\n01").unwrap_err();
        assert!(matches!(err, RamseyError::Parse { line: 3, column: 1, .. }), "{err}");
        assert!(Coloring::from_text("2 2\n12\n2").is_err());
        assert!(Coloring::from_text("2 2\n12\n21\n11").is_err());
    }

    #[test]
    fn classes_partition_the_square() {
        let c = Coloring::from_text(data::WITNESS_B223).unwrap();
        let classes: Vec<BiGraph> = (1..=3).map(|i| c.color_class(i).unwrap()).collect();
        let total: usize = classes.iter().map(BiGraph::edge_count).sum();
        assert_eq!(total, 256);
        for i in 0..16 {
            for j in 0..16 {
                assert_eq!(classes.iter().filter(|g| g.has_edge(i, j)).count(), 1);
            }
        }
    }

    #[test]
    fn packaged_witnesses_pass() {
        let c = Coloring::from_text(data::WITNESS_B25).unwrap();
        let r = verify_witness(&c, &AvoidanceSpec::parse("2,5").unwrap()).unwrap();
        assert!(r.passed());
        assert_eq!(r.colors.iter().map(|c| c.edges).collect::<Vec<_>>(), vec![64, 192]);
        assert!(verify_witness(&c.reflect(), &r.spec).unwrap().passed());
        let c = Coloring::from_text(data::WITNESS_B223).unwrap();
        let r = verify_witness(&c, &AvoidanceSpec::parse("2,2,3").unwrap()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn failing_color_has_certificate() {
        let c = Coloring::from_text("2 1\n11\n11").unwrap();
        let r = verify_witness(&c, &AvoidanceSpec::parse("2").unwrap()).unwrap();
        assert!(!r.passed());
        assert_eq!(r.colors[0].to_string(), "color 1: edges=4, forbidden=2, verdict=FAIL, certificate=0,1;0,1");
        assert!(verify_witness(&c, &AvoidanceSpec::parse("2,2").unwrap()).is_err());
    }

    #[test]
    fn arithmetic() {
        assert!(upper_bound_check(17, &[74, 213]));
        assert!(upper_bound_check(18, &[81, 81, 156]));
        assert!(!upper_bound_check(17, &[74, 74, 141]));
    }

    #[test]
    fn derive_from_packaged_tables() {
        let t = |s| data::table(s).unwrap().unwrap();
        let d = derive_ramsey_upper(&[t(2), t(5)], &AvoidanceSpec::parse("2,5").unwrap(), 32).unwrap().unwrap();
        assert_eq!((d.n, d.total()), (17, 287));
        let d = derive_ramsey_upper(&[t(2), t(2), t(3)], &AvoidanceSpec::parse("2,2,3").unwrap(), 32).unwrap().unwrap();
        assert_eq!((d.n, d.total()), (18, 318));
        assert!(d.inconclusive.contains(&(17, 289)));
        let one = BoundTable::new(1);
        let d = derive_ramsey_upper(&[one.clone(), one], &AvoidanceSpec::parse("1,1").unwrap(), 5).unwrap().unwrap();
        assert_eq!(d.n, 1);
        assert!(derive_ramsey_upper(&[t(3)], &AvoidanceSpec::parse("2").unwrap(), 5).is_err());
    }
}
