//! Finite groups given by multiplication tables, Sidon sets, and bipartite
//! Cayley graphs.
//!
//! Elements are `0..order`. In group files they are numbered from 1 and
//! element 1 is the identity.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::bigraph::BiGraph;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("unknown group {0:?}")]
    UnknownName(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("element {element} out of range for a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    name: String,
    order: usize,
    mul: Vec<u32>,
    identity: usize,
    inv: Vec<u32>,
}

impl Group {
    /// Builds a group from a 0-based multiplication table, checking the axioms.
    pub fn from_table(name: impl Into<String>, table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let k = table.len();
        if k == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        let mut mul = Vec::with_capacity(k * k);
        for (a, row) in table.iter().enumerate() {
            if row.len() != k {
                return Err(GroupError::NotAGroup(format!("row {a} has {} entries, expected {k}", row.len())));
            }
            for &x in row {
                if x >= k {
                    return Err(GroupError::ElementOutOfRange { element: x, order: k });
                }
                mul.push(x as u32);
            }
        }
        let at = |a: usize, b: usize| mul[a * k + b] as usize;
        let identity = (0..k)
            .find(|&e| (0..k).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| GroupError::NotAGroup("no identity element".into()))?;
        let mut inv = Vec::with_capacity(k);
        for a in 0..k {
            let b = (0..k)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {a} has no inverse")))?;
            inv.push(b as u32);
        }
        for a in 0..k {
            for b in 0..k {
                let ab = at(a, b);
                for c in 0..k {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        Ok(Group { name: name.into(), order: k, mul, identity, inv })
    }

    fn from_fn(name: String, k: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let table: Vec<Vec<usize>> = (0..k).map(|a| (0..k).map(|b| f(a, b)).collect()).collect();
        Group::from_table(name, &table).expect("builtin construction is a group")
    }

    /// Integers modulo `n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        Group::from_fn(format!("cyclic({n})"), n, |a, b| (a + b) % n)
    }

    /// Symmetries of the `n`-gon, order `2n`; element `r^i s^j` has index `i + n j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        Group::from_fn(format!("dihedral({n})"), 2 * n, |x, y| {
            let (i, j) = (x % n, x / n);
            let (k, l) = (y % n, y / n);
            let r = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            r + n * ((j + l) % 2)
        })
    }

    /// `<a, b | a^{2n} = 1, b^2 = a^n, b^{-1} a b = a^{-1}>`, order `4n`;
    /// element `a^i b^j` has index `i + 2n j`.
    pub fn dicyclic(n: usize) -> Self {
        assert!(n >= 1);
        let h = 2 * n;
        Group::from_fn(format!("dicyclic({n})"), 2 * h, |x, y| {
            let (i, j) = (x % h, x / h);
            let (k, l) = (y % h, y / h);
            match (j, l) {
                (0, _) => (i + k) % h + h * l,
                (_, 0) => (i + h - k) % h + h,
                _ => (i + h - k + n) % h,
            }
        })
    }

    /// `(Z_p)^k`.
    pub fn elementary(p: usize, k: u32) -> Self {
        assert!(p >= 2);
        let g = Group::cyclic(p);
        let mut out = Group::cyclic(1);
        for _ in 0..k {
            out = out.product(&g);
        }
        out.name = format!("elem({p},{k})");
        out
    }

    /// Direct product; element `(a, b)` has index `a * other.order() + b`.
    pub fn product(&self, other: &Group) -> Self {
        let (k1, k2) = (self.order, other.order);
        let name = if k1 == 1 { other.name.clone() } else { format!("{}x{}", self.name, other.name) };
        Group::from_fn(name, k1 * k2, |x, y| self.mul(x / k2, y / k2) * k2 + other.mul(x % k2, y % k2))
    }

    /// Parses names such as `cyclic(15)`, `z15`, `dihedral(4)`, `dih4`,
    /// `dicyclic(4)`, `dic4`, `elem(2,3)`, and products joined by `x`.
    pub fn builtin(name: &str) -> Result<Self, GroupError> {
        let lower = name.trim().to_ascii_lowercase();
        let unknown = || GroupError::UnknownName(name.to_string());
        let mut out: Option<Group> = None;
        for part in lower.split('x') {
            let g = Self::builtin_factor(part.trim()).ok_or_else(unknown)?;
            out = Some(match out {
                None => g,
                Some(acc) => acc.product(&g),
            });
        }
        out.ok_or_else(unknown)
    }

    fn builtin_factor(part: &str) -> Option<Group> {
        let args = |rest: &str| -> Option<Vec<usize>> {
            let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
            inner.split(',').map(|a| a.trim().parse().ok()).collect()
        };
        let one = |rest: &str| -> Option<usize> {
            match args(rest) {
                Some(v) if v.len() == 1 => Some(v[0]),
                _ => rest.parse().ok(),
            }
        };
        let positive = |n: usize| (n >= 1).then_some(n);
        for (prefix, kind) in
            [("cyclic", 0), ("dihedral", 1), ("dicyclic", 2), ("elem", 3), ("dic", 2), ("dih", 1), ("z", 0), ("c", 0)]
        {
            if let Some(rest) = part.strip_prefix(prefix) {
                return match kind {
                    0 => one(rest).and_then(positive).map(Group::cyclic),
                    1 => one(rest).and_then(positive).map(Group::dihedral),
                    2 => one(rest).and_then(positive).map(Group::dicyclic),
                    _ => match args(rest)?.as_slice() {
                        &[p, k] if p >= 2 => Some(Group::elementary(p, k as u32)),
                        _ => None,
                    },
                };
            }
        }
        None
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Smallest `k >= 1` with `a^k = 1`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a))).collect()
    }

    /// File format: order on the first line, then the table with 1-based
    /// entries; element 1 must be the identity.
    pub fn from_text(text: &str) -> Result<Self, GroupError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(GroupError::Parse { line: 1, message: "missing order".into() })?;
        let k: usize =
            header.parse().map_err(|_| GroupError::Parse { line, message: format!("bad order {header:?}") })?;
        let mut table = Vec::with_capacity(k);
        for r in 0..k {
            let (line, text) =
                lines.next().ok_or(GroupError::Parse { line: line + r + 1, message: format!("expected {k} rows") })?;
            let row: Vec<usize> = text
                .split_whitespace()
                .map(|t| match t.parse::<usize>() {
                    Ok(v) if (1..=k).contains(&v) => Ok(v - 1),
                    _ => Err(GroupError::Parse { line, message: format!("bad entry {t:?}") }),
                })
                .collect::<Result<_, _>>()?;
            if row.len() != k {
                return Err(GroupError::Parse { line, message: format!("expected {k} entries, found {}", row.len()) });
            }
            table.push(row);
        }
        if let Some((line, _)) = lines.next() {
            return Err(GroupError::Parse { line, message: "trailing content".into() });
        }
        let g = Group::from_table("file", &table)?;
        if g.identity != 0 {
            return Err(GroupError::NotAGroup("element 1 is not the identity".into()));
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|b| (self.mul(a, b) + 1).to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn load(path: &Path) -> Result<Self, GroupError> {
        let mut g = Group::from_text(&std::fs::read_to_string(path)?)?;
        g.name = path.display().to_string();
        Ok(g)
    }

    /// A copy relabeled so the identity is element 0, as the file format requires.
    pub fn with_identity_first(&self) -> Group {
        let k = self.order;
        let e = self.identity;
        let swap = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        Group::from_fn(self.name.clone(), k, |a, b| swap(self.mul(swap(a), swap(b))))
    }
}

/// Parses a comma-separated list of element indices.
pub fn parse_set(text: &str, g: &Group) -> Result<Vec<usize>, GroupError> {
    let mut out = Vec::new();
    for (i, tok) in text.split(',').map(str::trim).filter(|t| !t.is_empty()).enumerate() {
        let v: usize = tok
            .parse()
            .map_err(|_| GroupError::Parse { line: 1, message: format!("item {}: bad element {tok:?}", i + 1) })?;
        if v >= g.order() {
            return Err(GroupError::ElementOutOfRange { element: v, order: g.order() });
        }
        out.push(v);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// No `s1 s2^{-1} s3 s4^{-1} = 1` in `S` except when cyclically adjacent terms coincide.
pub fn is_sidon(g: &Group, set: &[usize]) -> bool {
    let mut member = vec![false; g.order()];
    for &x in set {
        member[x] = true;
    }
    for &s1 in set {
        for &s2 in set {
            if s1 == s2 {
                continue;
            }
            let t = g.mul(s1, g.inv(s2));
            for &s3 in set {
                if s3 == s2 {
                    continue;
                }
                let s4 = g.mul(t, s3);
                if member[s4] && s4 != s3 && s4 != s1 {
                    return false;
                }
            }
        }
    }
    true
}

/// All Sidon sets of the given size in lexicographic order, optionally
/// restricted to those containing the identity.
pub fn enumerate_sidon(g: &Group, size: usize, require_identity: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size > g.order() {
        return out;
    }
    let mut cur = Vec::with_capacity(size);
    if require_identity {
        if size == 0 {
            return out;
        }
        cur.push(g.identity());
    }
    fn rec(g: &Group, start: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            let mut set = cur.clone();
            set.sort_unstable();
            out.push(set);
            return;
        }
        for x in start..g.order() {
            if cur.contains(&x) {
                continue;
            }
            cur.push(x);
            // subsets of Sidon sets are Sidon, so a failing prefix is dropped
            if is_sidon(g, cur) {
                rec(g, x + 1, size, cur, out);
            }
            cur.pop();
        }
    }
    rec(g, 0, size, &mut cur, &mut out);
    out.sort();
    out
}

/// `X(G, S)`: row `x` is adjacent to column `x·s` for every `s` in `S`.
pub fn cayley_bigraph(g: &Group, set: &[usize]) -> BiGraph {
    let k = g.order();
    let mut out = BiGraph::new(k, k);
    for x in 0..k {
        for &s in set {
            out.set_edge(x, g.mul(x, s), true);
        }
    }
    out
}

#[cfg(test)]
pub(crate) fn is_sidon_naive(g: &Group, set: &[usize]) -> bool {
    for &a in set {
        for &b in set {
            for &c in set {
                for &d in set {
                    let v = g.mul(g.mul(g.mul(a, g.inv(b)), c), g.inv(d));
                    if v == g.identity() && a != b && b != c && c != d && d != a {
                        return false;
                    }
                }
            }
        }
    }
    true
}
