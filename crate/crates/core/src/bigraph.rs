//! Bipartite graphs with a fixed bipartition, stored as an `m × n` 0-1 matrix.
//!
//! Row `i` is the neighbourhood of left vertex `i`, packed into
//! `ceil(n / 64)` words. Graphs up to 64 columns use a single word per row.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::biclique::{self, Biclique};
use crate::bitset::{self, words_for, Bitset, WORD_BITS};

/// Which part of the bipartition a vertex lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("{side:?} vertex index {index} out of range (part size {size})")]
    IndexOutOfRange { side: Side, index: usize, size: usize },
    #[error("neighbour {index} out of range (opposite part size {size})")]
    NeighborOutOfRange { index: usize, size: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing header line \"m n\"")]
    MissingHeader,
    #[error("malformed header {0:?}, expected two positive integers \"m n\"")]
    BadHeader(String),
    #[error("expected {expected} matrix rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row has {found} characters, expected {expected}")]
    RowLength { expected: usize, found: usize },
    #[error("illegal character {0:?} (only '0' and '1' allowed)")]
    IllegalChar(char),
    #[error("unexpected trailing content")]
    Trailing,
}

fn perr(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Degree sequence of one side of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    pub side: Side,
    pub values: Vec<usize>,
}

impl DegreeSequence {
    pub fn sum(&self) -> usize {
        self.values.iter().sum()
    }

    pub fn min(&self) -> Option<usize> {
        self.values.iter().copied().min()
    }

    pub fn max(&self) -> Option<usize> {
        self.values.iter().copied().max()
    }
}

/// A bipartite graph `G[m, n]` with left part `0..m` and right part `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiGraph {
    m: usize,
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BiGraph {
    /// Edgeless graph.
    pub fn new(m: usize, n: usize) -> Self {
        let stride = words_for(n);
        BiGraph { m, n, stride, bits: vec![0; m * stride] }
    }

    /// `K_{m,n}`.
    pub fn complete(m: usize, n: usize) -> Self {
        let full = Bitset::full(n);
        let mut g = BiGraph::new(m, n);
        for i in 0..m {
            g.row_mut(i).copy_from_slice(full.words());
        }
        g
    }

    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = BiGraph::new(m, n);
        for i in 0..m {
            for j in 0..n {
                if f(i, j) {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    /// Builds a graph with `n <= 64` from one mask per row (bit `j` = column `j`).
    pub fn from_row_masks(n: usize, rows: &[u64]) -> Self {
        assert!(n <= WORD_BITS, "from_row_masks needs n <= 64");
        let mask = bitset::low_mask(n);
        let mut g = BiGraph::new(rows.len(), n);
        if n > 0 {
            for (i, r) in rows.iter().enumerate() {
                g.bits[i] = r & mask;
            }
        }
        g
    }

    /// Left part size.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Right part size.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn part_size(&self, side: Side) -> usize {
        match side {
            Side::Left => self.m,
            Side::Right => self.n,
        }
    }

    #[inline]
    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    /// Packed neighbourhood of left vertex `i`.
    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.bits[i * self.stride..(i + 1) * self.stride]
    }

    /// Row `i` as a single mask. Only valid when `n <= 64`.
    #[inline]
    pub fn row_mask(&self, i: usize) -> u64 {
        debug_assert!(self.n <= WORD_BITS);
        if self.stride == 0 {
            0
        } else {
            self.bits[i]
        }
    }

    pub fn row_set(&self, i: usize) -> Bitset {
        Bitset::from_words(self.n, self.row(i).to_vec())
    }

    pub fn column_set(&self, j: usize) -> Bitset {
        let mut b = Bitset::new(self.m);
        for i in 0..self.m {
            if self.has_edge(i, j) {
                b.insert(i);
            }
        }
        b
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        (self.row(i)[j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    pub fn set_edge(&mut self, i: usize, j: usize, on: bool) {
        assert!(i < self.m && j < self.n, "edge ({i},{j}) outside {}x{}", self.m, self.n);
        let w = &mut self.row_mut(i)[j / WORD_BITS];
        if on {
            *w |= 1 << (j % WORD_BITS);
        } else {
            *w &= !(1 << (j % WORD_BITS));
        }
    }

    pub fn edge_count(&self) -> usize {
        bitset::count_words(&self.bits)
    }

    pub fn row_degree(&self, i: usize) -> usize {
        bitset::count_words(self.row(i))
    }

    pub fn col_degree(&self, j: usize) -> usize {
        (0..self.m).filter(|&i| self.has_edge(i, j)).count()
    }

    pub fn degrees(&self, side: Side) -> DegreeSequence {
        let values = match side {
            Side::Left => (0..self.m).map(|i| self.row_degree(i)).collect(),
            Side::Right => {
                let mut d = vec![0; self.n];
                for i in 0..self.m {
                    for j in bitset::Ones::over(self.row(i)) {
                        d[j] += 1;
                    }
                }
                d
            }
        };
        DegreeSequence { side, values }
    }

    /// Bipartite complement: same parts, complemented matrix.
    pub fn complement(&self) -> BiGraph {
        let mut g = self.clone();
        let tail = bitset::tail_mask(self.n);
        for i in 0..self.m {
            let row = g.row_mut(i);
            for w in row.iter_mut() {
                *w = !*w;
            }
            if let Some(last) = row.last_mut() {
                *last &= tail;
            }
        }
        g
    }

    /// Swaps the parts (matrix transpose).
    pub fn reflect(&self) -> BiGraph {
        let mut g = BiGraph::new(self.n, self.m);
        for i in 0..self.m {
            for j in bitset::Ones::over(self.row(i)) {
                g.set_edge(j, i, true);
            }
        }
        g
    }

    /// Removes one vertex; later vertices on that side shift down by one.
    pub fn delete_vertex(&self, side: Side, index: usize) -> Result<BiGraph, GraphError> {
        let size = self.part_size(side);
        if index >= size {
            return Err(GraphError::IndexOutOfRange { side, index, size });
        }
        Ok(match side {
            Side::Left => {
                let mut g = BiGraph::new(self.m - 1, self.n);
                let s = self.stride;
                g.bits[..index * s].copy_from_slice(&self.bits[..index * s]);
                g.bits[index * s..].copy_from_slice(&self.bits[(index + 1) * s..]);
                g
            }
            Side::Right => {
                BiGraph::from_fn(self.m, self.n - 1, |i, j| self.has_edge(i, if j < index { j } else { j + 1 }))
            }
        })
    }

    /// Appends a vertex as the last index of `side` with the given neighbourhood,
    /// which ranges over the opposite side.
    pub fn add_vertex(&self, side: Side, neighbors: &Bitset) -> Result<BiGraph, GraphError> {
        let size = self.part_size(side.opposite());
        if let Some(index) = neighbors.iter().find(|&i| i >= size) {
            return Err(GraphError::NeighborOutOfRange { index, size });
        }
        Ok(match side {
            Side::Left => {
                let mut g = self.clone();
                g.m += 1;
                g.bits.extend(std::iter::repeat_n(0, g.stride));
                for j in neighbors.iter() {
                    g.set_edge(self.m, j, true);
                }
                g
            }
            Side::Right => {
                let mut g = BiGraph::from_fn(self.m, self.n + 1, |i, j| j < self.n && self.has_edge(i, j));
                for i in neighbors.iter() {
                    g.set_edge(i, self.n, true);
                }
                g
            }
        })
    }

    /// Whether `s` left and `t` right vertices exist that are pairwise adjacent.
    pub fn contains_biclique(&self, s: usize, t: usize) -> bool {
        self.find_biclique(s, t).is_some()
    }

    /// An embedded `K_{s,t}` (left vertex set of size `s`, right of size `t`), if any.
    pub fn find_biclique(&self, s: usize, t: usize) -> Option<Biclique> {
        biclique::find(self, s, t)
    }

    /// Matrix text: header `m n`, then `m` lines of `n` characters in `{0,1}`.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.m * (self.n + 1) + 16);
        out.push_str(&format!("{} {}\n", self.m, self.n));
        for i in 0..self.m {
            for j in 0..self.n {
                out.push(if self.has_edge(i, j) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    /// Parses the matrix text format. Lines starting with `#` are comments.
    pub fn from_text(text: &str) -> Result<BiGraph, ParseError> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.starts_with('#'))
            .collect();
        let mut it = lines.into_iter().skip_while(|(_, l)| l.trim().is_empty());
        let g = parse_record(&mut it, 1)?;
        if let Some((line, _)) = it.find(|(_, l)| !l.trim().is_empty()) {
            return Err(perr(line, ParseErrorKind::Trailing));
        }
        Ok(g)
    }
}

fn parse_record<'a>(it: &mut impl Iterator<Item = (usize, &'a str)>, last_line: usize) -> Result<BiGraph, ParseError> {
    let (hline, header) = it.next().ok_or(perr(last_line, ParseErrorKind::MissingHeader))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let bad = || perr(hline, ParseErrorKind::BadHeader(header.to_string()));
    if dims.len() != 2 {
        return Err(bad());
    }
    let m: usize = dims[0].parse().map_err(|_| bad())?;
    let n: usize = dims[1].parse().map_err(|_| bad())?;
    if m == 0 || n == 0 {
        return Err(bad());
    }
    let mut g = BiGraph::new(m, n);
    let mut line_no = hline;
    for i in 0..m {
        let (ln, row) = match it.next() {
            Some((ln, row)) if !row.trim().is_empty() => (ln, row.trim()),
            Some((ln, _)) => return Err(perr(ln, ParseErrorKind::RowCount { expected: m, found: i })),
            None => return Err(perr(line_no + 1, ParseErrorKind::RowCount { expected: m, found: i })),
        };
        line_no = ln;
        let len = row.chars().count();
        if len != n {
            return Err(perr(ln, ParseErrorKind::RowLength { expected: n, found: len }));
        }
        for (j, c) in row.chars().enumerate() {
            match c {
                '0' => {}
                '1' => g.set_edge(i, j, true),
                other => return Err(perr(ln, ParseErrorKind::IllegalChar(other))),
            }
        }
    }
    Ok(g)
}

impl FromStr for BiGraph {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BiGraph::from_text(s)
    }
}

impl fmt::Display for BiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiGraph[{}x{}, e={}]", self.m, self.n, self.edge_count())?;
        for i in 0..self.m {
            f.write_str("\n  ")?;
            for j in 0..self.n {
                f.write_str(if self.has_edge(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

/// Serializes graphs as a graph-set file: records separated by one blank line.
pub fn write_graph_set<'a>(graphs: impl IntoIterator<Item = &'a BiGraph>) -> String {
    let mut out = String::new();
    for (k, g) in graphs.into_iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        out.push_str(&g.to_text());
    }
    out
}

/// Parses a graph-set file. Blank lines separate records, `#` lines are comments.
pub fn read_graph_set(text: &str) -> Result<Vec<BiGraph>, ParseError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.starts_with('#'))
        .collect();
    let mut graphs = Vec::new();
    let mut it = lines.into_iter().peekable();
    loop {
        while matches!(it.peek(), Some((_, l)) if l.trim().is_empty()) {
            it.next();
        }
        let Some(&(ln, _)) = it.peek() else { break };
        let g = parse_record(&mut it, ln)?;
        if let Some((ln, l)) = it.peek() {
            if !l.trim().is_empty() {
                return Err(perr(*ln, ParseErrorKind::Trailing));
            }
        }
        graphs.push(g);
    }
    Ok(graphs)
}
