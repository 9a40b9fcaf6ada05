//! Canonical forms for bipartite graphs with fixed parts.
//!
//! Two graphs get the same key iff one is obtained from the other by permuting
//! rows and permuting columns independently. The parts are never swapped
//! unless the caller asks for reflection folding.
//!
//! The labeling search follows the usual individualize/refine scheme:
//! rows and columns carry separate ordered partitions, refined to an
//! equitable pair by neighbour counts, and the search tree branches on the
//! smallest non-singleton cell. Every leaf yields a relabeled matrix; the
//! lexicographically least one is the canonical form. Leaves that reproduce
//! the first or best matrix give automorphisms, which prune sibling branches
//! in the same orbit of the prefix stabiliser and let the search jump back to
//! the divergence point.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::bigraph::BiGraph;
use crate::bitset::{and_count, words_for, WORD_BITS};

/// Identifies an isomorphism class: `m`, `n` as big-endian `u32`, then the
/// rows of the least relabeled matrix as big-endian bit strings.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    bytes: Vec<u8>,
}

impl CanonicalKey {
    pub fn m(&self) -> usize {
        u32::from_be_bytes(self.bytes[0..4].try_into().unwrap()) as usize
    }

    pub fn n(&self) -> usize {
        u32::from_be_bytes(self.bytes[4..8].try_into().unwrap()) as usize
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn to_hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

/// A permutation of the combined vertex set: rows `0..m`, then columns `m..m+n`.
pub type Automorphism = Vec<u32>;

/// Result of a canonical labeling run.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub key: CanonicalKey,
    /// The canonically relabeled graph.
    pub graph: BiGraph,
    /// `row_labels[p]` is the original row placed at canonical row `p`.
    pub row_labels: Vec<usize>,
    pub col_labels: Vec<usize>,
    generators: Vec<Automorphism>,
    group_order: u128,
    m: usize,
}

impl Canonical {
    /// Automorphisms found during the search; they generate the automorphism group.
    pub fn generators(&self) -> &[Automorphism] {
        &self.generators
    }

    /// Order of the (side-preserving) automorphism group.
    pub fn group_order(&self) -> u128 {
        self.group_order
    }

    /// Orbit representative (least member) of every column under the automorphism group.
    pub fn column_orbits(&self) -> Vec<usize> {
        let total = self.m + self.col_labels.len();
        let mut uf = UnionFind::new(total);
        for g in &self.generators {
            uf.absorb(g);
        }
        (0..self.col_labels.len()).map(|j| uf.least(self.m + j) - self.m).collect()
    }

    /// Orbit representative of every row.
    pub fn row_orbits(&self) -> Vec<usize> {
        let total = self.m + self.col_labels.len();
        let mut uf = UnionFind::new(total);
        for g in &self.generators {
            uf.absorb(g);
        }
        (0..self.m).map(|i| uf.least(i)).collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonError {
    #[error("graph {index} has parts {found:?}, expected {expected:?}")]
    MixedPartSizes { index: usize, expected: (usize, usize), found: (usize, usize) },
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so `find` returns the least member
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u32;
        }
    }

    fn absorb(&mut self, perm: &[u32]) {
        for (x, &y) in perm.iter().enumerate() {
            self.union(x, y as usize);
        }
    }

    fn least(&mut self, x: usize) -> usize {
        self.find(x)
    }
}

/// Ordered partition of `0..len`; cells are contiguous runs of `order`.
#[derive(Clone)]
struct Partition {
    order: Vec<u32>,
    cells: Vec<(u32, u32)>,
}

impl Partition {
    fn unit(len: usize) -> Self {
        let cells = if len == 0 { Vec::new() } else { vec![(0, len as u32)] };
        Partition { order: (0..len as u32).collect(), cells }
    }

    fn is_discrete(&self) -> bool {
        self.cells.len() == self.order.len()
    }

    fn cell(&self, k: usize) -> &[u32] {
        let (s, l) = self.cells[k];
        &self.order[s as usize..(s + l) as usize]
    }

    /// Bit mask (over `nbits` vertices) of each cell.
    fn masks(&self, nbits: usize) -> Vec<u64> {
        let w = words_for(nbits);
        let mut out = vec![0u64; self.cells.len() * w];
        for (k, &(s, l)) in self.cells.iter().enumerate() {
            for &v in &self.order[s as usize..(s + l) as usize] {
                let v = v as usize;
                out[k * w + v / WORD_BITS] |= 1 << (v % WORD_BITS);
            }
        }
        out
    }

    /// Splits every cell by the signature `sig(v, k)` over the `other` cells.
    /// Returns whether anything split.
    fn split_by(&mut self, ncells: usize, sig: impl Fn(usize, usize) -> u32) -> bool {
        if self.is_discrete() {
            return false;
        }
        let mut new_cells = Vec::with_capacity(self.order.len());
        let mut changed = false;
        let mut sigs: Vec<u32> = Vec::new();
        let mut idx: Vec<usize> = Vec::new();
        for ci in 0..self.cells.len() {
            let (s, l) = self.cells[ci];
            if l == 1 {
                new_cells.push((s, l));
                continue;
            }
            let (s, l) = (s as usize, l as usize);
            sigs.clear();
            for &v in &self.order[s..s + l] {
                for k in 0..ncells {
                    sigs.push(sig(v as usize, k));
                }
            }
            idx.clear();
            idx.extend(0..l);
            let key = |i: usize| &sigs[i * ncells..(i + 1) * ncells];
            idx.sort_by(|&a, &b| key(a).cmp(key(b)));
            let verts: Vec<u32> = idx.iter().map(|&i| self.order[s + i]).collect();
            let mut start = 0;
            for k in 1..=l {
                if k == l || key(idx[k]) != key(idx[k - 1]) {
                    new_cells.push(((s + start) as u32, (k - start) as u32));
                    changed |= k - start != l;
                    start = k;
                }
            }
            self.order[s..s + l].copy_from_slice(&verts);
        }
        if changed {
            self.cells = new_cells;
        }
        changed
    }

    /// Moves `v` (which must be in cell `k`) to a singleton cell in front of the rest.
    fn individualize(&mut self, k: usize, v: u32) {
        let (s, l) = self.cells[k];
        let pos = self.order[s as usize..(s + l) as usize].iter().position(|&x| x == v).expect("vertex in target cell");
        self.order.swap(s as usize, s as usize + pos);
        self.cells[k] = (s, 1);
        self.cells.insert(k + 1, (s + 1, l - 1));
    }
}

struct Search<'a> {
    m: usize,
    n: usize,
    g: &'a BiGraph,
    /// Column neighbourhoods over rows.
    cols: Vec<u64>,
    wm: usize,
    wn: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    gens: Vec<Automorphism>,
    path: Vec<u32>,
}

struct Leaf {
    cert: Vec<u64>,
    labels: Vec<u32>,
    path: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(g: &'a BiGraph) -> Self {
        let (m, n) = (g.m(), g.n());
        let wm = words_for(m);
        let mut cols = vec![0u64; n * wm];
        for i in 0..m {
            for j in crate::bitset::Ones::over(g.row(i)) {
                cols[j * wm + i / WORD_BITS] |= 1 << (i % WORD_BITS);
            }
        }
        Search { m, n, g, cols, wm, wn: words_for(n), first: None, best: None, gens: Vec::new(), path: Vec::new() }
    }

    fn refine(&self, rp: &mut Partition, cp: &mut Partition) {
        loop {
            let cm = cp.masks(self.n);
            let nc = cp.cells.len();
            let wn = self.wn;
            let g = self.g;
            let changed_r = rp.split_by(nc, |v, k| and_count(g.row(v), &cm[k * wn..(k + 1) * wn]) as u32);
            let rm = rp.masks(self.m);
            let nr = rp.cells.len();
            let wm = self.wm;
            let cols = &self.cols;
            let changed_c =
                cp.split_by(nr, |v, k| and_count(&cols[v * wm..(v + 1) * wm], &rm[k * wm..(k + 1) * wm]) as u32);
            if !changed_r && !changed_c {
                break;
            }
        }
    }

    fn certificate(&self, rp: &Partition, cp: &Partition) -> Vec<u64> {
        let wn = self.wn;
        let mut cert = vec![0u64; self.m * wn];
        for (p, &r) in rp.order.iter().enumerate() {
            let row = self.g.row(r as usize);
            for (q, &c) in cp.order.iter().enumerate() {
                let c = c as usize;
                if (row[c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1 {
                    cert[p * wn + q / WORD_BITS] |= 1 << (63 - q % WORD_BITS);
                }
            }
        }
        cert
    }

    fn labels(&self, rp: &Partition, cp: &Partition) -> Vec<u32> {
        rp.order.iter().copied().chain(cp.order.iter().map(|&c| c + self.m as u32)).collect()
    }

    fn leaf(&mut self, rp: &Partition, cp: &Partition) -> Option<usize> {
        let cert = self.certificate(rp, cp);
        let labels = self.labels(rp, cp);
        let Some(first) = &self.first else {
            let leaf = Leaf { cert: cert.clone(), labels: labels.clone(), path: self.path.clone() };
            self.first = Some(leaf);
            self.best = Some(Leaf { cert, labels, path: self.path.clone() });
            return None;
        };
        let best = self.best.as_ref().unwrap();
        let matched = if cert == first.cert {
            Some(first)
        } else if cert == best.cert {
            Some(best)
        } else {
            None
        };
        if let Some(other) = matched {
            let mut gamma = vec![0u32; labels.len()];
            for (p, &v) in other.labels.iter().enumerate() {
                gamma[v as usize] = labels[p];
            }
            let diverge = other.path.iter().zip(&self.path).position(|(a, b)| a != b).unwrap_or(self.path.len());
            if gamma.iter().enumerate().any(|(i, &x)| i as u32 != x) {
                self.gens.push(gamma);
            }
            return Some(diverge);
        }
        if cert < best.cert {
            self.best = Some(Leaf { cert, labels, path: self.path.clone() });
        }
        None
    }

    fn fixes_path(gen: &[u32], path: &[u32]) -> bool {
        path.iter().all(|&v| gen[v as usize] == v)
    }

    fn search(&mut self, rp: Partition, cp: Partition) -> Option<usize> {
        if rp.is_discrete() && cp.is_discrete() {
            return self.leaf(&rp, &cp);
        }
        let depth = self.path.len();
        // smallest non-singleton cell, rows before columns on ties
        let mut target: Option<(bool, usize, u32)> = None;
        for (k, &(_, l)) in rp.cells.iter().enumerate() {
            if l > 1 && target.is_none_or(|t| l < t.2) {
                target = Some((true, k, l));
            }
        }
        for (k, &(_, l)) in cp.cells.iter().enumerate() {
            if l > 1 && target.is_none_or(|t| l < t.2) {
                target = Some((false, k, l));
            }
        }
        let (is_row, k, _) = target.expect("non-discrete partition has a non-singleton cell");
        let offset = if is_row { 0 } else { self.m as u32 };
        let candidates: Vec<u32> = if is_row { rp.cell(k).to_vec() } else { cp.cell(k).to_vec() };

        let mut explored: Vec<u32> = Vec::new();
        let mut uf: Option<(usize, UnionFind)> = None;
        for v in candidates {
            let id = v + offset;
            if !explored.is_empty() {
                if uf.as_ref().is_none_or(|(seen, _)| *seen != self.gens.len()) {
                    let mut u = UnionFind::new(self.m + self.n);
                    for g in &self.gens {
                        if Self::fixes_path(g, &self.path) {
                            u.absorb(g);
                        }
                    }
                    uf = Some((self.gens.len(), u));
                }
                let u = &mut uf.as_mut().unwrap().1;
                let root = u.find(id as usize);
                if explored.iter().any(|&e| u.find(e as usize) == root) {
                    continue;
                }
            }
            let (mut rp2, mut cp2) = (rp.clone(), cp.clone());
            if is_row {
                rp2.individualize(k, v);
            } else {
                cp2.individualize(k, v);
            }
            self.refine(&mut rp2, &mut cp2);
            self.path.push(id);
            let jump = self.search(rp2, cp2);
            self.path.pop();
            explored.push(id);
            if let Some(t) = jump {
                if t < depth {
                    return Some(t);
                }
            }
        }
        None
    }

    fn group_order(&self) -> u128 {
        let first = &self.first.as_ref().unwrap().path;
        let mut order: u128 = 1;
        for k in 0..first.len() {
            let prefix = &first[..k];
            let mut uf = UnionFind::new(self.m + self.n);
            for g in &self.gens {
                if Self::fixes_path(g, prefix) {
                    uf.absorb(g);
                }
            }
            let root = uf.find(first[k] as usize);
            let size = (0..self.m + self.n).filter(|&x| uf.find(x) == root).count();
            order = order.saturating_mul(size as u128);
        }
        order
    }
}

/// Full canonical labeling of `g`.
pub fn canonize(g: &BiGraph) -> Canonical {
    let mut search = Search::new(g);
    let (mut rp, mut cp) = (Partition::unit(g.m()), Partition::unit(g.n()));
    search.refine(&mut rp, &mut cp);
    search.search(rp, cp);
    let group_order = search.group_order();
    let best = search.best.take().unwrap();
    let (m, n) = (g.m(), g.n());
    let row_labels: Vec<usize> = best.labels[..m].iter().map(|&v| v as usize).collect();
    let col_labels: Vec<usize> = best.labels[m..].iter().map(|&v| (v as usize) - m).collect();
    let graph = BiGraph::from_fn(m, n, |p, q| g.has_edge(row_labels[p], col_labels[q]));
    let key = encode_key(m, n, &best.cert);
    Canonical { key, graph, row_labels, col_labels, generators: search.gens, group_order, m }
}

fn encode_key(m: usize, n: usize, cert: &[u64]) -> CanonicalKey {
    let wn = words_for(n);
    let row_bytes = n.div_ceil(8);
    let mut bytes = Vec::with_capacity(8 + m * row_bytes);
    bytes.extend_from_slice(&(m as u32).to_be_bytes());
    bytes.extend_from_slice(&(n as u32).to_be_bytes());
    for p in 0..m {
        let row: Vec<u8> = cert[p * wn..(p + 1) * wn].iter().flat_map(|w| w.to_be_bytes()).collect();
        bytes.extend_from_slice(&row[..row_bytes]);
    }
    CanonicalKey { bytes }
}

/// Canonical key of `g` under independent row and column permutations.
pub fn canonical_form(g: &BiGraph) -> CanonicalKey {
    canonize(g).key
}

/// Like [`canonical_form`], but for square graphs also folds the part swap.
pub fn canonical_form_with_reflection(g: &BiGraph) -> CanonicalKey {
    canonical_rep(g, true).0
}

fn canonical_rep(g: &BiGraph, with_reflection: bool) -> (CanonicalKey, BiGraph) {
    let c = canonize(g);
    if with_reflection && g.m() == g.n() {
        let r = canonize(&g.reflect());
        if r.key < c.key {
            return (r.key, r.graph);
        }
    }
    (c.key, c.graph)
}

/// Order of the automorphism group when part swaps are also allowed: twice
/// the side-preserving order for square graphs isomorphic to their reflection.
pub fn group_order_with_reflection(g: &BiGraph) -> u128 {
    let base = canonize(g).group_order();
    if g.m() == g.n() && is_isomorphic(g, &g.reflect()) {
        base.saturating_mul(2)
    } else {
        base
    }
}

/// Same part sizes and same canonical key.
pub fn is_isomorphic(g: &BiGraph, h: &BiGraph) -> bool {
    g.m() == h.m() && g.n() == h.n() && g.edge_count() == h.edge_count() && canonical_form(g) == canonical_form(h)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DedupOptions {
    /// Treat `G` and its reflection as the same class (square graphs only).
    pub with_reflection: bool,
}

/// One canonical representative per isomorphism class, sorted by key.
pub fn dedup<I>(graphs: I, opts: DedupOptions) -> Result<Vec<BiGraph>, CanonError>
where
    I: IntoIterator<Item = BiGraph>,
{
    Ok(dedup_keyed(graphs, opts)?.into_values().collect())
}

/// [`dedup`], keeping the keys.
pub fn dedup_keyed<I>(graphs: I, opts: DedupOptions) -> Result<BTreeMap<CanonicalKey, BiGraph>, CanonError>
where
    I: IntoIterator<Item = BiGraph>,
{
    let graphs: Vec<BiGraph> = graphs.into_iter().collect();
    if let Some(first) = graphs.first() {
        let expected = (first.m(), first.n());
        if let Some((index, g)) = graphs.iter().enumerate().find(|(_, g)| (g.m(), g.n()) != expected) {
            return Err(CanonError::MixedPartSizes { index, expected, found: (g.m(), g.n()) });
        }
    }
    let reps: Vec<(CanonicalKey, BiGraph)> =
        graphs.par_iter().map(|g| canonical_rep(g, opts.with_reflection)).collect();
    Ok(reps.into_iter().collect())
}
