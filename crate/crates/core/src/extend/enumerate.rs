//! Orderly generation by canonical column augmentation.
//!
//! Starting from the edgeless `(m,0)` graph, columns are appended one at a
//! time with non-increasing degrees. The canonical parent of a graph is
//! obtained by deleting the minimum-degree column that comes last in the
//! canonical labeling; a child is kept only when its new column lies in the
//! automorphism orbit of that column, and children of one parent are reduced
//! by canonical key. Every class then appears exactly once.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{check_width, column_masks, ClassSpec, ExtendError};
use crate::biclique::exists_u64;
use crate::bigraph::BiGraph;
use crate::bitset::{low_mask, Combinations};
use crate::canon::{canonize, CanonicalKey};

/// Default limit on `m*n` for from-scratch enumeration.
pub const SIZE_GUARD: usize = 56;

#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerateOptions {
    /// Skip the `m*n` size guard.
    pub allow_large: bool,
    /// Inclusive bounds on every left degree.
    pub row_degrees: Option<(usize, usize)>,
    /// Inclusive bounds on every right degree.
    pub col_degrees: Option<(usize, usize)>,
}

struct Ctx {
    spec: ClassSpec,
    opts: EnumerateOptions,
    full: u64,
}

impl Ctx {
    fn children(&self, parent: &[u64]) -> Vec<(CanonicalKey, Vec<u64>)> {
        let m = self.spec.m;
        let j = parent.len() + 1;
        let remaining = self.spec.n - j;
        let e_parent: usize = parent.iter().map(|c| c.count_ones() as usize).sum();
        let min_deg = parent.iter().map(|c| c.count_ones() as usize).min().unwrap_or(m);
        let (cmin, cmax) = self.opts.col_degrees.unwrap_or((0, m));
        let comp: Vec<u64> = parent.iter().map(|c| !c & self.full).collect();
        let mut row_deg = vec![0usize; m];
        for c in parent {
            for (i, d) in row_deg.iter_mut().enumerate() {
                *d += (c >> i & 1) as usize;
            }
        }

        let mut out: BTreeMap<CanonicalKey, Vec<u64>> = BTreeMap::new();
        let mut cols = parent.to_vec();
        cols.push(0);
        for d in cmin..=cmax.min(min_deg) {
            if e_parent + d + remaining * d < self.spec.e_min {
                continue;
            }
            for nb in Combinations::new(m, d) {
                if !self.admissible(parent, &comp, &row_deg, nb, remaining, d) {
                    continue;
                }
                cols[j - 1] = nb;
                let h = from_columns(m, &cols);
                let c = canonize(&h);
                let last = c
                    .col_labels
                    .iter()
                    .rev()
                    .copied()
                    .find(|&q| cols[q].count_ones() as usize == d)
                    .expect("new column has minimum degree");
                if last != j - 1 {
                    let orbits = c.column_orbits();
                    if orbits[last] != orbits[j - 1] {
                        continue;
                    }
                }
                out.entry(c.key).or_insert_with(|| column_masks(&c.graph));
            }
        }
        out.into_iter().collect()
    }

    fn admissible(&self, parent: &[u64], comp: &[u64], row_deg: &[usize], nb: u64, remaining: usize, d: usize) -> bool {
        if let Some(s) = self.spec.s {
            if d >= s && exists_u64(parent, s - 1, s, nb) {
                return false;
            }
        }
        if let Some(t) = self.spec.t {
            let cn = !nb & self.full;
            if cn.count_ones() as usize >= t && exists_u64(comp, t - 1, t, cn) {
                return false;
            }
        }
        if let Some((rmin, rmax)) = self.opts.row_degrees {
            let mut deficit = 0;
            for (i, &r) in row_deg.iter().enumerate() {
                let r = r + (nb >> i & 1) as usize;
                if r > rmax || r + remaining < rmin {
                    return false;
                }
                deficit += rmin.saturating_sub(r);
            }
            if deficit > remaining * d {
                return false;
            }
            if self.spec.s == Some(2) && !self.room_for_lines(parent, row_deg, nb, rmin, rmax) {
                return false;
            }
        }
        true
    }

    /// Without a `K_{2,2}`, later columns through row `i` meet only in `i`, so
    /// a row short of `rmin` needs enough rows that share no column with it yet
    /// and still have spare degree.
    fn room_for_lines(&self, parent: &[u64], row_deg: &[usize], nb: u64, rmin: usize, rmax: usize) -> bool {
        let cmin = self.opts.col_degrees.map_or(0, |c| c.0);
        if cmin < 2 {
            return true;
        }
        let mut open = 0u64;
        for (i, &r) in row_deg.iter().enumerate() {
            if r + ((nb >> i & 1) as usize) < rmax {
                open |= 1 << i;
            }
        }
        for (i, &r) in row_deg.iter().enumerate() {
            let r = r + (nb >> i & 1) as usize;
            if r >= rmin {
                continue;
            }
            let mut seen = 1u64 << i;
            for &c in parent.iter().chain(std::iter::once(&nb)) {
                if c >> i & 1 == 1 {
                    seen |= c;
                }
            }
            let free = (open & !seen).count_ones() as usize;
            if free < (cmin - 1) * (rmin - r) {
                return false;
            }
        }
        true
    }
}

fn from_columns(m: usize, cols: &[u64]) -> BiGraph {
    BiGraph::from_fn(m, cols.len(), |i, j| cols[j] >> i & 1 == 1)
}

/// All classes of `spec` up to isomorphism (fixed parts), sorted by canonical key.
pub fn enumerate_class(spec: &ClassSpec, opts: &EnumerateOptions) -> Result<Vec<BiGraph>, ExtendError> {
    spec.validate()?;
    check_width(spec.m)?;
    if !opts.allow_large && spec.m * spec.n > SIZE_GUARD {
        return Err(ExtendError::TooLarge { product: spec.m * spec.n, limit: SIZE_GUARD });
    }
    let ctx = Ctx { spec: *spec, opts: *opts, full: low_mask(spec.m) };
    let mut level: Vec<(CanonicalKey, Vec<u64>)> = vec![(canonize(&BiGraph::new(spec.m, 0)).key, Vec::new())];
    for j in 1..=spec.n {
        level = level.par_iter().flat_map_iter(|(_, p)| ctx.children(p)).collect();
        log::debug!("enumerate {spec}: {} graphs with {j} columns", level.len());
    }
    level.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(level.into_iter().map(|(_, cols)| from_columns(spec.m, &cols)).filter(|g| spec.contains(g)).collect())
}

/// `z(m,n;s)` as the largest edge count among all `K_{s,s}`-free classes.
pub fn max_edges_by_enumeration(m: usize, n: usize, s: usize) -> Result<usize, ExtendError> {
    let spec = ClassSpec::new(m, n, 0, Some(s), None)?;
    let all = enumerate_class(&spec, &EnumerateOptions::default())?;
    Ok(all.iter().map(BiGraph::edge_count).max().unwrap_or(0))
}
