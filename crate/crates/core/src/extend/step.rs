//! One step of a backwards path: add a vertex to every parent in all ways.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{check_width, column_masks, ClassSpec, ExtendError};
use crate::biclique::exists_u64;
use crate::bigraph::BiGraph;
use crate::bitset::{low_mask, Combinations};
use crate::canon::{canonical_form_with_reflection, canonize, CanonicalKey};

#[derive(Clone, Copy, Debug, Default)]
pub struct StepOptions {
    /// Also identify a square graph with its reflection.
    pub with_reflection: bool,
}

/// Neighbourhoods `N` of a new row over `width` columns such that the grown
/// matrix stays in the class and reaches `e_min` edges.
fn new_rows(rows: &[u64], width: usize, target: &ClassSpec, z_cap: Option<usize>) -> Vec<u64> {
    let full = low_mask(width);
    let edges: usize = rows.iter().map(|r| r.count_ones() as usize).sum();
    let lo = target.e_min.saturating_sub(edges);
    let hi = match z_cap {
        Some(z) if z < edges => return Vec::new(),
        Some(z) => width.min(z - edges),
        None => width,
    };
    let comp: Vec<u64> = rows.iter().map(|r| !r & full).collect();
    let mut out = Vec::new();
    for d in lo..=hi {
        for nb in Combinations::new(width, d) {
            if let Some(s) = target.s {
                if d >= s && exists_u64(rows, s - 1, s, nb) {
                    continue;
                }
            }
            if let Some(t) = target.t {
                let cn = !nb & full;
                if width - d >= t && exists_u64(&comp, t - 1, t, cn) {
                    continue;
                }
            }
            out.push(nb);
        }
    }
    out
}

/// Grows every parent by one vertex on the side where it is short of
/// `target`, keeping the members of `target`, one per isomorphism class and
/// sorted by canonical key. `z_cap` bounds the edge count of the children.
pub fn extend_step(
    parents: &[BiGraph],
    target: &ClassSpec,
    z_cap: Option<usize>,
    opts: StepOptions,
) -> Result<Vec<BiGraph>, ExtendError> {
    target.validate()?;
    let Some(first) = parents.first() else {
        return Ok(Vec::new());
    };
    let found = (first.m(), first.n());
    let add_row = if found == (target.m - 1, target.n) {
        true
    } else if found == (target.m, target.n - 1) {
        false
    } else {
        return Err(ExtendError::PartSizeMismatch { target: (target.m, target.n), found });
    };
    if let Some(g) = parents.iter().find(|g| (g.m(), g.n()) != found) {
        return Err(ExtendError::PartSizeMismatch { target: (target.m, target.n), found: (g.m(), g.n()) });
    }
    check_width(target.m)?;
    check_width(target.n)?;

    let children = |g: &BiGraph| -> Vec<(CanonicalKey, BiGraph)> {
        let mut local: BTreeMap<CanonicalKey, BiGraph> = BTreeMap::new();
        let (rows, width, spec) = if add_row {
            ((0..g.m()).map(|i| g.row_mask(i)).collect::<Vec<_>>(), target.n, *target)
        } else {
            (column_masks(g), target.m, target.reflected())
        };
        for nb in new_rows(&rows, width, &spec, z_cap) {
            let mut grown = rows.clone();
            grown.push(nb);
            let mut child = BiGraph::from_row_masks(width, &grown);
            if !add_row {
                child = child.reflect();
            }
            debug_assert!(target.contains(&child));
            if opts.with_reflection {
                let key = canonical_form_with_reflection(&child);
                local.entry(key).or_insert(child);
            } else {
                let c = canonize(&child);
                local.entry(c.key).or_insert(c.graph);
            }
        }
        local.into_iter().collect()
    };

    let merged: BTreeMap<CanonicalKey, BiGraph> = parents
        .par_iter()
        .map(children)
        .reduce(Vec::new, |mut a, b| {
            a.extend(b);
            a
        })
        .into_iter()
        .collect();
    Ok(merged.into_values().collect())
}
