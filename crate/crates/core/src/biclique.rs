//! Exact `K_{s,t}` subgraph search.
//!
//! Left rows are sorted by descending degree, then `s`-subsets are enumerated
//! in lexicographic order over that ordering while the running intersection
//! of their neighbourhoods is kept. A prefix whose intersection has fewer than
//! `t` columns is cut off.

use crate::bigraph::BiGraph;
use crate::bitset::{self, Ones};

/// A complete bipartite subgraph: every listed row is adjacent to every listed column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biclique {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

pub(crate) fn find(g: &BiGraph, s: usize, t: usize) -> Option<Biclique> {
    let (m, n) = (g.m(), g.n());
    if s > m || t > n {
        return None;
    }
    if s == 0 || t == 0 {
        return Some(Biclique { rows: (0..s).collect(), cols: (0..t).collect() });
    }
    let mut order: Vec<usize> = (0..m).filter(|&i| g.row_degree(i) >= t).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(g.row_degree(i)));
    if order.len() < s {
        return None;
    }
    let stride = g.stride();
    let mut chosen = Vec::with_capacity(s);
    let found = if stride == 1 {
        let rows: Vec<u64> = order.iter().map(|&i| g.row_mask(i)).collect();
        let mut picked = Vec::with_capacity(s);
        dfs_u64(&rows, 0, s, t, u64::MAX, &mut picked).map(|cols| {
            chosen = picked.iter().map(|&k| order[k]).collect();
            Ones::over(&[cols]).take(t).collect::<Vec<_>>()
        })
    } else {
        let mut stack = vec![vec![u64::MAX; stride]; s + 1];
        let mut picked = Vec::with_capacity(s);
        if dfs_words(g, &order, 0, s, t, &mut stack, &mut picked) {
            chosen = picked.iter().map(|&k| order[k]).collect();
            Some(Ones::over(&stack[s]).take(t).collect())
        } else {
            None
        }
    };
    found.map(|cols| {
        chosen.sort_unstable();
        Biclique { rows: chosen, cols }
    })
}

fn dfs_u64(rows: &[u64], start: usize, left: usize, t: usize, acc: u64, picked: &mut Vec<usize>) -> Option<u64> {
    if left == 0 {
        return Some(acc);
    }
    for k in start..=rows.len() - left {
        let next = acc & rows[k];
        if next.count_ones() as usize >= t {
            picked.push(k);
            if let Some(cols) = dfs_u64(rows, k + 1, left - 1, t, next, picked) {
                return Some(cols);
            }
            picked.pop();
        }
    }
    None
}

fn dfs_words(
    g: &BiGraph,
    order: &[usize],
    start: usize,
    s: usize,
    t: usize,
    stack: &mut [Vec<u64>],
    picked: &mut Vec<usize>,
) -> bool {
    let depth = picked.len();
    if depth == s {
        return true;
    }
    let left = s - depth;
    for k in start..=order.len() - left {
        let (lo, hi) = stack.split_at_mut(depth + 1);
        let acc = &lo[depth];
        let next = &mut hi[0];
        for ((dst, a), r) in next.iter_mut().zip(acc).zip(g.row(order[k])) {
            *dst = a & r;
        }
        if bitset::count_words(next) >= t {
            picked.push(k);
            if dfs_words(g, order, k + 1, s, t, stack, picked) {
                return true;
            }
            picked.pop();
        }
    }
    false
}

/// Whether `s` of the given rows have at least `t` common bits inside `within`.
pub(crate) fn exists_u64(rows: &[u64], s: usize, t: usize, within: u64) -> bool {
    if s == 0 {
        return within.count_ones() as usize >= t;
    }
    let mut cand: Vec<u64> = rows.iter().map(|r| r & within).filter(|r| r.count_ones() as usize >= t).collect();
    if cand.len() < s {
        return false;
    }
    cand.sort_unstable_by_key(|r| std::cmp::Reverse(r.count_ones()));
    let mut picked = Vec::with_capacity(s);
    dfs_u64(&cand, 0, s, t, within, &mut picked).is_some()
}

/// Naive oracle: every `s`-subset of rows against every `t`-subset of columns.
#[cfg(test)]
pub(crate) fn brute_force(g: &BiGraph, s: usize, t: usize) -> bool {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(i: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for x in i..n {
                cur.push(x);
                rec(x + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }
    if s > g.m() || t > g.n() {
        return false;
    }
    let cols = subsets(g.n(), t);
    subsets(g.m(), s).iter().any(|rs| cols.iter().any(|cs| rs.iter().all(|&i| cs.iter().all(|&j| g.has_edge(i, j)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_certificate(g: &BiGraph, s: usize, t: usize) {
        if let Some(b) = g.find_biclique(s, t) {
            assert_eq!((b.rows.len(), b.cols.len()), (s, t));
            for &i in &b.rows {
                for &j in &b.cols {
                    assert!(g.has_edge(i, j));
                }
            }
        }
    }

    #[test]
    fn agrees_with_brute_force_on_random_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let m = rng.gen_range(1..=6);
            let n = rng.gen_range(1..=6);
            let p: f64 = rng.gen_range(0.2..0.9);
            let g = BiGraph::from_fn(m, n, |_, _| rng.gen_bool(p));
            let s = rng.gen_range(1..=4);
            let t = rng.gen_range(1..=4);
            assert_eq!(g.contains_biclique(s, t), brute_force(&g, s, t), "{g:?} s={s} t={t}");
            check_certificate(&g, s, t);
        }
    }

    #[test]
    fn wide_rows_use_general_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let g = BiGraph::from_fn(5, 70, |_, j| j >= 65 || rng.gen_bool(0.3));
            assert!(g.contains_biclique(5, 5));
            check_certificate(&g, 5, 5);
            let h = BiGraph::from_fn(4, 90, |i, j| j % 4 == i);
            assert!(!h.contains_biclique(2, 1));
            assert!(h.contains_biclique(1, 22));
        }
    }

    #[test]
    fn exists_u64_matches_definition() {
        // rows 0b0111, 0b1110, 0b1011; rows 0,1 share {1,2}
        let rows = [0b0111u64, 0b1110, 0b1011];
        assert!(exists_u64(&rows, 2, 2, 0b1111));
        assert!(!exists_u64(&rows, 3, 2, 0b1111));
        assert!(!exists_u64(&rows, 2, 2, 0b1001));
        assert!(exists_u64(&rows, 0, 2, 0b0011));
    }

    proptest! {
        #[test]
        fn reflection_swaps_orders(rows in proptest::collection::vec(0u64..64, 1..7), s in 1usize..4, t in 1usize..4) {
            let g = BiGraph::from_row_masks(6, &rows);
            prop_assert_eq!(g.contains_biclique(s, t), g.reflect().contains_biclique(t, s));
        }

        #[test]
        fn monotone_in_both_orders(rows in proptest::collection::vec(0u64..128, 1..8), s in 1usize..5, t in 1usize..5) {
            let g = BiGraph::from_row_masks(7, &rows);
            if g.contains_biclique(s, t) {
                for s2 in 1..=s {
                    for t2 in 1..=t {
                        prop_assert!(g.contains_biclique(s2, t2));
                    }
                }
            }
        }
    }
}
