use proptest::prelude::*;

use zb_core::bigraph::{read_graph_set, write_graph_set};
use zb_core::{canonical_form, data, BiGraph, BoundTable, Coloring, Entry, Group};

fn graph() -> impl Strategy<Value = BiGraph> {
    (1usize..12, 1usize..70).prop_flat_map(|(m, n)| {
        proptest::collection::vec(any::<bool>(), m * n)
            .prop_map(move |bits| BiGraph::from_fn(m, n, |i, j| bits[i * n + j]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_text_round_trips(g in graph()) {
        prop_assert_eq!(BiGraph::from_text(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn graph_sets_round_trip(gs in proptest::collection::vec(graph(), 0..5)) {
        prop_assert_eq!(read_graph_set(&write_graph_set(&gs)).unwrap(), gs);
    }

    #[test]
    fn coloring_text_round_trips(n in 1usize..10, k in 1usize..5, seed in any::<u64>()) {
        let cells: Vec<u8> = (0..n * n).map(|i| (seed.rotate_left(i as u32 % 64) as usize % k + 1) as u8).collect();
        let c = Coloring::new(n, k, cells).unwrap();
        prop_assert_eq!(Coloring::from_text(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn tables_round_trip(rows in proptest::collection::btree_map((1usize..20, 1usize..20), (0u64..200, 0u64..50, any::<bool>()), 1..30)) {
        let mut t = BoundTable::new(3);
        for ((a, b), (lo, gap, exact)) in rows {
            let cap = (a * b) as u64;
            let lo = lo % (cap + 1);
            let entry = if exact { Entry::exact(lo) } else { Entry::range(lo, (lo + gap).min(cap)) };
            t.insert(a.min(b), a.max(b), entry).unwrap();
        }
        let back = BoundTable::from_csv_str(&t.to_csv_string()).unwrap();
        prop_assert_eq!(back.to_csv_string(), t.to_csv_string());
    }
}

#[test]
fn packaged_assets_parse() {
    for s in 2..=6 {
        let t = data::table(s).unwrap().unwrap();
        assert_eq!(t.s(), s);
        assert!(t.verify().is_empty());
    }
    let c = Coloring::from_text(data::WITNESS_B223).unwrap();
    assert_eq!((c.n(), c.k()), (16, 3));
    let g = BiGraph::from_text(data::WITNESS_B25_COLOR1).unwrap();
    assert_eq!(g.edge_count(), 64);
}

#[test]
fn group_files_round_trip() {
    for name in ["z6", "dih4", "dic3", "elem(2,3)", "z2xdih3"] {
        let g = Group::builtin(name).unwrap();
        let back = Group::from_text(&g.to_text()).unwrap();
        assert_eq!(back.order(), g.order());
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(back.mul(a, b), g.mul(a, b), "{name}");
            }
        }
    }
}

#[test]
fn canonical_form_survives_text() {
    let g = BiGraph::from_text(data::WITNESS_B25_COLOR1).unwrap();
    let h = BiGraph::from_text(&g.reflect().reflect().to_text()).unwrap();
    assert_eq!(canonical_form(&g), canonical_form(&h));
}
