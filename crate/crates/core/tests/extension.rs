use proptest::prelude::*;

use zb_core::extend::{step_threshold, RunOptions};
use zb_core::{
    canonical_form, enumerate_class, parse_spec, plan_path, run_path, BackwardsPath, BiGraph, ClassSpec,
    EnumerateOptions, Side,
};

fn all(spec: &str) -> Vec<BiGraph> {
    enumerate_class(&parse_spec(spec).unwrap(), &EnumerateOptions::default()).unwrap()
}

fn min_degree_vertex(g: &BiGraph, side: Side) -> usize {
    match side {
        Side::Left => (0..g.m()).min_by_key(|&i| g.row_degree(i)).unwrap(),
        Side::Right => (0..g.n()).min_by_key(|&j| g.col_degree(j)).unwrap(),
    }
}

#[test]
fn deleting_a_min_degree_vertex_lands_in_the_step_class() {
    for text in ["(5,5,12+)_{2}", "(5,4,8+)_{2,2}", "(4,5,12+)_{3}", "(6,5,10+)_{2,3}"] {
        let spec = parse_spec(text).unwrap();
        for g in all(text) {
            for side in [Side::Left, Side::Right] {
                let h = g.delete_vertex(side, min_degree_vertex(&g, side)).unwrap();
                let e = step_threshold(spec.e_min, (spec.m, spec.n), side, None);
                let smaller = spec.with_size(h.m(), h.n(), e);
                assert!(
                    smaller.contains(&h),
                    "{text}: {side:?} deletion leaves {} edges, threshold {e}",
                    h.edge_count()
                );
            }
        }
    }
}

#[test]
fn planned_paths_reproduce_direct_enumeration() {
    for (from, target) in
        [((3, 3), "(5,5,12+)_{2}"), ((4, 3), "(6,5,14+)_{2}"), ((3, 4), "(5,6,12+)_{2,3}"), ((4, 4), "(5,6,18+)_{3}")]
    {
        let target = parse_spec(target).unwrap();
        let path = plan_path(from, &target, None).unwrap();
        let seeds = enumerate_class(path.seed(), &EnumerateOptions::default()).unwrap();
        let got = run_path(&path, &seeds, &RunOptions::default()).unwrap();
        let want = enumerate_class(&target, &EnumerateOptions::default()).unwrap();
        assert!(!want.is_empty(), "{target}");
        let keys = |gs: &[BiGraph]| gs.iter().map(canonical_form).collect::<Vec<_>>();
        assert_eq!(keys(&got.graphs), keys(&want), "{target}");
        assert_eq!(got.graphs, want, "{target}: both outputs are sorted canonical forms");
    }
}

#[test]
fn run_is_deterministic_across_thread_pools() {
    let path = BackwardsPath::parse("(4,4,7+)_{2,3}\n(5,4,9+)_{2,3}\n(5,5,11+)_{2,3}\n(6,5,12+)_{2,3}\n").unwrap();
    let seeds = enumerate_class(path.seed(), &EnumerateOptions::default()).unwrap();
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| run_path(&path, &seeds, &RunOptions::default()).unwrap().graphs)
    };
    let one = run(1);
    assert!(!one.is_empty());
    assert_eq!(one, run(4));
}

#[test]
fn checkpoints_written_per_step() {
    let dir = tempfile::tempdir().unwrap();
    let path = BackwardsPath::parse("(3,3,4+)_{2}\n(4,3,6+)_{2}\n(4,4,8+)_{2}\n").unwrap();
    let seeds = all("(3,3,4+)_{2}");
    let opts = RunOptions { checkpoint_dir: Some(dir.path().to_path_buf()), ..Default::default() };
    let report = run_path(&path, &seeds, &opts).unwrap();
    for spec in path.steps() {
        let file = dir.path().join(spec.file_name());
        let saved = zb_core::bigraph::read_graph_set(&std::fs::read_to_string(file).unwrap()).unwrap();
        assert!(saved.iter().all(|g| spec.contains(g)));
    }
    assert_eq!(report.steps.len(), 3);
    assert_eq!(report.steps.last().unwrap().count, report.graphs.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn step_threshold_is_sound(rows in proptest::collection::vec(0u64..(1 << 6), 2..7), left in any::<bool>()) {
        let g = BiGraph::from_row_masks(6, &rows);
        let side = if left { Side::Left } else { Side::Right };
        let e = g.edge_count();
        let h = g.delete_vertex(side, min_degree_vertex(&g, side)).unwrap();
        prop_assert!(h.edge_count() >= step_threshold(e, (g.m(), g.n()), side, None));
    }

    #[test]
    fn class_spec_text_round_trips(m in 1usize..20, n in 1usize..20, frac in 0usize..=100, s in 0usize..5, t in 0usize..5) {
        let e = m * n * frac / 100;
        let s = (s > 0).then_some(s);
        let t = if s.is_some() && t > 0 { Some(t) } else { None };
        let spec = ClassSpec::new(m, n, e, s, t).unwrap();
        prop_assert_eq!(parse_spec(&spec.to_string()).unwrap(), spec);
    }
}
