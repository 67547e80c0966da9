use proptest::prelude::*;

use oriented_diameter::bounds::Epsilon;
use oriented_diameter::generators::random_bridgeless;
use oriented_diameter::oracle::{self, OracleOptions};
use oriented_diameter::{pipeline, robbins_orient, Graph, Orientation};

fn small_graph() -> impl Strategy<Value = Graph> {
    (5usize..40, 2usize..4, 3usize..5, any::<u64>())
        .prop_filter_map("generator gave up", |(n, d, f, seed)| random_bridgeless(n, d, f, seed).ok())
}

fn epsilon() -> impl Strategy<Value = Epsilon> {
    (1i128..8, 1i128..5).prop_map(|(p, q)| Epsilon::new(p, q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(g in small_graph()) {
        prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn robbins_is_strong(g in small_graph()) {
        let o = robbins_orient(&g).unwrap();
        prop_assert!(oracle::cross_check(&o).unwrap().strong);
        let back = Orientation::parse(&g, &o.to_text().unwrap()).unwrap();
        prop_assert_eq!(back, o);
    }

    #[test]
    fn pipeline_within_bound(g in small_graph(), e in epsilon()) {
        let r = pipeline::run(&g, e).unwrap();
        prop_assert!(r.invariants_hold());
        prop_assert!((r.achieved() as i128) <= r.bound.total_floor());
        prop_assert!(r.achieved() >= g.diameter().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_below_pipeline(n in 5usize..12, seed in any::<u64>()) {
        let g = random_bridgeless(n, 2, 3, seed).unwrap();
        prop_assume!(g.m() <= 18);
        let opt = oracle::exact_oriented_diameter(&g, OracleOptions::default()).unwrap();
        let w = Orientation::from_arcs(&g, opt.witness.iter().copied()).unwrap();
        prop_assert_eq!(w.directed_diameter().unwrap(), Some(opt.optimum));
        let r = pipeline::run(&g, Epsilon::new(1, 2).unwrap()).unwrap();
        prop_assert!(opt.optimum <= r.achieved());
    }
}
