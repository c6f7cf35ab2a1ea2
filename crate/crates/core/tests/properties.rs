use std::collections::HashSet;

use proptest::prelude::*;

use jordan_grid::generate::{gen_crossing_instance, gen_random_curve};
use jordan_grid::instance::Instance;
use jordan_grid::parity::{check_parity_lemma, normalize_instance};
use jordan_grid::reductions::{jct_to_stconn_set, stconn_to_jct_seq, stconn_to_jct_set};
use jordan_grid::sequence::{check_edge_alternation, count_regions, find_intersection_seq};
use jordan_grid::{pair_code, EdgeSet, GridPoint};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pair_code_is_injective(a in 0u64..200, b in 0u64..200, c in 0u64..200, d in 0u64..200) {
        prop_assume!((a, b) != (c, d));
        prop_assert_ne!(pair_code(a, b), pair_code(c, d));
    }

    #[test]
    fn random_curves_are_closed_and_alternate(n in 3u32..24, seed in any::<u64>()) {
        let c = gen_random_curve(n, seed).unwrap();
        prop_assert!(c.to_edge_set().is_curve());
        prop_assert!(check_edge_alternation(&c));
        prop_assert!(check_edge_alternation(&c.reversed()));
        prop_assert!(check_edge_alternation(&c.rotate_90()));
    }

    #[test]
    fn refinement_keeps_two_regions(n in 3u32..12, seed in any::<u64>(), k in 1usize..20) {
        let c = gen_random_curve(n, seed).unwrap();
        prop_assert_eq!(count_regions(&c), 2);
        // the start of a closed curve does not matter
        prop_assert_eq!(count_regions(&c.rotate_start(k % c.len())), 2);
    }

    #[test]
    fn crossing_instances_cross(n in 4u32..20, seed in any::<u64>()) {
        let inst = gen_crossing_instance(n, seed).unwrap();
        let w = find_intersection_seq(&inst.blue, &inst.red, &inst.sides).unwrap();
        prop_assert!(w.blue_degree > 0 && w.red_degree > 0);
    }

    #[test]
    fn json_round_trip(n in 4u32..16, seed in any::<u64>()) {
        let inst = gen_crossing_instance(n, seed).unwrap();
        for j in [Instance::from_jct_seq(&inst), Instance::from_jct_set(&inst.to_sets())] {
            let back = Instance::parse(&j.to_json()).unwrap();
            prop_assert_eq!(&back, &j);
        }
    }

    #[test]
    fn closing_sequence_matches_materialization(n in 4u32..12, seed in any::<u64>()) {
        let inst = gen_crossing_instance(n, seed).unwrap();
        let st = jct_to_stconn_set(&inst.to_sets()).unwrap();
        let set_out = stconn_to_jct_set(&st.output).unwrap();
        set_out.validate().unwrap();
        prop_assert_eq!(set_out.blue.len(), st.output.blue.len() + 2 * st.output.n as usize + 6);
        prop_assert!(set_out.blue.intersects(&set_out.red).unwrap());
    }

    #[test]
    fn closing_edge_at_matches_walk(n in 4u32..10, seed in any::<u64>()) {
        let inst = gen_crossing_instance(n, seed).unwrap();
        let seq = jordan_grid::reductions::jct_to_stconn_seq(&inst).unwrap().coarse().unwrap();
        let closing = stconn_to_jct_seq(&seq).unwrap();
        let walked = closing.materialize().unwrap();
        walked.validate().unwrap();
        prop_assert_eq!(walked.blue.len(), closing.len(jordan_grid::Color::Blue));
    }

    #[test]
    fn normalization_keeps_hypotheses(n in 4u32..14, seed in any::<u64>()) {
        let inst = gen_crossing_instance(n, seed).unwrap();
        let b = inst.blue.to_edge_set();
        let r = inst.red.to_edge_set();
        let (nb, nr, ns) = normalize_instance(&b, &r, &inst.sides).unwrap();
        prop_assert!(nb.is_curve());
        prop_assert!(nr.connects(ns.p1, ns.p2));
        prop_assert!(nb.on_different_sides(ns.p1, ns.p2));
        prop_assert!(nb.intersects(&nr).unwrap());
        // an intersecting input fails exactly the disjointness hypothesis
        let report = check_parity_lemma(&nb, &nr, &ns).unwrap();
        prop_assert_eq!(report.failed_preconditions.len(), 1);
    }
}

#[test]
fn points_of_a_curve_are_distinct() {
    for seed in 0..200 {
        let c = gen_random_curve(12, seed).unwrap();
        let pts = c.points();
        let set: HashSet<GridPoint> = pts.iter().copied().collect();
        assert_eq!(set.len(), pts.len());
        assert_eq!(EdgeSet::from_edges(12, c.to_edge_set().iter().copied()).unwrap().len(), c.len());
    }
}
