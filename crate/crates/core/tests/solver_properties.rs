mod common;

use mtsp::error::Error;
use mtsp::io::GraphDocument;
use mtsp::labeling::{reconstruct_path, StopReason};
use mtsp::labeling::{solve_general, solve_isotonic, SolveOptions, SolveResult};
use mtsp::objectives::Image;
use mtsp::oracle::{k_nondominated_sets, EnumerationBudget};
use mtsp::temporal_graph::{earliest_arrival_times, validate_path, WaitingTimes};
use mtsp::Rational;
use proptest::prelude::*;

use common::{random_instance, round_trip_violations, ORACLE_MAX_PATHS};

fn images(r: &SolveResult) -> Vec<Vec<Image>> {
    r.per_node
        .iter()
        .map(|s| s.iter().map(|x| x.image.clone()).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn waiting_times_match_enumeration(seed in 0u64..1_000_000, num in 1i64..4, den in 1i64..3) {
        let inst = random_instance(seed);
        let waiting = WaitingTimes::uniform(&inst.graph, Rational::new(num, den)).unwrap();
        let budget = EnumerationBudget::new(inst.bound)
            .with_max_paths(ORACLE_MAX_PATHS)
            .with_waiting(Some(waiting.clone()));
        let expected = match k_nondominated_sets(&inst.graph, &inst.suite, inst.source, &budget) {
            Ok(e) => e,
            Err(Error::Budget { .. }) => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        let options = SolveOptions::with_waiting(waiting.clone());
        let general = solve_general(&inst.graph, &inst.suite, inst.source, inst.bound, &options).unwrap();
        prop_assert_eq!(images(&general), expected.clone(), "{}", inst.describe());
        prop_assert!(round_trip_violations(&inst.graph, &inst.suite, &general, Some(&waiting)).is_empty());
        if inst.suite.all_isotonic() {
            let iso = solve_isotonic(&inst.graph, &inst.suite, inst.source, inst.bound, &options).unwrap();
            prop_assert_eq!(images(&iso), expected);
        }
    }

    #[test]
    fn first_component_is_never_before_earliest_arrival(seed in 0u64..1_000_000) {
        let inst = random_instance(seed);
        let earliest = earliest_arrival_times(&inst.graph, inst.source).unwrap();
        let r = solve_general(&inst.graph, &inst.suite, inst.source, inst.bound, &SolveOptions::default()).unwrap();
        for v in inst.graph.nodes() {
            for s in &r.per_node[v.0] {
                let e = earliest[v.0].clone().expect("a reported node is reachable");
                prop_assert!(s.image.values()[0] >= e.into());
            }
        }
    }

    #[test]
    fn larger_bounds_never_lose_reachability(seed in 0u64..1_000_000) {
        let inst = random_instance(seed);
        let opts = SolveOptions::default();
        let short = solve_general(&inst.graph, &inst.suite, inst.source, inst.bound, &opts).unwrap();
        let long = solve_general(&inst.graph, &inst.suite, inst.source, inst.bound + 1, &opts).unwrap();
        for v in inst.graph.nodes() {
            prop_assert!(short.per_node[v.0].is_empty() || !long.per_node[v.0].is_empty());
        }
    }

    #[test]
    fn fixed_points_hold_beyond_the_bound(seed in 0u64..1_000_000) {
        let inst = random_instance(seed);
        let r = solve_general(&inst.graph, &inst.suite, inst.source, inst.bound, &SolveOptions::default()).unwrap();
        if r.stop_reason == StopReason::FixedPoint {
            let horizon = inst.bound + inst.graph.arc_count();
            let budget = EnumerationBudget::new(horizon).with_max_paths(ORACLE_MAX_PATHS);
            if let Ok(expected) = k_nondominated_sets(&inst.graph, &inst.suite, inst.source, &budget) {
                prop_assert_eq!(images(&r), expected, "{}", inst.describe());
            }
        }
    }

    #[test]
    fn every_created_label_has_a_valid_history(seed in 0u64..1_000_000) {
        let inst = random_instance(seed);
        let r = solve_general(&inst.graph, &inst.suite, inst.source, inst.bound, &SolveOptions::default()).unwrap();
        for (id, label) in r.arena.iter() {
            let path = reconstruct_path(&r.arena, id).unwrap();
            prop_assert!(validate_path(&inst.graph, &path, None).unwrap());
            prop_assert!(path.len() <= label.layer);
            prop_assert_eq!(inst.suite.path_image(&inst.graph, &path).unwrap(), label.image.clone());
        }
    }

    #[test]
    fn general_layers_only_grow(seed in 0u64..1_000_000) {
        let inst = random_instance(seed);
        let opts = SolveOptions { trace_layers: true, ..SolveOptions::default() };
        let r = solve_general(&inst.graph, &inst.suite, inst.source, inst.bound, &opts).unwrap();
        for pair in r.layers.windows(2) {
            for v in inst.graph.nodes() {
                let later = &pair[1][v.0];
                prop_assert!(pair[0][v.0].iter().all(|id| later.contains(id)));
            }
        }
    }

    #[test]
    fn image_sets_do_not_depend_on_arc_order(seed in 0u64..1_000_000) {
        let inst = random_instance(seed);
        let mut doc = GraphDocument::from_graph(&inst.graph);
        doc.arcs.reverse();
        let reversed = doc.to_graph().unwrap();
        let opts = SolveOptions::default();
        let a = solve_general(&inst.graph, &inst.suite, inst.source, inst.bound, &opts).unwrap();
        let b = solve_general(&reversed, &inst.suite, inst.source, inst.bound, &opts).unwrap();
        prop_assert_eq!(images(&a), images(&b));
        if inst.suite.all_isotonic() {
            let c = solve_isotonic(&reversed, &inst.suite, inst.source, inst.bound, &opts).unwrap();
            prop_assert_eq!(images(&a), images(&c));
        }
    }
}
