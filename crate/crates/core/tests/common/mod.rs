//! Seeded random instances shared by the integration suites.

#![allow(dead_code)]

use mtsp::labeling::SolveResult;
use mtsp::objectives::{builtin, BuiltinKind, BuiltinObjective, Direction, ObjectiveSuite};
use mtsp::temporal_graph::{validate_path, GraphBuilder, NodeIndex, TemporalGraph, WaitingTimes};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ORACLE_MAX_PATHS: usize = 200_000;

#[derive(Clone, Debug)]
pub struct Instance {
    pub seed: u64,
    pub graph: TemporalGraph,
    pub objectives: Vec<BuiltinObjective>,
    pub suite: ObjectiveSuite,
    pub source: NodeIndex,
    pub bound: usize,
}

impl Instance {
    pub fn describe(&self) -> String {
        let kinds: Vec<&str> = self.objectives.iter().map(|o| o.kind().as_str()).collect();
        format!(
            "seed {} (n={}, m={}, K={}, objectives {:?})",
            self.seed,
            self.graph.node_count(),
            self.graph.arc_count(),
            self.bound,
            kinds
        )
    }
}

const EXTRA_KINDS: [BuiltinKind; 6] = [
    BuiltinKind::LatestStart,
    BuiltinKind::Additive,
    BuiltinKind::DecayMax,
    BuiltinKind::MinCombine,
    BuiltinKind::CategoryMax,
    BuiltinKind::LastIfNondecreasing,
];

fn sample_value(rng: &mut ChaCha8Rng, kind: BuiltinKind) -> i64 {
    match kind {
        BuiltinKind::Additive | BuiltinKind::MinCombine => rng.gen_range(-2..=2),
        BuiltinKind::DecayMax => rng.gen_range(0..=4),
        BuiltinKind::CategoryMax | BuiltinKind::LastIfNondecreasing => rng.gen_range(0..=3),
        BuiltinKind::EarliestArrival | BuiltinKind::LatestStart => 0,
    }
}

fn random_objectives(rng: &mut ChaCha8Rng, extra: usize) -> Vec<BuiltinObjective> {
    let mut objectives = vec![builtin("arrival", BuiltinKind::EarliestArrival, None).unwrap()];
    for j in 0..extra {
        let kind = *EXTRA_KINDS.choose(rng).unwrap();
        let direction = match kind {
            BuiltinKind::Additive => Some(if rng.gen() {
                Direction::Min
            } else {
                Direction::Max
            }),
            _ => None,
        };
        objectives.push(builtin(format!("f{}", j + 1), kind, direction).unwrap());
    }
    objectives
}

fn attach_values(
    rng: &mut ChaCha8Rng,
    mut builder: GraphBuilder,
    objectives: &[BuiltinObjective],
) -> GraphBuilder {
    use mtsp::objectives::Objective;
    for o in objectives.iter().filter(|o| o.kind().reads_arc_values()) {
        builder = builder.value(o.name().to_owned(), sample_value(rng, o.kind()));
    }
    builder
}

/// A graph with 2 to 6 nodes, 0 to 10 arcs, times in {0, 1, 2}, the source at
/// node 0, up to two extra built-in objectives, and `K` in 0..=8.
pub fn random_instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=6);
    let m = rng.gen_range(0..=10);
    let extra = rng.gen_range(0..=2);
    let objectives = random_objectives(&mut rng, extra);
    let mut b = TemporalGraph::builder();
    for v in 0..n {
        b = b.node(format!("v{v}"));
    }
    for a in 0..m {
        let from = rng.gen_range(0..n);
        let to = rng.gen_range(0..n);
        let tau: i64 = rng.gen_range(0..=2);
        let lambda: i64 = rng.gen_range(0..=2);
        b = b.arc(
            format!("r{a}"),
            format!("v{from}"),
            format!("v{to}"),
            tau,
            lambda,
        );
        b = attach_values(&mut rng, b, &objectives);
    }
    let graph = b.strict_nodes(true).build().unwrap();
    let suite = ObjectiveSuite::from_builtins(objectives.clone()).unwrap();
    Instance {
        seed,
        graph,
        objectives,
        suite,
        source: NodeIndex(0),
        bound: rng.gen_range(0..=8),
    }
}

/// Earliest arrival plus one or two additive objectives. With `cycle_free`,
/// start times strictly increase along the arc list and traversal times are
/// positive, so no temporal path repeats an arc.
pub fn random_additive_instance(seed: u64, max_arcs: usize, cycle_free: bool) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=5);
    let m = rng.gen_range(1..=max_arcs);
    let mut objectives = vec![builtin("arrival", BuiltinKind::EarliestArrival, None).unwrap()];
    for j in 0..rng.gen_range(1..=2) {
        let direction = if rng.gen() {
            Direction::Min
        } else {
            Direction::Max
        };
        objectives.push(
            builtin(
                format!("c{}", j + 1),
                BuiltinKind::Additive,
                Some(direction),
            )
            .unwrap(),
        );
    }
    let mut b = TemporalGraph::builder();
    for v in 0..n {
        b = b.node(format!("v{v}"));
    }
    for a in 0..m {
        let from = rng.gen_range(0..n);
        let to = rng.gen_range(0..n);
        let (tau, lambda): (i64, i64) = if cycle_free {
            (a as i64, rng.gen_range(1..=2))
        } else {
            (rng.gen_range(0..=1), rng.gen_range(0..=1))
        };
        b = b.arc(
            format!("r{a}"),
            format!("v{from}"),
            format!("v{to}"),
            tau,
            lambda,
        );
        b = attach_values(&mut rng, b, &objectives);
    }
    let graph = b.strict_nodes(true).build().unwrap();
    let suite = ObjectiveSuite::from_builtins(objectives.clone()).unwrap();
    Instance {
        seed,
        graph,
        objectives,
        suite,
        source: NodeIndex(0),
        bound: m,
    }
}

/// Every reported (image, path) pair must be a valid temporal path ending at
/// its node, within the bound, and evaluating to its image. Returns one message
/// per violation.
pub fn round_trip_violations(
    graph: &TemporalGraph,
    suite: &ObjectiveSuite,
    result: &SolveResult,
    waiting: Option<&WaitingTimes>,
) -> Vec<String> {
    let mut out = Vec::new();
    for (v, solutions) in result.per_node.iter().enumerate() {
        for s in solutions {
            let valid = validate_path(graph, &s.path, waiting).unwrap_or(false);
            if !valid || s.path.end(graph) != NodeIndex(v) {
                out.push(format!(
                    "node {v}: invalid path {:?}",
                    s.path.arc_ids(graph)
                ));
                continue;
            }
            if s.path.len() > result.bound {
                out.push(format!("node {v}: path longer than the bound"));
            }
            match suite.path_image(graph, &s.path) {
                Ok(image) if image == s.image => {}
                Ok(image) => out.push(format!(
                    "node {v}: path evaluates to {image:?}, reported {:?}",
                    s.image
                )),
                Err(e) => out.push(format!("node {v}: {e}")),
            }
        }
    }
    out
}
