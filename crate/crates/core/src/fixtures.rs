//! Small reference instances used by the tests and the `--fixture` generator.

use crate::error::{Error, Result};
use crate::objectives::{builtin, BuiltinKind, BuiltinObjective, Direction, ObjectiveSuite};
use crate::temporal_graph::{NodeIndex, TemporalGraph};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub graph: TemporalGraph,
    /// Built-in objectives in suite order, kept for serialization.
    pub objectives: Vec<BuiltinObjective>,
    pub suite: ObjectiveSuite,
    pub source: NodeIndex,
}

fn arrival() -> BuiltinObjective {
    builtin("arrival", BuiltinKind::EarliestArrival, None).expect("fixed direction")
}

fn assemble(name: String, graph: TemporalGraph, objectives: Vec<BuiltinObjective>) -> Fixture {
    let suite = ObjectiveSuite::from_builtins(objectives.clone()).expect("valid fixture suite");
    let source = graph.node("s").expect("fixtures start at s");
    Fixture {
        name,
        graph,
        objectives,
        suite,
        source,
    }
}

/// Source `s`, arc `r1` into a cycle `v1 -> v2 -> ... -> vk -> v1` of
/// zero-traversal arcs at time 1. The decay objective starts at `k^(k+1)` on
/// `r1` and loses one per further arc.
pub fn example_2_1(k: u32) -> Result<Fixture> {
    if k == 0 {
        return Err(Error::input("example_2_1 needs k >= 1"));
    }
    let start_value = (k as i64)
        .checked_pow(k + 1)
        .ok_or_else(|| Error::input(format!("k = {k} is too large")))?;
    let mut b = TemporalGraph::builder().node("s");
    for i in 1..=k {
        b = b.node(format!("v{i}"));
    }
    b = b.arc("r1", "s", "v1", 0, 1).value("decay", start_value);
    for i in 2..=k + 1 {
        let from = format!("v{}", i - 1);
        let to = if i == k + 1 {
            "v1".to_owned()
        } else {
            format!("v{i}")
        };
        b = b.arc(format!("r{i}"), from, to, 1, 0).value("decay", 0);
    }
    let graph = b.strict_nodes(true).build()?;
    let decay = builtin("decay", BuiltinKind::DecayMax, None)?;
    Ok(assemble(
        format!("example_2_1_k{k}"),
        graph,
        vec![arrival(), decay],
    ))
}

/// Two nodes and three arcs, all at time 0 with zero traversal time; two
/// min-combine objectives.
pub fn example_2_2() -> Fixture {
    let graph = TemporalGraph::builder()
        .node("s")
        .node("v")
        .arc("r1", "s", "v", 0, 0)
        .value("min_a", 0)
        .value("min_b", 0)
        .arc("r2", "v", "s", 0, 0)
        .value("min_a", -1)
        .value("min_b", 0)
        .arc("r3", "v", "s", 0, 0)
        .value("min_a", 0)
        .value("min_b", -1)
        .strict_nodes(true)
        .build()
        .expect("static fixture");
    let objectives = vec![
        arrival(),
        builtin("min_a", BuiltinKind::MinCombine, None).expect("fixed direction"),
        builtin("min_b", BuiltinKind::MinCombine, None).expect("fixed direction"),
    ];
    assemble("example_2_2".to_owned(), graph, objectives)
}

/// `s -> v -> s` at time 0 with additive cost -1 on both arcs: an improving cycle.
pub fn additive_loop() -> Fixture {
    additive_two_cycle("additive_loop", -1)
}

/// The same loop with cost `cost` on both arcs.
pub fn additive_two_cycle(name: &str, cost: i64) -> Fixture {
    let graph = TemporalGraph::builder()
        .node("s")
        .node("v")
        .arc("r1", "s", "v", 0, 0)
        .value("cost", cost)
        .arc("r2", "v", "s", 0, 0)
        .value("cost", cost)
        .strict_nodes(true)
        .build()
        .expect("static fixture");
    let cost =
        builtin("cost", BuiltinKind::Additive, Some(Direction::Min)).expect("direction given");
    assemble(name.to_owned(), graph, vec![arrival(), cost])
}

/// Chain `s -> a -> b -> c` with categories 2, 2, 5.
pub fn category_chain() -> Fixture {
    let graph = TemporalGraph::builder()
        .node("s")
        .node("a")
        .node("b")
        .node("c")
        .arc("r1", "s", "a", 0, 1)
        .value("category", 2)
        .arc("r2", "a", "b", 1, 1)
        .value("category", 2)
        .arc("r3", "b", "c", 2, 1)
        .value("category", 5)
        .strict_nodes(true)
        .build()
        .expect("static fixture");
    let category = builtin("category", BuiltinKind::CategoryMax, None).expect("fixed direction");
    assemble(
        "category_chain".to_owned(),
        graph,
        vec![arrival(), category],
    )
}

/// Looks a fixture up by its CLI name.
pub fn by_name(name: &str, k: Option<u32>) -> Result<Fixture> {
    match name {
        "example_2_1" => example_2_1(k.unwrap_or(2)),
        "example_2_2" => Ok(example_2_2()),
        "additive_loop" => Ok(additive_loop()),
        "category_chain" => Ok(category_chain()),
        other => Err(Error::input(format!(
            "unknown fixture '{other}' (expected example_2_1, example_2_2, additive_loop, category_chain)"
        ))),
    }
}
