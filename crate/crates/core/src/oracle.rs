//! Brute-force reference answers by explicit path enumeration.
//!
//! Everything here walks all temporal paths from the source up to a length
//! limit and folds the objectives along each one. It shares no code with the
//! label-correcting solvers beyond the graph and objective definitions, which
//! makes it usable as a test oracle. Cost grows exponentially with the limit.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::objectives::{Image, ObjectiveSuite};
use crate::temporal_graph::{ArcIndex, NodeIndex, TemporalGraph, TemporalPath, WaitingTimes};

#[derive(Clone, Debug)]
pub struct EnumerationBudget {
    /// Longest path (in arcs) to enumerate.
    pub max_length: usize,
    /// Abort with [`Error::Budget`] after visiting this many paths.
    pub max_paths: usize,
    pub waiting: Option<WaitingTimes>,
}

impl EnumerationBudget {
    pub const DEFAULT_MAX_PATHS: usize = 1_000_000;

    pub fn new(max_length: usize) -> Self {
        EnumerationBudget {
            max_length,
            max_paths: Self::DEFAULT_MAX_PATHS,
            waiting: None,
        }
    }

    pub fn with_max_paths(mut self, max_paths: usize) -> Self {
        self.max_paths = max_paths;
        self
    }

    pub fn with_waiting(mut self, waiting: Option<WaitingTimes>) -> Self {
        self.waiting = waiting;
        self
    }
}

/// Whether `next` may directly follow a path that ends with `prev`.
fn connects(
    graph: &TemporalGraph,
    prev: Option<ArcIndex>,
    next: ArcIndex,
    waiting: Option<&WaitingTimes>,
) -> bool {
    let Some(prev) = prev else { return true };
    let (p, n) = (graph.arc(prev), graph.arc(next));
    if p.to != n.from {
        return false;
    }
    let ready = &p.tau + &p.lambda;
    let ready = match waiting {
        Some(w) => &ready + w.at(p.to),
        None => ready,
    };
    ready <= n.tau
}

/// Calls `visit(path_arcs, end_node, image)` for every temporal path from
/// `source` with at most `budget.max_length` arcs, the zero-arc path first,
/// in depth-first order over arcs in input order.
pub fn for_each_path<F>(
    graph: &TemporalGraph,
    suite: &ObjectiveSuite,
    source: NodeIndex,
    budget: &EnumerationBudget,
    mut visit: F,
) -> Result<usize>
where
    F: FnMut(&[ArcIndex], NodeIndex, &Image),
{
    if !graph.contains_node(source) {
        return Err(Error::input(format!(
            "source index {} out of range",
            source.0
        )));
    }
    let mut values = Vec::with_capacity(graph.arc_count());
    for arc in graph.arcs() {
        let image = suite
            .objectives()
            .iter()
            .map(|o| o.arc_value(arc))
            .collect::<Result<Vec<_>>>()?;
        values.push(image);
    }

    struct Walk<'a, F> {
        graph: &'a TemporalGraph,
        suite: &'a ObjectiveSuite,
        values: Vec<Vec<crate::objectives::ObjectiveValue>>,
        budget: &'a EnumerationBudget,
        arcs: Vec<ArcIndex>,
        count: usize,
        visit: F,
    }

    impl<F: FnMut(&[ArcIndex], NodeIndex, &Image)> Walk<'_, F> {
        fn go(&mut self, node: NodeIndex, image: &Image) -> Result<()> {
            self.count += 1;
            if self.count > self.budget.max_paths {
                return Err(Error::Budget {
                    max_paths: self.budget.max_paths,
                });
            }
            (self.visit)(&self.arcs, node, image);
            if self.arcs.len() == self.budget.max_length {
                return Ok(());
            }
            let last = self.arcs.last().copied();
            for &next in self.graph.out_arcs(node) {
                if !connects(self.graph, last, next, self.budget.waiting.as_ref()) {
                    continue;
                }
                let extended = Image(
                    self.suite
                        .objectives()
                        .iter()
                        .zip(image.values().iter().zip(&self.values[next.0]))
                        .map(|(o, (acc, v))| o.combine(acc, v))
                        .collect(),
                );
                self.arcs.push(next);
                let to = self.graph.arc(next).to;
                self.go(to, &extended)?;
                self.arcs.pop();
            }
            Ok(())
        }
    }

    let mut walk = Walk {
        graph,
        suite,
        values,
        budget,
        arcs: Vec::new(),
        count: 0,
        visit: &mut visit,
    };
    walk.go(source, &suite.neutral_image())?;
    Ok(walk.count)
}

/// Every temporal path from `source` within the budget, with its image.
pub fn enumerate_paths(
    graph: &TemporalGraph,
    suite: &ObjectiveSuite,
    source: NodeIndex,
    budget: &EnumerationBudget,
) -> Result<Vec<(TemporalPath, Image)>> {
    let mut out = Vec::new();
    for_each_path(graph, suite, source, budget, |arcs, _, image| {
        out.push((TemporalPath::new(source, arcs.to_vec()), image.clone()));
    })?;
    Ok(out)
}

/// Per node index, the nondominated images over all paths with at most
/// `budget.max_length` arcs, in preference order.
pub fn k_nondominated_sets(
    graph: &TemporalGraph,
    suite: &ObjectiveSuite,
    source: NodeIndex,
    budget: &EnumerationBudget,
) -> Result<Vec<Vec<Image>>> {
    let mut images: Vec<HashSet<Image>> = vec![HashSet::new(); graph.node_count()];
    for_each_path(graph, suite, source, budget, |_, node, image| {
        images[node.0].insert(image.clone());
    })?;
    Ok(images
        .into_iter()
        .map(|set| suite.nondominated_filter(&set.into_iter().collect::<Vec<_>>()))
        .collect())
}

/// `profile[k][v]`: the nondominated images at node `v` over paths with at most
/// `k` arcs, for every `k` up to `budget.max_length`.
pub fn nondominated_profile(
    graph: &TemporalGraph,
    suite: &ObjectiveSuite,
    source: NodeIndex,
    budget: &EnumerationBudget,
) -> Result<Vec<Vec<Vec<Image>>>> {
    let n = graph.node_count();
    let mut by_length: Vec<Vec<HashSet<Image>>> =
        vec![vec![HashSet::new(); n]; budget.max_length + 1];
    for_each_path(graph, suite, source, budget, |arcs, node, image| {
        by_length[arcs.len()][node.0].insert(image.clone());
    })?;
    let mut profile = Vec::with_capacity(budget.max_length + 1);
    let mut running: Vec<Vec<Image>> = vec![Vec::new(); n];
    for layer in by_length {
        for (v, set) in layer.into_iter().enumerate() {
            running[v].extend(set);
            running[v] = suite.nondominated_filter(&running[v]);
        }
        profile.push(running.clone());
    }
    Ok(profile)
}

/// True when, at some node, the nondominated images over paths of length at
/// most `horizon` differ from those over length at most `horizon - m`. Such a
/// late change can only come from a path that repeats an arc and gains on the
/// repetition, so for additive suites a `true` answer implies an improving
/// cycle. Requires `horizon >= 2m`.
pub fn improving_cycle_probe(
    graph: &TemporalGraph,
    suite: &ObjectiveSuite,
    source: NodeIndex,
    horizon: usize,
    budget: &EnumerationBudget,
) -> Result<bool> {
    let m = graph.arc_count();
    if horizon < 2 * m {
        return Err(Error::Precondition(format!(
            "probe horizon {horizon} is below twice the arc count {m}"
        )));
    }
    let budget = EnumerationBudget {
        max_length: horizon,
        ..budget.clone()
    };
    let profile = nondominated_profile(graph, suite, source, &budget)?;
    Ok(profile[horizon] != profile[horizon - m])
}

/// Whether some temporal path from `source` with at most `max_length` arcs
/// uses an arc twice.
pub fn repeated_arc_within(
    graph: &TemporalGraph,
    source: NodeIndex,
    max_length: usize,
    waiting: Option<&WaitingTimes>,
) -> Result<bool> {
    if !graph.contains_node(source) {
        return Err(Error::input(format!(
            "source index {} out of range",
            source.0
        )));
    }
    // Depth-first over arc-distinct paths; the first repeat ends the search.
    fn go(
        graph: &TemporalGraph,
        node: NodeIndex,
        path: &mut Vec<ArcIndex>,
        used: &mut [bool],
        max_length: usize,
        waiting: Option<&WaitingTimes>,
    ) -> bool {
        if path.len() == max_length {
            return false;
        }
        let last = path.last().copied();
        for &next in graph.out_arcs(node) {
            if !connects(graph, last, next, waiting) {
                continue;
            }
            if used[next.0] {
                return true;
            }
            used[next.0] = true;
            path.push(next);
            let found = go(graph, graph.arc(next).to, path, used, max_length, waiting);
            path.pop();
            used[next.0] = false;
            if found {
                return true;
            }
        }
        false
    }
    let mut used = vec![false; graph.arc_count()];
    Ok(go(
        graph,
        source,
        &mut Vec::new(),
        &mut used,
        max_length,
        waiting,
    ))
}
