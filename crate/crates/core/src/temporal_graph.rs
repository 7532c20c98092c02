//! Temporal graphs: arcs usable only at their start time, temporal paths, and
//! the zero-duration-cycle reachability check.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::objectives::ObjectiveValue;
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeIndex(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcIndex(pub usize);

impl fmt::Debug for NodeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Debug for ArcIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalArc {
    pub id: String,
    pub from: NodeIndex,
    pub to: NodeIndex,
    pub tau: Rational,
    pub lambda: Rational,
    /// Raw objective values keyed by objective name.
    pub values: BTreeMap<String, ObjectiveValue>,
}

impl TemporalArc {
    pub fn arrival(&self) -> Rational {
        &self.tau + &self.lambda
    }
}

/// Immutable temporal graph with dense node and arc indices.
///
/// Node ids and arc ids are opaque strings; the index of a node is its position
/// in [`TemporalGraph::node_ids`], the index of an arc its position in
/// [`TemporalGraph::arcs`].
#[derive(Clone, Debug)]
pub struct TemporalGraph {
    node_ids: Vec<String>,
    node_lookup: HashMap<String, NodeIndex>,
    arcs: Vec<TemporalArc>,
    arc_lookup: HashMap<String, ArcIndex>,
    out_adjacency: Vec<Vec<ArcIndex>>,
    in_adjacency: Vec<Vec<ArcIndex>>,
}

#[derive(Clone, Debug)]
struct ArcDraft {
    id: String,
    from: String,
    to: String,
    tau: Rational,
    lambda: Rational,
    values: BTreeMap<String, ObjectiveValue>,
}

/// Incremental construction of a [`TemporalGraph`].
///
/// Nodes declared with [`GraphBuilder::node`] come first, in declaration order;
/// nodes only mentioned by arcs follow in order of first appearance.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    nodes: Vec<String>,
    strict_nodes: bool,
    arcs: Vec<ArcDraft>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node(mut self, id: impl Into<String>) -> Self {
        self.nodes.push(id.into());
        self
    }

    /// Rejects arcs whose endpoints were not declared with [`GraphBuilder::node`].
    pub fn strict_nodes(mut self, strict: bool) -> Self {
        self.strict_nodes = strict;
        self
    }

    pub fn arc(
        mut self,
        id: impl Into<String>,
        from: impl Into<String>,
        to: impl Into<String>,
        tau: impl Into<Rational>,
        lambda: impl Into<Rational>,
    ) -> Self {
        self.arcs.push(ArcDraft {
            id: id.into(),
            from: from.into(),
            to: to.into(),
            tau: tau.into(),
            lambda: lambda.into(),
            values: BTreeMap::new(),
        });
        self
    }

    /// Sets an objective value on the most recently added arc.
    pub fn value(mut self, objective: impl Into<String>, value: impl Into<ObjectiveValue>) -> Self {
        let arc = self.arcs.last_mut().expect("value() called before arc()");
        arc.values.insert(objective.into(), value.into());
        self
    }

    pub fn build(self) -> Result<TemporalGraph> {
        let mut node_ids = Vec::new();
        let mut node_lookup = HashMap::new();
        for id in self.nodes {
            if node_lookup.contains_key(&id) {
                return Err(Error::input(format!("duplicate node id '{id}'")));
            }
            node_lookup.insert(id.clone(), NodeIndex(node_ids.len()));
            node_ids.push(id);
        }

        let mut arcs = Vec::with_capacity(self.arcs.len());
        let mut arc_lookup = HashMap::new();
        for draft in self.arcs {
            if arc_lookup.contains_key(&draft.id) {
                return Err(Error::input(format!("duplicate arc id '{}'", draft.id)));
            }
            if draft.tau.is_negative() {
                return Err(Error::input(format!(
                    "arc '{}': negative start time",
                    draft.id
                )));
            }
            if draft.lambda.is_negative() {
                return Err(Error::input(format!(
                    "arc '{}': negative traversal time",
                    draft.id
                )));
            }
            let mut resolve = |name: &str| -> Result<NodeIndex> {
                if let Some(&idx) = node_lookup.get(name) {
                    return Ok(idx);
                }
                if self.strict_nodes {
                    return Err(Error::input(format!(
                        "arc '{}' references undeclared node '{name}'",
                        draft.id
                    )));
                }
                let idx = NodeIndex(node_ids.len());
                node_lookup.insert(name.to_owned(), idx);
                node_ids.push(name.to_owned());
                Ok(idx)
            };
            let from = resolve(&draft.from)?;
            let to = resolve(&draft.to)?;
            arc_lookup.insert(draft.id.clone(), ArcIndex(arcs.len()));
            arcs.push(TemporalArc {
                id: draft.id,
                from,
                to,
                tau: draft.tau,
                lambda: draft.lambda,
                values: draft.values,
            });
        }

        let mut out_adjacency = vec![Vec::new(); node_ids.len()];
        let mut in_adjacency = vec![Vec::new(); node_ids.len()];
        for (i, arc) in arcs.iter().enumerate() {
            out_adjacency[arc.from.0].push(ArcIndex(i));
            in_adjacency[arc.to.0].push(ArcIndex(i));
        }

        Ok(TemporalGraph {
            node_ids,
            node_lookup,
            arcs,
            arc_lookup,
            out_adjacency,
            in_adjacency,
        })
    }
}

impl TemporalGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    pub fn node_count(&self) -> usize {
        self.node_ids.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeIndex> + '_ {
        (0..self.node_ids.len()).map(NodeIndex)
    }

    pub fn node_ids(&self) -> &[String] {
        &self.node_ids
    }

    pub fn node_id(&self, node: NodeIndex) -> &str {
        &self.node_ids[node.0]
    }

    pub fn node(&self, id: &str) -> Option<NodeIndex> {
        self.node_lookup.get(id).copied()
    }

    pub fn require_node(&self, id: &str) -> Result<NodeIndex> {
        self.node(id)
            .ok_or_else(|| Error::input(format!("unknown node '{id}'")))
    }

    pub fn arcs(&self) -> &[TemporalArc] {
        &self.arcs
    }

    pub fn arc(&self, arc: ArcIndex) -> &TemporalArc {
        &self.arcs[arc.0]
    }

    pub fn arc_by_id(&self, id: &str) -> Option<ArcIndex> {
        self.arc_lookup.get(id).copied()
    }

    pub fn contains_node(&self, node: NodeIndex) -> bool {
        node.0 < self.node_ids.len()
    }

    pub(crate) fn check_node(&self, node: NodeIndex) -> Result<()> {
        if self.contains_node(node) {
            Ok(())
        } else {
            Err(Error::input(format!("node index {} out of range", node.0)))
        }
    }

    /// Outgoing arcs of `node` in input order.
    pub fn out_arcs(&self, node: NodeIndex) -> &[ArcIndex] {
        &self.out_adjacency[node.0]
    }

    /// Incoming arcs of `node` in input order.
    pub fn in_arcs(&self, node: NodeIndex) -> &[ArcIndex] {
        &self.in_adjacency[node.0]
    }
}

/// Per-node minimum waiting times; every entry is strictly positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaitingTimes(Vec<Rational>);

impl WaitingTimes {
    pub fn new(graph: &TemporalGraph, by_id: &BTreeMap<String, Rational>) -> Result<Self> {
        for id in by_id.keys() {
            graph.require_node(id)?;
        }
        let mut times = Vec::with_capacity(graph.node_count());
        for id in graph.node_ids() {
            let delta = by_id
                .get(id)
                .ok_or_else(|| Error::input(format!("no waiting time for node '{id}'")))?;
            if !delta.is_positive() {
                return Err(Error::input(format!(
                    "waiting time of node '{id}' must be positive, got {delta}"
                )));
            }
            times.push(delta.clone());
        }
        Ok(WaitingTimes(times))
    }

    /// Same waiting time at every node.
    pub fn uniform(graph: &TemporalGraph, delta: Rational) -> Result<Self> {
        if !delta.is_positive() {
            return Err(Error::input("waiting time must be positive"));
        }
        Ok(WaitingTimes(vec![delta; graph.node_count()]))
    }

    pub fn at(&self, node: NodeIndex) -> &Rational {
        &self.0[node.0]
    }
}

/// A temporal path given by its start node and arc sequence. An empty arc list
/// is the zero-arcs path at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TemporalPath {
    pub start: NodeIndex,
    pub arcs: Vec<ArcIndex>,
}

impl TemporalPath {
    pub fn zero_arcs(start: NodeIndex) -> Self {
        TemporalPath {
            start,
            arcs: Vec::new(),
        }
    }

    pub fn new(start: NodeIndex, arcs: Vec<ArcIndex>) -> Self {
        TemporalPath { start, arcs }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn end(&self, graph: &TemporalGraph) -> NodeIndex {
        self.arcs.last().map_or(self.start, |&a| graph.arc(a).to)
    }

    /// Arrival time of the last arc, `None` for the zero-arcs path.
    pub fn arrival(&self, graph: &TemporalGraph) -> Option<Rational> {
        self.arcs.last().map(|&a| graph.arc(a).arrival())
    }

    pub fn arc_ids<'g>(&self, graph: &'g TemporalGraph) -> Vec<&'g str> {
        self.arcs
            .iter()
            .map(|&a| graph.arc(a).id.as_str())
            .collect()
    }

    /// The subpath consisting of arcs `from..to`.
    pub fn subpath(&self, graph: &TemporalGraph, from: usize, to: usize) -> TemporalPath {
        let start = if from == 0 {
            self.start
        } else {
            graph.arc(self.arcs[from - 1]).to
        };
        TemporalPath::new(start, self.arcs[from..to].to_vec())
    }
}

fn check_indices(graph: &TemporalGraph, path: &TemporalPath) -> Result<()> {
    graph.check_node(path.start)?;
    if let Some(bad) = path.arcs.iter().find(|a| a.0 >= graph.arc_count()) {
        return Err(Error::input(format!("arc index {} out of range", bad.0)));
    }
    Ok(())
}

/// Whether `next` may follow `prev` in a temporal path, with the waiting time at
/// the intermediate node applied when given.
pub(crate) fn may_follow(
    graph: &TemporalGraph,
    prev: ArcIndex,
    next: ArcIndex,
    waiting: Option<&WaitingTimes>,
) -> bool {
    let prev = graph.arc(prev);
    let next = graph.arc(next);
    if prev.to != next.from {
        return false;
    }
    let ready = match waiting {
        Some(w) => prev.arrival() + w.at(prev.to).clone(),
        None => prev.arrival(),
    };
    ready <= next.tau
}

/// Checks chaining and temporal validity of `path`.
pub fn validate_path(
    graph: &TemporalGraph,
    path: &TemporalPath,
    waiting: Option<&WaitingTimes>,
) -> Result<bool> {
    check_indices(graph, path)?;
    let Some(&first) = path.arcs.first() else {
        return Ok(true);
    };
    if graph.arc(first).from != path.start {
        return Ok(false);
    }
    Ok(path
        .arcs
        .windows(2)
        .all(|w| may_follow(graph, w[0], w[1], waiting)))
}

fn require_valid(graph: &TemporalGraph, path: &TemporalPath) -> Result<()> {
    if validate_path(graph, path, None)? {
        Ok(())
    } else {
        Err(Error::input("path is not a valid temporal path"))
    }
}

/// Arrival of the last arc minus start time of the first; zero for the
/// zero-arcs path.
pub fn path_duration(graph: &TemporalGraph, path: &TemporalPath) -> Result<Rational> {
    require_valid(graph, path)?;
    match (path.arcs.first(), path.arcs.last()) {
        (Some(&first), Some(&last)) => Ok(graph.arc(last).arrival() - graph.arc(first).tau.clone()),
        _ => Ok(Rational::zero()),
    }
}

pub fn concatenate(
    graph: &TemporalGraph,
    left: &TemporalPath,
    right: &TemporalPath,
) -> Result<TemporalPath> {
    require_valid(graph, left)?;
    require_valid(graph, right)?;
    if left.end(graph) != right.start {
        return Err(Error::Precondition(format!(
            "left path ends at '{}' but right path starts at '{}'",
            graph.node_id(left.end(graph)),
            graph.node_id(right.start)
        )));
    }
    if let (Some(arrival), Some(&first)) = (left.arrival(graph), right.arcs.first()) {
        if arrival > graph.arc(first).tau {
            return Err(Error::Precondition(format!(
                "left path arrives at {arrival} after arc '{}' starts at {}",
                graph.arc(first).id,
                graph.arc(first).tau
            )));
        }
    }
    let mut arcs = left.arcs.clone();
    arcs.extend_from_slice(&right.arcs);
    Ok(TemporalPath::new(left.start, arcs))
}

/// Earliest arrival time at every node over temporal paths from `source`
/// (zero at `source`), `None` when unreachable.
///
/// One pass over arcs grouped by start time; within a group the arcs are
/// rescanned until nothing changes, since zero-traversal arcs at the same
/// timestamp can enable each other.
pub fn earliest_arrival_times(
    graph: &TemporalGraph,
    source: NodeIndex,
) -> Result<Vec<Option<Rational>>> {
    graph.check_node(source)?;
    let mut earliest: Vec<Option<Rational>> = vec![None; graph.node_count()];
    earliest[source.0] = Some(Rational::zero());

    let mut order: Vec<usize> = (0..graph.arc_count()).collect();
    order.sort_by(|&a, &b| graph.arcs[a].tau.cmp(&graph.arcs[b].tau));

    let mut group_start = 0;
    while group_start < order.len() {
        let tau = &graph.arcs[order[group_start]].tau;
        let group_end = order[group_start..]
            .iter()
            .position(|&a| &graph.arcs[a].tau != tau)
            .map_or(order.len(), |p| group_start + p);
        loop {
            let mut changed = false;
            for &a in &order[group_start..group_end] {
                let arc = &graph.arcs[a];
                let usable = matches!(&earliest[arc.from.0], Some(t) if t <= &arc.tau);
                if !usable {
                    continue;
                }
                let arrival = arc.arrival();
                let slot = &mut earliest[arc.to.0];
                if slot.as_ref().is_none_or(|t| arrival < *t) {
                    *slot = Some(arrival);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        group_start = group_end;
    }
    Ok(earliest)
}

/// Looks for a zero-duration cycle reachable from `source`.
///
/// For every timestamp `t` carried by a zero-traversal arc, the subgraph of
/// zero-traversal arcs starting at `t` between nodes whose earliest arrival is
/// at most `t` is searched depth-first for a directed cycle. Timestamps are
/// tried in increasing order and the first cycle found is returned.
pub fn find_reachable_zero_duration_cycle(
    graph: &TemporalGraph,
    source: NodeIndex,
) -> Result<Option<TemporalPath>> {
    let earliest = earliest_arrival_times(graph, source)?;
    let timestamps: BTreeSet<&Rational> = graph
        .arcs
        .iter()
        .filter(|a| a.lambda.is_zero())
        .map(|a| &a.tau)
        .collect();

    for t in timestamps {
        let admitted = |node: NodeIndex| matches!(&earliest[node.0], Some(e) if e <= t);
        let mut subgraph: Vec<Vec<ArcIndex>> = vec![Vec::new(); graph.node_count()];
        for (i, arc) in graph.arcs.iter().enumerate() {
            if arc.lambda.is_zero() && &arc.tau == t && admitted(arc.from) && admitted(arc.to) {
                subgraph[arc.from.0].push(ArcIndex(i));
            }
        }
        if let Some(cycle) = find_directed_cycle(graph, &subgraph) {
            return Ok(Some(cycle));
        }
    }
    Ok(None)
}

/// Iterative DFS over `adjacency`; returns the first cycle closed by a back arc.
fn find_directed_cycle(graph: &TemporalGraph, adjacency: &[Vec<ArcIndex>]) -> Option<TemporalPath> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        OnStack,
        Done,
    }
    let n = adjacency.len();
    let mut mark = vec![Mark::New; n];
    // (node, next adjacency position, arc used to enter the node)
    let mut stack: Vec<(usize, usize, Option<ArcIndex>)> = Vec::new();

    for root in 0..n {
        if mark[root] != Mark::New || adjacency[root].is_empty() {
            continue;
        }
        mark[root] = Mark::OnStack;
        stack.push((root, 0, None));
        while let Some(top) = stack.last_mut() {
            let (node, pos) = (top.0, top.1);
            if pos == adjacency[node].len() {
                mark[node] = Mark::Done;
                stack.pop();
                continue;
            }
            top.1 += 1;
            let arc = adjacency[node][pos];
            let next = graph.arc(arc).to.0;
            match mark[next] {
                Mark::New => {
                    mark[next] = Mark::OnStack;
                    stack.push((next, 0, Some(arc)));
                }
                Mark::OnStack => {
                    let entry = stack
                        .iter()
                        .position(|frame| frame.0 == next)
                        .expect("on stack");
                    let mut arcs: Vec<ArcIndex> = stack[entry + 1..]
                        .iter()
                        .filter_map(|frame| frame.2)
                        .collect();
                    arcs.push(arc);
                    return Some(TemporalPath::new(NodeIndex(next), arcs));
                }
                Mark::Done => {}
            }
        }
    }
    None
}
