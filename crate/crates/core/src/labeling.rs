//! Label-correcting solvers.
//!
//! All three solvers share one iteration scheme. Layer `k` holds, per node, the
//! labels of paths with at most `k` arcs. Iteration `k` copies layer `k` into
//! layer `k + 1`, then extends every label of layer `k` along every outgoing arc
//! whose start time is not before the label's arrival. They differ in how a new
//! label enters layer `k + 1` and in how the run ends:
//!
//! * [`solve_isotonic`] rejects weakly dominated labels and evicts the labels a
//!   new one dominates, stopping at a fixed point or after layer `K`.
//! * [`solve_general`] keeps one label per distinct image and prunes dominated
//!   labels only when returning.
//! * [`solve_additive`] runs the isotonic scheme with `K = m`; failing to reach a
//!   fixed point by then proves an improving cycle, and one is extracted.
//!
//! Every label ever accepted stays in a [`LabelArena`], so paths can be rebuilt
//! after their labels were evicted from the layers.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::objectives::{ArcValueTable, Image, ObjectiveSuite, ObjectiveValue};
use crate::temporal_graph::{
    find_reachable_zero_duration_cycle, ArcIndex, NodeIndex, TemporalGraph, TemporalPath,
    WaitingTimes,
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelId(pub usize);

impl fmt::Debug for LabelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct Label {
    pub node: NodeIndex,
    pub image: Image,
    pub pred_arc: Option<ArcIndex>,
    pub pred_label: Option<LabelId>,
    /// First layer containing the label: 0 for the root, `k + 1` when created
    /// in iteration `k`.
    pub layer: usize,
}

/// Append-only label store. A label's id is its position, so predecessors
/// always have smaller ids.
#[derive(Clone, Debug, Default)]
pub struct LabelArena {
    labels: Vec<Label>,
}

impl LabelArena {
    fn push(&mut self, label: Label) -> LabelId {
        self.labels.push(label);
        LabelId(self.labels.len() - 1)
    }

    pub fn get(&self, id: LabelId) -> Option<&Label> {
        self.labels.get(id.0)
    }

    fn label(&self, id: LabelId) -> &Label {
        &self.labels[id.0]
    }

    fn image(&self, id: LabelId) -> &Image {
        &self.labels[id.0].image
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (LabelId, &Label)> {
        self.labels.iter().enumerate().map(|(i, l)| (LabelId(i), l))
    }
}

/// Follows predecessor links from `id` back to the root.
pub fn reconstruct_path(arena: &LabelArena, id: LabelId) -> Result<TemporalPath> {
    let mut arcs = Vec::new();
    let mut current = arena
        .get(id)
        .ok_or_else(|| Error::Internal(format!("label {} not in arena", id.0)))?;
    let mut current_id = id;
    loop {
        match (current.pred_arc, current.pred_label) {
            (None, None) => break,
            (Some(arc), Some(pred)) => {
                if pred >= current_id {
                    return Err(Error::Internal(format!(
                        "label {} points forward to {}",
                        current_id.0, pred.0
                    )));
                }
                arcs.push(arc);
                current_id = pred;
                current = arena
                    .get(pred)
                    .ok_or_else(|| Error::Internal(format!("dangling predecessor {}", pred.0)))?;
            }
            _ => {
                return Err(Error::Internal(format!(
                    "label {} has half a predecessor",
                    current_id.0
                )))
            }
        }
    }
    arcs.reverse();
    Ok(TemporalPath::new(current.node, arcs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// No layer changed in the last iteration.
    FixedPoint,
    /// The iteration bound was reached first.
    ReachedK,
    /// The additive solver ran out of iterations; an improving cycle exists.
    ImprovingCycleDetected,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::FixedPoint => "fixed_point",
            StopReason::ReachedK => "reached_K",
            StopReason::ImprovingCycleDetected => "improving_cycle_detected",
        }
    }
}

/// A zero-duration cycle whose repetition improves objective `objective`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImprovingCycle {
    pub cycle: TemporalPath,
    pub objective: usize,
    /// Sum of the objective's arc values over the cycle.
    pub gain: ObjectiveValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub image: Image,
    pub path: TemporalPath,
    pub label: LabelId,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    /// Nondominated images with one path each, per node index, in preference
    /// order. Empty everywhere when an improving cycle was detected.
    pub per_node: Vec<Vec<Solution>>,
    /// Index of the returned layer.
    pub iterations: usize,
    pub stop_reason: StopReason,
    /// The path-length bound the run used.
    pub bound: usize,
    pub witness: Option<ImprovingCycle>,
    /// Label ids of every layer, per node; only filled with `trace_layers`.
    pub layers: Vec<Vec<Vec<LabelId>>>,
    pub arena: LabelArena,
}

impl SolveResult {
    /// Whether the sets are nondominated over paths of any length, not only
    /// over paths within the bound.
    pub fn is_unrestricted(&self) -> bool {
        self.stop_reason == StopReason::FixedPoint
    }

    pub fn images(&self, node: NodeIndex) -> Vec<Image> {
        self.per_node[node.0]
            .iter()
            .map(|s| s.image.clone())
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub waiting: Option<WaitingTimes>,
    /// Stop as soon as an iteration changes nothing. Disabling it runs every
    /// iteration up to the bound; results are identical.
    pub stop_at_fixed_point: bool,
    pub trace_layers: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            waiting: None,
            stop_at_fixed_point: true,
            trace_layers: false,
        }
    }
}

impl SolveOptions {
    pub fn with_waiting(waiting: WaitingTimes) -> Self {
        SolveOptions {
            waiting: Some(waiting),
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Insertion {
    Dominance,
    DistinctImages,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Termination {
    Bounded,
    Additive,
}

/// Solver for suites of isotonic objectives; returns exactly the
/// `bound`-nondominated images per node.
pub fn solve_isotonic(
    graph: &TemporalGraph,
    suite: &ObjectiveSuite,
    source: NodeIndex,
    bound: usize,
    options: &SolveOptions,
) -> Result<SolveResult> {
    if !suite.all_isotonic() {
        let offenders: Vec<&str> = suite
            .objectives()
            .iter()
            .filter(|o| !o.is_isotonic())
            .map(|o| o.name())
            .collect();
        return Err(Error::config(format!(
            "isotonic solver needs isotonic objectives; not isotonic: {}",
            offenders.join(", ")
        )));
    }
    run(
        graph,
        suite,
        source,
        bound,
        Insertion::Dominance,
        Termination::Bounded,
        options,
    )
}

/// Solver for arbitrary objectives; returns exactly the `bound`-nondominated
/// images per node.
pub fn solve_general(
    graph: &TemporalGraph,
    suite: &ObjectiveSuite,
    source: NodeIndex,
    bound: usize,
    options: &SolveOptions,
) -> Result<SolveResult> {
    run(
        graph,
        suite,
        source,
        bound,
        Insertion::DistinctImages,
        Termination::Bounded,
        options,
    )
}

/// Solver for earliest arrival plus rational additive objectives: either all
/// nondominated images (any path length) or an improving cycle.
pub fn solve_additive(
    graph: &TemporalGraph,
    suite: &ObjectiveSuite,
    source: NodeIndex,
    options: &SolveOptions,
) -> Result<SolveResult> {
    if !suite.all_additive() {
        return Err(Error::config(
            "additive solver needs every objective after earliest arrival to be additive",
        ));
    }
    let options = SolveOptions {
        stop_at_fixed_point: true,
        ..options.clone()
    };
    run(
        graph,
        suite,
        source,
        graph.arc_count(),
        Insertion::Dominance,
        Termination::Additive,
        &options,
    )
}

fn run(
    graph: &TemporalGraph,
    suite: &ObjectiveSuite,
    source: NodeIndex,
    bound: usize,
    insertion: Insertion,
    termination: Termination,
    options: &SolveOptions,
) -> Result<SolveResult> {
    graph.check_node(source)?;
    let arc_values = suite.arc_values(graph)?;
    let n = graph.node_count();

    let mut arena = LabelArena::default();
    let root = arena.push(Label {
        node: source,
        image: suite.neutral_image(),
        pred_arc: None,
        pred_label: None,
        layer: 0,
    });
    let mut current: Vec<Vec<LabelId>> = vec![Vec::new(); n];
    current[source.0].push(root);
    // Images present in the next layer, per node (distinct-image mode only;
    // layers only grow there, so the set carries over between iterations).
    let mut seen: Vec<HashSet<Image>> = vec![HashSet::new(); n];
    if insertion == Insertion::DistinctImages {
        seen[source.0].insert(suite.neutral_image());
    }
    let mut layers = Vec::new();

    let mut k = 0;
    loop {
        if options.trace_layers {
            layers.push(current.clone());
        }
        let mut next = current.clone();
        let mut created = 0usize;

        for v in graph.nodes() {
            if current[v.0].is_empty() {
                continue;
            }
            for &arc_idx in graph.out_arcs(v) {
                let arc = graph.arc(arc_idx);
                let u = arc.to;
                for &label_id in &current[v.0] {
                    let label = arena.label(label_id);
                    if !guard_passes(graph, label, arc_idx, options.waiting.as_ref()) {
                        continue;
                    }
                    let image = suite.extend(&label.image, arc_values.get(arc_idx));
                    match insertion {
                        Insertion::Dominance => {
                            if next[u.0]
                                .iter()
                                .any(|&t| suite.weakly_dominates_unchecked(arena.image(t), &image))
                            {
                                continue;
                            }
                            next[u.0]
                                .retain(|&t| !suite.dominates_unchecked(&image, arena.image(t)));
                        }
                        Insertion::DistinctImages => {
                            if !seen[u.0].insert(image.clone()) {
                                continue;
                            }
                        }
                    }
                    let id = arena.push(Label {
                        node: u,
                        image,
                        pred_arc: Some(arc_idx),
                        pred_label: Some(label_id),
                        layer: k + 1,
                    });
                    next[u.0].push(id);
                    created += 1;
                }
            }
        }

        // Evictions only happen on insertion and the newest label always
        // survives, so "nothing created" is exactly "layers equal".
        let unchanged = created == 0;
        let stop = match termination {
            Termination::Bounded if unchanged && options.stop_at_fixed_point => {
                Some(StopReason::FixedPoint)
            }
            Termination::Bounded if k == bound => Some(if unchanged {
                StopReason::FixedPoint
            } else {
                StopReason::ReachedK
            }),
            Termination::Additive if unchanged => Some(StopReason::FixedPoint),
            Termination::Additive if k == bound => Some(StopReason::ImprovingCycleDetected),
            _ => None,
        };

        if let Some(stop_reason) = stop {
            if stop_reason == StopReason::ImprovingCycleDetected {
                let witness = extract_improving_cycle(graph, suite, &arc_values, &arena, k + 1)?;
                return Ok(SolveResult {
                    per_node: vec![Vec::new(); n],
                    iterations: k,
                    stop_reason,
                    bound,
                    witness: Some(witness),
                    layers,
                    arena,
                });
            }
            let per_node = finish(suite, &arena, &current, insertion)?;
            return Ok(SolveResult {
                per_node,
                iterations: k,
                stop_reason,
                bound,
                witness: None,
                layers,
                arena,
            });
        }

        current = next;
        k += 1;
    }
}

/// The extension guard: the arc may not start before the label arrives, plus
/// the waiting time at the node when the label is not the root.
fn guard_passes(
    graph: &TemporalGraph,
    label: &Label,
    arc: ArcIndex,
    waiting: Option<&WaitingTimes>,
) -> bool {
    let tau = &graph.arc(arc).tau;
    let arrival = &label.image.values()[0];
    match (waiting, label.pred_arc) {
        (Some(w), Some(_)) => ObjectiveValue::Finite(tau - w.at(label.node)) >= *arrival,
        _ => ObjectiveValue::Finite(tau.clone()) >= *arrival,
    }
}

fn finish(
    suite: &ObjectiveSuite,
    arena: &LabelArena,
    layer: &[Vec<LabelId>],
    insertion: Insertion,
) -> Result<Vec<Vec<Solution>>> {
    layer
        .iter()
        .map(|ids| {
            let mut kept: Vec<LabelId> = match insertion {
                Insertion::Dominance => ids.clone(),
                Insertion::DistinctImages => ids
                    .iter()
                    .copied()
                    .filter(|&id| {
                        !ids.iter()
                            .any(|&o| suite.dominates_unchecked(arena.image(o), arena.image(id)))
                    })
                    .collect(),
            };
            kept.sort_by(|&a, &b| suite.preference_order(arena.image(a), arena.image(b)));
            kept.into_iter()
                .map(|id| {
                    Ok(Solution {
                        image: arena.image(id).clone(),
                        path: reconstruct_path(arena, id)?,
                        label: id,
                    })
                })
                .collect()
        })
        .collect()
}

/// Takes labels created in the last iteration, finds a repeated arc on a
/// reconstructed path, and returns the cycle between its first two
/// traversals together with an objective it improves.
fn extract_improving_cycle(
    graph: &TemporalGraph,
    suite: &ObjectiveSuite,
    arc_values: &ArcValueTable,
    arena: &LabelArena,
    last_layer: usize,
) -> Result<ImprovingCycle> {
    for (id, label) in arena.iter().filter(|(_, l)| l.layer == last_layer) {
        let path = reconstruct_path(arena, id)?;
        let Some((first, second)) = first_repeated_arc(&path.arcs) else {
            continue;
        };
        let cycle = path.subpath(graph, first, second);
        for j in 1..suite.len() {
            let objective = suite.objective(j);
            let gain = cycle.arcs.iter().fold(objective.neutral(), |acc, &a| {
                objective.combine(&acc, &arc_values.get(a).values()[j])
            });
            if objective
                .direction()
                .compare(&gain, &objective.neutral())
                .is_lt()
            {
                return Ok(ImprovingCycle {
                    cycle,
                    objective: j,
                    gain,
                });
            }
        }
        let _ = label;
    }
    Err(Error::Internal(
        "iteration bound exhausted but no improving cycle could be extracted".into(),
    ))
}

/// Positions of the first arc that occurs twice: `(first, second)` occurrence.
fn first_repeated_arc(arcs: &[ArcIndex]) -> Option<(usize, usize)> {
    let mut first_seen = std::collections::HashMap::new();
    for (pos, arc) in arcs.iter().enumerate() {
        if let Some(&earlier) = first_seen.get(arc) {
            return Some((earlier, pos));
        }
        first_seen.insert(*arc, pos);
    }
    None
}

/// How the iteration bound for an unrestricted run is derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundMode {
    /// `m` when no zero-duration cycle is reachable from the source.
    NoZeroDurationCycle,
    /// `m` under positive minimum waiting times.
    WaitingTimes,
    /// `m * kappa`, given at most `kappa` distinct images per node.
    Kappa(u64),
    /// `m * prod(kappa_j)`, given at most `kappa_j` values of objective `j`.
    KappaPerObjective(Vec<u64>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IterationBound {
    Finite(usize),
    Unbounded,
}

pub fn iteration_bound(
    graph: &TemporalGraph,
    source: NodeIndex,
    mode: &BoundMode,
) -> Result<IterationBound> {
    graph.check_node(source)?;
    let m = graph.arc_count();
    let scaled = |kappa: u64| -> Result<IterationBound> {
        if kappa == 0 {
            return Err(Error::input("kappa must be at least 1"));
        }
        usize::try_from(kappa)
            .ok()
            .and_then(|k| k.checked_mul(m))
            .map(IterationBound::Finite)
            .ok_or_else(|| Error::input("iteration bound overflows"))
    };
    match mode {
        BoundMode::NoZeroDurationCycle => {
            Ok(match find_reachable_zero_duration_cycle(graph, source)? {
                None => IterationBound::Finite(m),
                Some(_) => IterationBound::Unbounded,
            })
        }
        BoundMode::WaitingTimes => Ok(IterationBound::Finite(m)),
        BoundMode::Kappa(kappa) => scaled(*kappa),
        BoundMode::KappaPerObjective(per) => {
            if per.is_empty() {
                return Err(Error::input("per-objective kappa list is empty"));
            }
            if per.contains(&0) {
                return Err(Error::input("kappa must be at least 1"));
            }
            let product = per
                .iter()
                .try_fold(1u64, |acc, &k| acc.checked_mul(k))
                .ok_or_else(|| Error::input("kappa product overflows"))?;
            scaled(product)
        }
    }
}
