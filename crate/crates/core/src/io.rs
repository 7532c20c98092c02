//! JSON documents: graphs, objective configurations, waiting times, results.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::SolveResult;
use crate::objectives::{
    builtin, BuiltinKind, BuiltinObjective, Direction, ObjectiveSuite, ObjectiveValue,
};
use crate::rational::Rational;
use crate::temporal_graph::{TemporalGraph, WaitingTimes};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<String>>,
    pub arcs: Vec<ArcDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcDocument {
    pub id: String,
    pub from: String,
    pub to: String,
    pub tau: String,
    pub lambda: String,
    #[serde(default)]
    pub values: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveDocument {
    pub name: String,
    pub kind: BuiltinKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Direction>,
    #[serde(default, skip_serializing_if = "serde_json::Map::is_empty")]
    pub params: serde_json::Map<String, serde_json::Value>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn from_json<T: for<'de> Deserialize<'de>>(context: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(context, e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    text
}

fn rational_field(text: &str, field: String) -> Result<Rational> {
    Rational::parse(text).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(field, message),
        other => other,
    })
}

impl GraphDocument {
    pub fn parse(text: &str) -> Result<Self> {
        from_json("graph document", text)
    }

    pub fn to_graph(&self) -> Result<TemporalGraph> {
        let mut b = TemporalGraph::builder();
        if let Some(nodes) = &self.nodes {
            for n in nodes {
                b = b.node(n.clone());
            }
            b = b.strict_nodes(true);
        }
        for (i, arc) in self.arcs.iter().enumerate() {
            let tau = rational_field(&arc.tau, format!("arcs[{i}].tau"))?;
            let lambda = rational_field(&arc.lambda, format!("arcs[{i}].lambda"))?;
            b = b.arc(
                arc.id.clone(),
                arc.from.clone(),
                arc.to.clone(),
                tau,
                lambda,
            );
            for (name, value) in &arc.values {
                let value = ObjectiveValue::parse(value).map_err(|e| match e {
                    Error::Parse { message, .. } => {
                        Error::parse(format!("arcs[{i}].values.{name}"), message)
                    }
                    other => other,
                })?;
                b = b.value(name.clone(), value);
            }
        }
        b.build()
    }

    pub fn from_graph(graph: &TemporalGraph) -> Self {
        GraphDocument {
            nodes: Some(graph.node_ids().to_vec()),
            arcs: graph
                .arcs()
                .iter()
                .map(|a| ArcDocument {
                    id: a.id.clone(),
                    from: graph.node_id(a.from).to_owned(),
                    to: graph.node_id(a.to).to_owned(),
                    tau: a.tau.to_string(),
                    lambda: a.lambda.to_string(),
                    values: a
                        .values
                        .iter()
                        .map(|(k, v)| (k.clone(), v.to_string()))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

pub fn load_graph(path: &Path) -> Result<TemporalGraph> {
    GraphDocument::parse(&read(path)?)
        .and_then(|doc| doc.to_graph())
        .map_err(|e| in_file(e, path))
}

fn in_file(error: Error, path: &Path) -> Error {
    match error {
        Error::Parse { context, message } => Error::Parse {
            context: format!("{} ({context})", path.display()),
            message,
        },
        other => other,
    }
}

impl ObjectiveDocument {
    pub fn from_builtin(objective: &BuiltinObjective) -> Self {
        use crate::objectives::Objective;
        ObjectiveDocument {
            name: objective.name().to_owned(),
            kind: objective.kind(),
            direction: match objective.kind().fixed_direction() {
                Some(_) => None,
                None => Some(objective.direction()),
            },
            params: serde_json::Map::new(),
        }
    }

    pub fn to_builtin(&self) -> Result<BuiltinObjective> {
        if !self.params.is_empty() {
            return Err(Error::config(format!(
                "objective '{}': built-in {} takes no params",
                self.name,
                self.kind.as_str()
            )));
        }
        builtin(&self.name, self.kind, self.direction)
    }
}

pub fn parse_objectives(text: &str) -> Result<Vec<ObjectiveDocument>> {
    from_json("objectives document", text)
}

/// Builds the suite, checking the order and direction rules.
pub fn objectives_to_suite(
    docs: &[ObjectiveDocument],
) -> Result<(Vec<BuiltinObjective>, ObjectiveSuite)> {
    let builtins = docs
        .iter()
        .map(ObjectiveDocument::to_builtin)
        .collect::<Result<Vec<_>>>()?;
    let suite = ObjectiveSuite::from_builtins(builtins.clone())?;
    Ok((builtins, suite))
}

pub fn objectives_to_json(objectives: &[BuiltinObjective]) -> String {
    to_json(
        &objectives
            .iter()
            .map(ObjectiveDocument::from_builtin)
            .collect::<Vec<_>>(),
    )
}

pub fn load_objectives(path: &Path) -> Result<(Vec<BuiltinObjective>, ObjectiveSuite)> {
    parse_objectives(&read(path)?)
        .and_then(|docs| objectives_to_suite(&docs))
        .map_err(|e| in_file(e, path))
}

/// Waiting times: a JSON object from node id to a positive rational string.
pub fn parse_waiting(graph: &TemporalGraph, text: &str) -> Result<WaitingTimes> {
    let raw: BTreeMap<String, String> = from_json("waiting-times document", text)?;
    let mut parsed = BTreeMap::new();
    for (node, value) in raw {
        let value = rational_field(&value, format!("waiting.{node}"))?;
        parsed.insert(node, value);
    }
    WaitingTimes::new(graph, &parsed)
}

pub fn load_waiting(graph: &TemporalGraph, path: &Path) -> Result<WaitingTimes> {
    parse_waiting(graph, &read(path)?).map_err(|e| in_file(e, path))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultEntry {
    pub image: Vec<String>,
    pub path: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultMetadata {
    pub algorithm: String,
    pub source: String,
    pub objectives: Vec<String>,
    pub iterations: usize,
    pub stop_reason: String,
    #[serde(rename = "effective_K")]
    pub effective_k: usize,
    /// "nondominated" after a fixed point, "K-nondominated" otherwise, and
    /// "improving_cycle" when the additive solver found one.
    pub guarantee: String,
    pub witness_cycle: Option<Vec<String>>,
    pub witness_objective: Option<String>,
}

/// Per-node results keyed by node id, in node order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub results: IndexMap<String, Vec<ResultEntry>>,
    pub metadata: ResultMetadata,
}

impl ResultDocument {
    pub fn build(
        graph: &TemporalGraph,
        suite: &ObjectiveSuite,
        source: &str,
        algorithm: &str,
        result: &SolveResult,
    ) -> Self {
        use crate::labeling::StopReason;
        let results = graph
            .nodes()
            .map(|v| {
                let entries = result.per_node[v.0]
                    .iter()
                    .map(|s| ResultEntry {
                        image: s.image.to_strings(),
                        path: s
                            .path
                            .arc_ids(graph)
                            .into_iter()
                            .map(str::to_owned)
                            .collect(),
                    })
                    .collect();
                (graph.node_id(v).to_owned(), entries)
            })
            .collect();
        let guarantee = match result.stop_reason {
            StopReason::FixedPoint => "nondominated",
            StopReason::ReachedK => "K-nondominated",
            StopReason::ImprovingCycleDetected => "improving_cycle",
        };
        ResultDocument {
            results,
            metadata: ResultMetadata {
                algorithm: algorithm.to_owned(),
                source: source.to_owned(),
                objectives: suite
                    .objectives()
                    .iter()
                    .map(|o| o.name().to_owned())
                    .collect(),
                iterations: result.iterations,
                stop_reason: result.stop_reason.as_str().to_owned(),
                effective_k: result.bound,
                guarantee: guarantee.to_owned(),
                witness_cycle: result.witness.as_ref().map(|w| {
                    w.cycle
                        .arc_ids(graph)
                        .into_iter()
                        .map(str::to_owned)
                        .collect()
                }),
                witness_objective: result
                    .witness
                    .as_ref()
                    .map(|w| suite.objective(w.objective).name().to_owned()),
            },
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        from_json("result document", text)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}
