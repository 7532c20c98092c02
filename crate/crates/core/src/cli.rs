//! Command-line driver: argument handling, solver dispatch, oracle
//! cross-check, fixture generation.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, ValueEnum};

use crate::error::{Error, Result};
use crate::fixtures;
use crate::io::{self, GraphDocument, ResultDocument};
use crate::labeling::{
    iteration_bound, solve_additive, solve_general, solve_isotonic, BoundMode, IterationBound,
    SolveOptions, SolveResult, StopReason,
};
use crate::objectives::{Image, ObjectiveSuite};
use crate::oracle::{k_nondominated_sets, EnumerationBudget};
use crate::temporal_graph::{
    find_reachable_zero_duration_cycle, path_duration, validate_path, NodeIndex, TemporalGraph,
    WaitingTimes,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNBOUNDED: i32 = 3;
pub const EXIT_ORACLE_MISMATCH: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Isotonic,
    General,
    Additive,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Isotonic => "isotonic",
            Algorithm::General => "general",
            Algorithm::Additive => "additive",
        }
    }
}

/// How the path-length bound is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Bounded,
    AutoNoZeroCycle,
    AutoWaiting,
    AutoKappa(u64),
    AutoKappaPerObjective(Vec<u64>),
}

impl FromStr for Mode {
    type Err = String;

    /// `bounded`, `auto_no_zero_cycle`, `auto_waiting`, `auto_kappa=N` or
    /// `auto_kappa=N1,N2,...` (one entry per objective).
    fn from_str(text: &str) -> std::result::Result<Self, String> {
        match text {
            "bounded" => return Ok(Mode::Bounded),
            "auto_no_zero_cycle" => return Ok(Mode::AutoNoZeroCycle),
            "auto_waiting" => return Ok(Mode::AutoWaiting),
            _ => {}
        }
        let Some(list) = text.strip_prefix("auto_kappa=") else {
            return Err(format!(
                "unknown mode '{text}' (expected bounded, auto_no_zero_cycle, auto_waiting, auto_kappa=N[,N...])"
            ));
        };
        let values = list
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<u64>()
                    .map_err(|_| format!("bad kappa '{v}' in '{text}'"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if values.contains(&0) {
            return Err("kappa values must be at least 1".into());
        }
        Ok(match values.as_slice() {
            [single] if !list.contains(',') => Mode::AutoKappa(*single),
            _ => Mode::AutoKappaPerObjective(values),
        })
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Bounded => f.write_str("bounded"),
            Mode::AutoNoZeroCycle => f.write_str("auto_no_zero_cycle"),
            Mode::AutoWaiting => f.write_str("auto_waiting"),
            Mode::AutoKappa(k) => write!(f, "auto_kappa={k}"),
            Mode::AutoKappaPerObjective(ks) => {
                let parts: Vec<String> = ks.iter().map(u64::to_string).collect();
                write!(f, "auto_kappa={}", parts.join(","))
            }
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mtsp",
    version,
    about = "Multiobjective temporal shortest paths with bounded path length"
)]
pub struct Cli {
    /// Graph document (JSON).
    #[arg(long, required_unless_present = "fixture")]
    pub graph: Option<PathBuf>,
    /// Objective configuration (JSON list; first entry must be earliest_arrival).
    #[arg(long, required_unless_present = "fixture")]
    pub objectives: Option<PathBuf>,
    /// Source node id.
    #[arg(long, required_unless_present = "fixture")]
    pub source: Option<String>,
    #[arg(long, value_enum, default_value = "general")]
    pub algorithm: Algorithm,
    /// Maximum path length for bounded mode.
    #[arg(long = "K")]
    pub k_bound: Option<usize>,
    /// bounded | auto_no_zero_cycle | auto_waiting | auto_kappa=N[,N...]
    #[arg(long)]
    pub mode: Option<Mode>,
    /// Minimum waiting times (JSON object node id -> rational string).
    #[arg(long)]
    pub waiting: Option<PathBuf>,
    /// Result file, or output directory with --fixture. Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cross-check the answer against brute-force enumeration.
    #[arg(long)]
    pub oracle_check: bool,
    /// Write a built-in fixture (example_2_1, example_2_2, additive_loop, category_chain).
    #[arg(long, conflicts_with_all = ["graph", "objectives", "source"])]
    pub fixture: Option<String>,
    /// Size parameter for example_2_1.
    #[arg(long)]
    pub k: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub graph_path: PathBuf,
    pub objectives_path: PathBuf,
    pub source: String,
    pub algorithm: Algorithm,
    pub mode: Mode,
    pub k_bound: Option<usize>,
    pub waiting_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub oracle_check: bool,
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub document: ResultDocument,
    /// Diagnostics for stderr.
    pub notes: Vec<String>,
}

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Unbounded(_) => EXIT_UNBOUNDED,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

/// Loads the inputs, solves, optionally cross-checks, and writes the result
/// document (also on an oracle mismatch).
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let graph = io::load_graph(&config.graph_path)?;
    let (_, suite) = io::load_objectives(&config.objectives_path)?;
    let source = graph.require_node(&config.source)?;
    let waiting = match &config.waiting_path {
        Some(path) => Some(io::load_waiting(&graph, path)?),
        None => None,
    };
    let mut notes = Vec::new();

    let options = SolveOptions {
        waiting: waiting.clone(),
        ..SolveOptions::default()
    };
    let result = match config.algorithm {
        Algorithm::Additive => {
            if config.k_bound.is_some() || config.mode != Mode::Bounded {
                notes.push(
                    "additive algorithm ignores --K and --mode; bound is the arc count".into(),
                );
            }
            solve_additive(&graph, &suite, source, &options)?
        }
        algorithm => {
            let bound = resolve_bound(&graph, &suite, source, config, waiting.is_some())?;
            if algorithm == Algorithm::Isotonic {
                solve_isotonic(&graph, &suite, source, bound, &options)?
            } else {
                solve_general(&graph, &suite, source, bound, &options)?
            }
        }
    };

    let document = ResultDocument::build(
        &graph,
        &suite,
        &config.source,
        config.algorithm.as_str(),
        &result,
    );
    let mut exit_code = EXIT_OK;
    if config.oracle_check {
        match cross_check(&graph, &suite, source, waiting.as_ref(), &result) {
            Ok(mismatches) if mismatches.is_empty() => notes.push("oracle check passed".into()),
            Ok(mismatches) => {
                exit_code = EXIT_ORACLE_MISMATCH;
                notes.extend(
                    mismatches
                        .into_iter()
                        .map(|m| format!("oracle mismatch: {m}")),
                );
            }
            Err(Error::Budget { max_paths }) => notes.push(format!(
                "oracle check skipped: more than {max_paths} paths to enumerate"
            )),
            Err(e) => return Err(e),
        }
    }

    let text = document.to_json();
    match &config.output_path {
        Some(path) => io::write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(RunOutcome {
        exit_code,
        document,
        notes,
    })
}

fn resolve_bound(
    graph: &TemporalGraph,
    suite: &ObjectiveSuite,
    source: NodeIndex,
    config: &RunConfig,
    has_waiting: bool,
) -> Result<usize> {
    let mode = match &config.mode {
        Mode::Bounded => {
            return config
                .k_bound
                .ok_or_else(|| Error::config("bounded mode needs --K (or pick an auto mode)"))
        }
        Mode::AutoNoZeroCycle => BoundMode::NoZeroDurationCycle,
        Mode::AutoWaiting => {
            if !has_waiting {
                return Err(Error::config("auto_waiting mode needs --waiting"));
            }
            BoundMode::WaitingTimes
        }
        Mode::AutoKappa(k) => BoundMode::Kappa(*k),
        Mode::AutoKappaPerObjective(ks) => {
            if ks.len() != suite.len() {
                return Err(Error::config(format!(
                    "auto_kappa lists {} values for {} objectives",
                    ks.len(),
                    suite.len()
                )));
            }
            BoundMode::KappaPerObjective(ks.clone())
        }
    };
    match iteration_bound(graph, source, &mode)? {
        IterationBound::Finite(k) => Ok(k),
        IterationBound::Unbounded => {
            let detail = match find_reachable_zero_duration_cycle(graph, source)? {
                Some(cycle) => format!(" (cycle {})", cycle.arc_ids(graph).join(" -> ")),
                None => String::new(),
            };
            Err(Error::Unbounded(format!(
                "a zero-duration cycle is reachable from '{}'{detail}; use --K, --waiting with auto_waiting, or auto_kappa",
                graph.node_id(source)
            )))
        }
    }
}

/// Compares the solver's answer against enumeration; returns one message per
/// disagreement.
pub fn cross_check(
    graph: &TemporalGraph,
    suite: &ObjectiveSuite,
    source: NodeIndex,
    waiting: Option<&WaitingTimes>,
    result: &SolveResult,
) -> Result<Vec<String>> {
    let mut mismatches = Vec::new();
    for (v, solutions) in result.per_node.iter().enumerate() {
        for s in solutions {
            if !validate_path(graph, &s.path, waiting)? {
                mismatches.push(format!(
                    "node {}: reported path is not valid",
                    graph.node_id(NodeIndex(v))
                ));
            } else if suite.path_image(graph, &s.path)? != s.image {
                mismatches.push(format!(
                    "node {}: path does not evaluate to {:?}",
                    graph.node_id(NodeIndex(v)),
                    s.image
                ));
            }
        }
    }
    if let Some(w) = &result.witness {
        let ok = validate_path(graph, &w.cycle, waiting)?
            && !w.cycle.is_empty()
            && w.cycle.end(graph) == w.cycle.start
            && path_duration(graph, &w.cycle)?.is_zero();
        if !ok {
            mismatches.push("witness is not a zero-duration cycle".into());
        }
        return Ok(mismatches);
    }
    let budget = EnumerationBudget::new(result.bound).with_waiting(waiting.cloned());
    let expected = k_nondominated_sets(graph, suite, source, &budget)?;
    for v in graph.nodes() {
        let got: Vec<Image> = result.per_node[v.0]
            .iter()
            .map(|s| s.image.clone())
            .collect();
        if got != expected[v.0] {
            mismatches.push(format!(
                "node {}: solver {:?}, enumeration {:?}",
                graph.node_id(v),
                got,
                expected[v.0]
            ));
        }
    }
    Ok(mismatches)
}

/// Writes `<name>.graph.json` and `<name>.objectives.json` into `dir`.
pub fn generate_fixture(name: &str, k: Option<u32>, dir: &Path) -> Result<Vec<PathBuf>> {
    if k.is_some() && name != "example_2_1" {
        return Err(Error::input(format!(
            "--k only applies to example_2_1, not {name}"
        )));
    }
    let fx = fixtures::by_name(name, k)?;
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let graph_path = dir.join(format!("{}.graph.json", fx.name));
    let objectives_path = dir.join(format!("{}.objectives.json", fx.name));
    io::write(&graph_path, &GraphDocument::from_graph(&fx.graph).to_json())?;
    io::write(&objectives_path, &io::objectives_to_json(&fx.objectives))?;
    Ok(vec![graph_path, objectives_path])
}

/// Runs the parsed command line and returns the process exit code.
pub fn execute(cli: Cli) -> i32 {
    if let Some(name) = &cli.fixture {
        let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
        return match generate_fixture(name, cli.k, &dir) {
            Ok(paths) => {
                for p in paths {
                    eprintln!("wrote {}", p.display());
                }
                EXIT_OK
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
        };
    }
    let mode = cli.mode.clone().unwrap_or(Mode::Bounded);
    let config = RunConfig {
        graph_path: cli.graph.expect("required by clap"),
        objectives_path: cli.objectives.expect("required by clap"),
        source: cli.source.expect("required by clap"),
        algorithm: cli.algorithm,
        mode,
        k_bound: cli.k_bound,
        waiting_path: cli.waiting,
        output_path: cli.out,
        oracle_check: cli.oracle_check,
    };
    match run(&config) {
        Ok(outcome) => {
            for note in &outcome.notes {
                eprintln!("{note}");
            }
            if outcome.document.metadata.stop_reason == StopReason::ImprovingCycleDetected.as_str()
            {
                eprintln!("improving cycle detected; no finite Pareto set exists");
            }
            outcome.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_parse() {
        assert_eq!("bounded".parse::<Mode>().unwrap(), Mode::Bounded);
        assert_eq!("auto_kappa=3".parse::<Mode>().unwrap(), Mode::AutoKappa(3));
        assert_eq!(
            "auto_kappa=1,2,3".parse::<Mode>().unwrap(),
            Mode::AutoKappaPerObjective(vec![1, 2, 3])
        );
        assert!("auto_kappa=0".parse::<Mode>().is_err());
        assert!("auto_kappa=".parse::<Mode>().is_err());
        assert!("fast".parse::<Mode>().is_err());
        for text in ["auto_waiting", "auto_no_zero_cycle", "auto_kappa=2,5"] {
            assert_eq!(text.parse::<Mode>().unwrap().to_string(), text);
        }
    }

    #[test]
    fn cli_flags() {
        let cli = Cli::try_parse_from([
            "mtsp",
            "--graph",
            "g.json",
            "--objectives",
            "o.json",
            "--source",
            "s",
            "--algorithm",
            "isotonic",
            "--K",
            "4",
            "--oracle-check",
        ])
        .unwrap();
        assert_eq!(cli.k_bound, Some(4));
        assert_eq!(cli.algorithm, Algorithm::Isotonic);
        assert!(cli.oracle_check);
        assert!(Cli::try_parse_from([
            "mtsp",
            "--fixture",
            "example_2_1",
            "--k",
            "3",
            "--out",
            "d"
        ])
        .is_ok());
        assert!(Cli::try_parse_from(["mtsp", "--graph", "g.json"]).is_err());
        assert!(Cli::try_parse_from(["mtsp", "--fixture", "x", "--graph", "g"]).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Unbounded("x".into())), EXIT_UNBOUNDED);
        assert_eq!(exit_code(&Error::config("x")), EXIT_INPUT);
        assert_eq!(exit_code(&Error::Internal("x".into())), EXIT_INTERNAL);
    }
}
