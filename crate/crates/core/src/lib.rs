//! Multiobjective shortest paths in temporal graphs with a bound on path length.
//!
//! A [`TemporalGraph`] carries arcs with a start time, a traversal time and
//! per-objective values. An [`ObjectiveSuite`] folds those values along a path
//! into an [`Image`]; the solvers in [`labeling`] return, for every node, the
//! nondominated images over paths with at most `K` arcs together with one
//! witness path per image. [`oracle`] provides brute-force reference answers.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod labeling;
pub mod objectives;
pub mod oracle;
pub mod rational;
pub mod temporal_graph;

pub use error::{Error, Result};
pub use labeling::{
    iteration_bound, reconstruct_path, solve_additive, solve_general, solve_isotonic, BoundMode,
    ImprovingCycle, IterationBound, Solution, SolveOptions, SolveResult, StopReason,
};
pub use objectives::{
    builtin, BuiltinKind, BuiltinObjective, Direction, Image, Objective, ObjectiveSuite,
    ObjectiveValue,
};
pub use rational::Rational;
pub use temporal_graph::{
    ArcIndex, NodeIndex, TemporalArc, TemporalGraph, TemporalPath, WaitingTimes,
};
