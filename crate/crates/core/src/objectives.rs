//! Algebraic objectives, images, and Pareto dominance.
//!
//! An objective is a totally ordered value set with an arc valuation, a combine
//! operator with a left-neutral element, and a direction. The image of a path
//! is the left fold of each objective's operator over the path's arc values.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::temporal_graph::{validate_path, ArcIndex, TemporalArc, TemporalGraph, TemporalPath};

/// An element of an objective's value set. The derived order places
/// `NegInf` below every rational and `PosInf` above.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObjectiveValue {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ObjectiveValue {
    pub fn zero() -> Self {
        ObjectiveValue::Finite(Rational::zero())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            ObjectiveValue::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ObjectiveValue::Finite(_))
    }

    /// Accepts the rational grammar plus `inf` and `-inf`.
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "inf" => Ok(ObjectiveValue::PosInf),
            "-inf" => Ok(ObjectiveValue::NegInf),
            _ => Rational::parse(text).map(ObjectiveValue::Finite),
        }
    }
}

impl fmt::Display for ObjectiveValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectiveValue::NegInf => f.write_str("-inf"),
            ObjectiveValue::Finite(r) => write!(f, "{r}"),
            ObjectiveValue::PosInf => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ObjectiveValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Rational> for ObjectiveValue {
    fn from(r: Rational) -> Self {
        ObjectiveValue::Finite(r)
    }
}

impl From<i64> for ObjectiveValue {
    fn from(v: i64) -> Self {
        ObjectiveValue::Finite(v.into())
    }
}

impl From<i32> for ObjectiveValue {
    fn from(v: i32) -> Self {
        ObjectiveValue::Finite(v.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Min,
    Max,
}

impl Direction {
    /// `Less` when `a` is strictly better than `b` in this direction.
    pub fn compare(self, a: &ObjectiveValue, b: &ObjectiveValue) -> Ordering {
        match self {
            Direction::Min => a.cmp(b),
            Direction::Max => b.cmp(a),
        }
    }

    pub fn at_least_as_good(self, a: &ObjectiveValue, b: &ObjectiveValue) -> bool {
        self.compare(a, b) != Ordering::Greater
    }
}

/// One objective `(M, <=, f, combine, neutral, direction)`.
///
/// Implementations must be pure: `combine` and `arc_value` may not depend on
/// hidden state, since solver runs share objectives across threads.
pub trait Objective: fmt::Debug + Send + Sync {
    fn name(&self) -> &str;
    fn direction(&self) -> Direction;
    /// Left-neutral element of [`Objective::combine`].
    fn neutral(&self) -> ObjectiveValue;
    fn combine(&self, a: &ObjectiveValue, b: &ObjectiveValue) -> ObjectiveValue;
    fn arc_value(&self, arc: &TemporalArc) -> Result<ObjectiveValue>;
    /// Membership in the value set `M`.
    fn in_domain(&self, value: &ObjectiveValue) -> bool;
    fn is_isotonic(&self) -> bool;
    fn is_monotone(&self) -> bool;
    fn builtin_kind(&self) -> Option<BuiltinKind> {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinKind {
    EarliestArrival,
    LatestStart,
    Additive,
    DecayMax,
    MinCombine,
    CategoryMax,
    LastIfNondecreasing,
}

impl BuiltinKind {
    pub const ALL: [BuiltinKind; 7] = [
        BuiltinKind::EarliestArrival,
        BuiltinKind::LatestStart,
        BuiltinKind::Additive,
        BuiltinKind::DecayMax,
        BuiltinKind::MinCombine,
        BuiltinKind::CategoryMax,
        BuiltinKind::LastIfNondecreasing,
    ];

    /// The fixed direction of the kind; `None` for additive, which takes one.
    pub fn fixed_direction(self) -> Option<Direction> {
        match self {
            BuiltinKind::EarliestArrival => Some(Direction::Min),
            BuiltinKind::LatestStart => Some(Direction::Max),
            BuiltinKind::Additive => None,
            BuiltinKind::DecayMax => Some(Direction::Min),
            BuiltinKind::MinCombine => Some(Direction::Min),
            BuiltinKind::CategoryMax => Some(Direction::Max),
            BuiltinKind::LastIfNondecreasing => Some(Direction::Min),
        }
    }

    /// Whether arc values come from the arc's `values` map rather than its times.
    pub fn reads_arc_values(self) -> bool {
        !matches!(
            self,
            BuiltinKind::EarliestArrival | BuiltinKind::LatestStart
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinKind::EarliestArrival => "earliest_arrival",
            BuiltinKind::LatestStart => "latest_start",
            BuiltinKind::Additive => "additive",
            BuiltinKind::DecayMax => "decay_max",
            BuiltinKind::MinCombine => "min_combine",
            BuiltinKind::CategoryMax => "category_max",
            BuiltinKind::LastIfNondecreasing => "last_if_nondecreasing",
        }
    }

    /// Small sample set of the kind's value domain used for law checks.
    pub fn law_samples(self) -> Vec<ObjectiveValue> {
        use ObjectiveValue::{Finite, NegInf, PosInf};
        let q = |n: i64, d: i64| Finite(Rational::new(n, d));
        match self {
            BuiltinKind::EarliestArrival => vec![q(0, 1), q(1, 2), q(1, 1), q(2, 1), q(3, 1)],
            BuiltinKind::LatestStart => vec![q(0, 1), q(1, 2), q(1, 1), q(2, 1), PosInf],
            BuiltinKind::Additive => vec![q(-2, 1), q(-1, 1), q(0, 1), q(1, 2), q(1, 1), q(2, 1)],
            BuiltinKind::DecayMax => vec![q(0, 1), q(1, 2), q(1, 1), q(2, 1), q(3, 1), q(81, 1)],
            BuiltinKind::MinCombine => vec![q(-2, 1), q(-1, 1), q(0, 1), q(1, 1), PosInf],
            BuiltinKind::CategoryMax => vec![q(0, 1), q(1, 1), q(2, 1), q(3, 1), q(5, 1)],
            BuiltinKind::LastIfNondecreasing => {
                vec![NegInf, q(-2, 1), q(-1, 1), q(0, 1), q(1, 1), q(2, 1)]
            }
        }
    }
}

impl fmt::Display for BuiltinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The built-in objectives.
///
/// | kind | values | combine | neutral | dir |
/// |---|---|---|---|---|
/// | earliest_arrival | Q>=0 | max | 0 | min |
/// | latest_start | Q>=0 and +inf | min | +inf | max |
/// | additive | Q | + | 0 | given |
/// | decay_max | Q>=0 | max(a-1, b) | 0 | min |
/// | min_combine | Q and +inf | min | +inf | min |
/// | category_max | N | b if a = 0 or a = b, else 0 | 0 | max |
/// | last_if_nondecreasing | Z and -inf | b if a <= b, else 0 | -inf | min |
///
/// Earliest arrival reads `tau + lambda` and latest start reads `tau` from the
/// arc; every other kind reads the arc's value stored under the objective name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltinObjective {
    name: String,
    kind: BuiltinKind,
    direction: Direction,
}

/// Builds a built-in objective. `direction` is required for additive and must
/// match the fixed direction for every other kind when supplied.
pub fn builtin(
    name: impl Into<String>,
    kind: BuiltinKind,
    direction: Option<Direction>,
) -> Result<BuiltinObjective> {
    let name = name.into();
    let direction = match (kind.fixed_direction(), direction) {
        (Some(fixed), None) => fixed,
        (Some(fixed), Some(given)) if fixed == given => fixed,
        (Some(fixed), Some(given)) => {
            return Err(Error::config(format!(
                "objective '{name}': {kind} is always {fixed:?}, got {given:?}"
            )))
        }
        (None, Some(given)) => given,
        (None, None) => {
            return Err(Error::config(format!(
                "objective '{name}': {kind} needs a direction"
            )))
        }
    };
    Ok(BuiltinObjective {
        name,
        kind,
        direction,
    })
}

impl BuiltinObjective {
    pub fn kind(&self) -> BuiltinKind {
        self.kind
    }
}

fn sub_one(a: &ObjectiveValue) -> ObjectiveValue {
    match a {
        ObjectiveValue::Finite(r) => ObjectiveValue::Finite(r - &Rational::one()),
        other => other.clone(),
    }
}

/// Extended addition; an infinite left operand absorbs, otherwise the right one.
fn extended_add(a: &ObjectiveValue, b: &ObjectiveValue) -> ObjectiveValue {
    match (a, b) {
        (ObjectiveValue::Finite(x), ObjectiveValue::Finite(y)) => ObjectiveValue::Finite(x + y),
        (ObjectiveValue::Finite(_), inf) => inf.clone(),
        (inf, _) => inf.clone(),
    }
}

impl Objective for BuiltinObjective {
    fn name(&self) -> &str {
        &self.name
    }

    fn direction(&self) -> Direction {
        self.direction
    }

    fn neutral(&self) -> ObjectiveValue {
        match self.kind {
            BuiltinKind::LatestStart | BuiltinKind::MinCombine => ObjectiveValue::PosInf,
            BuiltinKind::LastIfNondecreasing => ObjectiveValue::NegInf,
            _ => ObjectiveValue::zero(),
        }
    }

    fn combine(&self, a: &ObjectiveValue, b: &ObjectiveValue) -> ObjectiveValue {
        match self.kind {
            BuiltinKind::EarliestArrival => a.max(b).clone(),
            BuiltinKind::LatestStart | BuiltinKind::MinCombine => a.min(b).clone(),
            BuiltinKind::Additive => extended_add(a, b),
            BuiltinKind::DecayMax => sub_one(a).max(b.clone()),
            BuiltinKind::CategoryMax => {
                if a == &ObjectiveValue::zero() || a == b {
                    b.clone()
                } else {
                    ObjectiveValue::zero()
                }
            }
            BuiltinKind::LastIfNondecreasing => {
                if a <= b {
                    b.clone()
                } else {
                    ObjectiveValue::zero()
                }
            }
        }
    }

    fn arc_value(&self, arc: &TemporalArc) -> Result<ObjectiveValue> {
        match self.kind {
            BuiltinKind::EarliestArrival => Ok(ObjectiveValue::Finite(arc.arrival())),
            BuiltinKind::LatestStart => Ok(ObjectiveValue::Finite(arc.tau.clone())),
            _ => arc.values.get(&self.name).cloned().ok_or_else(|| {
                Error::config(format!(
                    "arc '{}' has no value for objective '{}'",
                    arc.id, self.name
                ))
            }),
        }
    }

    fn in_domain(&self, value: &ObjectiveValue) -> bool {
        use ObjectiveValue::{Finite, NegInf, PosInf};
        match (self.kind, value) {
            (BuiltinKind::EarliestArrival | BuiltinKind::DecayMax, Finite(r)) => !r.is_negative(),
            (BuiltinKind::LatestStart, Finite(r)) => !r.is_negative(),
            (BuiltinKind::LatestStart, PosInf) => true,
            (BuiltinKind::Additive, Finite(_)) => true,
            (BuiltinKind::MinCombine, Finite(_) | PosInf) => true,
            (BuiltinKind::CategoryMax, Finite(r)) => r.is_integer() && !r.is_negative(),
            (BuiltinKind::LastIfNondecreasing, Finite(r)) => r.is_integer(),
            (BuiltinKind::LastIfNondecreasing, NegInf) => true,
            _ => false,
        }
    }

    fn is_isotonic(&self) -> bool {
        !matches!(
            self.kind,
            BuiltinKind::CategoryMax | BuiltinKind::LastIfNondecreasing
        )
    }

    fn is_monotone(&self) -> bool {
        matches!(
            self.kind,
            BuiltinKind::EarliestArrival | BuiltinKind::LatestStart
        )
    }

    fn builtin_kind(&self) -> Option<BuiltinKind> {
        Some(self.kind)
    }
}

/// A vector of objective values aligned with an [`ObjectiveSuite`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Image(pub Vec<ObjectiveValue>);

impl Image {
    pub fn values(&self) -> &[ObjectiveValue] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Debug for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl<const N: usize> From<[i64; N]> for Image {
    fn from(values: [i64; N]) -> Self {
        Image(values.iter().map(|&v| v.into()).collect())
    }
}

/// Arc values of every objective, one image per arc, checked against each
/// objective's domain.
#[derive(Clone, Debug)]
pub struct ArcValueTable(Vec<Image>);

impl ArcValueTable {
    pub fn get(&self, arc: ArcIndex) -> &Image {
        &self.0[arc.0]
    }
}

/// Ordered objectives of one problem; position 0 is always earliest arrival.
#[derive(Clone, Debug)]
pub struct ObjectiveSuite {
    objectives: Vec<Arc<dyn Objective>>,
}

impl ObjectiveSuite {
    pub fn new(objectives: Vec<Arc<dyn Objective>>) -> Result<Self> {
        let Some(first) = objectives.first() else {
            return Err(Error::config("at least one objective is required"));
        };
        if first.builtin_kind() != Some(BuiltinKind::EarliestArrival) {
            return Err(Error::config(format!(
                "the first objective must be earliest_arrival, got '{}'",
                first.name()
            )));
        }
        let mut seen = HashSet::new();
        for obj in &objectives {
            if !seen.insert(obj.name()) {
                return Err(Error::config(format!(
                    "duplicate objective name '{}'",
                    obj.name()
                )));
            }
            if !obj.in_domain(&obj.neutral()) {
                return Err(Error::config(format!(
                    "neutral element of '{}' lies outside its value set",
                    obj.name()
                )));
            }
        }
        Ok(ObjectiveSuite { objectives })
    }

    /// Convenience constructor from built-ins.
    pub fn from_builtins(objectives: Vec<BuiltinObjective>) -> Result<Self> {
        Self::new(
            objectives
                .into_iter()
                .map(|o| Arc::new(o) as Arc<dyn Objective>)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.objectives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objectives.is_empty()
    }

    pub fn objectives(&self) -> &[Arc<dyn Objective>] {
        &self.objectives
    }

    pub fn objective(&self, j: usize) -> &dyn Objective {
        self.objectives[j].as_ref()
    }

    pub fn all_isotonic(&self) -> bool {
        self.objectives.iter().all(|o| o.is_isotonic())
    }

    /// Every objective after the first is rational additive.
    pub fn all_additive(&self) -> bool {
        self.objectives[1..]
            .iter()
            .all(|o| o.builtin_kind() == Some(BuiltinKind::Additive))
    }

    pub fn neutral_image(&self) -> Image {
        Image(self.objectives.iter().map(|o| o.neutral()).collect())
    }

    /// Componentwise `image ⊕ arc_values`.
    pub fn extend(&self, image: &Image, arc_values: &Image) -> Image {
        Image(
            self.objectives
                .iter()
                .zip(image.0.iter().zip(&arc_values.0))
                .map(|(o, (a, b))| o.combine(a, b))
                .collect(),
        )
    }

    pub fn arc_values(&self, graph: &TemporalGraph) -> Result<ArcValueTable> {
        let mut table = Vec::with_capacity(graph.arc_count());
        for arc in graph.arcs() {
            let mut values = Vec::with_capacity(self.len());
            for obj in &self.objectives {
                let value = obj.arc_value(arc)?;
                if !obj.in_domain(&value) {
                    return Err(Error::config(format!(
                        "arc '{}': value {value} is outside the value set of objective '{}'",
                        arc.id,
                        obj.name()
                    )));
                }
                values.push(value);
            }
            table.push(Image(values));
        }
        Ok(ArcValueTable(table))
    }

    fn check_len(&self, image: &Image) -> Result<()> {
        if image.len() == self.len() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "image has {} components, suite has {} objectives",
                image.len(),
                self.len()
            )))
        }
    }

    pub(crate) fn weakly_dominates_unchecked(&self, a: &Image, b: &Image) -> bool {
        self.objectives
            .iter()
            .zip(a.0.iter().zip(&b.0))
            .all(|(o, (x, y))| o.direction().at_least_as_good(x, y))
    }

    pub(crate) fn dominates_unchecked(&self, a: &Image, b: &Image) -> bool {
        a != b && self.weakly_dominates_unchecked(a, b)
    }

    /// `a` is at least as good as `b` in every objective.
    pub fn weakly_dominates(&self, a: &Image, b: &Image) -> Result<bool> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.weakly_dominates_unchecked(a, b))
    }

    pub fn dominates(&self, a: &Image, b: &Image) -> Result<bool> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.dominates_unchecked(a, b))
    }

    /// Lexicographic order with every component compared "better first".
    pub fn preference_order(&self, a: &Image, b: &Image) -> Ordering {
        self.objectives
            .iter()
            .zip(a.0.iter().zip(&b.0))
            .map(|(o, (x, y))| o.direction().compare(x, y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// The nondominated, deduplicated subset of `images` in
    /// [`ObjectiveSuite::preference_order`].
    pub fn nondominated_filter(&self, images: &[Image]) -> Vec<Image> {
        let mut sorted: Vec<&Image> = images.iter().collect();
        sorted.sort_by(|a, b| self.preference_order(a, b));
        sorted.dedup();
        // A dominator always precedes what it dominates in preference order.
        let mut kept: Vec<Image> = Vec::new();
        for image in sorted {
            if !kept
                .iter()
                .any(|k| self.weakly_dominates_unchecked(k, image))
            {
                kept.push(image.clone());
            }
        }
        kept
    }

    /// Left fold of every objective over the path's arc values.
    pub fn path_image(&self, graph: &TemporalGraph, path: &TemporalPath) -> Result<Image> {
        if !validate_path(graph, path, None)? {
            return Err(Error::input("path is not a valid temporal path"));
        }
        let mut image = self.neutral_image();
        for &a in &path.arcs {
            let arc = graph.arc(a);
            let values = Image(
                self.objectives
                    .iter()
                    .map(|o| o.arc_value(arc))
                    .collect::<Result<_>>()?,
            );
            image = self.extend(&image, &values);
        }
        Ok(image)
    }
}

/// Outcome of checking an objective's algebraic laws on sample values.
///
/// Each list holds every counterexample found over the exhaustive sample
/// tuples, in sample order.
#[derive(Clone, Debug, Default)]
pub struct LawReport {
    pub objective: String,
    pub declared_isotonic: bool,
    pub declared_monotone: bool,
    /// `b` with `neutral ⊕ b != b`.
    pub neutrality_failures: Vec<ObjectiveValue>,
    /// `(a, b, c)` with `(a ⊕ b) ⊕ c != a ⊕ (b ⊕ c)`.
    pub associativity_failures: Vec<(ObjectiveValue, ObjectiveValue, ObjectiveValue)>,
    /// `(a, a', b)` with `a <= a'` but `a ⊕ b > a' ⊕ b`.
    pub isotonicity_failures: Vec<(ObjectiveValue, ObjectiveValue, ObjectiveValue)>,
    /// `(a, b)` where `a ⊕ b` is strictly better than `a`.
    pub monotonicity_failures: Vec<(ObjectiveValue, ObjectiveValue)>,
    /// Combine results outside the value set.
    pub domain_failures: Vec<(ObjectiveValue, ObjectiveValue)>,
}

impl LawReport {
    pub fn left_neutral(&self) -> bool {
        self.neutrality_failures.is_empty()
    }

    pub fn associative(&self) -> bool {
        self.associativity_failures.is_empty()
    }

    pub fn isotonic_on_samples(&self) -> bool {
        self.isotonicity_failures.is_empty()
    }

    pub fn monotone_on_samples(&self) -> bool {
        self.monotonicity_failures.is_empty()
    }

    pub fn closed(&self) -> bool {
        self.domain_failures.is_empty()
    }

    /// Sample behavior agrees with both declared flags: a declared law has no
    /// counterexample and an undeclared one has at least one.
    pub fn flags_consistent(&self) -> bool {
        self.declared_isotonic == self.isotonic_on_samples()
            && self.declared_monotone == self.monotone_on_samples()
    }
}

/// Checks neutrality, associativity, closure, and the isotonic/monotone laws
/// over every tuple drawn from `samples`. Samples outside the domain are skipped.
pub fn verify_laws(objective: &dyn Objective, samples: &[ObjectiveValue]) -> LawReport {
    let samples: Vec<&ObjectiveValue> = samples.iter().filter(|s| objective.in_domain(s)).collect();
    let op = |a: &ObjectiveValue, b: &ObjectiveValue| objective.combine(a, b);
    let neutral = objective.neutral();
    let dir = objective.direction();
    let mut report = LawReport {
        objective: objective.name().to_owned(),
        declared_isotonic: objective.is_isotonic(),
        declared_monotone: objective.is_monotone(),
        ..LawReport::default()
    };

    for &b in &samples {
        if &op(&neutral, b) != b {
            report.neutrality_failures.push(b.clone());
        }
    }
    for &a in &samples {
        for &b in &samples {
            let ab = op(a, b);
            if !objective.in_domain(&ab) {
                report.domain_failures.push((a.clone(), b.clone()));
            }
            if dir.compare(&ab, a) == Ordering::Less {
                report.monotonicity_failures.push((a.clone(), b.clone()));
            }
            for &c in &samples {
                if op(&ab, c) != op(a, &op(b, c)) {
                    report
                        .associativity_failures
                        .push((a.clone(), b.clone(), c.clone()));
                }
            }
        }
    }
    for &a in &samples {
        for &a2 in samples.iter().filter(|&&a2| a <= a2) {
            for &b in &samples {
                if op(a, b) > op(a2, b) {
                    report
                        .isotonicity_failures
                        .push((a.clone(), a2.clone(), b.clone()));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn v(x: i64) -> ObjectiveValue {
        x.into()
    }

    fn make(kind: BuiltinKind) -> BuiltinObjective {
        builtin("x", kind, kind.fixed_direction().or(Some(Direction::Min))).unwrap()
    }

    #[test]
    fn value_order_puts_infinities_outside() {
        assert!(ObjectiveValue::NegInf < v(-1_000_000));
        assert!(v(1_000_000) < ObjectiveValue::PosInf);
        assert_eq!(
            ObjectiveValue::parse("-inf").unwrap(),
            ObjectiveValue::NegInf
        );
        assert_eq!(ObjectiveValue::parse("inf").unwrap().to_string(), "inf");
        assert!(ObjectiveValue::parse("+inf").is_err());
    }

    #[test]
    fn builtin_combines() {
        assert_eq!(make(BuiltinKind::DecayMax).combine(&v(81), &v(0)), v(80));
        let ea = make(BuiltinKind::EarliestArrival);
        assert_eq!(ea.combine(&ea.neutral(), &v(7)), v(7));
        assert_eq!(make(BuiltinKind::CategoryMax).combine(&v(3), &v(5)), v(0));
        assert_eq!(make(BuiltinKind::CategoryMax).combine(&v(0), &v(5)), v(5));
        assert_eq!(make(BuiltinKind::CategoryMax).combine(&v(5), &v(5)), v(5));
        let last = make(BuiltinKind::LastIfNondecreasing);
        assert_eq!(last.combine(&v(2), &v(1)), v(0));
        assert_eq!(last.combine(&ObjectiveValue::NegInf, &v(-3)), v(-3));
        let min = make(BuiltinKind::MinCombine);
        assert_eq!(min.combine(&ObjectiveValue::PosInf, &v(-1)), v(-1));
    }

    #[test]
    fn builtin_direction_rules() {
        assert!(builtin("c", BuiltinKind::Additive, None).is_err());
        assert!(builtin("c", BuiltinKind::Additive, Some(Direction::Max)).is_ok());
        assert!(builtin("t", BuiltinKind::LatestStart, Some(Direction::Min)).is_err());
        assert_eq!(
            builtin("t", BuiltinKind::LatestStart, None)
                .unwrap()
                .direction(),
            Direction::Max
        );
    }

    #[test]
    fn domains() {
        assert!(!make(BuiltinKind::Additive).in_domain(&ObjectiveValue::PosInf));
        assert!(!make(BuiltinKind::DecayMax).in_domain(&v(-1)));
        assert!(!make(BuiltinKind::CategoryMax).in_domain(&Rational::new(1, 2).into()));
        assert!(make(BuiltinKind::LastIfNondecreasing).in_domain(&ObjectiveValue::NegInf));
        assert!(!make(BuiltinKind::LastIfNondecreasing).in_domain(&ObjectiveValue::PosInf));
    }

    #[test]
    fn suite_requires_earliest_arrival_first() {
        let cost = builtin("cost", BuiltinKind::Additive, Some(Direction::Min)).unwrap();
        let ea = builtin("arrival", BuiltinKind::EarliestArrival, None).unwrap();
        assert!(ObjectiveSuite::from_builtins(vec![cost.clone(), ea.clone()]).is_err());
        assert!(ObjectiveSuite::from_builtins(vec![]).is_err());
        assert!(
            ObjectiveSuite::from_builtins(vec![ea.clone(), cost.clone(), cost.clone()]).is_err()
        );
        let suite = ObjectiveSuite::from_builtins(vec![ea, cost]).unwrap();
        assert!(suite.all_isotonic());
        assert!(suite.all_additive());
    }

    #[test]
    fn arc_values_outside_domain_are_rejected() {
        let g = TemporalGraph::builder()
            .arc("r", "s", "v", 0, 0)
            .value("cost", ObjectiveValue::PosInf)
            .build()
            .unwrap();
        let suite = ObjectiveSuite::from_builtins(vec![
            builtin("arrival", BuiltinKind::EarliestArrival, None).unwrap(),
            builtin("cost", BuiltinKind::Additive, Some(Direction::Min)).unwrap(),
        ])
        .unwrap();
        assert!(matches!(suite.arc_values(&g), Err(Error::Config(_))));
        let missing = TemporalGraph::builder()
            .arc("r", "s", "v", 0, 0)
            .build()
            .unwrap();
        assert!(suite.arc_values(&missing).is_err());
    }

    #[test]
    fn example_2_2_images() {
        let fx = fixtures::example_2_2();
        let (g, suite) = (&fx.graph, &fx.suite);
        let p = |ids: &[&str]| {
            TemporalPath::new(
                g.node("s").unwrap(),
                ids.iter().map(|id| g.arc_by_id(id).unwrap()).collect(),
            )
        };
        let inf = ObjectiveValue::PosInf;
        assert_eq!(
            suite.path_image(g, &p(&[])).unwrap(),
            Image(vec![v(0), inf.clone(), inf.clone()])
        );
        assert_eq!(
            suite.path_image(g, &p(&["r1", "r2"])).unwrap(),
            Image::from([0, -1, 0])
        );
        assert_eq!(
            suite.path_image(g, &p(&["r1", "r3"])).unwrap(),
            Image::from([0, 0, -1])
        );
        assert_eq!(
            suite.path_image(g, &p(&["r1", "r2", "r1", "r3"])).unwrap(),
            Image::from([0, -1, -1])
        );
        assert!(suite.path_image(g, &p(&["r2"])).is_err());
    }

    #[test]
    fn dominance_examples() {
        let suite = fixtures::example_2_2().suite;
        let a = Image::from([0, -1, -1]);
        let b = Image::from([0, -1, 0]);
        assert!(suite.weakly_dominates(&a, &a).unwrap());
        assert!(!suite.dominates(&a, &a).unwrap());
        assert!(suite.dominates(&a, &b).unwrap());
        assert!(!suite.dominates(&b, &a).unwrap());
        assert!(suite.weakly_dominates(&a, &Image::from([0, 1])).is_err());

        let two = ObjectiveSuite::from_builtins(vec![
            builtin("arrival", BuiltinKind::EarliestArrival, None).unwrap(),
            builtin("c", BuiltinKind::Additive, Some(Direction::Min)).unwrap(),
        ])
        .unwrap();
        let x = Image::from([1, 0]);
        let y = Image::from([0, 1]);
        assert!(!two.dominates(&x, &y).unwrap() && !two.dominates(&y, &x).unwrap());
        assert_eq!(two.nondominated_filter(&[x.clone(), y.clone()]), vec![y, x]);
    }

    #[test]
    fn max_direction_dominance() {
        let suite = ObjectiveSuite::from_builtins(vec![
            builtin("arrival", BuiltinKind::EarliestArrival, None).unwrap(),
            builtin("start", BuiltinKind::LatestStart, None).unwrap(),
        ])
        .unwrap();
        assert!(suite
            .dominates(&Image::from([1, 5]), &Image::from([1, 3]))
            .unwrap());
    }

    #[test]
    fn filter_example_2_2() {
        let suite = fixtures::example_2_2().suite;
        let inf = ObjectiveValue::PosInf;
        let images = vec![
            Image::from([0, -1, 0]),
            Image::from([0, 0, -1]),
            Image::from([0, -1, -1]),
            Image(vec![v(0), inf.clone(), inf]),
        ];
        assert_eq!(
            suite.nondominated_filter(&images),
            vec![Image::from([0, -1, -1])]
        );
        let single = vec![Image::from([0, 3, 3])];
        assert_eq!(suite.nondominated_filter(&single), single);
    }

    #[test]
    fn decay_max_laws() {
        let obj = make(BuiltinKind::DecayMax);
        let report = verify_laws(&obj, &[v(0), v(1), v(81)]);
        assert!(report.left_neutral());
        assert!(report.isotonic_on_samples());
        assert!(report.monotonicity_failures.contains(&(v(81), v(0))));
        assert!(report.flags_consistent());
        // (81 ⊕ 0) ⊕ 0 = 79 but 81 ⊕ (0 ⊕ 0) = 80
        assert!(report.associativity_failures.contains(&(v(81), v(0), v(0))));
    }

    #[test]
    fn additive_laws() {
        let obj = builtin("c", BuiltinKind::Additive, Some(Direction::Min)).unwrap();
        let report = verify_laws(&obj, &BuiltinKind::Additive.law_samples());
        assert!(report.left_neutral() && report.associative() && report.isotonic_on_samples());
        assert!(!report.monotone_on_samples());
        assert!(report.flags_consistent());
    }

    #[test]
    fn category_max_isotonicity_counterexample() {
        let obj = make(BuiltinKind::CategoryMax);
        let report = verify_laws(&obj, &BuiltinKind::CategoryMax.law_samples());
        assert!(report.isotonicity_failures.contains(&(v(2), v(3), v(2))));
        assert!(report.flags_consistent());
    }

    #[test]
    fn out_of_domain_samples_are_skipped() {
        let obj = make(BuiltinKind::DecayMax);
        let report = verify_laws(&obj, &[v(-5), ObjectiveValue::NegInf, v(0)]);
        assert!(report.closed() && report.left_neutral());
    }

    fn image3() -> impl Strategy<Value = Image> {
        proptest::collection::vec(-2i64..3, 3)
            .prop_map(|v| Image(v.into_iter().map(Into::into).collect()))
    }

    fn mixed_suite() -> ObjectiveSuite {
        ObjectiveSuite::from_builtins(vec![
            builtin("arrival", BuiltinKind::EarliestArrival, None).unwrap(),
            builtin("c", BuiltinKind::Additive, Some(Direction::Max)).unwrap(),
            builtin("d", BuiltinKind::Additive, Some(Direction::Min)).unwrap(),
        ])
        .unwrap()
    }

    proptest! {
        #[test]
        fn dominance_is_a_preorder(a in image3(), b in image3(), c in image3()) {
            let s = mixed_suite();
            prop_assert!(s.weakly_dominates_unchecked(&a, &a));
            prop_assert!(!s.dominates_unchecked(&a, &a));
            if s.weakly_dominates_unchecked(&a, &b) && s.weakly_dominates_unchecked(&b, &c) {
                prop_assert!(s.weakly_dominates_unchecked(&a, &c));
            }
            if s.dominates_unchecked(&a, &b) && s.dominates_unchecked(&b, &c) {
                prop_assert!(s.dominates_unchecked(&a, &c));
            }
        }

        #[test]
        fn filter_properties(images in proptest::collection::vec(image3(), 0..12)) {
            let s = mixed_suite();
            let kept = s.nondominated_filter(&images);
            for x in &kept {
                prop_assert!(!kept.iter().any(|y| s.dominates_unchecked(y, x)));
            }
            for x in &images {
                prop_assert!(kept.iter().any(|y| s.weakly_dominates_unchecked(y, x)));
            }
            prop_assert_eq!(s.nondominated_filter(&kept), kept.clone());
            let unique: HashSet<&Image> = kept.iter().collect();
            prop_assert_eq!(unique.len(), kept.len());
        }
    }
}
