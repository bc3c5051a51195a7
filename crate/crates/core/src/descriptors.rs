//! The six persistence/Euler descriptor types and the zoo descriptors
//! `D_V` (first vertex), `D_0` (trivial) and `D_R` (indicator).
//!
//! Values are stored in a normalized form so that equality of descriptors is
//! structural equality: diagrams are sorted multisets tagged by degree and
//! step functions list only their change points.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::complex::{Point, SimplicialComplex};
use crate::error::Error;
use crate::filtration::{index_filter, lower_star, Direction, FilterAssignment, TieRule};
use crate::persistence::{self, SimplexSign};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DescriptorType {
    Pd,
    Apd,
    Bc,
    Abc,
    Ecc,
    Aecc,
    /// Coordinates of the lowest vertex (or vertices) and the vertex count.
    FirstVertex,
    /// Zero for every filtration.
    Trivial,
    /// Point-parameterized indicator of the geometric realization.
    Indicator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParameterKind {
    Direction,
    Point,
}

impl DescriptorType {
    pub const ALL: [DescriptorType; 9] = [
        DescriptorType::Pd,
        DescriptorType::Apd,
        DescriptorType::Bc,
        DescriptorType::Abc,
        DescriptorType::Ecc,
        DescriptorType::Aecc,
        DescriptorType::FirstVertex,
        DescriptorType::Trivial,
        DescriptorType::Indicator,
    ];

    pub fn parameter_kind(self) -> ParameterKind {
        match self {
            DescriptorType::Indicator => ParameterKind::Point,
            _ => ParameterKind::Direction,
        }
    }

    pub fn is_verbose(self) -> bool {
        matches!(self, DescriptorType::Apd | DescriptorType::Abc | DescriptorType::Aecc)
    }

    pub fn is_concise(self) -> bool {
        matches!(self, DescriptorType::Pd | DescriptorType::Bc | DescriptorType::Ecc)
    }

    pub fn name(self) -> &'static str {
        match self {
            DescriptorType::Pd => "pd",
            DescriptorType::Apd => "apd",
            DescriptorType::Bc => "bc",
            DescriptorType::Abc => "abc",
            DescriptorType::Ecc => "ecc",
            DescriptorType::Aecc => "aecc",
            DescriptorType::FirstVertex => "dv",
            DescriptorType::Trivial => "d0",
            DescriptorType::Indicator => "dr",
        }
    }
}

impl fmt::Display for DescriptorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DescriptorType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        DescriptorType::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Malformed(format!("unknown descriptor type {s:?}")))
    }
}

/// A filtration parameter: a direction for lower-star descriptors or a
/// point for the indicator descriptor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Parameter {
    Direction(Direction),
    Point(Point),
}

impl Parameter {
    pub fn kind(&self) -> ParameterKind {
        match self {
            Parameter::Direction(_) => ParameterKind::Direction,
            Parameter::Point(_) => ParameterKind::Point,
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parameter::Direction(d) => write!(f, "{d}"),
            Parameter::Point(p) => write!(f, "{p}"),
        }
    }
}

impl From<Direction> for Parameter {
    fn from(d: Direction) -> Self {
        Parameter::Direction(d)
    }
}

impl From<Point> for Parameter {
    fn from(p: Point) -> Self {
        Parameter::Point(p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Death {
    Finite(Rational),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagramPoint {
    pub degree: usize,
    pub birth: Rational,
    pub death: Death,
}

impl DiagramPoint {
    pub fn new(degree: usize, birth: Rational, death: Option<Rational>) -> Self {
        DiagramPoint {
            degree,
            birth,
            death: death.map_or(Death::Infinite, Death::Finite),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(&self.death, Death::Finite(d) if *d == self.birth)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Concise,
    Verbose,
}

/// A multiset of degree-tagged (birth, death) points, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceDiagram {
    flavor: Flavor,
    points: Vec<DiagramPoint>,
}

impl PersistenceDiagram {
    pub fn new(flavor: Flavor, mut points: Vec<DiagramPoint>) -> Result<Self, Error> {
        for p in &points {
            if let Death::Finite(d) = &p.death {
                if *d < p.birth {
                    return Err(Error::Malformed("diagram point dies before it is born".into()));
                }
            }
            if flavor == Flavor::Concise && p.is_diagonal() {
                return Err(Error::FlavorMismatch("concise diagrams have no diagonal points".into()));
            }
        }
        points.sort();
        Ok(PersistenceDiagram { flavor, points })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn points(&self) -> &[DiagramPoint] {
        &self.points
    }

    pub fn degree(&self, k: usize) -> impl Iterator<Item = &DiagramPoint> {
        self.points.iter().filter(move |p| p.degree == k)
    }
}

/// Piecewise-constant integer (vector) function of height, zero below the
/// first event. Only change points are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    width: usize,
    events: Vec<(Rational, Vec<i64>)>,
}

impl StepFunction {
    pub fn zero(width: usize) -> Self {
        StepFunction {
            width,
            events: Vec::new(),
        }
    }

    /// Builds a normalized function from `(height, value)` samples, which
    /// must be given in increasing height order.
    pub fn from_values(width: usize, samples: impl IntoIterator<Item = (Rational, Vec<i64>)>) -> Self {
        let mut events: Vec<(Rational, Vec<i64>)> = Vec::new();
        let zero = vec![0; width];
        for (h, v) in samples {
            debug_assert_eq!(v.len(), width);
            if let Some((last_h, _)) = events.last() {
                debug_assert!(*last_h < h, "samples must increase in height");
            }
            let current = events.last().map_or(&zero, |(_, v)| v);
            if *current != v {
                events.push((h, v));
            }
        }
        StepFunction { width, events }
    }

    /// Cumulative sum of per-height increments (in any order).
    pub fn from_increments(width: usize, increments: impl IntoIterator<Item = (Rational, Vec<i64>)>) -> Self {
        let mut by_height: BTreeMap<Rational, Vec<i64>> = BTreeMap::new();
        for (h, delta) in increments {
            let slot = by_height.entry(h).or_insert_with(|| vec![0; width]);
            for (s, d) in slot.iter_mut().zip(delta) {
                *s += d;
            }
        }
        let mut running = vec![0; width];
        StepFunction::from_values(
            width,
            by_height.into_iter().map(|(h, delta)| {
                for (r, d) in running.iter_mut().zip(delta) {
                    *r += d;
                }
                (h, running.clone())
            }),
        )
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn events(&self) -> &[(Rational, Vec<i64>)] {
        &self.events
    }

    pub fn is_zero(&self) -> bool {
        self.events.is_empty()
    }

    pub fn value_at(&self, t: &Rational) -> Vec<i64> {
        self.events
            .iter()
            .take_while(|(h, _)| h <= t)
            .last()
            .map_or_else(|| vec![0; self.width], |(_, v)| v.clone())
    }

    /// Pointwise map to a new width, renormalized.
    pub fn map(&self, width: usize, f: impl Fn(&[i64]) -> Vec<i64>) -> StepFunction {
        StepFunction::from_values(width, self.events.iter().map(|(h, v)| (h.clone(), f(v))))
    }

    /// Pointwise combination of several functions of the same width.
    pub fn combine(functions: &[&StepFunction], width: usize, f: impl Fn(&[Vec<i64>]) -> Vec<i64>) -> StepFunction {
        let mut heights: Vec<&Rational> = functions.iter().flat_map(|g| g.events.iter().map(|(h, _)| h)).collect();
        heights.sort();
        heights.dedup();
        StepFunction::from_values(
            width,
            heights.into_iter().map(|h| {
                let values: Vec<Vec<i64>> = functions.iter().map(|g| g.value_at(h)).collect();
                (h.clone(), f(&values))
            }),
        )
    }
}

/// Per-degree family of step functions; identically-zero degrees are omitted.
pub type DegreeFunctions = BTreeMap<usize, StepFunction>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescriptorValue {
    Pd(PersistenceDiagram),
    Apd(PersistenceDiagram),
    Bc(DegreeFunctions),
    Abc(DegreeFunctions),
    Ecc(StepFunction),
    Aecc(StepFunction),
    FirstVertex { lowest: Vec<Point>, vertex_count: usize },
    Trivial,
    Indicator(bool),
}

impl DescriptorValue {
    pub fn descriptor_type(&self) -> DescriptorType {
        match self {
            DescriptorValue::Pd(_) => DescriptorType::Pd,
            DescriptorValue::Apd(_) => DescriptorType::Apd,
            DescriptorValue::Bc(_) => DescriptorType::Bc,
            DescriptorValue::Abc(_) => DescriptorType::Abc,
            DescriptorValue::Ecc(_) => DescriptorType::Ecc,
            DescriptorValue::Aecc(_) => DescriptorType::Aecc,
            DescriptorValue::FirstVertex { .. } => DescriptorType::FirstVertex,
            DescriptorValue::Trivial => DescriptorType::Trivial,
            DescriptorValue::Indicator(_) => DescriptorType::Indicator,
        }
    }
}

/// Exact equality of two descriptors of the same type.
pub fn equal(a: &DescriptorValue, b: &DescriptorValue) -> Result<bool, Error> {
    if a.descriptor_type() != b.descriptor_type() {
        return Err(Error::TypeMismatch(
            a.descriptor_type().to_string(),
            b.descriptor_type().to_string(),
        ));
    }
    Ok(a == b)
}

pub fn compute(d: DescriptorType, k: &SimplicialComplex, p: &Parameter) -> Result<DescriptorValue, Error> {
    compute_with(d, k, p, TieRule::default())
}

/// Like [`compute`] but with an explicit tie rule for the index filter.
pub fn compute_with(
    d: DescriptorType,
    k: &SimplicialComplex,
    p: &Parameter,
    tie_rule: TieRule,
) -> Result<DescriptorValue, Error> {
    match (d.parameter_kind(), p) {
        (ParameterKind::Point, Parameter::Point(x)) => Ok(DescriptorValue::Indicator(k.point_membership(x)?)),
        (ParameterKind::Direction, Parameter::Direction(s)) => {
            let f = lower_star(k, s)?;
            Ok(match d {
                DescriptorType::Pd => DescriptorValue::Pd(diagram(&f, tie_rule, Flavor::Concise)?),
                DescriptorType::Apd => DescriptorValue::Apd(diagram(&f, tie_rule, Flavor::Verbose)?),
                DescriptorType::Bc => DescriptorValue::Bc(betti_functions(&f)),
                DescriptorType::Abc => DescriptorValue::Abc(verbose_betti_functions(&f, tie_rule)?),
                DescriptorType::Ecc => DescriptorValue::Ecc(euler_function(&f)),
                DescriptorType::Aecc => DescriptorValue::Aecc(verbose_euler_function(&f)),
                DescriptorType::FirstVertex => first_vertex(k, s),
                DescriptorType::Trivial => DescriptorValue::Trivial,
                DescriptorType::Indicator => unreachable!("indicator is point-parameterized"),
            })
        }
        (kind, _) => Err(Error::ParameterKind(format!("{d} expects a {kind:?} parameter"))),
    }
}

/// `{(p, D(K, p))}` for every parameter, in the given order.
pub fn descriptor_set(
    d: DescriptorType,
    k: &SimplicialComplex,
    params: &[Parameter],
) -> Result<Vec<(Parameter, DescriptorValue)>, Error> {
    params.iter().map(|p| Ok((p.clone(), compute(d, k, p)?))).collect()
}

fn diagram(f: &FilterAssignment<'_>, tie_rule: TieRule, flavor: Flavor) -> Result<PersistenceDiagram, Error> {
    let order = index_filter(f, tie_rule)?;
    let pairing = persistence::reduce(&order);
    let height = |i: usize| f.value(pairing.simplex(i)).clone();
    let points = pairing
        .pairs
        .iter()
        .map(|&(b, d)| DiagramPoint::new(pairing.simplex(b).dim(), height(b), Some(height(d))))
        .chain(
            pairing
                .essential
                .iter()
                .map(|&e| DiagramPoint::new(pairing.simplex(e).dim(), height(e), None)),
        )
        .filter(|p| flavor == Flavor::Verbose || !p.is_diagonal())
        .collect();
    PersistenceDiagram::new(flavor, points)
}

/// `BC_k(t) = β_k(F(t))`, evaluated with the cycle/boundary rank oracle at
/// every critical height.
fn betti_functions(f: &FilterAssignment<'_>) -> DegreeFunctions {
    let heights = f.heights();
    let top = f.complex().max_dim().unwrap_or(0);
    (0..=top)
        .map(|k| {
            let g = StepFunction::from_values(
                1,
                heights
                    .iter()
                    .map(|h| (h.clone(), vec![persistence::betti(f, h, k) as i64])),
            );
            (k, g)
        })
        .filter(|(_, g)| !g.is_zero())
        .collect()
}

/// `ABC_k(t)` = (positive k-simplices, negative (k+1)-simplices) with value ≤ t.
fn verbose_betti_functions(f: &FilterAssignment<'_>, tie_rule: TieRule) -> Result<DegreeFunctions, Error> {
    let order = index_filter(f, tie_rule)?;
    let pairing = persistence::reduce(&order);
    let mut increments: BTreeMap<usize, Vec<(Rational, Vec<i64>)>> = BTreeMap::new();
    for (i, sign) in pairing.signs().into_iter().enumerate() {
        let h = f.value(pairing.simplex(i)).clone();
        let (degree, delta) = match sign {
            SimplexSign::Positive { degree } => (degree, vec![1, 0]),
            SimplexSign::Negative { degree } => (degree, vec![0, 1]),
        };
        increments.entry(degree).or_default().push((h, delta));
    }
    Ok(increments
        .into_iter()
        .map(|(k, inc)| (k, StepFunction::from_increments(2, inc)))
        .filter(|(_, g)| !g.is_zero())
        .collect())
}

fn euler_function(f: &FilterAssignment<'_>) -> StepFunction {
    StepFunction::from_increments(
        1,
        f.values()
            .iter()
            .map(|(s, h)| (h.clone(), vec![if s.dim() % 2 == 0 { 1 } else { -1 }])),
    )
}

fn verbose_euler_function(f: &FilterAssignment<'_>) -> StepFunction {
    StepFunction::from_increments(
        2,
        f.values()
            .iter()
            .map(|(s, h)| (h.clone(), if s.dim() % 2 == 0 { vec![1, 0] } else { vec![0, 1] })),
    )
}

fn first_vertex(k: &SimplicialComplex, s: &Direction) -> DescriptorValue {
    let vertices = k.vertex_indices();
    let heights: Vec<(Rational, usize)> = vertices.iter().map(|&v| (s.height(k.point(v).coords()), v)).collect();
    let lowest_height = heights.iter().map(|(h, _)| h).min().cloned();
    let mut lowest: Vec<Point> = heights
        .iter()
        .filter(|(h, _)| Some(h) == lowest_height.as_ref())
        .map(|(_, v)| k.point(*v).clone())
        .collect();
    lowest.sort();
    DescriptorValue::FirstVertex {
        lowest,
        vertex_count: vertices.len(),
    }
}
