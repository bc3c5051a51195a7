//! Immersed simplicial complexes with exact rational vertex coordinates.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::linalg;
use crate::rational::{self, Rational};

/// Default cap on the number of candidate complexes an enumeration may visit.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rational::format).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A simplex as a sorted set of vertex indices.
///
/// Simplices order by dimension first and then lexicographically, which is
/// also the default tie-breaking order for index filters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut vertices: Vec<usize>) -> Result<Self, Error> {
        if vertices.is_empty() {
            return Err(Error::InvalidSimplex("empty vertex list".into()));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex(format!("repeated vertex in {vertices:?}")));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(vec![v])
    }

    pub fn edge(a: usize, b: usize) -> Self {
        Simplex::new(vec![a, b]).expect("edge endpoints must differ")
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-one faces; empty for a vertex.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|skip| {
                Simplex(
                    self.0
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect(),
                )
            })
            .collect()
    }

    /// All nonempty faces including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u32..(1 << n))
            .map(|mask| Simplex((0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i]).collect()))
            .collect()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// One problem found by [`SimplicialComplex::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    CoordinateLength {
        vertex: usize,
        len: usize,
    },
    MissingVertex {
        simplex: Simplex,
        vertex: usize,
    },
    DuplicateSimplex(Simplex),
    FaceClosure {
        simplex: Simplex,
        missing: Simplex,
    },
    /// A minimal affinely dependent vertex subset of size at most d+1.
    GeneralPosition(Vec<usize>),
    /// A simplex whose vertex points are affinely dependent.
    DegenerateSimplex(Simplex),
}

/// A simplicial complex immersed in R^d.
///
/// `coords` is an index space for vertices; the complex's vertices are its
/// 0-simplices. Values built with [`SimplicialComplex::new`] are face-closed
/// and list every coordinate as a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    ambient_dim: usize,
    coords: Vec<Point>,
    simplices: Vec<Simplex>,
}

impl SimplicialComplex {
    /// Builds the closure of `simplices`, adding every coordinate as a vertex.
    pub fn new(ambient_dim: usize, coords: Vec<Point>, simplices: Vec<Vec<usize>>) -> Result<Self, Error> {
        for p in &coords {
            if p.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: p.dim(),
                });
            }
        }
        let mut closed: BTreeSet<Simplex> = (0..coords.len()).map(Simplex::vertex).collect();
        for s in simplices {
            let s = Simplex::new(s)?;
            if let Some(&v) = s.vertices().iter().find(|&&v| v >= coords.len()) {
                return Err(Error::MissingVertex(v));
            }
            closed.extend(s.faces());
        }
        Ok(SimplicialComplex {
            ambient_dim,
            coords,
            simplices: closed.into_iter().collect(),
        })
    }

    /// Stores the simplex list exactly as given (sorted, duplicates kept) so
    /// that [`validate`](Self::validate) can report what is wrong with it.
    pub fn from_parts(ambient_dim: usize, coords: Vec<Point>, mut simplices: Vec<Simplex>) -> Self {
        simplices.sort();
        SimplicialComplex {
            ambient_dim,
            coords,
            simplices,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    pub fn point(&self, v: usize) -> &Point {
        &self.coords[v]
    }

    /// Simplices in (dimension, lexicographic) order.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.binary_search(s).is_ok()
    }

    pub fn vertex_indices(&self) -> Vec<usize> {
        self.simplices
            .iter()
            .filter(|s| s.dim() == 0)
            .map(|s| s.vertices()[0])
            .collect()
    }

    pub fn count_dim(&self, dim: usize) -> usize {
        self.simplices.iter().filter(|s| s.dim() == dim).count()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|s| !self.simplices.iter().any(|t| t.dim() > s.dim() && s.is_face_of(t)))
            .cloned()
            .collect()
    }

    /// Points of the complex's vertices, sorted; identifies the vertex set
    /// independently of index order.
    pub fn vertex_points(&self) -> Vec<Point> {
        let mut pts: Vec<Point> = self
            .vertex_indices()
            .into_iter()
            .map(|v| self.coords[v].clone())
            .collect();
        pts.sort();
        pts
    }

    /// Index-free description of the complex: each simplex as its sorted
    /// vertex points. Two complexes are the same immersed complex iff their
    /// keys are equal.
    pub fn geometric_key(&self) -> BTreeSet<Vec<Point>> {
        self.simplices
            .iter()
            .map(|s| {
                let mut pts: Vec<Point> = s.vertices().iter().map(|&v| self.coords[v].clone()).collect();
                pts.sort();
                pts
            })
            .collect()
    }

    pub fn same_complex(&self, other: &SimplicialComplex) -> bool {
        self.ambient_dim == other.ambient_dim && self.geometric_key() == other.geometric_key()
    }

    /// Face closure, duplicates, dangling indices and general position.
    /// An empty report means the complex satisfies every structural
    /// requirement, including general position of its vertices.
    pub fn validate(&self) -> Vec<Violation> {
        let mut report = Vec::new();
        for (v, p) in self.coords.iter().enumerate() {
            if p.dim() != self.ambient_dim {
                report.push(Violation::CoordinateLength {
                    vertex: v,
                    len: p.dim(),
                });
            }
        }
        if !report.is_empty() {
            return report;
        }
        let mut present = BTreeSet::new();
        for s in &self.simplices {
            if let Some(&v) = s.vertices().iter().find(|&&v| v >= self.coords.len()) {
                report.push(Violation::MissingVertex {
                    simplex: s.clone(),
                    vertex: v,
                });
            }
            if !present.insert(s.clone()) {
                report.push(Violation::DuplicateSimplex(s.clone()));
            }
        }
        for s in &self.simplices {
            for facet in s.facets() {
                if !present.contains(&facet) {
                    report.push(Violation::FaceClosure {
                        simplex: s.clone(),
                        missing: facet,
                    });
                }
            }
        }
        if report.iter().any(|v| matches!(v, Violation::MissingVertex { .. })) {
            return report;
        }
        for s in &present {
            if !self.affinely_independent(s.vertices()) {
                report.push(Violation::DegenerateSimplex(s.clone()));
            }
        }
        let mut vertices: Vec<usize> = present
            .iter()
            .flat_map(|s| s.vertices().iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        vertices.sort_unstable();
        report.extend(
            minimal_dependent_subsets(&self.coords, &vertices, self.ambient_dim + 1)
                .into_iter()
                .map(Violation::GeneralPosition),
        );
        report
    }

    pub fn affinely_independent(&self, vertices: &[usize]) -> bool {
        let pts: Vec<&Point> = vertices.iter().map(|&v| &self.coords[v]).collect();
        affinely_independent(&pts)
    }

    /// Whether `x` lies in the geometric realization (closed union of the
    /// embedded simplices).
    pub fn point_membership(&self, x: &Point) -> Result<bool, Error> {
        if x.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: x.dim(),
            });
        }
        Ok(self.maximal_simplices().iter().any(|s| self.simplex_contains(s, x)))
    }

    fn simplex_contains(&self, s: &Simplex, x: &Point) -> bool {
        let base = &self.coords[s.vertices()[0]];
        let columns: Vec<Vec<Rational>> = s.vertices()[1..]
            .iter()
            .map(|&v| rational::sub(self.coords[v].coords(), base.coords()))
            .collect();
        let target = rational::sub(x.coords(), base.coords());
        match linalg::solve_columns(&columns, &target) {
            None => false,
            Some(lambda) => {
                let total = lambda.iter().fold(Rational::zero(), |acc, l| acc + l);
                lambda.iter().all(|l| !l.is_negative()) && total <= rational::int(1)
            }
        }
    }

    /// Replaces edge `tau` by two edges through its midpoint and splits every
    /// triangle containing it. The point set is unchanged.
    pub fn barycentric_subdivide_edge(&self, tau: &Simplex) -> Result<SimplicialComplex, Error> {
        if tau.dim() != 1 {
            return Err(Error::InvalidSimplex(format!("{tau} is not an edge")));
        }
        if !self.contains(tau) {
            return Err(Error::SimplexNotInComplex(tau.clone()));
        }
        let star: Vec<&Simplex> = self.simplices.iter().filter(|s| tau.is_face_of(s)).collect();
        if star.iter().any(|s| s.dim() > 2) {
            return Err(Error::SubdivisionTooDeep(tau.clone()));
        }
        let (a, b) = (tau.vertices()[0], tau.vertices()[1]);
        let mid = Point(
            self.coords[a]
                .coords()
                .iter()
                .zip(self.coords[b].coords())
                .map(|(x, y)| (x + y) / rational::int(2))
                .collect(),
        );
        let m = self.coords.len();
        let mut coords = self.coords.clone();
        coords.push(mid);
        let mut simplices: BTreeSet<Simplex> = self.simplices.iter().filter(|s| !tau.is_face_of(s)).cloned().collect();
        simplices.insert(Simplex::vertex(m));
        simplices.insert(Simplex::edge(a, m));
        simplices.insert(Simplex::edge(b, m));
        for tri in star.iter().filter(|s| s.dim() == 2) {
            let c = *tri
                .vertices()
                .iter()
                .find(|&&v| v != a && v != b)
                .expect("triangle apex");
            simplices.insert(Simplex::edge(c, m));
            simplices.insert(Simplex::new(vec![a, c, m])?);
            simplices.insert(Simplex::new(vec![b, c, m])?);
        }
        Ok(SimplicialComplex {
            ambient_dim: self.ambient_dim,
            coords,
            simplices: simplices.into_iter().collect(),
        })
    }

    /// Keeps only the given simplices (which must be face-closed).
    pub fn restrict(&self, keep: impl IntoIterator<Item = Simplex>) -> SimplicialComplex {
        let mut simplices: Vec<Simplex> = keep.into_iter().collect();
        simplices.sort();
        simplices.dedup();
        SimplicialComplex {
            ambient_dim: self.ambient_dim,
            coords: self.coords.clone(),
            simplices,
        }
    }

    /// Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }
}

pub fn affinely_independent(points: &[&Point]) -> bool {
    if points.len() <= 1 {
        return true;
    }
    if points.len() > points[0].dim() + 1 {
        return false;
    }
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| rational::sub(p.coords(), points[0].coords()))
        .collect();
    linalg::rank(&rows) == points.len() - 1
}

/// Minimal affinely dependent subsets of `vertices` with at most `max_size`
/// elements, in increasing size then lexicographic order.
fn minimal_dependent_subsets(coords: &[Point], vertices: &[usize], max_size: usize) -> Vec<Vec<usize>> {
    let mut found: Vec<Vec<usize>> = Vec::new();
    for size in 2..=max_size.min(vertices.len()) {
        for subset in combinations(vertices, size) {
            if found.iter().any(|f| f.iter().all(|v| subset.contains(v))) {
                continue;
            }
            let pts: Vec<&Point> = subset.iter().map(|&v| &coords[v]).collect();
            if !affinely_independent(&pts) {
                found.push(subset);
            }
        }
    }
    found
}

/// All `k`-element subsets of `items`, lexicographic in positions.
pub fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > items.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + items.len() - k) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every face-closed complex whose vertex set is exactly `vertices` and whose
/// simplices have dimension at most `max_dim`, each exactly once.
pub fn enumerate_subcomplexes(
    vertices: &[Point],
    max_dim: usize,
    budget: u128,
) -> Result<Vec<SimplicialComplex>, Error> {
    let ambient_dim = vertices.first().map_or(0, Point::dim);
    if let Some(p) = vertices.iter().find(|p| p.dim() != ambient_dim) {
        return Err(Error::DimensionMismatch {
            expected: ambient_dim,
            got: p.dim(),
        });
    }
    let indices: Vec<usize> = (0..vertices.len()).collect();
    let optional: Vec<Simplex> = (2..=max_dim + 1)
        .flat_map(|size| combinations(&indices, size))
        .map(Simplex)
        .collect();
    let candidates = 1u128.checked_shl(optional.len() as u32).unwrap_or(u128::MAX);
    if optional.len() >= 127 || candidates > budget {
        return Err(Error::BudgetExceeded { candidates, budget });
    }
    let base: Vec<Simplex> = indices.iter().map(|&v| Simplex::vertex(v)).collect();
    let mut out = Vec::new();
    let mut chosen: BTreeSet<Simplex> = base.iter().cloned().collect();
    enumerate_rec(&optional, 0, &mut chosen, &mut |set| {
        out.push(SimplicialComplex {
            ambient_dim,
            coords: vertices.to_vec(),
            simplices: set.iter().cloned().collect(),
        });
    });
    Ok(out)
}

fn enumerate_rec(
    optional: &[Simplex],
    at: usize,
    chosen: &mut BTreeSet<Simplex>,
    emit: &mut dyn FnMut(&BTreeSet<Simplex>),
) {
    if at == optional.len() {
        emit(chosen);
        return;
    }
    enumerate_rec(optional, at + 1, chosen, emit);
    let s = &optional[at];
    if s.facets().iter().all(|f| chosen.contains(f)) {
        chosen.insert(s.clone());
        enumerate_rec(optional, at + 1, chosen, emit);
        chosen.remove(s);
    }
}

/// Every complex whose vertex set is a nonempty subset (of size at most
/// `max_vertices`) of `pool`, with simplices of dimension at most `max_dim`.
pub fn enumerate_on_pool(
    pool: &[Point],
    max_vertices: usize,
    max_dim: usize,
    budget: u128,
) -> Result<Vec<SimplicialComplex>, Error> {
    let mut out = Vec::new();
    for size in 1..=max_vertices.min(pool.len()) {
        for subset in combinations(pool, size) {
            out.extend(enumerate_subcomplexes(&subset, max_dim, budget)?);
            if out.len() as u128 > budget {
                return Err(Error::BudgetExceeded {
                    candidates: out.len() as u128,
                    budget,
                });
            }
        }
    }
    Ok(out)
}

/// Simplex list grouped by dimension; handy for reporting.
pub fn counts_by_dim(k: &SimplicialComplex) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for s in k.simplices() {
        *counts.entry(s.dim()).or_insert(0) += 1;
    }
    counts
}
