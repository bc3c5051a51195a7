//! Faithfulness of descriptor sets relative to a finite universe of
//! adversary complexes, and searches for small faithful sets.
//!
//! Every answer here is relative: an adversary outside the universe, or a
//! parameter outside the candidate pool, can change it.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::complex::{combinations, enumerate_on_pool, enumerate_subcomplexes, Point, SimplicialComplex};
use crate::descriptors::{compute, DescriptorType, DescriptorValue, Parameter};
use crate::error::Error;
use crate::filtration::Direction;
use crate::io;
use crate::linalg;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Generated by enumeration; the string records how.
    Enumerated(String),
    Explicit,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Enumerated(how) => write!(f, "enumerated ({how})"),
            Provenance::Explicit => f.write_str("explicit list"),
        }
    }
}

/// A finite set of complexes containing the reference exactly once.
#[derive(Debug, Clone)]
pub struct AdversaryUniverse {
    complexes: Vec<SimplicialComplex>,
    reference: usize,
    provenance: Provenance,
}

impl AdversaryUniverse {
    /// Geometric duplicates are dropped (first occurrence wins).
    pub fn new(
        reference: &SimplicialComplex,
        complexes: impl IntoIterator<Item = SimplicialComplex>,
        provenance: Provenance,
    ) -> Result<Self, Error> {
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        for c in complexes {
            if c.ambient_dim() != reference.ambient_dim() {
                return Err(Error::MixedUniverse(format!(
                    "ambient dimension {} differs from the reference's {}",
                    c.ambient_dim(),
                    reference.ambient_dim()
                )));
            }
            if seen.insert(c.geometric_key()) {
                kept.push(c);
            }
        }
        let key = reference.geometric_key();
        let position = kept
            .iter()
            .position(|c| c.geometric_key() == key)
            .ok_or(Error::ReferenceNotInUniverse)?;
        Ok(AdversaryUniverse {
            complexes: kept,
            reference: position,
            provenance,
        })
    }

    /// Like [`AdversaryUniverse::new`] but adds the reference if missing.
    pub fn around(
        reference: &SimplicialComplex,
        complexes: impl IntoIterator<Item = SimplicialComplex>,
        provenance: Provenance,
    ) -> Result<Self, Error> {
        AdversaryUniverse::new(
            reference,
            std::iter::once(reference.clone()).chain(complexes),
            provenance,
        )
    }

    /// Every complex on exactly the reference's vertex set.
    pub fn on_vertex_set(reference: &SimplicialComplex, max_dim: usize, budget: u128) -> Result<Self, Error> {
        let vertices = reference.vertex_points();
        let complexes = enumerate_subcomplexes(&vertices, max_dim, budget)?;
        AdversaryUniverse::new(
            reference,
            complexes,
            Provenance::Enumerated(format!("vertex set of the reference, max_dim={max_dim}")),
        )
    }

    /// Every complex on at most `max_vertices` points of `pool`, plus
    /// `extra` adversaries and the reference itself.
    pub fn on_pool(
        reference: &SimplicialComplex,
        pool: &[Point],
        max_vertices: usize,
        max_dim: usize,
        extra: Vec<SimplicialComplex>,
        budget: u128,
    ) -> Result<Self, Error> {
        let complexes = enumerate_on_pool(pool, max_vertices, max_dim, budget)?;
        AdversaryUniverse::around(
            reference,
            complexes.into_iter().chain(extra),
            Provenance::Enumerated(format!(
                "{} pool points, at most {max_vertices} vertices, max_dim={max_dim}",
                pool.len()
            )),
        )
    }

    pub fn complexes(&self) -> &[SimplicialComplex] {
        &self.complexes
    }

    pub fn len(&self) -> usize {
        self.complexes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complexes.is_empty()
    }

    pub fn reference_index(&self) -> usize {
        self.reference
    }

    pub fn reference(&self) -> &SimplicialComplex {
        &self.complexes[self.reference]
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// `(index, complex)` for everything except the reference.
    pub fn adversaries(&self) -> impl Iterator<Item = (usize, &SimplicialComplex)> {
        self.complexes
            .iter()
            .enumerate()
            .filter(move |(i, _)| *i != self.reference)
    }

    fn check_reference(&self, k: &SimplicialComplex) -> Result<(), Error> {
        if self.reference().geometric_key() == k.geometric_key() {
            Ok(())
        } else {
            Err(Error::ReferenceNotInUniverse)
        }
    }
}

/// Points of the integer grid `values^d`.
pub fn grid(d: usize, values: &[i64]) -> Vec<Point> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                values.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out.iter().map(|c| Point::from_ints(c)).collect()
}

#[derive(Debug, Clone)]
pub struct FaithfulnessReport {
    pub descriptor: DescriptorType,
    pub parameters: Vec<Parameter>,
    pub faithful: bool,
    /// Universe indices of adversaries no parameter tells apart from the reference.
    pub indistinguishable: Vec<usize>,
    /// First distinguishing parameter (index into `parameters`) per adversary.
    pub distinguished_by: Vec<(usize, Option<usize>)>,
}

impl FaithfulnessReport {
    pub fn to_json(&self, universe: &AdversaryUniverse) -> Value {
        json!({
            "descriptor": self.descriptor.name(),
            "relative_to": {
                "universe_size": universe.len(),
                "universe_provenance": universe.provenance().to_string(),
                "parameters": self.parameters.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "parameter_family": "lower-star directions (points for dr)",
            },
            "faithful": self.faithful,
            "indistinguishable": self.indistinguishable.iter().map(|&i| json!({
                "index": i,
                "complex": io::complex_to_json(&universe.complexes()[i]),
            })).collect::<Vec<_>>(),
            "adversaries": self.distinguished_by.iter().map(|(i, p)| json!({
                "index": i,
                "distinguished_by": p.map(|j| self.parameters[j].to_string()),
            })).collect::<Vec<_>>(),
        })
    }
}

fn values(d: DescriptorType, k: &SimplicialComplex, params: &[Parameter]) -> Result<Vec<DescriptorValue>, Error> {
    params.iter().map(|p| compute(d, k, p)).collect()
}

pub fn relative_faithful(
    d: DescriptorType,
    k: &SimplicialComplex,
    params: &[Parameter],
    universe: &AdversaryUniverse,
) -> Result<FaithfulnessReport, Error> {
    universe.check_reference(k)?;
    let reference = values(d, k, params)?;
    let mut distinguished_by = Vec::new();
    let mut indistinguishable = Vec::new();
    for (i, l) in universe.adversaries() {
        let mut first = None;
        for (j, p) in params.iter().enumerate() {
            if compute(d, l, p)? != reference[j] {
                first = Some(j);
                break;
            }
        }
        if first.is_none() {
            indistinguishable.push(i);
        }
        distinguished_by.push((i, first));
    }
    Ok(FaithfulnessReport {
        descriptor: d,
        parameters: params.to_vec(),
        faithful: indistinguishable.is_empty(),
        indistinguishable,
        distinguished_by,
    })
}

/// First candidate on which the two complexes have different descriptors.
pub fn distinguishing_parameter(
    d: DescriptorType,
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    candidates: &[Parameter],
) -> Result<Option<Parameter>, Error> {
    for p in candidates {
        if compute(d, k, p)? != compute(d, l, p)? {
            return Ok(Some(p.clone()));
        }
    }
    Ok(None)
}

/// Extends `initial` with one distinguishing candidate per adversary that
/// is still indistinguishable, in universe order. Adversaries with a vertex
/// set different from the reference's must already be separated by
/// `initial`.
pub fn augment_to_faithful(
    d: DescriptorType,
    k: &SimplicialComplex,
    initial: &[Parameter],
    universe: &AdversaryUniverse,
    candidates: &[Parameter],
) -> Result<Vec<Parameter>, Error> {
    let report = relative_faithful(d, k, initial, universe)?;
    let vertex_set = |c: &SimplicialComplex| c.vertex_points().into_iter().collect::<BTreeSet<_>>();
    let own = vertex_set(k);
    for &i in &report.indistinguishable {
        if vertex_set(&universe.complexes()[i]) != own {
            return Err(Error::VertexSetsNotSeparated(i));
        }
    }
    let mut chosen = initial.to_vec();
    for &i in &report.indistinguishable {
        let l = &universe.complexes()[i];
        if distinguishing_parameter(d, k, l, &chosen)?.is_some() {
            continue;
        }
        match distinguishing_parameter(d, k, l, candidates)? {
            Some(p) => chosen.push(p),
            None => return Err(Error::Stuck(i)),
        }
    }
    Ok(chosen)
}

/// `n < aleph0 < aleph1 < alephTop`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CardinalityBound {
    Finite(usize),
    Aleph0,
    Aleph1,
    AlephTop,
}

impl fmt::Display for CardinalityBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalityBound::Finite(n) => write!(f, "{n}"),
            CardinalityBound::Aleph0 => f.write_str("aleph0"),
            CardinalityBound::Aleph1 => f.write_str("aleph1"),
            CardinalityBound::AlephTop => f.write_str("alephTop"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinSetResult {
    pub bound: CardinalityBound,
    /// Empty when the bound is `AlephTop`.
    pub witness: Vec<Parameter>,
    pub subsets_examined: u128,
}

impl MinSetResult {
    pub fn to_json(&self, d: DescriptorType, candidates: &[Parameter], universe: &AdversaryUniverse) -> Value {
        json!({
            "descriptor": d.name(),
            "bound": self.bound.to_string(),
            "relative": true,
            "relative_to": {
                "candidates": candidates.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "universe_size": universe.len(),
                "universe_provenance": universe.provenance().to_string(),
            },
            "witness": self.witness.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "subsets_examined": self.subsets_examined.to_string(),
        })
    }
}

/// Rows: adversaries; columns: candidates; true where the candidate
/// distinguishes that adversary from the reference.
pub fn distinguish_matrix(
    d: DescriptorType,
    k: &SimplicialComplex,
    candidates: &[Parameter],
    universe: &AdversaryUniverse,
) -> Result<Vec<Vec<bool>>, Error> {
    universe.check_reference(k)?;
    let reference = values(d, k, candidates)?;
    universe
        .adversaries()
        .map(|(_, l)| {
            candidates
                .iter()
                .zip(&reference)
                .map(|(p, r)| Ok(compute(d, l, p)? != *r))
                .collect()
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Smallest faithful subset of `candidates`, searched by increasing size and
/// then lexicographically. The answer is an upper bound relative to the
/// candidates and the universe.
pub fn min_faithful_size(
    d: DescriptorType,
    k: &SimplicialComplex,
    candidates: &[Parameter],
    universe: &AdversaryUniverse,
    budget: u128,
) -> Result<MinSetResult, Error> {
    let matrix = distinguish_matrix(d, k, candidates, universe)?;
    if matrix.iter().any(|row| !row.iter().any(|&b| b)) {
        return Ok(MinSetResult {
            bound: CardinalityBound::AlephTop,
            witness: Vec::new(),
            subsets_examined: 0,
        });
    }
    // Columns that distinguish exactly the same adversaries are interchangeable;
    // rows are kept as bitsets for fast hitting checks.
    let words = matrix.len().div_ceil(64);
    let columns: Vec<Vec<u64>> = (0..candidates.len())
        .map(|j| {
            let mut bits = vec![0u64; words];
            for (i, row) in matrix.iter().enumerate() {
                if row[j] {
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
            bits
        })
        .collect();
    let full: Vec<u64> = (0..words)
        .map(|w| {
            let n = (matrix.len() - 64 * w).min(64);
            if n == 64 {
                u64::MAX
            } else {
                (1u64 << n) - 1
            }
        })
        .collect();
    let mut examined = 0u128;
    let indices: Vec<usize> = (0..candidates.len()).collect();
    for size in 0..=candidates.len() {
        let count = binomial(candidates.len(), size);
        if examined.saturating_add(count) > budget {
            return Err(Error::SearchBudgetExhausted(budget));
        }
        for subset in combinations(&indices, size) {
            examined += 1;
            let mut acc = vec![0u64; words];
            for &j in &subset {
                for (a, c) in acc.iter_mut().zip(&columns[j]) {
                    *a |= c;
                }
            }
            if acc == full {
                return Ok(MinSetResult {
                    bound: CardinalityBound::Finite(size),
                    witness: subset.iter().map(|&j| candidates[j].clone()).collect(),
                    subsets_examined: examined,
                });
            }
        }
    }
    unreachable!("the full candidate set hits every adversary")
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub label: String,
    pub complex: SimplicialComplex,
    pub candidates: Vec<Parameter>,
    pub universe: AdversaryUniverse,
}

#[derive(Debug, Clone)]
pub struct StrengthRow {
    pub label: String,
    pub weaker: CardinalityBound,
    pub stronger: CardinalityBound,
    /// The claim "weaker is no stronger than stronger" needs
    /// `weaker >= stronger` in relative size; true when an instance violates it.
    pub contradicts: bool,
}

/// Relative minimal sizes for a claimed weaker/stronger pair, per instance.
pub fn strength_evidence(
    weaker: DescriptorType,
    stronger: DescriptorType,
    instances: &[Instance],
    budget: u128,
) -> Result<Vec<StrengthRow>, Error> {
    instances
        .iter()
        .map(|inst| {
            let a = min_faithful_size(weaker, &inst.complex, &inst.candidates, &inst.universe, budget)?.bound;
            let b = min_faithful_size(stronger, &inst.complex, &inst.candidates, &inst.universe, budget)?.bound;
            Ok(StrengthRow {
                label: inst.label.clone(),
                weaker: a,
                stronger: b,
                contradicts: a < b,
            })
        })
        .collect()
}

/// `±e_i`, the `(±1, ..., ±1)` diagonals, and directions perpendicular to
/// each vertex difference of `k`, deduplicated by ray.
pub fn default_candidates(k: &SimplicialComplex) -> Vec<Direction> {
    let d = k.ambient_dim();
    let mut out: Vec<Direction> = Vec::new();
    let mut push = |s: Direction| {
        if !out.iter().any(|t| t.same_ray(&s)) {
            out.push(s);
        }
    };
    for i in 0..d {
        let e = Direction::axis(d, i);
        push(e.neg());
        push(e);
    }
    for mask in 0..(1u32 << d) {
        let v: Vec<i64> = (0..d).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        push(Direction::from_ints(&v));
    }
    let vertices = k.vertex_points();
    for (a, p) in vertices.iter().enumerate() {
        for q in &vertices[a + 1..] {
            let diff: Vec<Rational> = rational::sub(q.coords(), p.coords());
            for n in linalg::null_space(&[diff], d) {
                if let Ok(s) = Direction::new(n) {
                    push(s.neg());
                    push(s);
                }
            }
        }
    }
    out
}

pub fn directions_as_parameters(directions: &[Direction]) -> Vec<Parameter> {
    directions.iter().cloned().map(Parameter::Direction).collect()
}
