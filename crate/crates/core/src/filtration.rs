//! Lower-star filters, compatible index filters and sublevel complexes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::Error;
use crate::rational::{self, Rational};

/// A nonzero rational vector standing for the ray it spans.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction(Vec<Rational>);

impl Direction {
    pub fn new(vector: Vec<Rational>) -> Result<Self, Error> {
        if rational::is_zero_vec(&vector) {
            return Err(Error::ZeroDirection);
        }
        Ok(Direction(vector))
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Direction::new(v.iter().map(|&x| rational::int(x)).collect()).expect("nonzero direction")
    }

    /// Standard basis vector `e_{axis+1}` in R^d.
    pub fn axis(d: usize, axis: usize) -> Self {
        let mut v = vec![0; d];
        v[axis] = 1;
        Direction::from_ints(&v)
    }

    /// Accepts `a,b,...` with optional surrounding parentheses.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        Direction::new(rational::parse_list(inner)?)
    }

    pub fn vector(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self, p: &[Rational]) -> Rational {
        rational::dot(&self.0, p)
    }

    pub fn neg(&self) -> Direction {
        Direction(self.0.iter().map(|x| -x).collect())
    }

    /// Same ray: one vector is a positive multiple of the other.
    pub fn same_ray(&self, other: &Direction) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let Some(i) = self.0.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if other.0[i].is_zero() || self.0[i].is_positive() != other.0[i].is_positive() {
            return false;
        }
        let scale = &other.0[i] / &self.0[i];
        self.0.iter().zip(&other.0).all(|(a, b)| a * &scale == *b)
    }

    /// Whether the two vectors are parallel (same or opposite rays).
    pub fn parallel(&self, other: &Direction) -> bool {
        self.same_ray(other) || self.same_ray(&other.neg())
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(rational::format).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A monotone map from simplices to heights.
#[derive(Debug, Clone)]
pub struct FilterAssignment<'a> {
    complex: &'a SimplicialComplex,
    values: BTreeMap<Simplex, Rational>,
}

impl<'a> FilterAssignment<'a> {
    /// Wraps arbitrary values; checks monotonicity.
    pub fn new(complex: &'a SimplicialComplex, values: BTreeMap<Simplex, Rational>) -> Result<Self, Error> {
        let f = FilterAssignment { complex, values };
        f.check_monotone()?;
        Ok(f)
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    pub fn value(&self, s: &Simplex) -> &Rational {
        &self.values[s]
    }

    pub fn values(&self) -> &BTreeMap<Simplex, Rational> {
        &self.values
    }

    /// Distinct heights in increasing order.
    pub fn heights(&self) -> Vec<Rational> {
        self.values
            .values()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn check_monotone(&self) -> Result<(), Error> {
        for (s, v) in &self.values {
            for facet in s.facets() {
                if let Some(fv) = self.values.get(&facet) {
                    if fv > v {
                        return Err(Error::NonMonotone {
                            face: facet,
                            coface: s.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The subcomplex `f^{-1}(-inf, t]`.
    pub fn sublevel(&self, t: &Rational) -> SimplicialComplex {
        self.complex
            .restrict(self.values.iter().filter(|(_, v)| *v <= t).map(|(s, _)| s.clone()))
    }
}

/// `f_s(σ) = max_{v ∈ σ} s·v`.
pub fn lower_star<'a>(complex: &'a SimplicialComplex, direction: &Direction) -> Result<FilterAssignment<'a>, Error> {
    if direction.dim() != complex.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: complex.ambient_dim(),
            got: direction.dim(),
        });
    }
    let vertex_height: BTreeMap<usize, Rational> = complex
        .vertex_indices()
        .into_iter()
        .map(|v| (v, direction.height(complex.point(v).coords())))
        .collect();
    let values = complex
        .simplices()
        .iter()
        .map(|s| {
            let h = s
                .vertices()
                .iter()
                .map(|v| {
                    vertex_height
                        .get(v)
                        .cloned()
                        .unwrap_or_else(|| direction.height(complex.point(*v).coords()))
                })
                .max()
                .expect("simplex has a vertex");
            (s.clone(), h)
        })
        .collect();
    Ok(FilterAssignment { complex, values })
}

/// How simplices with equal height are linearized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieRule {
    /// Dimension first, then lexicographic vertex list.
    #[default]
    DimensionLex,
    /// A random linear extension of the face order inside each height class.
    Shuffled(u64),
}

/// A compatible total order on the simplices of a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexFilter {
    order: Vec<Simplex>,
}

impl IndexFilter {
    pub fn order(&self) -> &[Simplex] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Position of every simplex (0-based).
    pub fn positions(&self) -> BTreeMap<&Simplex, usize> {
        self.order.iter().enumerate().map(|(i, s)| (s, i)).collect()
    }

    /// Faces precede cofaces and strictly lower heights come first.
    pub fn is_compatible_with(&self, f: &FilterAssignment<'_>) -> bool {
        if self.order.len() != f.values().len() {
            return false;
        }
        let pos = self.positions();
        if pos.len() != self.order.len() || f.values().keys().any(|s| !pos.contains_key(s)) {
            return false;
        }
        let by_height_ok = self.order.windows(2).all(|w| f.value(&w[0]) <= f.value(&w[1]));
        let faces_ok = self
            .order
            .iter()
            .all(|s| s.facets().iter().all(|t| pos.get(t).is_some_and(|&i| i < pos[s])));
        by_height_ok && faces_ok
    }
}

pub fn index_filter(f: &FilterAssignment<'_>, tie_rule: TieRule) -> Result<IndexFilter, Error> {
    f.check_monotone()?;
    let mut classes: BTreeMap<&Rational, Vec<Simplex>> = BTreeMap::new();
    for (s, v) in f.values() {
        classes.entry(v).or_default().push(s.clone());
    }
    let mut order = Vec::with_capacity(f.values().len());
    match tie_rule {
        TieRule::DimensionLex => {
            for mut class in classes.into_values() {
                class.sort();
                order.extend(class);
            }
        }
        TieRule::Shuffled(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut placed: BTreeSet<Simplex> = BTreeSet::new();
            for class in classes.into_values() {
                let mut pending = class;
                while !pending.is_empty() {
                    let ready: Vec<usize> = (0..pending.len())
                        .filter(|&i| pending[i].facets().iter().all(|t| placed.contains(t)))
                        .collect();
                    let &pick = ready.choose(&mut rng).expect("monotone filter has a ready simplex");
                    let s = pending.swap_remove(pick);
                    placed.insert(s.clone());
                    order.push(s);
                }
            }
        }
    }
    Ok(IndexFilter { order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Point;
    use crate::fixtures::{fixture, Fixture};
    use crate::rational::int;

    #[test]
    fn single_edge_heights() {
        let k = fixture(Fixture::SingleEdge).unwrap();
        let f = lower_star(&k, &Direction::axis(2, 0)).unwrap();
        assert!(f.values().values().all(|h| *h == int(1)));
        let f = lower_star(&k, &Direction::axis(2, 1)).unwrap();
        assert_eq!(f.value(&Simplex::vertex(0)), &int(1));
        assert_eq!(f.value(&Simplex::vertex(1)), &int(2));
        assert_eq!(f.value(&Simplex::edge(0, 1)), &int(2));
    }

    #[test]
    fn scaling_preserves_order() {
        let k = fixture(Fixture::AppendixA).unwrap();
        let s = Direction::from_ints(&[2, -1]);
        let s2 = Direction::from_ints(&[4, -2]);
        let f = lower_star(&k, &s).unwrap();
        let g = lower_star(&k, &s2).unwrap();
        for (simplex, h) in f.values() {
            assert_eq!(g.value(simplex), &(h * int(2)));
        }
        let a = index_filter(&f, TieRule::default()).unwrap();
        let b = index_filter(&g, TieRule::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dimension_mismatch() {
        let k = fixture(Fixture::SingleEdge).unwrap();
        assert!(matches!(
            lower_star(&k, &Direction::from_ints(&[1, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(Direction::parse("0,0"), Err(Error::ZeroDirection)));
    }

    #[test]
    fn default_tie_rule_puts_vertices_first() {
        let k = fixture(Fixture::SingleEdge).unwrap();
        let f = lower_star(&k, &Direction::axis(2, 0)).unwrap();
        let order = index_filter(&f, TieRule::DimensionLex).unwrap();
        assert_eq!(
            order.order(),
            &[Simplex::vertex(0), Simplex::vertex(1), Simplex::edge(0, 1)]
        );
    }

    #[test]
    fn far_apart_vertices_ordered_by_height() {
        let k = SimplicialComplex::new(2, vec![Point::from_ints(&[5, 0]), Point::from_ints(&[0, 0])], vec![]).unwrap();
        let f = lower_star(&k, &Direction::axis(2, 0)).unwrap();
        for rule in [TieRule::DimensionLex, TieRule::Shuffled(1), TieRule::Shuffled(2)] {
            let order = index_filter(&f, rule).unwrap();
            assert_eq!(order.order(), &[Simplex::vertex(1), Simplex::vertex(0)]);
        }
    }

    #[test]
    fn shuffled_orders_are_compatible() {
        let k = fixture(Fixture::SquareK).unwrap();
        let f = lower_star(&k, &Direction::axis(2, 0)).unwrap();
        let mut distinct = BTreeSet::new();
        for seed in 0..20 {
            let order = index_filter(&f, TieRule::Shuffled(seed)).unwrap();
            assert!(order.is_compatible_with(&f));
            distinct.insert(order.order().to_vec());
        }
        assert!(distinct.len() > 1);
        let reversed = IndexFilter {
            order: index_filter(&f, TieRule::DimensionLex)
                .unwrap()
                .order()
                .iter()
                .rev()
                .cloned()
                .collect(),
        };
        assert!(!reversed.is_compatible_with(&f));
    }

    #[test]
    fn non_monotone_rejected() {
        let k = fixture(Fixture::SingleEdge).unwrap();
        let mut values = BTreeMap::new();
        values.insert(Simplex::vertex(0), int(0));
        values.insert(Simplex::vertex(1), int(5));
        values.insert(Simplex::edge(0, 1), int(1));
        assert!(matches!(
            FilterAssignment::new(&k, values),
            Err(Error::NonMonotone { .. })
        ));
    }

    #[test]
    fn sublevels() {
        let k = fixture(Fixture::AppendixA).unwrap();
        let f = lower_star(&k, &Direction::axis(2, 0)).unwrap();
        assert!(f.sublevel(&int(-1)).is_empty());
        assert_eq!(f.sublevel(&int(100)).simplices(), k.simplices());
        let at2 = f.sublevel(&int(2));
        assert_eq!((at2.count_dim(0), at2.count_dim(1)), (3, 1));
        assert!(at2.validate().is_empty());
    }
}
