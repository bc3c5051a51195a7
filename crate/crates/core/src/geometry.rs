//! Envelopes of simplices and the necessary conditions they impose on
//! direction sets for the concise descriptors.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::complex::{Point, Simplex, SimplicialComplex};
use crate::error::Error;
use crate::filtration::Direction;
use crate::linalg;
use crate::lp::{self, LpOutcome};
use crate::rational::{self, Rational};

/// `{p : normal·p >= offset}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: Direction,
    pub offset: Rational,
}

impl HalfSpace {
    pub fn contains(&self, p: &Point) -> bool {
        self.normal.height(p.coords()) >= self.offset
    }
}

#[derive(Debug, Clone)]
pub struct Envelope {
    pub simplex: Simplex,
    pub halfspaces: Vec<HalfSpace>,
    pub dimension: usize,
}

/// Intersection of the supporting halfspaces of `sigma` for every direction.
pub fn envelope(k: &SimplicialComplex, sigma: &Simplex, directions: &[Direction]) -> Result<Envelope, Error> {
    if directions.is_empty() {
        return Err(Error::EmptyDirections);
    }
    if !k.contains(sigma) {
        return Err(Error::SimplexNotInComplex(sigma.clone()));
    }
    let d = k.ambient_dim();
    let halfspaces = directions
        .iter()
        .map(|s| {
            if s.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: s.dim(),
                });
            }
            let offset = sigma
                .vertices()
                .iter()
                .map(|&v| s.height(k.point(v).coords()))
                .min()
                .expect("simplices are nonempty");
            Ok(HalfSpace {
                normal: s.clone(),
                offset,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let vs = sigma.vertices();
    let mut barycenter = vec![Rational::zero(); d];
    for &v in vs {
        for (c, x) in barycenter.iter_mut().zip(k.point(v).coords()) {
            *c += x;
        }
    }
    let n = Rational::from_integer((vs.len() as i64).into());
    for c in barycenter.iter_mut() {
        *c /= &n;
    }
    let dimension = dimension_with_witnesses(d, &halfspaces, vec![barycenter])?;
    Ok(Envelope {
        simplex: sigma.clone(),
        halfspaces,
        dimension,
    })
}

/// Dimension of `{p in R^d : every halfspace holds}`: `d` minus the rank of
/// the implicit equalities, each detected by an exact LP.
pub fn polyhedron_dimension(d: usize, halfspaces: &[HalfSpace]) -> Result<usize, Error> {
    dimension_with_witnesses(d, halfspaces, Vec::new())
}

/// Any halfspace strict at a known feasible point cannot be an implicit
/// equality, so its LP is skipped.
fn dimension_with_witnesses(
    d: usize,
    halfspaces: &[HalfSpace],
    mut witnesses: Vec<Vec<Rational>>,
) -> Result<usize, Error> {
    if halfspaces.is_empty() {
        return Ok(d);
    }
    let a: Vec<Vec<Rational>> = halfspaces.iter().map(|h| h.normal.vector().to_vec()).collect();
    let b: Vec<Rational> = halfspaces.iter().map(|h| h.offset.clone()).collect();
    let mut equalities = Vec::new();
    for (i, h) in halfspaces.iter().enumerate() {
        if witnesses.iter().any(|w| h.normal.height(w) > h.offset) {
            continue;
        }
        // Cap the objective so the LP stays bounded.
        let mut rows = a.clone();
        let mut rhs = b.clone();
        rows.push(a[i].iter().map(|x| -x.clone()).collect());
        rhs.push(-(&b[i] + Rational::one()));
        match lp::maximize(&a[i], &rows, &rhs) {
            LpOutcome::Infeasible => return Err(Error::Infeasible),
            LpOutcome::Unbounded => unreachable!("objective is capped"),
            LpOutcome::Optimal { value, point } => {
                if value == h.offset {
                    equalities.push(a[i].clone());
                } else {
                    witnesses.push(point);
                }
            }
        }
    }
    Ok(d - linalg::rank(&equalities))
}

/// Whether `s` is orthogonal to the affine hull of `sigma`.
pub fn is_perpendicular(k: &SimplicialComplex, sigma: &Simplex, s: &Direction) -> bool {
    let vs = sigma.vertices();
    let base = k.point(vs[0]).coords();
    vs[1..]
        .iter()
        .all(|&v| rational::dot(s.vector(), &rational::sub(k.point(v).coords(), base)).is_zero())
}

#[derive(Debug, Clone)]
pub struct SimplexCheck {
    pub simplex: Simplex,
    pub envelope_dim: usize,
    pub envelope_ok: bool,
    /// Indices into the direction list.
    pub perpendicular: Vec<usize>,
    pub perpendicular_required: usize,
    pub perpendicular_ok: bool,
    /// `None` when the simplex has dimension `d - 1` and the check does not apply.
    pub pairwise_independent: Option<bool>,
}

impl SimplexCheck {
    pub fn passes(&self) -> bool {
        self.envelope_ok && self.perpendicular_ok && self.pairwise_independent != Some(false)
    }
}

#[derive(Debug, Clone)]
pub struct ConciseReport {
    pub ambient_dim: usize,
    pub direction_count: usize,
    pub enough_directions: bool,
    pub simplices: Vec<SimplexCheck>,
}

impl ConciseReport {
    /// Necessary conditions only; passing does not imply faithfulness.
    pub fn verdict(&self) -> bool {
        self.enough_directions && self.simplices.iter().all(SimplexCheck::passes)
    }

    pub fn to_json(&self, directions: &[Direction]) -> Value {
        json!({
            "ambient_dim": self.ambient_dim,
            "directions": directions.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "direction_count": self.direction_count,
            "required_direction_count": self.ambient_dim + 1,
            "enough_directions": self.enough_directions,
            "simplices": self.simplices.iter().map(|c| json!({
                "simplex": c.simplex.vertices(),
                "dimension": c.simplex.dim(),
                "envelope_dimension": c.envelope_dim,
                "envelope_ok": c.envelope_ok,
                "perpendicular": c.perpendicular,
                "perpendicular_required": c.perpendicular_required,
                "perpendicular_ok": c.perpendicular_ok,
                "pairwise_independent": c.pairwise_independent,
                "passes": c.passes(),
            })).collect::<Vec<_>>(),
            "necessary_conditions_hold": self.verdict(),
        })
    }
}

/// Checks every maximal simplex of dimension below `d` against the
/// envelope, perpendicular-count and non-parallel conditions.
pub fn check_concise_conditions(k: &SimplicialComplex, directions: &[Direction]) -> Result<ConciseReport, Error> {
    let d = k.ambient_dim();
    if let Some(s) = directions.iter().find(|s| s.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: s.dim(),
        });
    }
    let mut simplices = Vec::new();
    for sigma in k.maximal_simplices() {
        let dim = sigma.dim();
        if dim >= d {
            continue;
        }
        let envelope_dim = if directions.is_empty() {
            d
        } else {
            envelope(k, &sigma, directions)?.dimension
        };
        let perpendicular: Vec<usize> = (0..directions.len())
            .filter(|&i| is_perpendicular(k, &sigma, &directions[i]))
            .collect();
        let perpendicular_required = d - dim + 1;
        let pairwise_independent = (dim + 1 < d).then(|| {
            perpendicular.iter().enumerate().all(|(a, &i)| {
                perpendicular[a + 1..]
                    .iter()
                    .all(|&j| !directions[i].parallel(&directions[j]))
            })
        });
        simplices.push(SimplexCheck {
            envelope_ok: envelope_dim == dim,
            envelope_dim,
            perpendicular_ok: perpendicular.len() >= perpendicular_required,
            perpendicular,
            perpendicular_required,
            pairwise_independent,
            simplex: sigma,
        });
    }
    Ok(ConciseReport {
        ambient_dim: d,
        direction_count: directions.len(),
        enough_directions: directions.len() > d,
        simplices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fixture, Fixture};
    use crate::observability::Ray;
    use proptest::prelude::*;

    fn dirs(list: &[&[i64]]) -> Vec<Direction> {
        list.iter().map(|v| Direction::from_ints(v)).collect()
    }

    fn vertex() -> SimplicialComplex {
        SimplicialComplex::new(2, vec![Point::from_ints(&[1, 1])], vec![]).unwrap()
    }

    fn half(normal: &[i64], offset: i64) -> HalfSpace {
        HalfSpace {
            normal: Direction::from_ints(normal),
            offset: rational::int(offset),
        }
    }

    #[test]
    fn vertex_envelopes() {
        let k = vertex();
        let v = Simplex::vertex(0);
        assert_eq!(envelope(&k, &v, &dirs(&[&[1, 0], &[0, 1]])).unwrap().dimension, 2);
        assert_eq!(
            envelope(&k, &v, &dirs(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]))
                .unwrap()
                .dimension,
            0
        );
        assert!(matches!(envelope(&k, &v, &[]), Err(Error::EmptyDirections)));
    }

    #[test]
    fn edge_with_its_perpendicular() {
        let k = fixture(Fixture::SingleEdge).unwrap();
        let e = Simplex::edge(0, 1);
        assert_eq!(envelope(&k, &e, &dirs(&[&[1, 0]])).unwrap().dimension, 2);
        assert_eq!(envelope(&k, &e, &dirs(&[&[1, 0], &[-1, 0]])).unwrap().dimension, 1);
    }

    #[test]
    fn polyhedron_examples() {
        assert_eq!(
            polyhedron_dimension(2, &[half(&[1, 0], 0), half(&[-1, 0], 0)]).unwrap(),
            1
        );
        assert_eq!(polyhedron_dimension(2, &[half(&[1, 0], 0)]).unwrap(), 2);
        let generic = [half(&[1, 0], 0), half(&[0, 1], 0), half(&[-1, -1], -3)];
        assert_eq!(polyhedron_dimension(2, &generic).unwrap(), 2);
        assert_eq!(polyhedron_dimension(3, &[]).unwrap(), 3);
        let pinned = [half(&[-1, -1], 0), half(&[1, 0], 0), half(&[0, 1], 0)];
        assert_eq!(polyhedron_dimension(2, &pinned).unwrap(), 0);
        assert!(matches!(
            polyhedron_dimension(1, &[half(&[1], 1), half(&[-1], 0)]),
            Err(Error::Infeasible)
        ));
    }

    #[test]
    fn vertex_conditions() {
        let k = vertex();
        let good = check_concise_conditions(&k, &dirs(&[&[1, 0], &[0, 1], &[-1, -1]])).unwrap();
        assert!(good.verdict());
        assert_eq!(good.direction_count, 3);
        let bad = check_concise_conditions(&k, &dirs(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(!bad.enough_directions);
        assert_eq!(bad.simplices[0].envelope_dim, 2);
        assert!(!bad.verdict());
    }

    #[test]
    fn full_dimensional_simplices_are_skipped() {
        let tri = SimplicialComplex::new(
            2,
            vec![
                Point::from_ints(&[0, 0]),
                Point::from_ints(&[1, 0]),
                Point::from_ints(&[0, 1]),
            ],
            vec![vec![0, 1, 2]],
        )
        .unwrap();
        let r = check_concise_conditions(&tri, &dirs(&[&[1, 0], &[0, 1], &[-1, -1]])).unwrap();
        assert!(r.simplices.is_empty());
        assert!(r.verdict());
    }

    /// Planar oracle: the envelope near a relative-interior point of sigma is
    /// the polar cone of the perpendicular directions, whose dimension is read
    /// off the angular gaps between them.
    fn planar_dimension(k: &SimplicialComplex, sigma: &Simplex, s: &[Direction]) -> usize {
        let mut rays: Vec<Ray> = s
            .iter()
            .filter(|x| is_perpendicular(k, sigma, x))
            .map(|x| Ray::from_direction(x).unwrap())
            .collect();
        rays.sort_by(|a, b| a.angle_cmp(b));
        rays.dedup_by(|a, b| a.same_ray(b));
        if rays.is_empty() {
            return 2;
        }
        let has_opposite = rays.iter().any(|a| rays.iter().any(|b| a.same_ray(&b.neg())));
        // Every gap strictly below a half turn means the rays positively span.
        let spans = rays.len() >= 3
            && (0..rays.len()).all(|i| {
                let a = &rays[i];
                let b = &rays[(i + 1) % rays.len()];
                let c = a.cross(b);
                c > Rational::zero() || (rays.len() == 1 && c.is_zero())
            });
        match (spans, has_opposite) {
            (true, _) => 0,
            (false, true) => 1,
            _ => 2,
        }
    }

    fn small_dir() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-2i64..=2, 2).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
    }

    proptest! {
        #[test]
        fn planar_envelopes_match_oracle(
            raw in prop::collection::vec(small_dir(), 1..7),
            use_edge in any::<bool>(),
        ) {
            let k = fixture(Fixture::SingleEdge).unwrap();
            let sigma = if use_edge { Simplex::edge(0, 1) } else { Simplex::vertex(0) };
            let s: Vec<Direction> = raw.iter().map(|v| Direction::from_ints(v)).collect();
            let env = envelope(&k, &sigma, &s).unwrap();
            prop_assert_eq!(env.dimension, planar_dimension(&k, &sigma, &s));
            for h in &env.halfspaces {
                for &v in sigma.vertices() {
                    prop_assert!(h.contains(k.point(v)));
                }
            }
        }

        #[test]
        fn adding_directions_never_grows_envelope(
            raw in prop::collection::vec(prop::collection::vec(-2i64..=2, 3)
                .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0)), 2..7),
        ) {
            let tri = SimplicialComplex::new(
                3,
                vec![Point::from_ints(&[0, 0, 0]), Point::from_ints(&[1, 0, 0]), Point::from_ints(&[0, 1, 2])],
                vec![vec![0, 1, 2]],
            ).unwrap();
            let s: Vec<Direction> = raw.iter().map(|v| Direction::from_ints(v)).collect();
            for sigma in tri.simplices() {
                let mut last = usize::MAX;
                for n in 1..=s.len() {
                    let dim = envelope(&tri, sigma, &s[..n]).unwrap().dimension;
                    prop_assert!(dim <= last);
                    prop_assert!(dim >= sigma.dim());
                    last = dim;
                }
            }
        }
    }

    #[test]
    fn both_sides_of_every_hull_normal_pin_the_simplex() {
        let tri = SimplicialComplex::new(
            3,
            vec![
                Point::from_ints(&[0, 0, 0]),
                Point::from_ints(&[1, 0, 0]),
                Point::from_ints(&[0, 1, 2]),
            ],
            vec![vec![0, 1, 2]],
        )
        .unwrap();
        for sigma in tri.simplices() {
            let vs = sigma.vertices();
            let diffs: Vec<Vec<Rational>> = vs[1..]
                .iter()
                .map(|&v| rational::sub(tri.point(v).coords(), tri.point(vs[0]).coords()))
                .collect();
            let normals = if diffs.is_empty() {
                (0..3).map(|i| Direction::axis(3, i).vector().to_vec()).collect()
            } else {
                linalg::null_space(&diffs, 3)
            };
            let mut s = Vec::new();
            for n in normals {
                let dir = Direction::new(n).unwrap();
                s.push(dir.neg());
                s.push(dir);
            }
            // Bound the simplex inside its hull as well.
            s.extend(dirs(&[
                &[1, 1, 1],
                &[-1, 0, 0],
                &[0, -1, 0],
                &[0, 0, -1],
                &[1, -1, 0],
                &[-1, 1, 0],
            ]));
            assert_eq!(envelope(&tri, sigma, &s).unwrap().dimension, sigma.dim(), "{sigma}");
        }
    }
}
