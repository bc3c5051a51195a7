//! Named complexes and the clothespin/clothesline constructions.

use std::fmt;
use std::str::FromStr;

use crate::complex::{Point, SimplicialComplex};
use crate::error::Error;
use crate::observability;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    /// Edge from (1,1) to (1,2).
    SingleEdge,
    /// Unit-square corners with edges `[v1,v4]` and `[v2,v4]`.
    SquareK,
    /// Unit-square corners with edges `[v1,v4]` and `[v2,v3]`.
    SquareKprime,
    /// Four vertices at x-heights 0..3 with one edge at height 2 and three at
    /// height 3 (one merge, one cycle).
    AppendixA,
    /// `n1 < d - 1` disjoint edges in R^d whose edge vectors span an
    /// `n1`-dimensional subspace.
    SparseGraph { d: usize, n1: usize },
}

impl FromStr for Fixture {
    type Err = Error;

    /// Accepts `single_edge`, `square_K`, `square_Kprime`, `appendixA` and
    /// `sparse_graph(d,n1)` (or `sparse_graph` with `:d,n1`).
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "single_edge" => Ok(Fixture::SingleEdge),
            "square_K" => Ok(Fixture::SquareK),
            "square_Kprime" => Ok(Fixture::SquareKprime),
            "appendixA" => Ok(Fixture::AppendixA),
            _ => {
                let rest = s
                    .strip_prefix("sparse_graph")
                    .ok_or_else(|| Error::UnknownFixture(s.to_string()))?;
                let inner = rest.trim_start_matches([':', '(']).trim_end_matches(')');
                let nums: Vec<usize> = inner
                    .split(',')
                    .map(|t| t.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| Error::FixtureParams(format!("cannot parse {s:?}")))?;
                match nums[..] {
                    [d, n1] => Ok(Fixture::SparseGraph { d, n1 }),
                    _ => Err(Error::FixtureParams("sparse_graph needs d and n1".into())),
                }
            }
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::SingleEdge => write!(f, "single_edge"),
            Fixture::SquareK => write!(f, "square_K"),
            Fixture::SquareKprime => write!(f, "square_Kprime"),
            Fixture::AppendixA => write!(f, "appendixA"),
            Fixture::SparseGraph { d, n1 } => write!(f, "sparse_graph({d},{n1})"),
        }
    }
}

fn pts(list: &[[i64; 2]]) -> Vec<Point> {
    list.iter().map(|c| Point::from_ints(c)).collect()
}

fn square() -> Vec<Point> {
    pts(&[[0, 0], [0, 1], [1, 0], [1, 1]])
}

pub fn fixture(which: Fixture) -> Result<SimplicialComplex, Error> {
    match which {
        Fixture::SingleEdge => SimplicialComplex::new(2, pts(&[[1, 1], [1, 2]]), vec![vec![0, 1]]),
        Fixture::SquareK => SimplicialComplex::new(2, square(), vec![vec![0, 3], vec![1, 3]]),
        Fixture::SquareKprime => SimplicialComplex::new(2, square(), vec![vec![0, 3], vec![1, 2]]),
        Fixture::AppendixA => SimplicialComplex::new(
            2,
            pts(&[[0, 0], [1, 2], [2, 0], [3, 1]]),
            vec![vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]],
        ),
        Fixture::SparseGraph { d, n1 } => sparse_graph(d, n1),
    }
}

fn sparse_graph(d: usize, n1: usize) -> Result<SimplicialComplex, Error> {
    if n1 == 0 || n1 + 1 >= d {
        return Err(Error::FixtureParams(format!(
            "sparse_graph needs 1 <= n1 < d - 1 (d={d}, n1={n1})"
        )));
    }
    // Edge i runs from a moment-curve point along e_i; the edge vectors span
    // the coordinate n1-plane and the moment curve keeps vertices generic.
    for shift in 2i64..64 {
        let mut coords = Vec::with_capacity(2 * n1);
        for i in 0..n1 {
            let t = shift + i as i64;
            let base: Vec<i64> = (1..=d as u32).map(|e| t.pow(e)).collect();
            let mut tip = base.clone();
            tip[i] += 1;
            coords.push(Point::from_ints(&base));
            coords.push(Point::from_ints(&tip));
        }
        let edges = (0..n1).map(|i| vec![2 * i, 2 * i + 1]).collect();
        let k = SimplicialComplex::new(d, coords, edges)?;
        if k.validate().is_empty() {
            return Ok(k);
        }
    }
    Err(Error::FixtureParams("no general-position sparse graph found".into()))
}

/// Four planar points forming a clothespin: edges `[v1,v2]`, `[v3,v4]` and
/// `v3` strictly interior to the triangle `v1 v2 v4`.
pub fn build_clothespin(v1: Point, v2: Point, v3: Point, v4: Point) -> Result<SimplicialComplex, Error> {
    if [&v1, &v2, &v3, &v4].iter().any(|p| p.dim() != 2) {
        return Err(Error::NotClothespin("points must be in R^2".into()));
    }
    let k = SimplicialComplex::new(2, vec![v1, v2, v3, v4], vec![vec![0, 1], vec![2, 3]])?;
    if !k.validate().is_empty() {
        return Err(Error::NotClothespin("points are not in general position".into()));
    }
    observability::check_clothespin(&k)?;
    Ok(k)
}

const CLOTHESLINE_ATTEMPTS: usize = 48;

/// `m` clothespin motifs with pairwise disjoint regions of observability.
///
/// Motif `i` opens its wedge `v2 v3 v4` around the direction `(m, i)`. The
/// wedge half-width is halved until the regions are certified disjoint and
/// the whole vertex set is in general position.
pub fn build_clothesline(m: usize) -> Result<SimplicialComplex, Error> {
    if m == 0 {
        return Err(Error::Clothesline("m must be at least 1".into()));
    }
    let mut spread = rational::ratio(1, 2);
    for attempt in 0..CLOTHESLINE_ATTEMPTS {
        let mut coords = Vec::with_capacity(4 * m);
        for i in 0..m {
            let c = [rational::int(m as i64), rational::int(i as i64)];
            let perp = [-c[1].clone(), c[0].clone()];
            let t = i as i64;
            let lift = (attempt % 4) as i64 + 3;
            let v3 = [rational::int(16 * m as i64 * t), rational::int(lift * t * t + t)];
            let along = |k: i64, side: &Rational| -> Point {
                Point(
                    (0..2)
                        .map(|j| &v3[j] + rational::int(k) * &c[j] + side * &perp[j])
                        .collect(),
                )
            };
            coords.push(along(-1, &rational::int(0)));
            coords.push(along(4, &spread));
            coords.push(Point(v3.to_vec()));
            coords.push(along(4, &-spread.clone()));
        }
        let edges = (0..m)
            .flat_map(|i| [vec![4 * i, 4 * i + 1], vec![4 * i + 2, 4 * i + 3]])
            .collect();
        let k = SimplicialComplex::new(2, coords, edges)?;
        if k.validate().is_empty() && observability::regions_disjoint(&k)? {
            return Ok(k);
        }
        if attempt % 4 == 3 {
            spread /= rational::int(2);
        }
    }
    Err(Error::Clothesline(format!(
        "no certified clothesline after {CLOTHESLINE_ATTEMPTS} attempts"
    )))
}
