//! Exact regions of directions on the unit circle.
//!
//! A [`CircularRegion`] is stored as a finite, angularly sorted list of
//! boundary rays, a membership flag for every ray and a flag for every open
//! gap between consecutive rays. All tests use cross and dot products of
//! rational vectors; angles are never evaluated numerically.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::complex::{Point, Simplex, SimplicialComplex};
use crate::error::Error;
use crate::filtration::Direction;
use crate::rational::{self, Rational};

/// A 2-vector used as a ray representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub x: Rational,
    pub y: Rational,
}

impl Ray {
    pub fn new(x: Rational, y: Rational) -> Self {
        assert!(!(x.is_zero() && y.is_zero()), "zero ray");
        Ray { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Ray::new(rational::int(x), rational::int(y))
    }

    pub fn from_direction(d: &Direction) -> Result<Self, Error> {
        if d.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: d.dim(),
            });
        }
        Ok(Ray::new(d.vector()[0].clone(), d.vector()[1].clone()))
    }

    pub fn to_direction(&self) -> Direction {
        Direction::new(vec![self.x.clone(), self.y.clone()]).expect("ray is nonzero")
    }

    fn between(a: &Point, b: &Point) -> Result<Self, Error> {
        let d = rational::sub(b.coords(), a.coords());
        if d.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: d.len(),
            });
        }
        if rational::is_zero_vec(&d) {
            return Err(Error::NotClothespin("coincident points".into()));
        }
        Ok(Ray::new(d[0].clone(), d[1].clone()))
    }

    pub fn dot(&self, o: &Ray) -> Rational {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Ray) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }

    /// Rotation by +90 degrees.
    pub fn perp_ccw(&self) -> Ray {
        Ray::new(-self.y.clone(), self.x.clone())
    }

    pub fn neg(&self) -> Ray {
        Ray::new(-self.x.clone(), -self.y.clone())
    }

    pub fn add(&self, o: &Ray) -> Ray {
        Ray::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn same_ray(&self, o: &Ray) -> bool {
        self.cross(o).is_zero() && self.dot(o).is_positive()
    }

    fn half(&self) -> u8 {
        if self.y.is_positive() || (self.y.is_zero() && self.x.is_positive()) {
            0
        } else {
            1
        }
    }

    /// Counterclockwise angle order starting at the positive x-axis.
    pub fn angle_cmp(&self, o: &Ray) -> Ordering {
        self.half().cmp(&o.half()).then_with(|| {
            let c = self.cross(o);
            if c.is_positive() {
                Ordering::Less
            } else if c.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    }

    /// This ray expressed in the frame whose x-axis is `base`; its angle is
    /// the counterclockwise angle from `base` to `self`.
    pub fn relative_to(&self, base: &Ray) -> Ray {
        Ray::new(base.dot(self), base.cross(self))
    }

    /// Approximate angle for drawing only.
    pub fn angle_f64(&self) -> f64 {
        rational::to_f64(&self.y).atan2(rational::to_f64(&self.x))
    }

    fn to_json(&self) -> Value {
        json!([rational::format(&self.x), rational::format(&self.y)])
    }
}

/// A point strictly inside the open counterclockwise gap from `a` to `b`.
/// When `a` and `b` are the same ray the gap is the rest of the circle.
fn gap_representative(a: &Ray, b: &Ray) -> Ray {
    let c = a.cross(b);
    if c.is_positive() {
        a.add(b)
    } else {
        a.perp_ccw()
    }
}

/// Compares the counterclockwise sweep from `a1` to `b1` with the sweep
/// from `a2` to `b2`.
pub fn sweep_cmp(a1: &Ray, b1: &Ray, a2: &Ray, b2: &Ray) -> Ordering {
    b1.relative_to(a1).angle_cmp(&b2.relative_to(a2))
}

/// One maximal arc of a region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub start: Ray,
    pub start_closed: bool,
    pub end: Ray,
    pub end_closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularRegion {
    rays: Vec<Ray>,
    ray_in: Vec<bool>,
    /// `gap_in[i]` covers the open arc from `rays[i]` to `rays[i + 1]`.
    gap_in: Vec<bool>,
    /// Membership of the whole circle when there are no boundary rays.
    full: bool,
}

impl CircularRegion {
    pub fn empty() -> Self {
        CircularRegion {
            rays: Vec::new(),
            ray_in: Vec::new(),
            gap_in: Vec::new(),
            full: false,
        }
    }

    pub fn full() -> Self {
        CircularRegion {
            full: true,
            ..CircularRegion::empty()
        }
    }

    /// Samples `pred` on each critical ray and each gap between them.
    /// `pred` must be constant on every open gap.
    pub fn from_predicate(critical: &[Ray], pred: impl Fn(&Ray) -> bool) -> Self {
        let mut rays: Vec<Ray> = Vec::new();
        for r in critical {
            if !rays.iter().any(|q| q.same_ray(r)) {
                rays.push(r.clone());
            }
        }
        rays.sort_by(Ray::angle_cmp);
        if rays.is_empty() {
            let full = pred(&Ray::from_ints(1, 0));
            return CircularRegion {
                full,
                ..CircularRegion::empty()
            };
        }
        let n = rays.len();
        let ray_in = rays.iter().map(&pred).collect();
        let gap_in = (0..n)
            .map(|i| pred(&gap_representative(&rays[i], &rays[(i + 1) % n])))
            .collect();
        CircularRegion {
            rays,
            ray_in,
            gap_in,
            full: false,
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        loop {
            let n = self.rays.len();
            if n == 0 {
                return self;
            }
            let redundant = (0..n).find(|&i| {
                let before = self.gap_in[(i + n - 1) % n];
                self.ray_in[i] == before && self.gap_in[i] == before
            });
            let Some(i) = redundant else { return self };
            if n == 1 {
                return CircularRegion {
                    full: self.ray_in[0],
                    ..CircularRegion::empty()
                };
            }
            self.rays.remove(i);
            self.ray_in.remove(i);
            self.gap_in.remove(i);
        }
    }

    pub fn contains(&self, s: &Ray) -> bool {
        if self.rays.is_empty() {
            return self.full;
        }
        if let Some(i) = self.rays.iter().position(|r| r.same_ray(s)) {
            return self.ray_in[i];
        }
        // gap i holds s when s lies strictly between rays[i] and rays[i+1]
        let n = self.rays.len();
        let i = match self.rays.iter().position(|r| s.angle_cmp(r) == Ordering::Less) {
            Some(0) | None => n - 1,
            Some(j) => j - 1,
        };
        self.gap_in[i]
    }

    pub fn contains_direction(&self, d: &Direction) -> Result<bool, Error> {
        Ok(self.contains(&Ray::from_direction(d)?))
    }

    pub fn boundary_rays(&self) -> &[Ray] {
        &self.rays
    }

    fn combine(&self, other: &CircularRegion, op: impl Fn(bool, bool) -> bool) -> Self {
        let critical: Vec<Ray> = self.rays.iter().chain(&other.rays).cloned().collect();
        CircularRegion::from_predicate(&critical, |s| op(self.contains(s), other.contains(s)))
    }

    pub fn union(&self, other: &CircularRegion) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &CircularRegion) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &CircularRegion) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    pub fn symmetric_difference(&self, other: &CircularRegion) -> Self {
        self.combine(other, |a, b| a != b)
    }

    pub fn closure(&self) -> Self {
        let n = self.rays.len();
        let mut out = self.clone();
        for i in 0..n {
            out.ray_in[i] |= self.gap_in[i] || self.gap_in[(i + n - 1) % n];
        }
        out.normalized()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty() && !self.full
    }

    pub fn is_subset(&self, other: &CircularRegion) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &CircularRegion) -> bool {
        self.intersection(other).is_empty()
    }

    /// Maximal arcs in counterclockwise order. Isolated member rays appear as
    /// degenerate closed arcs with `start == end`.
    pub fn arcs(&self) -> Vec<Arc> {
        let n = self.rays.len();
        if n == 0 {
            return Vec::new();
        }
        // start at a ray whose preceding gap is outside the region
        let Some(first) = (0..n).find(|&i| !self.gap_in[(i + n - 1) % n]) else {
            // every gap is inside: the complement is a set of excluded rays
            return (0..n)
                .map(|i| Arc {
                    start: self.rays[i].clone(),
                    start_closed: self.ray_in[i],
                    end: self.rays[(i + 1) % n].clone(),
                    end_closed: self.ray_in[(i + 1) % n],
                })
                .collect();
        };
        let mut arcs = Vec::new();
        let mut k = 0;
        while k < n {
            let i = (first + k) % n;
            if !self.gap_in[i] {
                if self.ray_in[i] {
                    let ray = self.rays[i].clone();
                    arcs.push(Arc {
                        start: ray.clone(),
                        start_closed: true,
                        end: ray,
                        end_closed: true,
                    });
                }
                k += 1;
                continue;
            }
            let mut j = i;
            loop {
                k += 1;
                j = (j + 1) % n;
                if !(self.ray_in[j] && self.gap_in[j]) || k >= n {
                    break;
                }
            }
            arcs.push(Arc {
                start: self.rays[i].clone(),
                start_closed: self.ray_in[i],
                end: self.rays[j].clone(),
                end_closed: self.ray_in[j],
            });
            if self.ray_in[j] {
                k += 1;
            }
        }
        arcs
    }

    pub fn to_json(&self) -> Value {
        if self.rays.is_empty() {
            return json!({ "full": self.full, "arcs": [] });
        }
        let arcs: Vec<Value> = self
            .arcs()
            .iter()
            .map(|a| {
                json!({
                    "start": a.start.to_json(),
                    "start_closed": a.start_closed,
                    "end": a.end.to_json(),
                    "end_closed": a.end_closed,
                })
            })
            .collect();
        json!({ "full": false, "arcs": arcs })
    }
}

/// Directions `s` in which `v1` is strictly below `v2` (`s·v1 < s·v2`), so an
/// isolated edge `[v1, v2]` records a birth at the height of `v1`. The open
/// half circle is bounded by the two rays perpendicular to `v2 - v1`.
pub fn birth_interval(v1: &Point, v2: &Point) -> Result<CircularRegion, Error> {
    let w = Ray::between(v1, v2)?;
    let p = w.perp_ccw();
    Ok(CircularRegion::from_predicate(&[p.clone(), p.neg()], |s| {
        s.dot(&w).is_positive()
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClothespinRegions {
    pub r: [CircularRegion; 4],
    pub w: CircularRegion,
}

/// The closed double wedge of directions for which `v3` is not strictly
/// outside the height range of `v2` and `v4`.
fn wedge_w(v2: &Point, v3: &Point, v4: &Point) -> Result<CircularRegion, Error> {
    let a = Ray::between(v3, v2)?;
    let b = Ray::between(v3, v4)?;
    let critical = [a.perp_ccw(), a.perp_ccw().neg(), b.perp_ccw(), b.perp_ccw().neg()];
    Ok(CircularRegion::from_predicate(&critical, |s| {
        !(s.dot(&a) * s.dot(&b)).is_positive()
    }))
}

/// Checks the clothespin shape: four vertices, edges `[v1,v2]` and `[v3,v4]`
/// and `v3` strictly inside the triangle `v1 v2 v4`.
pub fn check_clothespin(k: &SimplicialComplex) -> Result<[Point; 4], Error> {
    if k.ambient_dim() != 2 {
        return Err(Error::NotClothespin("clothespins live in R^2".into()));
    }
    let vertices = k.vertex_indices();
    if vertices.len() != 4 || k.count_dim(1) != 2 || k.max_dim() != Some(1) {
        return Err(Error::NotClothespin("expected 4 vertices and 2 edges".into()));
    }
    if !k.contains(&Simplex::edge(vertices[0], vertices[1])) || !k.contains(&Simplex::edge(vertices[2], vertices[3])) {
        return Err(Error::NotClothespin("edges must be [v1,v2] and [v3,v4]".into()));
    }
    let p = [0, 1, 2, 3].map(|i| k.point(vertices[i]).clone());
    if !strictly_inside_triangle(&p[2], &p[0], &p[1], &p[3]) {
        return Err(Error::NotClothespin("v3 is not interior to conv{v1,v2,v4}".into()));
    }
    Ok(p)
}

fn orient(a: &Point, b: &Point, c: &Point) -> Rational {
    let ab = rational::sub(b.coords(), a.coords());
    let ac = rational::sub(c.coords(), a.coords());
    &ab[0] * &ac[1] - &ab[1] * &ac[0]
}

/// Exact sign test: `x` strictly inside the nondegenerate triangle `abc`.
pub fn strictly_inside_triangle(x: &Point, a: &Point, b: &Point, c: &Point) -> bool {
    let total = rational::sign(&orient(a, b, c));
    total != 0
        && rational::sign(&orient(a, b, x)) == total
        && rational::sign(&orient(b, c, x)) == total
        && rational::sign(&orient(c, a, x)) == total
}

/// The regions `R_1..R_4` (symmetric differences of the birth intervals of
/// each vertex in the clothespin and in its edge-swapped partner) and the
/// closed region of observability `W`.
pub fn clothespin_regions(k: &SimplicialComplex) -> Result<ClothespinRegions, Error> {
    let [v1, v2, v3, v4] = check_clothespin(k)?;
    let r1 = birth_interval(&v1, &v2)?.symmetric_difference(&birth_interval(&v1, &v4)?);
    let r2 = birth_interval(&v2, &v1)?.symmetric_difference(&birth_interval(&v2, &v3)?);
    let r3 = birth_interval(&v3, &v4)?.symmetric_difference(&birth_interval(&v3, &v2)?);
    let r4 = birth_interval(&v4, &v3)?.symmetric_difference(&birth_interval(&v4, &v1)?);
    let w = wedge_w(&v2, &v3, &v4)?;
    Ok(ClothespinRegions { r: [r1, r2, r3, r4], w })
}

/// The edge-swapped partner: same vertices, edges `[v1,v4]` and `[v2,v3]`.
pub fn swapped_partner(k: &SimplicialComplex) -> Result<SimplicialComplex, Error> {
    check_clothespin(k)?;
    let v = k.vertex_indices();
    SimplicialComplex::new(2, k.coords().to_vec(), vec![vec![v[0], v[3]], vec![v[1], v[2]]])
}

/// Splits a clothesline into its clothespin motifs (vertices `4i..4i+3`).
pub fn clothesline_motifs(k: &SimplicialComplex) -> Result<Vec<SimplicialComplex>, Error> {
    let n0 = k.count_dim(0);
    if n0 == 0 || !n0.is_multiple_of(4) || k.count_dim(1) != n0 / 2 || k.max_dim() != Some(1) {
        return Err(Error::Malformed("expected 4m vertices and 2m edges".into()));
    }
    let vertices = k.vertex_indices();
    (0..n0 / 4)
        .map(|i| {
            let idx = &vertices[4 * i..4 * i + 4];
            if !k.contains(&Simplex::edge(idx[0], idx[1])) || !k.contains(&Simplex::edge(idx[2], idx[3])) {
                return Err(Error::Malformed(format!("motif {i} does not have clothespin edges")));
            }
            let coords = idx.iter().map(|&v| k.point(v).clone()).collect();
            SimplicialComplex::new(2, coords, vec![vec![0, 1], vec![2, 3]])
        })
        .collect()
}

/// The region of observability of each clothespin motif.
pub fn clothesline_regions(k: &SimplicialComplex) -> Result<Vec<CircularRegion>, Error> {
    clothesline_motifs(k)?
        .iter()
        .map(|m| clothespin_regions(m).map(|r| r.w))
        .collect()
}

pub fn regions_disjoint(clothesline: &SimplicialComplex) -> Result<bool, Error> {
    let regions = clothesline_regions(clothesline)?;
    Ok(all_disjoint(&regions))
}

pub fn all_disjoint(regions: &[CircularRegion]) -> bool {
    regions
        .iter()
        .enumerate()
        .all(|(i, a)| regions[i + 1..].iter().all(|b| a.is_disjoint(b)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingReport {
    pub satisfied: bool,
    /// Indices of motifs whose region contains no direction of `S`.
    pub uncovered: Vec<usize>,
}

/// Whether `directions` meets every motif's region of observability.
pub fn hitting_lower_bound(clothesline: &SimplicialComplex, directions: &[Direction]) -> Result<HittingReport, Error> {
    let regions = clothesline_regions(clothesline)?;
    let rays: Vec<Ray> = directions.iter().map(Ray::from_direction).collect::<Result<_, _>>()?;
    let uncovered: Vec<usize> = regions
        .iter()
        .enumerate()
        .filter(|(_, w)| !rays.iter().any(|s| w.contains(s)))
        .map(|(i, _)| i)
        .collect();
    Ok(HittingReport {
        satisfied: uncovered.is_empty(),
        uncovered,
    })
}

/// Unit-circle SVG with every region drawn as shaded arcs (one colour per
/// region). Presentation only.
pub fn regions_svg(regions: &[CircularRegion]) -> String {
    const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
    let (cx, cy, r) = (150.0, 150.0, 100.0);
    let mut out = String::new();
    out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"300\" height=\"300\" viewBox=\"0 0 300 300\">\n");
    out.push_str(&format!(
        "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"{r}\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n"
    ));
    for (i, region) in regions.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        if region.full {
            out.push_str(&format!(
                "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"{r}\" fill=\"{colour}\" fill-opacity=\"0.3\"/>\n"
            ));
            continue;
        }
        for arc in region.arcs() {
            let a0 = arc.start.angle_f64();
            let mut a1 = arc.end.angle_f64();
            if a1 <= a0 {
                a1 += std::f64::consts::TAU;
            }
            let large = if a1 - a0 > std::f64::consts::PI { 1 } else { 0 };
            let (x0, y0) = (cx + r * a0.cos(), cy - r * a0.sin());
            let (x1, y1) = (cx + r * a1.cos(), cy - r * a1.sin());
            out.push_str(&format!(
                "  <path d=\"M {cx} {cy} L {x0:.3} {y0:.3} A {r} {r} 0 {large} 0 {x1:.3} {y1:.3} Z\" fill=\"{colour}\" fill-opacity=\"0.3\" stroke=\"{colour}\"/>\n"
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}
