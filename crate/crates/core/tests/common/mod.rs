#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use topodesc::complex::combinations;
use topodesc::descriptors::Parameter;
use topodesc::rational::{ratio, Rational};
use topodesc::{Direction, Point, SimplicialComplex};

pub fn e(d: usize, i: usize) -> Parameter {
    Parameter::Direction(Direction::axis(d, i))
}

pub fn dir(v: &[i64]) -> Direction {
    Direction::from_ints(v)
}

pub fn param(v: &[i64]) -> Parameter {
    Parameter::Direction(dir(v))
}

pub fn pt(v: &[i64]) -> Point {
    Point::from_ints(v)
}

/// Up to `max_vertices` distinct integer points in `[-4, 4]^d` and a random
/// set of maximal simplices of dimension at most `min(d, 3)`.
pub fn random_complex(rng: &mut ChaCha8Rng, max_vertices: usize, d: usize) -> SimplicialComplex {
    let n = rng.gen_range(1..=max_vertices);
    let mut points: Vec<Point> = Vec::new();
    while points.len() < n {
        let p = Point::from_ints(&(0..d).map(|_| rng.gen_range(-4..=4)).collect::<Vec<_>>());
        if !points.contains(&p) {
            points.push(p);
        }
    }
    let indices: Vec<usize> = (0..n).collect();
    let mut maximal = Vec::new();
    let top = d.min(3).min(n - 1);
    for size in 2..=top + 1 {
        for s in combinations(&indices, size) {
            if rng.gen_bool(0.35 / size as f64 * 2.0) {
                maximal.push(s);
            }
        }
    }
    SimplicialComplex::new(d, points, maximal).expect("random complex")
}

/// Nonzero direction with components `p/q`, `|p| <= 6`, `1 <= q <= 5`.
pub fn random_direction(rng: &mut ChaCha8Rng, d: usize) -> Direction {
    loop {
        let v: Vec<Rational> = (0..d)
            .map(|_| ratio(rng.gen_range(-6..=6), rng.gen_range(1..=5)))
            .collect();
        if let Ok(s) = Direction::new(v) {
            return s;
        }
    }
}

/// Nonzero direction in `{-1, 0, 1}^d`; ties between vertices are common.
pub fn tie_heavy_direction(rng: &mut ChaCha8Rng, d: usize) -> Direction {
    let choices = [-1i64, 0, 1];
    loop {
        let v: Vec<i64> = (0..d).map(|_| *choices.choose(rng).unwrap()).collect();
        if v.iter().any(|&x| x != 0) {
            return Direction::from_ints(&v);
        }
    }
}
