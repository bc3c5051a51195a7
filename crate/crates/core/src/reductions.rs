//! Maps that compute one descriptor from another, and a harness that checks
//! a map commutes with direct computation.
//!
//! A [`Reduction`] from `source` to `target` means the target descriptor can
//! be computed from the source value alone, so the source is at least as
//! discriminating as the target.

use std::collections::BTreeMap;

use crate::complex::SimplicialComplex;
use crate::descriptors::{
    compute, Death, DegreeFunctions, DescriptorType, DescriptorValue, Flavor, Parameter, PersistenceDiagram,
    StepFunction,
};
use crate::error::Error;
use crate::filtration::Direction;
use crate::rational::Rational;

pub type Transform = fn(&DescriptorValue) -> Result<DescriptorValue, Error>;

#[derive(Clone, Copy)]
pub struct Reduction {
    pub source: DescriptorType,
    pub target: DescriptorType,
    pub transform: Transform,
}

impl std::fmt::Debug for Reduction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Reduction({} -> {})", self.source, self.target)
    }
}

impl Reduction {
    pub fn apply(&self, v: &DescriptorValue) -> Result<DescriptorValue, Error> {
        (self.transform)(v)
    }

    pub fn all() -> [Reduction; 7] {
        use DescriptorType::*;
        [
            Reduction {
                source: Apd,
                target: Pd,
                transform: apd_to_pd,
            },
            Reduction {
                source: Abc,
                target: Bc,
                transform: abc_to_bc,
            },
            Reduction {
                source: Aecc,
                target: Ecc,
                transform: aecc_to_ecc,
            },
            Reduction {
                source: Pd,
                target: Bc,
                transform: pd_to_bc,
            },
            Reduction {
                source: Bc,
                target: Ecc,
                transform: bc_to_ecc,
            },
            Reduction {
                source: Apd,
                target: Abc,
                transform: apd_to_abc,
            },
            Reduction {
                source: Abc,
                target: Aecc,
                transform: abc_to_aecc,
            },
        ]
    }

    pub fn find(source: DescriptorType, target: DescriptorType) -> Option<Reduction> {
        Reduction::all()
            .into_iter()
            .find(|r| r.source == source && r.target == target)
    }
}

/// Whether `target` is computable from `source` by a chain of known
/// reductions (including the empty chain).
pub fn reduces(source: DescriptorType, target: DescriptorType) -> bool {
    let mut seen = vec![source];
    let mut frontier = vec![source];
    while let Some(t) = frontier.pop() {
        for r in Reduction::all() {
            if r.source == t && !seen.contains(&r.target) {
                seen.push(r.target);
                frontier.push(r.target);
            }
        }
    }
    seen.contains(&target)
}

fn mismatch(expected: &str, got: &DescriptorValue) -> Error {
    Error::FlavorMismatch(format!("expected {expected}, got {}", got.descriptor_type()))
}

pub fn apd_to_pd(v: &DescriptorValue) -> Result<DescriptorValue, Error> {
    let DescriptorValue::Apd(d) = v else {
        return Err(mismatch("apd", v));
    };
    let points = d.points().iter().filter(|p| !p.is_diagonal()).cloned().collect();
    Ok(DescriptorValue::Pd(PersistenceDiagram::new(Flavor::Concise, points)?))
}

fn difference(functions: &DegreeFunctions) -> DegreeFunctions {
    functions
        .iter()
        .map(|(&k, g)| (k, g.map(1, |v| vec![v[0] - v[1]])))
        .filter(|(_, g)| !g.is_zero())
        .collect()
}

pub fn abc_to_bc(v: &DescriptorValue) -> Result<DescriptorValue, Error> {
    let DescriptorValue::Abc(f) = v else {
        return Err(mismatch("abc", v));
    };
    Ok(DescriptorValue::Bc(difference(f)))
}

pub fn aecc_to_ecc(v: &DescriptorValue) -> Result<DescriptorValue, Error> {
    let DescriptorValue::Aecc(g) = v else {
        return Err(mismatch("aecc", v));
    };
    Ok(DescriptorValue::Ecc(g.map(1, |v| vec![v[0] - v[1]])))
}

pub fn pd_to_bc(v: &DescriptorValue) -> Result<DescriptorValue, Error> {
    let DescriptorValue::Pd(d) = v else {
        return Err(mismatch("pd", v));
    };
    let mut increments: BTreeMap<usize, Vec<(Rational, Vec<i64>)>> = BTreeMap::new();
    for p in d.points() {
        let inc = increments.entry(p.degree).or_default();
        inc.push((p.birth.clone(), vec![1]));
        if let Death::Finite(t) = &p.death {
            inc.push((t.clone(), vec![-1]));
        }
    }
    Ok(DescriptorValue::Bc(
        increments
            .into_iter()
            .map(|(k, inc)| (k, StepFunction::from_increments(1, inc)))
            .filter(|(_, g)| !g.is_zero())
            .collect(),
    ))
}

pub fn bc_to_ecc(v: &DescriptorValue) -> Result<DescriptorValue, Error> {
    let DescriptorValue::Bc(f) = v else {
        return Err(mismatch("bc", v));
    };
    let degrees: Vec<usize> = f.keys().copied().collect();
    let functions: Vec<&StepFunction> = f.values().collect();
    Ok(DescriptorValue::Ecc(StepFunction::combine(&functions, 1, |values| {
        let sum = degrees
            .iter()
            .zip(values)
            .map(|(k, v)| if k % 2 == 0 { v[0] } else { -v[0] })
            .sum();
        vec![sum]
    })))
}

pub fn apd_to_abc(v: &DescriptorValue) -> Result<DescriptorValue, Error> {
    let DescriptorValue::Apd(d) = v else {
        return Err(mismatch("apd", v));
    };
    let mut increments: BTreeMap<usize, Vec<(Rational, Vec<i64>)>> = BTreeMap::new();
    for p in d.points() {
        let inc = increments.entry(p.degree).or_default();
        inc.push((p.birth.clone(), vec![1, 0]));
        if let Death::Finite(t) = &p.death {
            inc.push((t.clone(), vec![0, 1]));
        }
    }
    Ok(DescriptorValue::Abc(
        increments
            .into_iter()
            .map(|(k, inc)| (k, StepFunction::from_increments(2, inc)))
            .filter(|(_, g)| !g.is_zero())
            .collect(),
    ))
}

/// A simplex of dimension m is either a positive m-simplex or a negative
/// m-simplex killing a class of degree m - 1, so the parity counts are sums
/// of the appropriate Betti coordinates.
pub fn abc_to_aecc(v: &DescriptorValue) -> Result<DescriptorValue, Error> {
    let DescriptorValue::Abc(f) = v else {
        return Err(mismatch("abc", v));
    };
    let degrees: Vec<usize> = f.keys().copied().collect();
    let functions: Vec<&StepFunction> = f.values().collect();
    Ok(DescriptorValue::Aecc(StepFunction::combine(&functions, 2, |values| {
        let mut counts = vec![0, 0];
        for (k, v) in degrees.iter().zip(values) {
            counts[k % 2] += v[0];
            counts[(k + 1) % 2] += v[1];
        }
        counts
    })))
}

/// True iff `r.transform` applied to the source descriptor equals the
/// directly computed target descriptor for every direction.
pub fn verify_reduction(r: &Reduction, k: &SimplicialComplex, directions: &[Direction]) -> bool {
    directions.iter().all(|s| {
        let p = Parameter::Direction(s.clone());
        let (Ok(source), Ok(target)) = (compute(r.source, k, &p), compute(r.target, k, &p)) else {
            return false;
        };
        matches!(r.apply(&source), Ok(v) if v == target)
    })
}
