//! JSON formats for complexes, direction lists and descriptor values.
//!
//! Rationals are always strings (`"p"` or `"p/q"`); plain JSON integers are
//! accepted on input.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::complex::{Point, SimplicialComplex};
use crate::descriptors::{
    Death, DegreeFunctions, DescriptorType, DescriptorValue, DiagramPoint, Flavor, PersistenceDiagram, StepFunction,
};
use crate::error::Error;
use crate::filtration::Direction;
use crate::rational::{self, Rational};

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn rational_to_json(r: &Rational) -> Value {
    Value::String(rational::format(r))
}

fn rational_from_json(v: &Value) -> Result<Rational, Error> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(n) => n
            .as_i64()
            .map(rational::int)
            .ok_or_else(|| Error::MalformedRational(n.to_string())),
        other => Err(Error::MalformedRational(other.to_string())),
    }
}

fn rationals_from_json(v: &Value) -> Result<Vec<Rational>, Error> {
    match v {
        Value::Array(items) => items.iter().map(rational_from_json).collect(),
        Value::String(s) => rational::parse_list(s.trim().trim_start_matches('(').trim_end_matches(')')),
        other => Err(malformed(format!("expected a coordinate list, got {other}"))),
    }
}

fn usize_from_json(v: &Value) -> Result<usize, Error> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| malformed(format!("expected a natural number, got {v}")))
}

pub fn point_to_json(p: &Point) -> Value {
    Value::Array(p.coords().iter().map(rational_to_json).collect())
}

pub fn point_from_json(v: &Value) -> Result<Point, Error> {
    Ok(Point(rationals_from_json(v)?))
}

/// `{"ambient_dim": d, "vertices": [[x, ...], ...], "simplices": [[i, ...], ...]}`
pub fn complex_to_json(k: &SimplicialComplex) -> Value {
    json!({
        "ambient_dim": k.ambient_dim(),
        "vertices": k.coords().iter().map(point_to_json).collect::<Vec<_>>(),
        "simplices": k.simplices().iter().map(|s| s.vertices().to_vec()).collect::<Vec<_>>(),
    })
}

/// Face closure is taken on load, so listing maximal simplices is enough.
pub fn complex_from_json(v: &Value) -> Result<SimplicialComplex, Error> {
    let ambient_dim = usize_from_json(v.get("ambient_dim").ok_or_else(|| malformed("missing ambient_dim"))?)?;
    let vertices = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing vertices"))?
        .iter()
        .map(point_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    let simplices = match v.get("simplices") {
        None => Vec::new(),
        Some(Value::Array(items)) => items
            .iter()
            .map(|s| {
                s.as_array()
                    .ok_or_else(|| malformed("simplex must be an index list"))?
                    .iter()
                    .map(usize_from_json)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?,
        Some(_) => return Err(malformed("simplices must be a list")),
    };
    SimplicialComplex::new(ambient_dim, vertices, simplices)
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex, Error> {
    let v: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    complex_from_json(&v)
}

pub fn complexes_from_json(v: &Value) -> Result<Vec<SimplicialComplex>, Error> {
    v.as_array()
        .ok_or_else(|| malformed("expected a list of complexes"))?
        .iter()
        .map(complex_from_json)
        .collect()
}

/// Either a JSON list (of `"a,b"` strings or coordinate arrays) or plain
/// text with one direction per line; blank lines and `#` comments are skipped.
pub fn parse_directions(text: &str) -> Result<Vec<Direction>, Error> {
    if text.trim_start().starts_with('[') {
        let v: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        return v
            .as_array()
            .ok_or_else(|| malformed("expected a list of directions"))?
            .iter()
            .map(|d| Direction::new(rationals_from_json(d)?))
            .collect();
    }
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(Direction::parse)
        .collect()
}

pub fn directions_to_json(directions: &[Direction]) -> Value {
    Value::Array(
        directions
            .iter()
            .map(|d| Value::Array(d.vector().iter().map(rational_to_json).collect()))
            .collect(),
    )
}

fn death_to_json(d: &Death) -> Value {
    match d {
        Death::Finite(t) => rational_to_json(t),
        Death::Infinite => Value::String("inf".into()),
    }
}

fn diagram_to_json(d: &PersistenceDiagram) -> Value {
    Value::Array(
        d.points()
            .iter()
            .map(|p| json!([rational_to_json(&p.birth), death_to_json(&p.death), p.degree]))
            .collect(),
    )
}

fn steps_to_json(g: &StepFunction) -> Value {
    Value::Array(
        g.events()
            .iter()
            .map(|(h, v)| {
                let mut row = vec![rational_to_json(h)];
                row.extend(v.iter().map(|&x| json!(x)));
                Value::Array(row)
            })
            .collect(),
    )
}

fn degrees_to_json(f: &DegreeFunctions) -> Value {
    let map: Map<String, Value> = f.iter().map(|(k, g)| (k.to_string(), steps_to_json(g))).collect();
    Value::Object(map)
}

/// Diagrams are `[birth, death | "inf", degree]` rows; step functions are
/// `[height, value...]` change points.
pub fn descriptor_to_json(v: &DescriptorValue) -> Value {
    let name = v.descriptor_type().name();
    match v {
        DescriptorValue::Pd(d) | DescriptorValue::Apd(d) => json!({"descriptor": name, "points": diagram_to_json(d)}),
        DescriptorValue::Bc(f) | DescriptorValue::Abc(f) => json!({"descriptor": name, "degrees": degrees_to_json(f)}),
        DescriptorValue::Ecc(g) | DescriptorValue::Aecc(g) => json!({"descriptor": name, "steps": steps_to_json(g)}),
        DescriptorValue::FirstVertex { lowest, vertex_count } => json!({
            "descriptor": name,
            "lowest": lowest.iter().map(point_to_json).collect::<Vec<_>>(),
            "vertex_count": vertex_count,
        }),
        DescriptorValue::Trivial => json!({"descriptor": name, "value": 0}),
        DescriptorValue::Indicator(b) => json!({"descriptor": name, "value": b}),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Error> {
    v.get(key).ok_or_else(|| malformed(format!("missing field {key:?}")))
}

fn diagram_from_json(v: &Value, flavor: Flavor) -> Result<PersistenceDiagram, Error> {
    let rows = v.as_array().ok_or_else(|| malformed("points must be a list"))?;
    let points = rows
        .iter()
        .map(|row| {
            let [b, d, k] = row.as_array().map(Vec::as_slice).unwrap_or_default() else {
                return Err(malformed("diagram rows are [birth, death, degree]"));
            };
            let death = if d.as_str() == Some("inf") {
                None
            } else {
                Some(rational_from_json(d)?)
            };
            Ok(DiagramPoint::new(usize_from_json(k)?, rational_from_json(b)?, death))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    PersistenceDiagram::new(flavor, points)
}

fn steps_from_json(v: &Value, width: usize) -> Result<StepFunction, Error> {
    let rows = v.as_array().ok_or_else(|| malformed("steps must be a list"))?;
    let mut samples = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| malformed("step rows are [height, value...]"))?;
        if row.len() != width + 1 {
            return Err(malformed(format!("step rows need {} entries", width + 1)));
        }
        let h = rational_from_json(&row[0])?;
        let values = row[1..]
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| malformed("step values are integers")))
            .collect::<Result<Vec<_>, _>>()?;
        if samples
            .last()
            .is_some_and(|(last, _): &(Rational, Vec<i64>)| *last >= h)
        {
            return Err(malformed("step heights must increase"));
        }
        samples.push((h, values));
    }
    Ok(StepFunction::from_values(width, samples))
}

fn degrees_from_json(v: &Value, width: usize) -> Result<DegreeFunctions, Error> {
    let map = v.as_object().ok_or_else(|| malformed("degrees must be an object"))?;
    let mut out = BTreeMap::new();
    for (k, steps) in map {
        let degree: usize = k.parse().map_err(|_| malformed(format!("bad degree {k:?}")))?;
        let g = steps_from_json(steps, width)?;
        if !g.is_zero() {
            out.insert(degree, g);
        }
    }
    Ok(out)
}

pub fn descriptor_from_json(v: &Value) -> Result<DescriptorValue, Error> {
    let name = field(v, "descriptor")?
        .as_str()
        .ok_or_else(|| malformed("descriptor must be a string"))?;
    let d: DescriptorType = name.parse()?;
    Ok(match d {
        DescriptorType::Pd => DescriptorValue::Pd(diagram_from_json(field(v, "points")?, Flavor::Concise)?),
        DescriptorType::Apd => DescriptorValue::Apd(diagram_from_json(field(v, "points")?, Flavor::Verbose)?),
        DescriptorType::Bc => DescriptorValue::Bc(degrees_from_json(field(v, "degrees")?, 1)?),
        DescriptorType::Abc => DescriptorValue::Abc(degrees_from_json(field(v, "degrees")?, 2)?),
        DescriptorType::Ecc => DescriptorValue::Ecc(steps_from_json(field(v, "steps")?, 1)?),
        DescriptorType::Aecc => DescriptorValue::Aecc(steps_from_json(field(v, "steps")?, 2)?),
        DescriptorType::FirstVertex => DescriptorValue::FirstVertex {
            lowest: field(v, "lowest")?
                .as_array()
                .ok_or_else(|| malformed("lowest must be a list"))?
                .iter()
                .map(point_from_json)
                .collect::<Result<_, _>>()?,
            vertex_count: usize_from_json(field(v, "vertex_count")?)?,
        },
        DescriptorType::Trivial => DescriptorValue::Trivial,
        DescriptorType::Indicator => DescriptorValue::Indicator(
            field(v, "value")?
                .as_bool()
                .ok_or_else(|| malformed("indicator value must be boolean"))?,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptors::{compute, Parameter};
    use crate::fixtures::{fixture, Fixture};

    #[test]
    fn complex_round_trip() {
        for f in [
            Fixture::SingleEdge,
            Fixture::AppendixA,
            Fixture::SparseGraph { d: 4, n1: 2 },
        ] {
            let k = fixture(f).unwrap();
            let text = serde_json::to_string(&complex_to_json(&k)).unwrap();
            let back = parse_complex(&text).unwrap();
            assert_eq!(back.coords(), k.coords());
            assert_eq!(back.simplices(), k.simplices());
            assert!(back.validate().is_empty());
        }
    }

    #[test]
    fn complex_input_variants() {
        let k =
            parse_complex(r#"{"ambient_dim": 2, "vertices": [[0, "1/2"], ["3", 1]], "simplices": [[0, 1]]}"#).unwrap();
        assert_eq!(k.len(), 3);
        assert!(matches!(
            parse_complex(r#"{"ambient_dim": 2, "vertices": [["x", 1]]}"#),
            Err(Error::MalformedRational(_))
        ));
        assert!(matches!(parse_complex("{"), Err(Error::Malformed(_))));
    }

    #[test]
    fn direction_lists() {
        let text = "# axes\n1,0\n\n0,1\n-1/2,3\n";
        let dirs = parse_directions(text).unwrap();
        assert_eq!(dirs.len(), 3);
        let json = serde_json::to_string(&directions_to_json(&dirs)).unwrap();
        assert_eq!(parse_directions(&json).unwrap(), dirs);
        assert_eq!(parse_directions(r#"["1,0", "(0,1)"]"#).unwrap().len(), 2);
        assert!(matches!(parse_directions("0,0"), Err(Error::ZeroDirection)));
    }

    #[test]
    fn descriptor_round_trip() {
        let k = fixture(Fixture::AppendixA).unwrap();
        let s = Parameter::Direction(Direction::from_ints(&[1, 0]));
        for d in DescriptorType::ALL {
            let p = if d == DescriptorType::Indicator {
                Parameter::Point(Point::from_ints(&[1, 1]))
            } else {
                s.clone()
            };
            let v = compute(d, &k, &p).unwrap();
            let back = descriptor_from_json(&descriptor_to_json(&v)).unwrap();
            assert_eq!(back, v, "{d}");
        }
    }

    #[test]
    fn diagram_json_shape() {
        let k = fixture(Fixture::SingleEdge).unwrap();
        let v = compute(
            DescriptorType::Apd,
            &k,
            &Parameter::Direction(Direction::from_ints(&[1, 0])),
        )
        .unwrap();
        assert_eq!(
            descriptor_to_json(&v),
            json!({"descriptor": "apd", "points": [["1", "1", 0], ["1", "inf", 0]]})
        );
    }
}
