//! CSV and SVG renderings of descriptor values. Coordinates in SVG are
//! floating point; CSV keeps exact rationals.

use std::fmt::Write;

use topodesc::descriptors::{Death, DegreeFunctions, DescriptorValue, StepFunction};
use topodesc::rational;

pub fn csv(v: &DescriptorValue) -> String {
    let mut out = String::new();
    match v {
        DescriptorValue::Pd(d) | DescriptorValue::Apd(d) => {
            out.push_str("degree,birth,death\n");
            for p in d.points() {
                let death = match &p.death {
                    Death::Finite(t) => rational::format(t),
                    Death::Infinite => "inf".into(),
                };
                writeln!(out, "{},{},{}", p.degree, rational::format(&p.birth), death).unwrap();
            }
        }
        DescriptorValue::Bc(f) => degree_rows(&mut out, f, "value"),
        DescriptorValue::Abc(f) => degree_rows(&mut out, f, "positive,negative"),
        DescriptorValue::Ecc(g) => {
            out.push_str("height,value\n");
            step_rows(&mut out, None, g);
        }
        DescriptorValue::Aecc(g) => {
            out.push_str("height,even,odd\n");
            step_rows(&mut out, None, g);
        }
        DescriptorValue::FirstVertex { lowest, vertex_count } => {
            out.push_str("vertex_count,lowest\n");
            for p in lowest {
                writeln!(out, "{vertex_count},\"{p}\"").unwrap();
            }
        }
        DescriptorValue::Trivial => out.push_str("value\n0\n"),
        DescriptorValue::Indicator(b) => writeln!(out, "value\n{}", u8::from(*b)).unwrap(),
    }
    out
}

fn degree_rows(out: &mut String, f: &DegreeFunctions, header: &str) {
    writeln!(out, "degree,height,{header}").unwrap();
    for (k, g) in f {
        step_rows(out, Some(*k), g);
    }
}

fn step_rows(out: &mut String, degree: Option<usize>, g: &StepFunction) {
    for (h, values) in g.events() {
        let vals: Vec<String> = values.iter().map(i64::to_string).collect();
        match degree {
            Some(k) => writeln!(out, "{k},{},{}", rational::format(h), vals.join(",")).unwrap(),
            None => writeln!(out, "{},{}", rational::format(h), vals.join(",")).unwrap(),
        }
    }
}

const SIZE: f64 = 320.0;
const MARGIN: f64 = 40.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

struct Frame {
    lo: f64,
    hi: f64,
    vlo: f64,
    vhi: f64,
}

impl Frame {
    fn x(&self, t: f64) -> f64 {
        MARGIN + (t - self.lo) / (self.hi - self.lo) * (SIZE - 2.0 * MARGIN)
    }

    fn y(&self, v: f64) -> f64 {
        SIZE - MARGIN - (v - self.vlo) / (self.vhi - self.vlo) * (SIZE - 2.0 * MARGIN)
    }
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        let pad = (hi - lo) * 0.1;
        (lo - pad, hi + pad)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

fn header(out: &mut String, title: &str) {
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    )
    .unwrap();
    writeln!(out, "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>").unwrap();
    writeln!(
        out,
        "  <text x=\"{MARGIN}\" y=\"20\" font-size=\"12\" font-family=\"sans-serif\">{title}</text>"
    )
    .unwrap();
}

pub fn svg(v: &DescriptorValue) -> String {
    let mut out = String::new();
    match v {
        DescriptorValue::Pd(d) | DescriptorValue::Apd(d) => {
            header(&mut out, v.descriptor_type().name());
            let finite: Vec<f64> = d
                .points()
                .iter()
                .flat_map(|p| {
                    let mut xs = vec![rational::to_f64(&p.birth)];
                    if let Death::Finite(t) = &p.death {
                        xs.push(rational::to_f64(t));
                    }
                    xs
                })
                .collect();
            let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let (lo, hi) = if finite.is_empty() { (0.0, 1.0) } else { padded(lo, hi) };
            // Infinite deaths are drawn on a line just above the plot range.
            let inf = hi + (hi - lo) * 0.1;
            let frame = Frame {
                lo,
                hi: inf,
                vlo: lo,
                vhi: inf,
            };
            writeln!(
                out,
                "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#888\"/>",
                frame.x(lo),
                frame.y(lo),
                frame.x(inf),
                frame.y(inf)
            )
            .unwrap();
            writeln!(
                out,
                "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#ccc\" stroke-dasharray=\"4 2\"/>",
                frame.x(lo),
                frame.y(inf),
                frame.x(inf),
                frame.y(inf)
            )
            .unwrap();
            for p in d.points() {
                let b = rational::to_f64(&p.birth);
                let dv = match &p.death {
                    Death::Finite(t) => rational::to_f64(t),
                    Death::Infinite => inf,
                };
                writeln!(
                    out,
                    "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"{}\" fill-opacity=\"0.7\"/>",
                    frame.x(b),
                    frame.y(dv),
                    COLORS[p.degree % COLORS.len()]
                )
                .unwrap();
            }
        }
        DescriptorValue::Bc(f) | DescriptorValue::Abc(f) => {
            header(&mut out, v.descriptor_type().name());
            let functions: Vec<(usize, &StepFunction)> = f.iter().map(|(k, g)| (*k, g)).collect();
            staircases(&mut out, &functions);
        }
        DescriptorValue::Ecc(g) | DescriptorValue::Aecc(g) => {
            header(&mut out, v.descriptor_type().name());
            staircases(&mut out, &[(0, g)]);
        }
        other => {
            header(&mut out, other.descriptor_type().name());
            let text = serde_json::to_string(&topodesc::io::descriptor_to_json(other)).unwrap_or_default();
            let escaped = text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;");
            writeln!(
                out,
                "  <text x=\"{MARGIN}\" y=\"60\" font-size=\"11\" font-family=\"monospace\">{escaped}</text>"
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

/// One staircase per (function, coordinate); colors cycle by degree and
/// coordinate.
fn staircases(out: &mut String, functions: &[(usize, &StepFunction)]) {
    let heights: Vec<f64> = functions
        .iter()
        .flat_map(|(_, g)| g.events().iter().map(|(h, _)| rational::to_f64(h)))
        .collect();
    let values: Vec<f64> = functions
        .iter()
        .flat_map(|(_, g)| g.events().iter().flat_map(|(_, v)| v.iter().map(|&x| x as f64)))
        .chain([0.0])
        .collect();
    let (lo, hi) = if heights.is_empty() {
        (0.0, 1.0)
    } else {
        padded(
            heights.iter().copied().fold(f64::INFINITY, f64::min),
            heights.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    };
    let (vlo, vhi) = padded(
        values.iter().copied().fold(f64::INFINITY, f64::min),
        values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    );
    let frame = Frame { lo, hi, vlo, vhi };
    writeln!(
        out,
        "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#888\"/>",
        frame.x(lo),
        frame.y(0.0),
        frame.x(hi),
        frame.y(0.0)
    )
    .unwrap();
    let mut color = 0;
    for (_, g) in functions {
        for coord in 0..g.width() {
            let mut path = format!("M {:.2} {:.2}", frame.x(lo), frame.y(0.0));
            for (h, v) in g.events() {
                let x = frame.x(rational::to_f64(h));
                write!(path, " H {x:.2} V {:.2}", frame.y(v[coord] as f64)).unwrap();
            }
            write!(path, " H {:.2}", frame.x(hi)).unwrap();
            writeln!(
                out,
                "  <path d=\"{path}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>",
                COLORS[color % COLORS.len()]
            )
            .unwrap();
            color += 1;
        }
    }
}
