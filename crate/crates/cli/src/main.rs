//! `topodesc`: compute and compare descriptors, check faithfulness and
//! envelopes, and generate the fixture complexes.
//!
//! Exit codes: 0 success, 1 a check ran and failed, 2 bad input.

mod export;

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use topodesc::complex::DEFAULT_ENUMERATION_BUDGET;
use topodesc::descriptors::{self, DescriptorType, Parameter, ParameterKind};
use topodesc::faithfulness::{self, AdversaryUniverse, CardinalityBound, Provenance};
use topodesc::fixtures::{self, Fixture};
use topodesc::{geometry, io, observability, rational, Direction, Error, Point, SimplicialComplex};

#[derive(Parser)]
#[command(
    name = "topodesc",
    version,
    about = "Exact lower-star descriptors and faithfulness checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one descriptor as JSON.
    Compute {
        /// Complex JSON file, or `-` for stdin.
        #[arg(long, default_value = "-")]
        complex: PathBuf,
        #[arg(long)]
        descriptor: DescriptorType,
        /// Direction as `a,b,...` (rationals `p/q` allowed).
        #[arg(long, allow_hyphen_values = true, conflicts_with = "point")]
        direction: Option<String>,
        /// Query point for `dr`.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Compare a descriptor on two complexes direction by direction.
    Compare {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        complex2: PathBuf,
        #[arg(long)]
        descriptor: DescriptorType,
        #[arg(long, required_unless_present = "random")]
        directions: Option<PathBuf>,
        /// Use this many random integer directions instead of a file.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Relative faithfulness report for a direction set.
    Faithful {
        #[arg(long, default_value = "-")]
        complex: PathBuf,
        #[arg(long)]
        descriptor: DescriptorType,
        #[arg(long)]
        directions: PathBuf,
        /// `enumerate:maxdim=N` or `list:FILE`.
        #[arg(long)]
        universe: String,
    },
    /// Smallest faithful subset of a candidate pool.
    MinSet {
        #[arg(long, default_value = "-")]
        complex: PathBuf,
        #[arg(long)]
        descriptor: DescriptorType,
        #[arg(long)]
        candidates: PathBuf,
        #[arg(long)]
        universe: String,
        /// Maximum number of subsets to examine.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Necessary conditions on a direction set for the concise descriptors.
    EnvelopeCheck {
        #[arg(long, default_value = "-")]
        complex: PathBuf,
        #[arg(long)]
        directions: PathBuf,
    },
    /// Regions of observability for a clothespin or a clothesline.
    Observability {
        #[arg(long, conflicts_with = "clothesline", required_unless_present = "clothesline")]
        clothespin: Option<PathBuf>,
        #[arg(long)]
        clothesline: Option<usize>,
        /// Also write an SVG drawing of the regions here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Print a fixture complex as JSON.
    Gen {
        /// single_edge, square_K, square_Kprime, appendixA,
        /// sparse_graph(d,n1) or clothesline(m).
        #[arg(long)]
        fixture: String,
    },
    /// Render a descriptor JSON file as CSV or SVG.
    Export {
        #[arg(long)]
        value: PathBuf,
        #[arg(long)]
        format: Format,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Csv,
}

enum Failure {
    Input(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| Failure::Input(format!("malformed JSON in {}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<SimplicialComplex, Failure> {
    let k = io::parse_complex(&read_text(path)?)?;
    let violations = k.validate();
    if let Some(v) = violations.first() {
        return Err(Failure::Input(format!("invalid complex {}: {v:?}", path.display())));
    }
    Ok(k)
}

fn load_directions(path: &Path) -> Result<Vec<Direction>, Failure> {
    Ok(io::parse_directions(&read_text(path)?)?)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn print_json(v: &Value) {
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("values serialize")
    ));
}

fn enumeration_budget() -> Result<u128, Failure> {
    match std::env::var("FD_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("FD_BUDGET must be a natural number, got {s:?}"))),
        Err(_) => Ok(DEFAULT_ENUMERATION_BUDGET),
    }
}

fn load_universe(k: &SimplicialComplex, spec: &str) -> Result<AdversaryUniverse, Failure> {
    if let Some(rest) = spec.strip_prefix("enumerate:") {
        let max_dim = rest
            .strip_prefix("maxdim=")
            .and_then(|n| n.parse::<usize>().ok())
            .ok_or_else(|| Failure::Input(format!("universe must be enumerate:maxdim=N, got {spec:?}")))?;
        Ok(AdversaryUniverse::on_vertex_set(k, max_dim, enumeration_budget()?)?)
    } else if let Some(path) = spec.strip_prefix("list:") {
        let list = io::complexes_from_json(&read_json(Path::new(path))?)?;
        Ok(AdversaryUniverse::around(k, list, Provenance::Explicit)?)
    } else {
        Err(Failure::Input(format!(
            "unknown universe {spec:?}; use enumerate:maxdim=N or list:FILE"
        )))
    }
}

fn parameters_for(d: DescriptorType, directions: Vec<Direction>) -> Result<Vec<Parameter>, Failure> {
    if d.parameter_kind() == ParameterKind::Point {
        return Err(Failure::Input(format!(
            "{d} is point-parameterized; direction files do not apply"
        )));
    }
    Ok(faithfulness::directions_as_parameters(&directions))
}

fn parse_fixture(name: &str) -> Result<SimplicialComplex, Failure> {
    if let Some(rest) = name.strip_prefix("clothesline") {
        let m: usize = rest
            .trim_start_matches([':', '('])
            .trim_end_matches(')')
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("clothesline needs a count, got {name:?}")))?;
        return Ok(fixtures::build_clothesline(m)?);
    }
    let which: Fixture = name.parse()?;
    Ok(fixtures::fixture(which)?)
}

fn random_directions(d: usize, n: usize, seed: u64) -> Vec<Direction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v: Vec<i64> = (0..d).map(|_| rng.gen_range(-9..=9)).collect();
        if let Ok(s) = Direction::new(v.iter().map(|&x| rational::int(x)).collect()) {
            out.push(s);
        }
    }
    out
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Compute {
            complex,
            descriptor,
            direction,
            point,
        } => {
            let k = load_complex(&complex)?;
            let p = match (descriptor.parameter_kind(), direction, point) {
                (ParameterKind::Direction, Some(s), None) => Parameter::Direction(Direction::parse(&s)?),
                (ParameterKind::Point, None, Some(x)) => {
                    Parameter::Point(Point(rational::parse_list(x.trim_matches(['(', ')']))?))
                }
                (ParameterKind::Direction, _, _) => {
                    return Err(Failure::Input(format!("{descriptor} needs --direction")))
                }
                (ParameterKind::Point, _, _) => return Err(Failure::Input(format!("{descriptor} needs --point"))),
            };
            print_json(&io::descriptor_to_json(&descriptors::compute(descriptor, &k, &p)?));
            Ok(())
        }
        Command::Compare {
            complex,
            complex2,
            descriptor,
            directions,
            random,
            seed,
        } => {
            let k = load_complex(&complex)?;
            let l = load_complex(&complex2)?;
            let dirs = match (directions, random) {
                (Some(path), _) => load_directions(&path)?,
                (None, Some(n)) => random_directions(k.ambient_dim(), n, seed),
                (None, None) => unreachable!("clap requires one of them"),
            };
            let params = parameters_for(descriptor, dirs)?;
            emit("direction\tresult\n");
            for p in &params {
                let a = descriptors::compute(descriptor, &k, p)?;
                let b = descriptors::compute(descriptor, &l, p)?;
                let verdict = if descriptors::equal(&a, &b)? {
                    "equal"
                } else {
                    "unequal"
                };
                emit(&format!("{p}\t{verdict}\n"));
            }
            Ok(())
        }
        Command::Faithful {
            complex,
            descriptor,
            directions,
            universe,
        } => {
            let k = load_complex(&complex)?;
            let u = load_universe(&k, &universe)?;
            let params = parameters_for(descriptor, load_directions(&directions)?)?;
            let report = faithfulness::relative_faithful(descriptor, &k, &params, &u)?;
            print_json(&report.to_json(&u));
            if report.faithful {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::MinSet {
            complex,
            descriptor,
            candidates,
            universe,
            budget,
        } => {
            let k = load_complex(&complex)?;
            let u = load_universe(&k, &universe)?;
            let params = parameters_for(descriptor, load_directions(&candidates)?)?;
            let budget = match budget {
                Some(b) => b,
                None => enumeration_budget()?,
            };
            let result = faithfulness::min_faithful_size(descriptor, &k, &params, &u, budget)?;
            print_json(&result.to_json(descriptor, &params, &u));
            if result.bound == CardinalityBound::AlephTop {
                Err(Failure::Check)
            } else {
                Ok(())
            }
        }
        Command::EnvelopeCheck { complex, directions } => {
            let k = load_complex(&complex)?;
            let dirs = load_directions(&directions)?;
            let report = geometry::check_concise_conditions(&k, &dirs)?;
            print_json(&report.to_json(&dirs));
            if report.verdict() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Observability {
            clothespin,
            clothesline,
            svg,
        } => {
            let (value, regions) = match (clothespin, clothesline) {
                (Some(path), _) => {
                    let k = load_complex(&path)?;
                    let r = observability::clothespin_regions(&k)?;
                    let value = json!({
                        "R1": r.r[0].to_json(),
                        "R2": r.r[1].to_json(),
                        "R3": r.r[2].to_json(),
                        "R4": r.r[3].to_json(),
                        "W": r.w.to_json(),
                    });
                    (value, vec![r.w])
                }
                (None, Some(m)) => {
                    let k = fixtures::build_clothesline(m)?;
                    let regions = observability::clothesline_regions(&k)?;
                    let value = json!({
                        "m": m,
                        "regions": regions.iter().map(|w| w.to_json()).collect::<Vec<_>>(),
                        "pairwise_disjoint": observability::all_disjoint(&regions),
                    });
                    (value, regions)
                }
                (None, None) => unreachable!("clap requires one of them"),
            };
            if let Some(path) = svg {
                fs::write(&path, observability::regions_svg(&regions))
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            print_json(&value);
            Ok(())
        }
        Command::Gen { fixture } => {
            print_json(&io::complex_to_json(&parse_fixture(&fixture)?));
            Ok(())
        }
        Command::Export { value, format, out } => {
            let v = io::descriptor_from_json(&read_json(&value)?)?;
            let text = match format {
                Format::Csv => export::csv(&v),
                Format::Svg => export::svg(&v),
            };
            match out {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?,
                None => emit(&text),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
