use std::fs;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_topodesc"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_input(args: &[&str], input: &[u8]) -> Output {
    use std::io::Write;
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn gen(dir: &Path, fixture: &str) -> String {
    let out = run(&["gen", "--fixture", fixture]);
    assert!(out.status.success());
    let path = dir.join(format!("{}.json", fixture.replace(['(', ')', ','], "_")));
    fs::write(&path, &out.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn generated_fixture_pipes_into_compute() {
    let generated = run(&["gen", "--fixture", "single_edge"]);
    let out = run_with_input(
        &["compute", "--descriptor", "apd", "--direction", "1,0"],
        &generated.stdout,
    );
    assert!(out.status.success());
    assert_eq!(
        stdout_json(&out),
        json!({"descriptor": "apd", "points": [["1", "1", 0], ["1", "inf", 0]]})
    );
}

#[test]
fn zero_direction_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let k = gen(dir.path(), "single_edge");
    let out = run(&["compute", "--complex", &k, "--descriptor", "apd", "--direction", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zero direction"));
}

#[test]
fn input_errors_have_distinct_messages() {
    let dir = tempfile::tempdir().unwrap();
    let k = gen(dir.path(), "single_edge");
    let unknown = run(&["gen", "--fixture", "octahedron"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("unknown fixture"));
    let bad = run(&[
        "compute",
        "--complex",
        &k,
        "--descriptor",
        "ecc",
        "--direction",
        "1/0,1",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("malformed rational"));
    let sq = gen(dir.path(), "square_K");
    let dirs = write(dir.path(), "d.txt", "1,0\n0,1\n");
    let budget = bin()
        .args([
            "faithful",
            "--complex",
            &sq,
            "--descriptor",
            "apd",
            "--directions",
            &dirs,
        ])
        .args(["--universe", "enumerate:maxdim=2"])
        .env("FD_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(budget.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&budget.stderr).contains("exceeds budget"));
    let wrong_kind = run(&["compute", "--complex", &k, "--descriptor", "dr", "--direction", "1,0"]);
    assert_eq!(wrong_kind.status.code(), Some(2));
}

#[test]
fn faithful_on_square() {
    let dir = tempfile::tempdir().unwrap();
    let sq = gen(dir.path(), "square_K");
    let dirs = write(dir.path(), "d.txt", "1,0\n0,1\n");
    let out = run(&[
        "faithful",
        "--complex",
        &sq,
        "--descriptor",
        "apd",
        "--directions",
        &dirs,
        "--universe",
        "enumerate:maxdim=2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["faithful"], json!(true));
    assert_eq!(report["indistinguishable"], json!([]));

    let abc = run(&[
        "faithful",
        "--complex",
        &sq,
        "--descriptor",
        "abc",
        "--directions",
        &dirs,
        "--universe",
        "enumerate:maxdim=1",
    ]);
    assert_eq!(abc.status.code(), Some(1));
    assert_eq!(stdout_json(&abc)["faithful"], json!(false));
}

#[test]
fn faithful_with_listed_universe() {
    let dir = tempfile::tempdir().unwrap();
    let k = gen(dir.path(), "single_edge");
    let universe = json!([
        {"ambient_dim": 2, "vertices": [[1, 1], [1, 3]], "simplices": [[0, 1]]},
        {"ambient_dim": 2, "vertices": [[1, 1], [1, 2]], "simplices": []},
    ]);
    let list = write(dir.path(), "u.json", &universe.to_string());
    let dirs = write(dir.path(), "d.txt", "1,0\n0,1\n");
    let out = run(&[
        "faithful",
        "--complex",
        &k,
        "--descriptor",
        "ecc",
        "--directions",
        &dirs,
        "--universe",
        &format!("list:{list}"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["indistinguishable"].as_array().unwrap().len(), 1);
}

#[test]
fn min_set_reports_relative_bound() {
    let dir = tempfile::tempdir().unwrap();
    let sq = gen(dir.path(), "square_K");
    let cands = write(dir.path(), "c.txt", "1,0\n0,1\n-1,0\n0,-1\n");
    let out = run(&[
        "min-set",
        "--complex",
        &sq,
        "--descriptor",
        "apd",
        "--candidates",
        &cands,
        "--universe",
        "enumerate:maxdim=1",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["bound"], json!("2"));
    assert_eq!(v["relative"], json!(true));
    assert_eq!(v["witness"], json!(["(1,0)", "(0,1)"]));
    let tight = run(&[
        "min-set",
        "--complex",
        &sq,
        "--descriptor",
        "apd",
        "--candidates",
        &cands,
        "--universe",
        "enumerate:maxdim=1",
        "--budget",
        "2",
    ]);
    assert_eq!(tight.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&tight.stderr).contains("budget"));
}

#[test]
fn envelope_check_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let v = write(
        dir.path(),
        "v.json",
        r#"{"ambient_dim": 2, "vertices": [[0, 0]], "simplices": []}"#,
    );
    let good = write(dir.path(), "good.txt", "1,0\n0,1\n-1,-1\n");
    let bad = write(dir.path(), "bad.txt", "1,0\n0,1\n");
    let ok = run(&["envelope-check", "--complex", &v, "--directions", &good]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout_json(&ok)["necessary_conditions_hold"], json!(true));
    let fail = run(&["envelope-check", "--complex", &v, "--directions", &bad]);
    assert_eq!(fail.status.code(), Some(1));
    assert_eq!(stdout_json(&fail)["enough_directions"], json!(false));
}

#[test]
fn compare_table() {
    let dir = tempfile::tempdir().unwrap();
    let k = gen(dir.path(), "square_K");
    let kp = gen(dir.path(), "square_Kprime");
    let dirs = write(dir.path(), "d.txt", "1,0\n0,1\n");
    let out = run(&[
        "compare",
        "--complex",
        &k,
        "--complex2",
        &kp,
        "--descriptor",
        "apd",
        "--directions",
        &dirs,
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "direction\tresult\n(1,0)\tunequal\n(0,1)\tequal\n");
    let abc = run(&[
        "compare",
        "--complex",
        &k,
        "--complex2",
        &kp,
        "--descriptor",
        "abc",
        "--directions",
        &dirs,
    ]);
    assert!(String::from_utf8(abc.stdout)
        .unwrap()
        .ends_with("(1,0)\tequal\n(0,1)\tequal\n"));
    let random = run(&[
        "compare",
        "--complex",
        &k,
        "--complex2",
        &k,
        "--descriptor",
        "aecc",
        "--random",
        "5",
    ]);
    let text = String::from_utf8(random.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(!text.contains("unequal"));
}

#[test]
fn observability_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let pin = write(
        dir.path(),
        "pin.json",
        r#"{"ambient_dim": 2, "vertices": [[0, 0], [4, 0], [2, 1], [3, 3]], "simplices": [[0, 1], [2, 3]]}"#,
    );
    let svg = dir.path().join("w.svg");
    let out = run(&["observability", "--clothespin", &pin, "--svg", svg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    for key in ["R1", "R2", "R3", "R4", "W"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    let line = run(&["observability", "--clothesline", "4"]);
    let v = stdout_json(&line);
    assert_eq!(v["pairwise_disjoint"], json!(true));
    assert_eq!(v["regions"].as_array().unwrap().len(), 4);
    let not_pin = gen(dir.path(), "square_K");
    assert_eq!(run(&["observability", "--clothespin", &not_pin]).status.code(), Some(2));
}

#[test]
fn export_formats() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen(dir.path(), "appendixA");
    let apd = run(&["compute", "--complex", &a, "--descriptor", "apd", "--direction", "1,0"]);
    let apd_file = write(dir.path(), "apd.json", &String::from_utf8(apd.stdout).unwrap());
    let csv = run(&["export", "--value", &apd_file, "--format", "csv"]);
    assert_eq!(
        String::from_utf8(csv.stdout).unwrap(),
        "degree,birth,death\n0,0,inf\n0,1,3\n0,2,2\n0,3,3\n1,3,inf\n"
    );
    let svg_path = dir.path().join("apd.svg");
    let svg = run(&[
        "export",
        "--value",
        &apd_file,
        "--format",
        "svg",
        "--out",
        svg_path.to_str().unwrap(),
    ]);
    assert!(svg.status.success());
    let text = fs::read_to_string(&svg_path).unwrap();
    assert_eq!(text.matches("<circle").count(), 5);

    let ecc = run(&["compute", "--complex", &a, "--descriptor", "ecc", "--direction", "1,0"]);
    let ecc_file = write(dir.path(), "ecc.json", &String::from_utf8(ecc.stdout).unwrap());
    let csv = run(&["export", "--value", &ecc_file, "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "height,value\n0,1\n1,2\n3,0\n");
    let svg = run(&["export", "--value", &ecc_file, "--format", "svg"]);
    assert!(String::from_utf8(svg.stdout).unwrap().contains("<path"));
}

#[test]
fn gen_round_trip_and_determinism() {
    for fixture in [
        "single_edge",
        "square_K",
        "square_Kprime",
        "appendixA",
        "sparse_graph(4,2)",
        "clothesline(3)",
    ] {
        let first = run(&["gen", "--fixture", fixture]);
        assert!(first.status.success(), "{fixture}");
        let second = run(&["gen", "--fixture", fixture]);
        assert_eq!(first.stdout, second.stdout);
        let k = topodesc::io::parse_complex(std::str::from_utf8(&first.stdout).unwrap()).unwrap();
        assert!(k.validate().is_empty(), "{fixture}");
        let again = serde_json::to_vec_pretty(&topodesc::io::complex_to_json(&k)).unwrap();
        assert_eq!(
            String::from_utf8(again).unwrap().trim(),
            String::from_utf8_lossy(&first.stdout).trim()
        );
    }
}

#[test]
fn point_parameterized_indicator() {
    let dir = tempfile::tempdir().unwrap();
    let k = gen(dir.path(), "single_edge");
    let inside = run(&["compute", "--complex", &k, "--descriptor", "dr", "--point", "1,3/2"]);
    assert_eq!(stdout_json(&inside), json!({"descriptor": "dr", "value": true}));
    let outside = run(&["compute", "--complex", &k, "--descriptor", "dr", "--point", "2,3/2"]);
    assert_eq!(stdout_json(&outside), json!({"descriptor": "dr", "value": false}));
}
