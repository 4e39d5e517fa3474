use std::path::PathBuf;
use std::process::Command;
use std::sync::atomic::{AtomicUsize, Ordering};

use besicover::io::{parse_scene, run_command, SceneFile};
use besicover::{Ball, BallFamily, Point, Space};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dir() -> PathBuf {
    let d = std::env::temp_dir().join(format!("besicover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

static FILES: AtomicUsize = AtomicUsize::new(0);

fn write(name: &str, text: &str) -> String {
    let p = dir().join(format!("{}-{name}", FILES.fetch_add(1, Ordering::Relaxed)));
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const TRIPLE: &str = r#"{"version":1,"space":{"kind":"euclidean","dim":2},"balls":[
  {"center":[1,0],"radius":1},{"center":[-0.5,0.8660254037844386],"radius":1},{"center":[-0.5,-0.8660254037844386],"radius":1}]}"#;
const NESTED: &str = r#"{"version":1,"space":{"kind":"euclidean","dim":2},"balls":[
  {"center":[0,0],"radius":2},{"center":[0.5,0],"radius":1}]}"#;
const LINE: &str = r#"{"version":1,"space":{"kind":"euclidean","dim":1},"balls":[
  {"center":[0],"radius":1},{"center":[1.5],"radius":1},{"center":[3],"radius":1},{"center":[0.7],"radius":0.5}]}"#;
const SATS: &str = r#"{"version":1,"space":{"kind":"euclidean","dim":1},"balls":[],
  "sets":[{"anchor":[0],"inner_radius":0.5,"lambda":1,"diameter":1},{"anchor":[0.8],"inner_radius":0.45,"lambda":1,"diameter":0.9}]}"#;

fn code(args: &[&str]) -> i32 {
    let mut argv = vec!["besicover"];
    argv.extend_from_slice(args);
    let out = run_command(argv);
    serde_json::from_str::<serde_json::Value>(&out.report).expect("every report is JSON");
    out.code
}

#[test]
fn validate() {
    let (t, n) = (write("triple.json", TRIPLE), write("nested.json", NESTED));
    let bad = write("bad.json", r#"{"version":1,"space":{"kind":"euclidean","dim":2},"balls":[{"center":[0],"radius":1}]}"#);
    assert_eq!(code(&["validate", &t, "--what", "besicovitch"]), 0);
    assert_eq!(code(&["validate", &n, "--what", "besicovitch"]), 1);
    assert_eq!(code(&["validate", &bad, "--what", "besicovitch"]), 2);
    assert_eq!(code(&["validate", &t, "--what", "k-config"]), 0);
    assert_eq!(code(&["validate", &n, "--what", "k-config"]), 1);
    assert_eq!(code(&["validate", &t, "--what", "alpha-config", "--target", "7"]), 2);
    assert_eq!(code(&["validate", &t, "--what", "satellite"]), 2);
    let s = write("sats.json", SATS);
    assert_eq!(code(&["validate", &s, "--what", "satellite", "--tau", "1.5"]), 0);
    // the anchor of set 1 sits inside set 0
    let close = write("close.json", &SATS.replace("[0.8]", "[0.3]"));
    assert_eq!(code(&["validate", &close, "--what", "satellite", "--tau", "1.5"]), 1);
    assert_eq!(code(&["validate", &s, "--what", "satellite", "--tau", "1"]), 2);
    assert_eq!(code(&["validate", &t, "--what", "nonsense"]), 2);
}

#[test]
fn alpha_configuration() {
    // three unit balls around a small target ball at the origin
    let text = r#"{"version":1,"space":{"kind":"euclidean","dim":2},"balls":[
      {"center":[1.1,0],"radius":1},{"center":[-1.1,0],"radius":1},{"center":[0,1.1],"radius":1},{"center":[0,0],"radius":0.5}]}"#;
    let p = write("alpha.json", text);
    assert_eq!(code(&["validate", &p, "--what", "alpha-config", "--alpha", "0.75"]), 0);
    assert_eq!(code(&["validate", &p, "--what", "alpha-config", "--alpha", "0.4"]), 2);
    let big = write("alpha-big.json", &text.replace("\"radius\":0.5", "\"radius\":0.9"));
    assert_eq!(code(&["validate", &big, "--what", "alpha-config", "--alpha", "0.75"]), 1);
}

#[test]
fn select() {
    let l = write("line.json", LINE);
    assert_eq!(code(&["select", &l]), 0);
    assert_eq!(code(&["select", &l, "--max-overlap", "0"]), 1);
    assert_eq!(code(&["select", &l, "--beta", "1.5"]), 2);
}

#[test]
fn partition() {
    let l = write("line.json", LINE);
    assert_eq!(code(&["partition", &l]), 0);
    assert_eq!(code(&["partition", &l, "--max-families", "0"]), 1);
    assert_eq!(code(&["partition", &l, "--alpha", "0.2"]), 2);
}

#[test]
fn oned() {
    let l = write("line.json", LINE);
    assert_eq!(code(&["oned", &l]), 0);
    assert_eq!(code(&["oned", &l, "--mode", "unbounded"]), 0);
    assert_eq!(code(&["oned", &l, "--max-families", "1"]), 1);
    assert_eq!(code(&["oned", &write("triple.json", TRIPLE)]), 2);
}

#[test]
fn net() {
    let l = write("line.json", LINE);
    assert_eq!(code(&["net", &l, "--eps", "1", "--strict"]), 0);
    assert_eq!(code(&["net", &l, "--eps", "1", "--max-size", "1"]), 1);
    assert_eq!(code(&["net", &l, "--eps", "-1"]), 2);
}

#[test]
fn search() {
    assert_eq!(code(&["search", "--what", "wbcp", "--dim", "1", "--budget", "2000"]), 0);
    assert_eq!(code(&["search", "--what", "hadwiger", "--dim", "2", "--min-score", "6"]), 1);
    assert_eq!(code(&["search", "--what", "pack5", "--dim", "0"]), 2);
    assert_eq!(code(&["search", "--what", "satellite", "--dim", "1", "--budget", "2000", "--tau", "0.5"]), 2);
    assert_eq!(code(&["search", "--what", "wbcp", "--space", "sphere:2", "--rmin", "0.3", "--rmax", "0.6", "--budget", "2000"]), 0);
}

#[test]
fn cip() {
    let t = write("triple.json", TRIPLE);
    assert_eq!(code(&["cip", &t, "--m", "1", "--shrink", "0.95"]), 0);
    // shrunk radii 0.8 + 0.8 < sqrt(3): no two shrunk balls meet
    assert_eq!(code(&["cip", &t, "--m", "1", "--shrink", "0.8"]), 1);
    assert_eq!(code(&["cip", &t, "--m", "2"]), 2);
    assert_eq!(code(&["cip", "--m", "2", "--trials", "30"]), 0);
    assert_eq!(code(&["cip", "--m", "2", "--trials", "30", "--shrink", "1.2"]), 2);
}

#[test]
fn constants() {
    let out = run_command(["besicover", "constants", "--dims", "1", "--seed", "0", "--budget", "4000"]);
    assert_eq!(out.code, 0);
    assert!(out.report.contains("| w | 1 | 2 | 2 |"), "{}", out.report);
    assert!(out.report.contains("| beta | 1 | 5 | 5 |"));
    assert_eq!(code(&["constants", "--dims", "4", "--budget", "2000", "--require-exact"]), 1);
    assert_eq!(code(&["constants", "--dims", "1,9"]), 2);
}

#[test]
fn volume() {
    assert_eq!(code(&["volume", "--space", "euclidean:2", "--r", "1", "--expect", "3.141592653589793"]), 0);
    assert_eq!(code(&["volume", "--space", "hyperbolic:3", "--r", "1", "--expect", "4.0"]), 1);
    assert_eq!(code(&["volume", "--space", "sphere:2", "--r", "-1"]), 2);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["validate", "/nonexistent/scene.json", "--what", "besicovitch"]), 2);
    assert_eq!(code(&["validate", &write("junk.json", "{"), "--what", "besicovitch"]), 2);
    assert_eq!(code(&["volume", "--space", "euclidean", "--r", "1", "--tol", "-1"]), 2);
}

#[test]
fn reports_are_reproducible_and_written_once() {
    let args = ["besicover", "search", "--what", "wbcp", "--budget", "3000", "--seed", "11"];
    let a = run_command(args);
    let b = run_command(args);
    assert_eq!(a.report, b.report);
    assert!(a.report.contains("\"seed\": 11"));
    let out = dir().join("report.json");
    let out_s = out.to_string_lossy().into_owned();
    let w = run_command(["besicover", "oned", &write("line.json", LINE), "--out", &out_s]);
    assert_eq!(w.written.as_deref(), Some(out.as_path()));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), w.report);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_besicover");
    let t = write("triple.json", TRIPLE);
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = run(&["validate", &t, "--what", "besicovitch"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("\"status\": \"ok\""));
    assert_eq!(run(&["validate", &write("nested.json", NESTED), "--what", "besicovitch"]).status.code(), Some(1));
    assert_eq!(run(&["nope"]).status.code(), Some(2));
}

#[test]
fn large_scene_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for space in [Space::euclidean(3).unwrap(), Space::sphere(2, 1.0).unwrap(), Space::hyperbolic(2).unwrap()] {
        let balls: Vec<Ball> = (0..1000)
            .map(|_| {
                let raw: Vec<f64> = (0..space.ambient_dim()).map(|_| rng.gen_range(-3.0..3.0)).collect();
                Ball { center: space.project(raw), radius: rng.gen_range(1e-3..0.5) }
            })
            .collect();
        let mut scene = SceneFile::new(&BallFamily::new(space, balls).unwrap());
        scene.points = Some(vec![space.origin(), Point(vec![0.1; space.ambient_dim()])].into_iter().map(|p| space.project(p.0)).collect());
        let back = parse_scene(&scene.to_json()).unwrap();
        assert_eq!(back, scene);
        assert_eq!(back.to_json(), scene.to_json());
    }
}
