//! The command-line surface driven from code: every command returns its
//! exit code and JSON report.

use besicover::io::run_command;

fn main() {
    let dir = std::env::temp_dir().join("besicover-example");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let scene = dir.join("line.json");
    std::fs::write(
        &scene,
        r#"{"version":1,"space":{"kind":"euclidean","dim":1},"balls":[
          {"center":[0],"radius":1},{"center":[1.5],"radius":1},{"center":[3],"radius":1}]}"#,
    )
    .expect("write scene");
    let scene = scene.to_string_lossy().into_owned();
    for args in [
        vec!["oned", scene.as_str()],
        vec!["validate", scene.as_str(), "--what", "besicovitch"],
        vec!["volume", "--space", "hyperbolic:2", "--r", "1"],
        vec!["search", "--what", "hadwiger", "--dim", "3"],
    ] {
        let out = run_command(std::iter::once("besicover").chain(args.iter().copied()));
        let v: serde_json::Value = serde_json::from_str(&out.report).expect("json report");
        println!("{:<40} exit {} status {} checks {}", args.join(" "), out.code, v["status"], v["checks"]);
    }
}
