//! Scene files, JSON reports and the `besicover` command line.
//!
//! A scene is a versioned JSON document:
//!
//! ```json
//! {"version": 1,
//!  "space": {"kind": "euclidean", "dim": 2},
//!  "balls": [{"center": [0, 0], "radius": 1}],
//!  "points": [[0.5, 0]],
//!  "sets": [{"anchor": [0, 0], "inner_radius": 0.5, "lambda": 1.5, "diameter": 1.2}]}
//! ```
//!
//! `points` and `sets` are optional. Every command prints one JSON report and
//! exits with 0 (all checks hold), 1 (a check fails) or 2 (bad input).

mod cli;
mod report;
mod scene;

pub use cli::{run_command, Outcome};
pub use report::{digest, write_atomic, Check, Report, Status};
pub use scene::{parse_scene, SceneFile, SCENE_VERSION};
