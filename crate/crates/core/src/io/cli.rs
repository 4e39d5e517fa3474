use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::report::{digest, write_atomic, Check, Report, Status};
use super::scene::{parse_scene, SceneFile};
use crate::error::{input, unsupported, Error, Result};
use crate::kernel::{
    epsilon_net_greedy, is_alpha_configuration, is_besicovitch_family, is_k_configuration,
    is_tau_satellite_configuration, Verdict,
};
use crate::metric::{Space, Tolerance};
use crate::search::{
    check_chain, cip_check, cip_trials, constants_markdown, constants_report, largest_working_shrink,
    pack_unit_balls_radius5, satellite_max_search, search_max_besicovitch_family, search_strict_hadwiger,
    CipVerdict, PaperValue, SearchConfig,
};
use crate::selection::{
    besicovitch_cover_1d, partition_into_disjoint_families, select_bounded_overlap_subcover, OneDimMode,
};

#[derive(Parser, Debug)]
#[command(name = "besicover", version, about = "Besicovitch-type covering algorithms and checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the report to this path instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Predicate tolerance (absolute and relative).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Record the wall time in the report (makes reports differ between runs).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check a structure described by a scene.
    Validate {
        scene: PathBuf,
        #[arg(long, value_enum)]
        what: What,
        /// Ratio for alpha configurations.
        #[arg(long, default_value_t = 0.75)]
        alpha: f64,
        /// Index of the target ball of an alpha configuration (default: last).
        #[arg(long)]
        target: Option<usize>,
        /// Diameter ratio of satellite configurations.
        #[arg(long, default_value_t = 1.5)]
        tau: f64,
    },
    /// Bounded-overlap subcover of the scene points (default: the centers).
    Select {
        scene: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        beta: f64,
        /// Fail when the measured overlap exceeds this.
        #[arg(long)]
        max_overlap: Option<usize>,
    },
    /// Partition into families of pairwise disjoint balls.
    Partition {
        scene: PathBuf,
        #[arg(long, default_value_t = 0.75)]
        alpha: f64,
        #[arg(long)]
        max_families: Option<usize>,
    },
    /// Two disjoint families of intervals covering every center.
    Oned {
        scene: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        #[arg(long)]
        max_families: Option<usize>,
    },
    /// Greedy epsilon-net of the scene points (default: the centers).
    Net {
        scene: PathBuf,
        #[arg(long)]
        eps: f64,
        /// Require distances strictly above eps.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Seeded configuration search.
    Search {
        #[arg(long, value_enum)]
        what: SearchWhat,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// euclidean, sphere or hyperbolic, optionally followed by `:dim`.
        #[arg(long, default_value = "euclidean")]
        space: String,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        restarts: u32,
        #[arg(long, default_value_t = 0.8)]
        rmin: f64,
        #[arg(long, default_value_t = 1.0)]
        rmax: f64,
        #[arg(long, default_value_t = 1.5)]
        tau: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Fail when the best configuration is smaller than this.
        #[arg(long)]
        min_score: Option<usize>,
    },
    /// Contraction intersecting property: one scene, or random trials.
    Cip {
        scene: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 0.95)]
        shrink: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Also report the largest shrink factor of the grid that always works.
        #[arg(long)]
        scan: bool,
    },
    /// Known values of the covering constants next to achieved lower bounds.
    Constants {
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        /// Fail unless every exactly known value is achieved.
        #[arg(long)]
        require_exact: bool,
    },
    /// Volume of a geodesic ball.
    Volume {
        /// euclidean, sphere or hyperbolic, optionally followed by `:dim`.
        #[arg(long)]
        space: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        pnorm: Option<f64>,
        /// Sphere radius.
        #[arg(long)]
        radius: Option<f64>,
        /// Fail when the volume differs from this by more than the tolerance.
        #[arg(long)]
        expect: Option<f64>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum What {
    Besicovitch,
    AlphaConfig,
    Satellite,
    KConfig,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SearchWhat {
    Wbcp,
    Hadwiger,
    Pack5,
    Satellite,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Auto,
    Bounded,
    Unbounded,
}

/// Exit code and report text of one command.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
    /// Where the report was written, when `--out` was given and succeeded.
    pub written: Option<PathBuf>,
}

struct Exec {
    payload: Value,
    checks: Vec<Check>,
    seed: Option<u64>,
    digest: Option<String>,
}

impl Exec {
    fn new(payload: Value) -> Exec {
        Exec { payload, checks: Vec::new(), seed: None, digest: None }
    }

    fn check(mut self, name: impl Into<String>, holds: bool) -> Exec {
        self.checks.push(Check::new(name, holds));
        self
    }
}

/// Runs one command line (program name first) and returns the exit code and
/// report: 0 when every checked property holds, 1 when one fails, 2 on
/// input or usage errors.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = argv.iter().skip(1).cloned().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            if code == 0 {
                return Outcome { code, report: e.to_string(), written: None };
            }
            let report = error_report(echo, e.to_string());
            return Outcome { code, report, written: None };
        }
    };
    let start = Instant::now();
    let result = execute(&cli);
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let report = match result {
        Ok(exec) => {
            let status = if exec.checks.iter().all(|c| c.holds) { Status::Ok } else { Status::Violation };
            Report {
                tool: "besicover",
                version: env!("CARGO_PKG_VERSION"),
                command: echo,
                input_digest: exec.digest,
                seed: exec.seed,
                status,
                checks: exec.checks,
                payload: exec.payload,
                wall_time_ms: cli.timing.then_some(elapsed),
            }
        }
        Err(e) => {
            let mut r = base_report(echo, Status::Error, json!({ "error": e.to_string() }));
            r.wall_time_ms = cli.timing.then_some(elapsed);
            r
        }
    };
    let code = report.status.code();
    let text = report.to_json();
    match &cli.out {
        Some(path) => match write_atomic(path, &text) {
            Ok(()) => Outcome { code, report: text, written: Some(path.clone()) },
            Err(e) => {
                let report = error_report(report.command, format!("cannot write {}: {e}", path.display()));
                Outcome { code: 2, report, written: None }
            }
        },
        None => Outcome { code, report: text, written: None },
    }
}

fn base_report(command: Vec<String>, status: Status, payload: Value) -> Report {
    Report {
        tool: "besicover",
        version: env!("CARGO_PKG_VERSION"),
        command,
        input_digest: None,
        seed: None,
        status,
        checks: Vec::new(),
        payload,
        wall_time_ms: None,
    }
}

fn error_report(command: Vec<String>, msg: String) -> String {
    base_report(command, Status::Error, json!({ "error": msg })).to_json()
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results always serialize")
}

fn tolerance(cli: &Cli) -> Result<Option<Tolerance>> {
    match cli.tol {
        None => Ok(None),
        Some(t) if t.is_finite() && t >= 0.0 => Ok(Some(Tolerance::uniform(t))),
        Some(t) => input(format!("--tol must be a nonnegative number, got {t}")),
    }
}

fn load(path: &Path, tol: Option<Tolerance>) -> Result<(SceneFile, String)> {
    let bytes = std::fs::read(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| Error::Input(format!("{} is not UTF-8", path.display())))?;
    let scene = parse_scene(text)?;
    let scene = match tol {
        Some(t) => {
            let space = scene.space.with_tolerance(t);
            scene.with_space(space)
        }
        None => scene,
    };
    Ok((scene, digest(&bytes)))
}

/// `kind` or `kind:dim`, with `dim` as fallback.
fn parse_space(spec: &str, dim: usize, pnorm: Option<f64>, radius: Option<f64>) -> Result<Space> {
    let (kind, dim) = match spec.split_once(':') {
        Some((k, d)) => (k, d.parse::<usize>().map_err(|_| Error::Input(format!("bad dimension in `{spec}`")))?),
        None => (spec, dim),
    };
    match kind {
        "euclidean" | "e" => Space::euclidean_lp(dim, pnorm.unwrap_or(2.0)),
        "sphere" | "s" => Space::sphere(dim, radius.unwrap_or(1.0)),
        "hyperbolic" | "h" => Space::hyperbolic(dim),
        other => input(format!("unknown space kind `{other}`")),
    }
}

fn verdict_exec(v: Verdict, name: &str) -> Exec {
    let holds = v.is_valid();
    let label = match &v {
        Verdict::Indeterminate { .. } => format!("{name} (indeterminate at this tolerance)"),
        _ => name.to_string(),
    };
    Exec::new(to_value(&v)).check(label, holds)
}

fn execute(cli: &Cli) -> Result<Exec> {
    let tol = tolerance(cli)?;
    let with_tol = |s: Space| tol.map_or(s, |t| s.with_tolerance(t));
    match &cli.cmd {
        Cmd::Validate { scene, what, alpha, target, tau } => {
            let (scene, d) = load(scene, tol)?;
            let fam = scene.family();
            let mut exec = match what {
                What::Besicovitch => verdict_exec(is_besicovitch_family(&fam), "besicovitch family"),
                What::KConfig => verdict_exec(is_k_configuration(&fam), "k configuration"),
                What::AlphaConfig => {
                    if fam.is_empty() {
                        return input("an alpha configuration needs a target ball");
                    }
                    let t = target.unwrap_or(fam.len() - 1);
                    if t >= fam.len() {
                        return input(format!("target {t} is not a ball index (scene has {} balls)", fam.len()));
                    }
                    let rest: Vec<usize> = (0..fam.len()).filter(|&i| i != t).collect();
                    let v = is_alpha_configuration(&fam.subfamily(&rest), &fam.balls[t], *alpha)?;
                    verdict_exec(v, "alpha configuration")
                }
                What::Satellite => {
                    let Some(sets) = &scene.sets else {
                        return input("a satellite check needs `sets` in the scene");
                    };
                    let points =
                        scene.points.clone().unwrap_or_else(|| sets.iter().map(|s| s.anchor.clone()).collect());
                    let v = is_tau_satellite_configuration(&scene.space, sets, &points, *tau)?;
                    verdict_exec(v, "satellite configuration")
                }
            };
            exec.digest = Some(d);
            Ok(exec)
        }
        Cmd::Select { scene, beta, max_overlap } => {
            let (scene, d) = load(scene, tol)?;
            let centers = scene.points_or_centers();
            let r = select_bounded_overlap_subcover(&scene.family(), &centers, *beta)?;
            let mut exec = Exec::new(to_value(&r)).check("covers every center", r.covers_all());
            if let Some(k) = max_overlap {
                exec = exec.check(format!("overlap at most {k}"), r.overlap.max_overlap <= *k);
            }
            exec.digest = Some(d);
            Ok(exec)
        }
        Cmd::Partition { scene, alpha, max_families } => {
            let (scene, d) = load(scene, tol)?;
            let p = partition_into_disjoint_families(&scene.family(), *alpha)?;
            let mut exec = Exec::new(to_value(&p))
                .check("families pairwise disjoint", p.is_disjoint())
                .check("covers every center", p.covers(&scene.family().centers()));
            if let Some(b) = p.bound.as_ref().filter(|b| b.certified) {
                exec = exec.check(format!("at most {} families", b.value), p.family_count() as u64 <= b.value);
            }
            if let Some(k) = max_families {
                exec = exec.check(format!("at most {k} families (asserted)"), p.family_count() <= *k);
            }
            exec.digest = Some(d);
            Ok(exec)
        }
        Cmd::Oned { scene, mode, max_families } => {
            let (scene, d) = load(scene, tol)?;
            if !scene.space.is_line() {
                return unsupported(format!("oned needs the real line, got {}", scene.space.label()));
            }
            let pts = scene.points_or_centers();
            let centers: Vec<f64> = pts.iter().map(|p| p.0[0]).collect();
            let mode = match mode {
                Mode::Auto => OneDimMode::Auto,
                Mode::Bounded => OneDimMode::Bounded,
                Mode::Unbounded => OneDimMode::Unbounded,
            };
            let c = besicovitch_cover_1d(&scene.family(), &centers, mode)?;
            let mut exec = Exec::new(to_value(&c))
                .check("at most 2 families", c.partition.family_count() <= 2)
                .check("families pairwise disjoint", c.partition.is_disjoint())
                .check("covers every center", c.partition.covers(&pts));
            if let Some(k) = max_families {
                exec = exec.check(format!("at most {k} families (asserted)"), c.partition.family_count() <= *k);
            }
            exec.digest = Some(d);
            Ok(exec)
        }
        Cmd::Net { scene, eps, strict, max_size } => {
            let (scene, d) = load(scene, tol)?;
            if !(eps.is_finite() && *eps > 0.0) {
                return input(format!("--eps must be positive, got {eps}"));
            }
            let pts = scene.points_or_centers();
            let space = &scene.space;
            let net = epsilon_net_greedy(space, &pts, *eps, *strict);
            let apart = |dd: f64| if *strict { dd > *eps } else { dd >= *eps };
            let separated = net.iter().enumerate().all(|(i, a)| net[i + 1..].iter().all(|b| apart(space.dist(a, b))));
            let maximal = pts.iter().all(|p| net.iter().any(|q| q == p || !apart(space.dist(p, q))));
            let mut exec = Exec::new(json!({ "eps": eps, "strict": strict, "size": net.len(), "net": net }))
                .check("net is separated", separated)
                .check("net is maximal", maximal);
            if let Some(k) = max_size {
                exec = exec.check(format!("at most {k} points (asserted)"), net.len() <= *k);
            }
            exec.digest = Some(d);
            Ok(exec)
        }
        Cmd::Search { what, dim, space, budget, seed, restarts, rmin, rmax, tau, lambda, min_score } => {
            let cfg = SearchConfig { seed: *seed, budget: *budget, restarts: *restarts, ..SearchConfig::default() };
            let r = match what {
                SearchWhat::Wbcp => {
                    let s = with_tol(parse_space(space, *dim, None, None)?);
                    search_max_besicovitch_family(&s, [*rmin, *rmax], &cfg)?
                }
                SearchWhat::Hadwiger => search_strict_hadwiger(*dim, &cfg)?,
                SearchWhat::Pack5 => pack_unit_balls_radius5(*dim, &cfg)?,
                SearchWhat::Satellite => {
                    let s = with_tol(parse_space(space, *dim, None, None)?);
                    satellite_max_search(&s, *tau, *lambda, &cfg)?
                }
            };
            let mut exec = Exec::new(to_value(&r)).check("best configuration re-validated", r.feasible);
            if let Some(k) = min_score {
                exec = exec.check(format!("score at least {k} (asserted)"), r.score >= *k);
            }
            exec.seed = Some(*seed);
            Ok(exec)
        }
        Cmd::Cip { scene, m, shrink, trials, seed, dim, scan } => match scene {
            Some(path) => {
                let (scene, d) = load(path, tol)?;
                let v = cip_check(&scene.family(), *m, *shrink)?;
                let found = matches!(v, CipVerdict::Found { .. });
                let mut exec = Exec::new(to_value(&v)).check(format!("{} shrunk balls share a point", m + 1), found);
                exec.digest = Some(d);
                Ok(exec)
            }
            None => {
                let t = cip_trials(*m, *shrink, *trials, *dim, *seed)?;
                let best = if *scan { largest_working_shrink(*m, *trials, *dim, *seed)? } else { None };
                let mut payload = to_value(&t);
                if *scan {
                    payload["largest_working_shrink"] = to_value(&best);
                }
                let mut exec = Exec::new(payload)
                    .check("every trial found a witness", t.found == t.trials)
                    .check("every witness re-verified", t.bad_witnesses.is_empty());
                exec.seed = Some(*seed);
                Ok(exec)
            }
        },
        Cmd::Constants { dims, seed, budget, require_exact } => {
            let cfg = SearchConfig { seed: *seed, budget: *budget, ..SearchConfig::default() };
            let rows = constants_report(dims, &cfg)?;
            let chain = check_chain(&rows);
            let mut exec = Exec::new(json!({ "rows": rows, "chain": chain, "markdown": constants_markdown(&rows) }));
            for c in &chain {
                exec = exec
                    .check(format!("known values form the chain in dimension {}", c.dim), c.paper)
                    .check(format!("achieved bounds form the chain in dimension {}", c.dim), c.achieved);
            }
            if *require_exact {
                for r in &rows {
                    if let Some(PaperValue::Exact(v)) = r.paper_value {
                        let name = format!("{}({}) = {v} achieved", r.name.symbol(), r.dim);
                        exec = exec.check(name, r.achieved_lower_bound == v);
                    }
                }
            }
            exec.seed = Some(*seed);
            Ok(exec)
        }
        Cmd::Volume { space, dim, r, pnorm, radius, expect } => {
            let s = with_tol(parse_space(space, *dim, *pnorm, *radius)?);
            let v = s.ball_volume(*r)?;
            let mut exec = Exec::new(json!({ "space": s.label(), "r": r, "volume": v }));
            if let Some(x) = expect {
                let t = tol.unwrap_or(Tolerance::DEFAULT);
                exec = exec.check(format!("volume matches {x}"), (v - x).abs() <= t.slack(*x));
            }
            Ok(exec)
        }
    }
}
