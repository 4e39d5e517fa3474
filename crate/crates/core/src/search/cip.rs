use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::anneal::gaussian;
use crate::error::{input, precondition, Result};
use crate::kernel::{circle_intersections, common_point, BallFamily, CommonPoint};
use crate::metric::{dot, norm2, Ball, Point, Space};

/// Acceptance slack of a witness: `d(w, c_i) ≤ s·r_i + WITNESS_SLACK`.
pub const WITNESS_SLACK: f64 = 1e-9;

/// Outcome of [`cip_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CipVerdict {
    /// The `s`-shrunk balls with these indices all contain `witness`.
    Found { indices: Vec<usize>, witness: Point, route: String },
    NotFound { reason: String },
}

impl CipVerdict {
    pub fn is_found(&self) -> bool {
        matches!(self, CipVerdict::Found { .. })
    }
}

/// Whether `w` lies in every listed ball shrunk by `s` about its center.
pub fn witness_holds(family: &BallFamily, indices: &[usize], witness: &Point, s: f64) -> bool {
    indices.iter().all(|&i| {
        let b = &family.balls[i];
        family.space.dist(&b.center, witness) <= s * b.radius + WITNESS_SLACK
    })
}

/// Looks for `m + 1` balls of the family whose `s`-shrunk copies share a
/// point.
///
/// In the Euclidean plane the tangent half-planes at the common point cut
/// the directions into at most `4m + 2` sectors; the deepest and widest
/// sectors are tried first by an exact search along rays through the common
/// point. The plane then falls back to an exhaustive check of the pairwise
/// intersections of the shrunk circles and the centers, which finds a point
/// of maximal depth whenever one exists. Other Euclidean dimensions use
/// rays in quasi-random directions plus the shrunk centers, and other
/// spaces candidate points along geodesics; both are heuristics.
pub fn cip_check(family: &BallFamily, m: usize, s: f64) -> Result<CipVerdict> {
    if !(s > 0.0 && s < 1.0) {
        return input(format!("shrink factor s must lie in (0, 1), got {s}"));
    }
    if m == 0 {
        return input("m must be at least 1");
    }
    if family.len() < 2 * m + 1 {
        return input(format!("cip check with m = {m} needs at least {} balls, got {}", 2 * m + 1, family.len()));
    }
    let p = match common_point(family) {
        CommonPoint::Found(p) => p,
        CommonPoint::Empty { reason, .. } => return precondition(format!("the balls share no point: {reason}")),
        CommonPoint::Unknown(reason) => return precondition(format!("no common point could be certified: {reason}")),
    };
    let space = &family.space;
    let shrunk: Vec<Ball> =
        family.balls.iter().map(|b| Ball { center: b.center.clone(), radius: s * b.radius }).collect();
    let want = m + 1;

    if space.is_hilbertian() {
        let dirs = if space.dim() == 2 { sector_directions(&shrunk, &p, m) } else { sphere_directions(space.dim(), 256) };
        for v in &dirs {
            if let Some(w) = ray_search(&shrunk, &p, v, want) {
                if let Some(found) = accept(family, &shrunk, &w, want, s, "sector") {
                    return Ok(found);
                }
            }
        }
        let candidates = if space.dim() == 2 { planar_candidates(&shrunk, &p) } else { centers_and(&shrunk, &p) };
        for w in candidates {
            if let Some(found) = accept(family, &shrunk, &w, want, s, "exhaustive") {
                return Ok(found);
            }
        }
        let reason = if space.dim() == 2 {
            "no point of the plane lies in m + 1 shrunk balls"
        } else {
            "no witness among the sampled rays and centers"
        };
        return Ok(CipVerdict::NotFound { reason: reason.into() });
    }

    for w in geodesic_candidates(space, &shrunk, &p) {
        if let Some(found) = accept(family, &shrunk, &w, want, s, "geodesic") {
            return Ok(found);
        }
    }
    Ok(CipVerdict::NotFound { reason: "no witness among the geodesic candidates".into() })
}

fn accept(family: &BallFamily, shrunk: &[Ball], w: &Point, want: usize, s: f64, route: &str) -> Option<CipVerdict> {
    let space = &family.space;
    let indices: Vec<usize> = shrunk
        .iter()
        .enumerate()
        .filter(|(_, b)| space.dist(&b.center, w) <= b.radius + 1e-12 * b.radius.max(1.0))
        .map(|(i, _)| i)
        .take(want)
        .collect();
    (indices.len() == want && witness_holds(family, &indices, w, s))
        .then(|| CipVerdict::Found { indices, witness: w.clone(), route: route.into() })
}

/// Bisectors of the sectors cut by the tangent lines at `p`, deepest and
/// widest first, each followed by a few directions spread inside it.
fn sector_directions(shrunk: &[Ball], p: &Point, m: usize) -> Vec<Vec<f64>> {
    let normals: Vec<f64> = shrunk
        .iter()
        .filter_map(|b| {
            let (x, y) = (b.center.0[0] - p.0[0], b.center.0[1] - p.0[1]);
            (x != 0.0 || y != 0.0).then(|| y.atan2(x))
        })
        .collect();
    let mut cuts: Vec<f64> = normals
        .iter()
        .flat_map(|&t| [t + 0.5 * PI, t - 0.5 * PI])
        .map(|t| t.rem_euclid(2.0 * PI))
        .collect();
    if cuts.is_empty() {
        cuts.push(0.0);
    }
    cuts.sort_by(f64::total_cmp);
    let mut sectors: Vec<(usize, f64, f64)> = Vec::new();
    for k in 0..cuts.len() {
        let a = cuts[k];
        let b = if k + 1 < cuts.len() { cuts[k + 1] } else { cuts[0] + 2.0 * PI };
        let width = b - a;
        let mid = a + 0.5 * width;
        let depth = normals.iter().filter(|&&t| (mid - t).cos() > 0.0).count();
        sectors.push((depth, width, a));
    }
    sectors.sort_by(|x, y| y.0.cmp(&x.0).then(y.1.total_cmp(&x.1)).then(x.2.total_cmp(&y.2)));
    let mut out = Vec::new();
    for &(depth, width, a) in &sectors {
        if depth + shrunk.len() - normals.len() <= m {
            continue;
        }
        for f in [0.5, 0.25, 0.75, 0.1, 0.9] {
            let t = a + f * width;
            out.push(vec![t.cos(), t.sin()]);
        }
    }
    out
}

/// Fibonacci-like quasi-random unit vectors.
fn sphere_directions(dim: usize, count: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..count)
        .map(|_| {
            let g = gaussian(&mut rng, dim);
            let n = norm2(&g).max(1e-300);
            g.into_iter().map(|x| x / n).collect()
        })
        .collect()
}

/// Deepest point on the line `p + δv`: every shrunk ball cuts an interval
/// of `δ`, and the midpoint of a deepest stretch is returned.
fn ray_search(shrunk: &[Ball], p: &Point, v: &[f64], want: usize) -> Option<Point> {
    let mut events: Vec<(f64, i32)> = Vec::new();
    for b in shrunk {
        let w: Vec<f64> = b.center.0.iter().zip(&p.0).map(|(c, q)| c - q).collect();
        let bb = dot(&w, v);
        let disc = bb * bb - (dot(&w, &w) - b.radius * b.radius);
        if disc < 0.0 {
            continue;
        }
        let h = disc.sqrt();
        events.push((bb - h, 1));
        events.push((bb + h, -1));
    }
    events.sort_by(|x, y| x.0.total_cmp(&y.0).then(y.1.cmp(&x.1)));
    let mut depth = 0i32;
    let mut best: Option<(i32, f64)> = None;
    for k in 0..events.len() {
        depth += events[k].1;
        if events[k].1 > 0 && depth as usize >= want && best.is_none_or(|(d, _)| depth > d) {
            let next = events.get(k + 1).map_or(events[k].0, |e| e.0);
            best = Some((depth, 0.5 * (events[k].0 + next)));
        }
    }
    best.map(|(_, delta)| Point(p.0.iter().zip(v).map(|(q, d)| q + delta * d).collect()))
}

fn centers_and(shrunk: &[Ball], p: &Point) -> Vec<Point> {
    let mut c: Vec<Point> = shrunk.iter().map(|b| b.center.clone()).collect();
    c.push(p.clone());
    c
}

/// Every vertex of the arrangement of shrunk circles, the centers, and the
/// common point. A nonempty intersection of disks contains one of them.
fn planar_candidates(shrunk: &[Ball], p: &Point) -> Vec<Point> {
    let mut out = centers_and(shrunk, p);
    for (i, a) in shrunk.iter().enumerate() {
        for b in &shrunk[i + 1..] {
            out.extend(circle_intersections(a, b, 0.0));
        }
    }
    out
}

fn geodesic_candidates(space: &Space, shrunk: &[Ball], p: &Point) -> Vec<Point> {
    let mut out = centers_and(shrunk, p);
    for b in shrunk {
        for k in 1..20 {
            if let Ok(q) = space.geodesic_interpolate(p, &b.center, k as f64 / 20.0) {
                out.push(q);
            }
        }
    }
    for (i, a) in shrunk.iter().enumerate() {
        for b in &shrunk[i + 1..] {
            if let Ok(q) = space.geodesic_interpolate(&a.center, &b.center, 0.5) {
                out.push(q);
            }
        }
    }
    out
}

/// `count` balls in the plane (or any Euclidean dimension) containing the
/// origin, radii uniform in `[band, 1]`, centers at a fraction `1 − u³` of
/// their radius from the origin so that many boundaries pass close to it.
pub fn random_common_point_family(rng: &mut ChaCha8Rng, dim: usize, count: usize, band: f64) -> Result<BallFamily> {
    let space = Space::euclidean(dim)?;
    let balls = (0..count)
        .map(|_| {
            let r = band + (1.0 - band) * rng.gen::<f64>();
            let g = gaussian(rng, dim);
            let n = norm2(&g).max(1e-300);
            let rho = (1.0 - rng.gen::<f64>().powi(3)) * r;
            Ball { center: Point(g.iter().map(|x| x * rho / n).collect()), radius: r }
        })
        .collect();
    Ok(BallFamily { space, balls, labels: None })
}

/// Found rate of [`cip_check`] on random common-point families of `2m + 1`
/// balls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CipTrials {
    pub m: usize,
    pub s: f64,
    pub trials: usize,
    pub found: usize,
    /// Trials whose witness failed re-verification (always empty unless
    /// something is broken).
    pub bad_witnesses: Vec<usize>,
    pub not_found: Vec<usize>,
}

pub fn cip_trials(m: usize, s: f64, trials: usize, dim: usize, seed: u64) -> Result<CipTrials> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = CipTrials { m, s, trials, found: 0, bad_witnesses: Vec::new(), not_found: Vec::new() };
    for t in 0..trials {
        let f = random_common_point_family(&mut rng, dim, 2 * m + 1, 0.9)?;
        match cip_check(&f, m, s)? {
            CipVerdict::Found { indices, witness, .. } => {
                if indices.len() == m + 1 && witness_holds(&f, &indices, &witness, s) {
                    out.found += 1;
                } else {
                    out.bad_witnesses.push(t);
                }
            }
            CipVerdict::NotFound { .. } => out.not_found.push(t),
        }
    }
    Ok(out)
}

/// Largest `s` in `{0.5, 0.55, …, 0.95, 0.99}` for which every trial
/// succeeds.
pub fn largest_working_shrink(m: usize, trials: usize, dim: usize, seed: u64) -> Result<Option<f64>> {
    let mut grid: Vec<f64> = (0..10).map(|k| 0.5 + 0.05 * k as f64).collect();
    grid.push(0.99);
    for &s in grid.iter().rev() {
        let t = cip_trials(m, s, trials, dim, seed)?;
        if t.found == trials {
            return Ok(Some(s));
        }
    }
    Ok(None)
}
