use serde::{Deserialize, Serialize};

use super::BallFamily;
use crate::error::{input, unsupported, Result};
use crate::metric::Point;

/// Pointwise overlap `Σ χ_B` of a family, measured exactly on the line or at
/// probe points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapProfile {
    pub max_overlap: usize,
    pub witness: Option<Point>,
    /// `histogram[k]` counts probe points (or, in exact mode, distinct
    /// endpoint coordinates) lying in exactly `k` balls.
    pub histogram: Vec<usize>,
    /// `false` when `max_overlap` is only a lower bound (probe mode).
    pub exact: bool,
}

/// Where to measure overlap.
#[derive(Debug, Clone, Copy)]
pub enum Probes<'a> {
    Points(&'a [Point]),
    /// Endpoint sweep over the whole real line (1-D Euclidean families only).
    Exact1d,
}

pub fn overlap_profile(family: &BallFamily, probes: Probes<'_>) -> Result<OverlapProfile> {
    match probes {
        Probes::Exact1d => {
            if !family.space.is_line() {
                return unsupported(format!("exact overlap sweep needs the real line, got {}", family.space.label()));
            }
            let iv: Vec<(f64, f64)> =
                family.balls.iter().map(|b| (b.center.0[0] - b.radius, b.center.0[0] + b.radius)).collect();
            let (hist, max, at) = sweep(&iv);
            Ok(OverlapProfile {
                max_overlap: max,
                witness: at.map(|x| Point(vec![x])),
                histogram: hist,
                exact: true,
            })
        }
        Probes::Points(points) => {
            if points.is_empty() {
                return input("probe mode needs at least one probe point");
            }
            let mut hist = vec![0usize; family.len() + 1];
            let mut best = (0usize, None);
            for p in points {
                if p.len() != family.space.ambient_dim() {
                    return input(format!("probe has {} coordinates, expected {}", p.len(), family.space.ambient_dim()));
                }
                let k = family.depth(p);
                hist[k] += 1;
                if best.1.is_none() || k > best.0 {
                    best = (k, Some(p.clone()));
                }
            }
            while hist.len() > 1 && *hist.last().unwrap() == 0 {
                hist.pop();
            }
            Ok(OverlapProfile { max_overlap: best.0, witness: best.1, histogram: hist, exact: false })
        }
    }
}

/// Endpoint sweep over closed intervals `[lo, hi]`. Returns the depth
/// histogram over distinct endpoint coordinates, the maximum depth and a
/// coordinate attaining it.
pub(crate) fn sweep(intervals: &[(f64, f64)]) -> (Vec<usize>, usize, Option<f64>) {
    let mut events: Vec<(f64, u8)> = Vec::with_capacity(2 * intervals.len());
    for &(lo, hi) in intervals {
        events.push((lo, 0));
        events.push((hi, 1));
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut hist = vec![0usize; intervals.len() + 1];
    let mut depth = 0usize;
    let mut max = 0usize;
    let mut at = None;
    let mut i = 0;
    while i < events.len() {
        let x = events[i].0;
        while i < events.len() && events[i].0 == x && events[i].1 == 0 {
            depth += 1;
            i += 1;
        }
        hist[depth] += 1;
        if at.is_none() || depth > max {
            max = depth;
            at = Some(x);
        }
        while i < events.len() && events[i].0 == x {
            depth -= 1;
            i += 1;
        }
    }
    while hist.len() > 1 && *hist.last().unwrap() == 0 {
        hist.pop();
    }
    if intervals.is_empty() {
        hist.clear();
    }
    (hist, max, at)
}

/// Maximum depth of a list of closed intervals.
#[cfg(test)]
pub(crate) fn max_depth_1d(intervals: &[(f64, f64)]) -> usize {
    sweep(intervals).1
}
