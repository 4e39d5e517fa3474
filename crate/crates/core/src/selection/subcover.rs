use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::radius_desc_then_lex;
use crate::error::{input, Result};
use crate::kernel::{overlap_profile, BallFamily, OverlapProfile, Probes};
use crate::metric::Point;

/// Output of a subcover selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubcoverResult {
    pub selected: BallFamily,
    /// Input indices of the selected balls, in selection order.
    pub indices: Vec<usize>,
    pub covered_centers: Vec<bool>,
    pub overlap: OverlapProfile,
    /// Scale band of every input ball: `i` with `r ∈ (βⁱ R, βⁱ⁻¹ R]`.
    pub bands: Vec<i64>,
}

impl SubcoverResult {
    pub fn covers_all(&self) -> bool {
        self.covered_centers.iter().all(|&c| c)
    }
}

/// Band index `i ≥ 1` with `r ∈ (βⁱ R, βⁱ⁻¹ R]`, for `0 < r ≤ R`.
pub fn band_index(r: f64, cap: f64, beta: f64) -> i64 {
    let mut i = ((r / cap).ln() / beta.ln()).floor() as i64 + 1;
    while i > 1 && r > beta.powi((i - 1) as i32) * cap {
        i -= 1;
    }
    while r <= beta.powi(i as i32) * cap {
        i += 1;
    }
    i
}

/// For every ball, the index of the listed center it sits on.
pub(crate) fn match_centers(family: &BallFamily, centers: &[Point]) -> Result<Vec<Option<usize>>> {
    let space = &family.space;
    let key = |p: &Point| p.0.iter().map(|v| (v + 0.0).to_bits()).collect::<Vec<u64>>();
    let mut exact: HashMap<Vec<u64>, usize> = HashMap::new();
    for (i, c) in centers.iter().enumerate() {
        space.check_point(c).map_err(|e| crate::Error::Input(format!("center {i}: {e}")))?;
        exact.entry(key(c)).or_insert(i);
    }
    let mut of_ball = vec![None; family.len()];
    let mut has_ball = vec![false; centers.len()];
    for (b, ball) in family.balls.iter().enumerate() {
        let hit = exact.get(&key(&ball.center)).copied().or_else(|| {
            centers.iter().position(|c| space.dist(c, &ball.center) <= space.tol().slack(ball.radius))
        });
        if let Some(i) = hit {
            of_ball[b] = Some(i);
            has_ball[i] = true;
        }
    }
    for (i, c) in centers.iter().enumerate() {
        if !has_ball[i] && !family.balls.iter().any(|b| space.dist(c, &b.center) <= space.tol().slack(b.radius)) {
            return input(format!("center {i} is not the center of any ball"));
        }
    }
    Ok(of_ball)
}

pub(crate) fn check_radii(family: &BallFamily) -> Result<()> {
    for (i, b) in family.balls.iter().enumerate() {
        if b.radius <= 0.0 {
            return input(format!("ball {i} has radius {}, radii must be positive", b.radius));
        }
    }
    Ok(())
}

/// Overlap of a selection: exact on the line, probed at the given points and
/// the selected centers elsewhere.
pub(crate) fn measure_overlap(selected: &BallFamily, probes: &[Point]) -> Result<OverlapProfile> {
    if selected.space.is_line() {
        return overlap_profile(selected, Probes::Exact1d);
    }
    let mut pts: Vec<Point> = probes.to_vec();
    pts.extend(selected.centers());
    if pts.is_empty() {
        pts.push(selected.space.origin());
    }
    overlap_profile(selected, Probes::Points(&pts))
}

/// Bounded-overlap subcover by scale bands.
///
/// Balls are grouped into bands `r ∈ (βⁱ R, βⁱ⁻¹ R]` with `R` the largest
/// radius. Bands are processed from the largest radii down. Centers already
/// covered by earlier selections are dropped first; then maximal disjoint
/// subfamilies of the band balls with uncovered centers are extracted
/// (radius descending, then lexicographic) until every center of the band
/// is covered.
pub fn select_bounded_overlap_subcover(family: &BallFamily, centers: &[Point], beta: f64) -> Result<SubcoverResult> {
    if !(beta > 0.0 && beta < 1.0) {
        return input(format!("beta must lie in (0, 1), got {beta}"));
    }
    check_radii(family)?;
    let space = family.space;
    let of_ball = match_centers(family, centers)?;
    let cap = family.max_radius();
    let bands: Vec<i64> = family.balls.iter().map(|b| band_index(b.radius, cap, beta)).collect();

    let mut order: Vec<usize> = (0..family.len()).filter(|&b| of_ball[b].is_some()).collect();
    order.sort_by(|&a, &b| bands[a].cmp(&bands[b]).then_with(|| radius_desc_then_lex(&family.balls[a], &family.balls[b])));

    let mut covered = vec![false; centers.len()];
    let mut chosen: Vec<usize> = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let band = bands[order[start]];
        let mut end = start;
        while end < order.len() && bands[order[end]] == band {
            end += 1;
        }
        loop {
            let mut round: Vec<usize> = Vec::new();
            for &b in &order[start..end] {
                if covered[of_ball[b].unwrap()] {
                    continue;
                }
                let ball = &family.balls[b];
                if round.iter().all(|&o| !space.balls_intersect(ball, &family.balls[o])) {
                    round.push(b);
                }
            }
            if round.is_empty() {
                break;
            }
            for &b in &round {
                let ball = &family.balls[b];
                for (c, p) in centers.iter().enumerate() {
                    if !covered[c] && space.contains(ball, p) {
                        covered[c] = true;
                    }
                }
            }
            chosen.extend(round);
        }
        start = end;
    }

    let selected = family.subfamily(&chosen);
    let overlap = measure_overlap(&selected, centers)?;
    Ok(SubcoverResult { selected, indices: chosen, covered_centers: covered, overlap, bands })
}
