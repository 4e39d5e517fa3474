use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::anneal::{gaussian, grow, jiggle, point_near, Landscape};
use super::{SearchConfig, SearchResult};
use crate::error::{input, Result};
use crate::kernel::{is_tau_satellite_configuration, BallFamily, QuasiRoundSet};
use crate::metric::{Ball, Point, Space};

const MARGIN: f64 = 1e-3;

/// Outer factors searched; a request with `λ` runs every entry `≤ λ`.
pub const LAMBDA_LADDER: [f64; 5] = [1.0, 1.5, 2.0, 3.0, 4.0];

/// Round sets `(a, r)` with outer factor `lambda`; set 0 is the central
/// set and the points are the anchors.
struct Satellites {
    space: Space,
    tau: f64,
    lambda: f64,
    lo: f64,
    hi: f64,
}

impl Landscape for Satellites {
    type Item = (Point, f64);

    fn unary(&self, _: &(Point, f64)) -> f64 {
        0.0
    }

    fn pair(&self, i: usize, (a, ra): &(Point, f64), _: usize, (b, rb): &(Point, f64)) -> f64 {
        let d = self.space.dist(a, b);
        // later anchors avoid earlier sets; diameters 2r stay within a factor τ
        let mut e = (ra * (1.0 + MARGIN) - d).max(0.0) + (rb - self.tau * ra * (1.0 - MARGIN)).max(0.0);
        if i == 0 {
            e += (d - self.lambda * (ra + rb) * (1.0 - MARGIN)).max(0.0);
            e += (ra - self.tau * rb * (1.0 - MARGIN)).max(0.0);
        }
        e
    }

    fn perturb(&self, rng: &mut ChaCha8Rng, (c, r): &(Point, f64), step: f64) -> (Point, f64) {
        if rng.gen::<f64>() < 0.3 {
            let g = gaussian(rng, 1)[0];
            return (c.clone(), (r * (step * g).exp()).clamp(self.lo, self.hi));
        }
        (jiggle(&self.space, rng, c, step * r), *r)
    }

    fn spawn(&self, rng: &mut ChaCha8Rng, items: &[(Point, f64)]) -> (Point, f64) {
        let r = self.lo + (self.hi - self.lo) * rng.gen::<f64>();
        let (a0, r0) = &items[0];
        (point_near(&self.space, rng, a0, self.lambda * (r0 + r)), r)
    }

    fn certify(&self, items: &[(Point, f64)]) -> bool {
        let Ok(sets) = self.sets(items) else { return false };
        let points: Vec<Point> = items.iter().map(|(a, _)| a.clone()).collect();
        is_tau_satellite_configuration(&self.space, &sets, &points, self.tau).is_ok_and(|v| v.is_valid())
    }

    fn scale(&self) -> f64 {
        self.hi
    }
}

impl Satellites {
    fn sets(&self, items: &[(Point, f64)]) -> Result<Vec<QuasiRoundSet>> {
        items.iter().map(|(a, r)| QuasiRoundSet::new(a.clone(), *r, self.lambda, 2.0 * r)).collect()
    }
}

/// Largest τ-satellite configuration found by annealing, an empirical lower
/// bound for the satellite constant of the space.
///
/// The search works with round sets `B(a, r) ⊆ S ⊆ B(a, λ'r)` of diameter
/// `2r`, the points being the anchors and the first set central. It runs
/// once for every `λ'` of [`LAMBDA_LADDER`] not above `lambda`, each run
/// with the full configuration, and keeps the best; larger `lambda` thus
/// never scores lower on the same configuration.
pub fn satellite_max_search(space: &Space, tau: f64, lambda: f64, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    if !(tau > 1.0 && tau <= 2.0) {
        return input(format!("tau must lie in (1, 2], got {tau}"));
    }
    if !(lambda.is_finite() && lambda >= 1.0) {
        return input(format!("lambda must be at least 1, got {lambda}"));
    }
    let hi = (space.injectivity_radius() / 16.0).min(1.0);
    let mut best: Option<(Satellites, Vec<(Point, f64)>)> = None;
    let mut trace = Vec::new();
    for &l in LAMBDA_LADDER.iter().filter(|&&l| l <= lambda) {
        let land = Satellites { space: *space, tau, lambda: l, lo: 0.25 * hi, hi };
        let warm = vec![(space.origin(), hi)];
        let g = grow(&land, &warm, cfg, None);
        trace.push(g.best.len());
        if best.as_ref().is_none_or(|(_, b)| g.best.len() > b.len()) {
            best = Some((land, g.best));
        }
    }
    let (land, items) = best.expect("the ladder starts at 1");
    let sets = land.sets(&items)?;
    let feasible = land.certify(&items);
    let balls = items.iter().map(|(a, r)| Ball { center: a.clone(), radius: *r }).collect();
    let best = BallFamily { space: *space, balls, labels: None };
    Ok(SearchResult { score: best.len(), best, feasible, trace, sets: Some(sets) })
}
