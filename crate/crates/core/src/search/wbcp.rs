use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::anneal::{gaussian, grow, jiggle, point_near, Landscape};
use super::hadwiger::strict_code;
use super::{SearchConfig, SearchResult};
use crate::error::{input, Result};
use crate::kernel::{is_besicovitch_family, is_k_configuration, BallFamily};
use crate::metric::{Ball, Point, Space};

/// Relative safety margin of the penalties, far above the validator slack.
const MARGIN: f64 = 1e-3;

/// Balls with radii in `[lo, hi]`. Besicovitch mode pins the common point
/// at the origin of the space; K mode only asks for pairwise intersection.
struct Families {
    space: Space,
    lo: f64,
    hi: f64,
    origin: Point,
    k_config: bool,
}

impl Landscape for Families {
    type Item = (Point, f64);

    fn unary(&self, (c, r): &(Point, f64)) -> f64 {
        if self.k_config {
            return 0.0;
        }
        (self.space.dist(c, &self.origin) - r * (1.0 - MARGIN)).max(0.0)
    }

    fn pair(&self, _: usize, (a, ra): &(Point, f64), _: usize, (b, rb): &(Point, f64)) -> f64 {
        let d = self.space.dist(a, b);
        let mut e = (ra.max(*rb) * (1.0 + MARGIN) - d).max(0.0);
        if self.k_config {
            e += (d - (ra + rb) * (1.0 - MARGIN)).max(0.0);
        }
        e
    }

    fn perturb(&self, rng: &mut ChaCha8Rng, (c, r): &(Point, f64), step: f64) -> (Point, f64) {
        if rng.gen::<f64>() < 0.25 && self.hi > self.lo {
            let g = gaussian(rng, 1)[0];
            return (c.clone(), (r * (step * g).exp()).clamp(self.lo, self.hi));
        }
        (jiggle(&self.space, rng, c, step * r), *r)
    }

    fn spawn(&self, rng: &mut ChaCha8Rng, items: &[(Point, f64)]) -> (Point, f64) {
        let r = self.lo + (self.hi - self.lo) * rng.gen::<f64>();
        let base = match (self.k_config, items.len()) {
            (true, n) if n > 0 => &items[rng.gen_range(0..n)].0,
            _ => &self.origin,
        };
        (point_near(&self.space, rng, base, r), r)
    }

    fn certify(&self, items: &[(Point, f64)]) -> bool {
        let f = self.family(items);
        if self.k_config {
            is_k_configuration(&f).is_valid()
        } else {
            is_besicovitch_family(&f).is_valid()
        }
    }

    fn scale(&self) -> f64 {
        self.hi
    }
}

impl Families {
    fn new(space: &Space, radii: [f64; 2], k_config: bool) -> Result<Families> {
        let [lo, hi] = radii;
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
            return input(format!("radii range [{lo}, {hi}] must satisfy 0 < rmin <= rmax"));
        }
        if hi >= 0.5 * space.injectivity_radius() {
            return input(format!("rmax {hi} must stay below half the injectivity radius"));
        }
        Ok(Families { space: *space, lo, hi, origin: space.origin(), k_config })
    }

    fn family(&self, items: &[(Point, f64)]) -> BallFamily {
        let balls = items.iter().map(|(c, r)| Ball { center: c.clone(), radius: *r }).collect();
        BallFamily { space: self.space, balls, labels: None }
    }

    fn result(&self, items: Vec<(Point, f64)>, trace: Vec<usize>) -> SearchResult {
        let best = self.family(&items);
        let feasible = self.certify(&items);
        SearchResult { score: best.len(), best, feasible, trace, sets: None }
    }

    /// Centers on a strict spherical code at distance `t` from the origin,
    /// all of radius `hi`: a Besicovitch family whenever `t ≤ hi < t·m`
    /// with `m` the smallest distance between code vectors.
    fn warm(&self, cfg: &SearchConfig) -> Vec<(Point, f64)> {
        let dirs = strict_code(self.space.dim(), cfg);
        let m = min_gap(&dirs);
        let t = 2.0 * self.hi / (1.0 + m);
        let basis = self.space.tangent_basis(&self.origin);
        dirs.iter().map(|u| (self.space.point_at(&self.origin, &basis, u, t), self.hi)).collect()
    }
}

fn min_gap(dirs: &[Vec<f64>]) -> f64 {
    let mut m = f64::INFINITY;
    for (i, a) in dirs.iter().enumerate() {
        for b in &dirs[i + 1..] {
            m = m.min(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt());
        }
    }
    m
}

/// Largest Besicovitch family found by annealing, a lower bound for the
/// weak Besicovitch constant of the space.
///
/// The common point is pinned at the origin of the space. Every restart
/// starts from a family built on a strict spherical code (two intervals,
/// the pentagon, the icosahedron, an annealed code beyond) and tries to add
/// one ball at a time. The returned family is re-validated.
pub fn search_max_besicovitch_family(space: &Space, radii: [f64; 2], cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let land = Families::new(space, radii, false)?;
    let warm = land.warm(cfg);
    let g = grow(&land, &warm, cfg, None);
    Ok(land.result(g.best, g.trace))
}

/// Largest configuration of pairwise intersecting balls none of which
/// contains another's center, grown from `warm` (by default the best
/// Besicovitch family of the space).
pub fn search_max_k_configuration(
    space: &Space,
    radii: [f64; 2],
    warm: Option<&BallFamily>,
    cfg: &SearchConfig,
) -> Result<SearchResult> {
    cfg.validate()?;
    let land = Families::new(space, radii, true)?;
    let start: Vec<(Point, f64)> = match warm {
        Some(f) => {
            if f.space != *space {
                return input("warm start lives in a different space");
            }
            f.balls.iter().map(|b| (b.center.clone(), b.radius.clamp(land.lo, land.hi))).collect()
        }
        None => Families::new(space, radii, false)?.warm(cfg),
    };
    let g = grow(&land, &start, cfg, None);
    Ok(land.result(g.best, g.trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(seed: u64) -> SearchConfig {
        SearchConfig::with_seed(seed).with_budget(8_000)
    }

    #[test]
    fn line_never_exceeds_two() {
        let e1 = Space::euclidean(1).unwrap();
        for seed in 0..5 {
            let r = search_max_besicovitch_family(&e1, [0.5, 1.0], &quick(seed)).unwrap();
            assert!(r.feasible);
            assert_eq!(r.score, 2);
        }
    }

    #[test]
    fn plane_reaches_five() {
        let e2 = Space::euclidean(2).unwrap();
        let r = search_max_besicovitch_family(&e2, [0.8, 1.0], &quick(0)).unwrap();
        assert!(r.feasible);
        assert_eq!(r.score, 5);
        assert!(is_besicovitch_family(&r.best).is_valid());
    }

    #[test]
    fn sphere_search_is_validated() {
        let s2 = Space::sphere(2, 1.0).unwrap();
        let r = search_max_besicovitch_family(&s2, [0.3, std::f64::consts::FRAC_PI_4], &quick(1)).unwrap();
        assert!(r.feasible && r.score >= 2);
    }

    #[test]
    fn bad_ranges() {
        let e2 = Space::euclidean(2).unwrap();
        let cfg = quick(0);
        assert!(search_max_besicovitch_family(&e2, [0.0, 1.0], &cfg).is_err());
        assert!(search_max_besicovitch_family(&e2, [2.0, 1.0], &cfg).is_err());
        let s2 = Space::sphere(2, 1.0).unwrap();
        assert!(search_max_besicovitch_family(&s2, [0.5, 2.0], &cfg).is_err());
    }

    #[test]
    fn k_configuration_extends_the_besicovitch_family() {
        let e2 = Space::euclidean(2).unwrap();
        let w = search_max_besicovitch_family(&e2, [0.5, 1.0], &quick(0)).unwrap();
        let k = search_max_k_configuration(&e2, [0.5, 1.0], Some(&w.best), &quick(0)).unwrap();
        assert!(k.feasible);
        assert!(k.score >= w.score && k.score <= 11);
        let e1 = Space::euclidean(1).unwrap();
        let k1 = search_max_k_configuration(&e1, [0.5, 1.0], None, &quick(3)).unwrap();
        assert_eq!(k1.score, 2);
    }
}
