use rand_chacha::ChaCha8Rng;

use super::anneal::{grow, jiggle, point_near, Landscape};
use super::{SearchConfig, SearchResult};
use crate::error::Result;
use crate::kernel::{BallFamily, Verdict};
use crate::metric::{norm2, Ball, Point, Space};

/// Open unit balls touch at center distance exactly 2, so pairs may sit at
/// `2 − PAIR_SLACK` to absorb rounding of lattice coordinates.
const PAIR_SLACK: f64 = 1e-12;

/// Checks a packing of open unit balls in the ball of radius 5: unit radii,
/// first center at the origin, every center within distance 4 of the origin
/// (exactly), centers pairwise at distance at least 2, and at most `5ⁿ`
/// balls.
pub fn verify_radius5_packing(family: &BallFamily) -> Verdict {
    let space = &family.space;
    if !space.is_hilbertian() {
        return Verdict::invalid("packings are checked in Euclidean space", Vec::new());
    }
    let Some(first) = family.balls.first() else {
        return Verdict::invalid("a packing needs the central ball", Vec::new());
    };
    if first.center.0.iter().any(|&x| x != 0.0) {
        return Verdict::invalid("the first ball must sit at the origin", vec![0]);
    }
    for (i, b) in family.balls.iter().enumerate() {
        if b.radius != 1.0 {
            return Verdict::invalid(format!("ball {i} is not a unit ball"), vec![i]);
        }
        if norm2(b.center.coords()) > 4.0 {
            return Verdict::invalid(format!("ball {i} leaves the ball of radius 5"), vec![i]);
        }
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if space.dist(&family.balls[i].center, &family.balls[j].center) < 2.0 - PAIR_SLACK {
                return Verdict::invalid(format!("balls {i} and {j} overlap"), vec![i, j]);
            }
        }
    }
    let cap = 5f64.powi(space.dim() as i32);
    if family.len() as f64 > cap {
        return Verdict::invalid(format!("{} balls exceed the volume bound 5^n", family.len()), Vec::new());
    }
    Verdict::valid()
}

/// Pulls a center onto the closed ball of radius 4.
fn clamp4(mut c: Vec<f64>) -> Vec<f64> {
    while norm2(&c) > 4.0 {
        let k = 4.0 / norm2(&c) * (1.0 - f64::EPSILON);
        c.iter_mut().for_each(|x| *x *= k);
    }
    c
}

/// Hexagonal layout in the plane, the rescaled `D_n` lattice otherwise.
fn lattice(dim: usize) -> Vec<Vec<f64>> {
    match dim {
        1 => (-2..=2).map(|k| vec![2.0 * k as f64]).collect(),
        2 => {
            let h = 3f64.sqrt();
            let mut v = Vec::new();
            for a in -4i32..=4 {
                for b in -4i32..=4 {
                    if a * a + a * b + b * b <= 4 {
                        v.push(vec![(2 * a + b) as f64, b as f64 * h]);
                    }
                }
            }
            v
        }
        _ => {
            // integer vectors with even coordinate sum and |x|² ≤ 8, times √2
            let cap = if dim <= 8 { 8 } else { 4 };
            let mut out = Vec::new();
            let mut x = vec![0i32; dim];
            enumerate(&mut x, 0, 0, cap, &mut out);
            out.into_iter().map(|x| x.iter().map(|&k| k as f64 * 2f64.sqrt()).collect()).collect()
        }
    }
}

fn enumerate(x: &mut Vec<i32>, i: usize, sq: i32, cap: i32, out: &mut Vec<Vec<i32>>) {
    if i == x.len() {
        if x.iter().sum::<i32>() % 2 == 0 {
            out.push(x.clone());
        }
        return;
    }
    for k in -2..=2 {
        if sq + k * k <= cap {
            x[i] = k;
            enumerate(x, i + 1, sq + k * k, cap, out);
        }
    }
    x[i] = 0;
}

struct Radius5 {
    space: Space,
}

impl Landscape for Radius5 {
    type Item = Point;

    fn unary(&self, c: &Point) -> f64 {
        (norm2(c.coords()) - 4.0).max(0.0)
    }

    fn pair(&self, _: usize, a: &Point, _: usize, b: &Point) -> f64 {
        (2.0 - self.space.dist(a, b)).max(0.0)
    }

    fn perturb(&self, rng: &mut ChaCha8Rng, c: &Point, step: f64) -> Point {
        jiggle(&self.space, rng, c, step)
    }

    fn spawn(&self, rng: &mut ChaCha8Rng, _: &[Point]) -> Point {
        point_near(&self.space, rng, &self.space.origin(), 4.0)
    }

    fn certify(&self, items: &[Point]) -> bool {
        verify_radius5_packing(&family(self.space, items)).is_valid()
    }

    fn scale(&self) -> f64 {
        1.0
    }

    fn pinned(&self, i: usize) -> bool {
        i == 0
    }
}

fn family(space: Space, items: &[Point]) -> BallFamily {
    let balls = items.iter().map(|c| Ball { center: Point(clamp4(c.0.clone())), radius: 1.0 }).collect();
    BallFamily { space, balls, labels: None }
}

/// Open unit balls packed in the ball of radius 5 around the origin, one of
/// them centered at the origin.
///
/// The line is solved exactly by five balls. In the plane the hexagonal
/// layout of 19 balls is the warm start, in higher dimensions the points of
/// the rescaled `D_n` lattice within distance 4; annealing then tries to
/// insert further balls. Centers are pulled onto the closed ball of radius
/// 4 before the final check.
pub fn pack_unit_balls_radius5(dim: usize, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let space = Space::euclidean(dim)?;
    let mut warm: Vec<Point> = lattice(dim).into_iter().map(|c| Point(clamp4(c))).collect();
    warm.sort_by(|a, b| norm2(a.coords()).total_cmp(&norm2(b.coords())));
    let (items, trace) = if dim == 1 {
        (warm, vec![5])
    } else {
        let g = grow(&Radius5 { space }, &warm, cfg, None);
        (g.best, g.trace)
    };
    let best = family(space, &items);
    let feasible = verify_radius5_packing(&best).is_valid();
    Ok(SearchResult { score: best.len(), best, feasible, trace, sets: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_gives_five() {
        let r = pack_unit_balls_radius5(1, &SearchConfig::default()).unwrap();
        assert_eq!(r.score, 5);
        assert!(r.feasible);
    }

    #[test]
    fn plane_gives_nineteen() {
        let r = pack_unit_balls_radius5(2, &SearchConfig::default().with_budget(2_000)).unwrap();
        assert_eq!(r.score, 19);
        assert!(r.feasible);
        assert!(r.best.balls.iter().all(|b| norm2(b.center.coords()) <= 4.0));
    }

    #[test]
    fn lattice_shell_counts() {
        // D3: 1 + 12 + 6 + 24 + 12 points of norm² 0, 2, 4, 6, 8
        assert_eq!(lattice(3).len(), 55);
        // D4: 1 + 24 + 24 + 96 + 24
        assert_eq!(lattice(4).len(), 169);
    }

    #[test]
    fn checker_rejects_bad_packings() {
        let e2 = Space::euclidean(2).unwrap();
        let off = BallFamily::from_pairs(e2, vec![(vec![0.5, 0.0], 1.0)]).unwrap();
        assert!(verify_radius5_packing(&off).is_invalid());
        let far = BallFamily::from_pairs(e2, vec![(vec![0.0, 0.0], 1.0), (vec![4.0, 0.1], 1.0)]).unwrap();
        assert!(verify_radius5_packing(&far).is_invalid());
        let close = BallFamily::from_pairs(e2, vec![(vec![0.0, 0.0], 1.0), (vec![1.9, 0.0], 1.0)]).unwrap();
        assert!(verify_radius5_packing(&close).is_invalid());
        let touching = BallFamily::from_pairs(e2, vec![(vec![0.0, 0.0], 1.0), (vec![2.0, 0.0], 1.0)]).unwrap();
        assert!(verify_radius5_packing(&touching).is_valid());
    }
}
