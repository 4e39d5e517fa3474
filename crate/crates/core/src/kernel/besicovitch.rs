use super::{BallFamily, Verdict};
use crate::metric::{Ball, Point, Space, SpaceKind};

const POCS_THRESHOLD: f64 = 1e-10;
const POCS_CAP: usize = 10_000;

/// Result of the search for a point common to all balls of a family.
#[derive(Debug, Clone, PartialEq)]
pub enum CommonPoint {
    Found(Point),
    /// Certified empty intersection; `indices` names a witnessing subfamily
    /// when one is known (a disjoint pair).
    Empty { reason: String, indices: Vec<usize> },
    Unknown(String),
}

/// Searches for a point in the intersection of all balls.
///
/// On the line the intersection is computed exactly. Elsewhere the search
/// runs cyclic projections onto the balls starting from the mean of the
/// centers (radial retraction along geodesics), then a grid with local
/// refinement of the largest excess `max_i d(x, c_i) − r_i`. Emptiness is
/// certified by a disjoint pair, or by stationary cyclic projections with a
/// clearly positive excess in Hilbert and hyperbolic space.
pub fn common_point(family: &BallFamily) -> CommonPoint {
    let space = &family.space;
    let balls = &family.balls;
    if balls.is_empty() {
        return CommonPoint::Found(space.origin());
    }
    let rmax = family.max_radius();
    let slack = space.tol().slack(rmax);

    if space.is_line() {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        let (mut ilo, mut ihi) = (0, 0);
        for (i, b) in balls.iter().enumerate() {
            let c = b.center.0[0];
            if c - b.radius > lo {
                lo = c - b.radius;
                ilo = i;
            }
            if c + b.radius < hi {
                hi = c + b.radius;
                ihi = i;
            }
        }
        if lo <= hi + slack {
            return CommonPoint::Found(Point(vec![0.5 * (lo + hi)]));
        }
        return CommonPoint::Empty {
            reason: format!("intervals {ilo} and {ihi} are disjoint"),
            indices: vec![ilo.min(ihi), ilo.max(ihi)],
        };
    }

    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            let d = space.dist(&balls[i].center, &balls[j].center);
            if d > balls[i].radius + balls[j].radius + slack {
                return CommonPoint::Empty { reason: format!("balls {i} and {j} are disjoint"), indices: vec![i, j] };
            }
        }
    }

    let excess = |x: &Point| balls.iter().map(|b| space.dist(x, &b.center) - b.radius).fold(f64::NEG_INFINITY, f64::max);

    let (x, stationary) = pocs(space, family);
    let ex = excess(&x);
    if ex <= slack {
        return CommonPoint::Found(x);
    }
    let certifies = space.is_hilbertian() || matches!(space.kind(), SpaceKind::Hyperbolic);
    if certifies && stationary && ex > 100.0 * slack {
        return CommonPoint::Empty {
            reason: format!("cyclic projections are stationary with excess {ex:e}"),
            indices: Vec::new(),
        };
    }

    if space.is_hilbertian() && space.dim() == 2 {
        // a nonempty intersection of disks contains a center or has a vertex
        // on two boundary circles
        let mut best: Option<(f64, Point)> = None;
        let pairs = (0..balls.len()).flat_map(|i| (i + 1..balls.len()).map(move |j| (i, j)));
        let cands = balls.iter().map(|b| b.center.clone()).chain(
            pairs.flat_map(|(i, j)| circle_intersections(&balls[i], &balls[j], slack)),
        );
        for c in cands {
            let e = excess(&c);
            if best.as_ref().is_none_or(|(b, _)| e < *b) {
                best = Some((e, c));
            }
        }
        let (e, c) = best.expect("nonempty family");
        if e <= slack {
            return CommonPoint::Found(c);
        }
        if e > 100.0 * slack {
            return CommonPoint::Empty { reason: format!("no disk center or circle crossing is common (excess {e:e})"), indices: Vec::new() };
        }
    }

    let (y, ey) = grid_refine(space, family, &excess);
    if ey <= slack {
        return CommonPoint::Found(y);
    }
    CommonPoint::Unknown(format!("no common point found (smallest excess {:e})", ex.min(ey)))
}

/// Crossing points of the boundary circles of two planar disks, treating
/// circles within `slack` of tangency as tangent.
pub(crate) fn circle_intersections(a: &Ball, b: &Ball, slack: f64) -> Vec<Point> {
    let (x0, y0, x1, y1) = (a.center.0[0], a.center.0[1], b.center.0[0], b.center.0[1]);
    let (dx, dy) = (x1 - x0, y1 - y0);
    let d = dx.hypot(dy);
    if d == 0.0 || d > a.radius + b.radius + slack || d < (a.radius - b.radius).abs() - slack {
        return Vec::new();
    }
    let l = (a.radius * a.radius - b.radius * b.radius + d * d) / (2.0 * d);
    let h = (a.radius * a.radius - l * l).max(0.0).sqrt();
    let (mx, my) = (x0 + l * dx / d, y0 + l * dy / d);
    vec![Point(vec![mx - h * dy / d, my + h * dx / d]), Point(vec![mx + h * dy / d, my - h * dx / d])]
}

fn centroid(space: &Space, family: &BallFamily) -> Point {
    let n = space.ambient_dim();
    let mut m = vec![0.0; n];
    for b in &family.balls {
        m.iter_mut().zip(b.center.coords()).for_each(|(a, c)| *a += c);
    }
    let k = family.len() as f64;
    m.iter_mut().for_each(|a| *a /= k);
    if space.is_euclidean() {
        return Point(m);
    }
    if m.iter().all(|v| v.abs() < 1e-300) {
        return family.balls[0].center.clone();
    }
    space.project(m)
}

/// Cyclic projections; returns the last iterate and whether the sweep
/// displacement fell below the threshold.
fn pocs(space: &Space, family: &BallFamily) -> (Point, bool) {
    let scale = family.max_radius().max(1e-300);
    let mut x = centroid(space, family);
    for _ in 0..POCS_CAP {
        let start = x.clone();
        for b in &family.balls {
            let d = space.dist(&x, &b.center);
            if d > b.radius {
                if space.is_euclidean() {
                    let t = b.radius / d;
                    x = Point(b.center.0.iter().zip(&x.0).map(|(c, v)| c + t * (v - c)).collect());
                } else {
                    match space.geodesic_interpolate(&b.center, &x, b.radius / d) {
                        Ok(p) => x = p,
                        Err(_) => return (x, false),
                    }
                }
            }
        }
        if space.dist(&start, &x) <= POCS_THRESHOLD * scale {
            return (x, true);
        }
    }
    (x, false)
}

fn grid_refine(space: &Space, family: &BallFamily, excess: &dyn Fn(&Point) -> f64) -> (Point, f64) {
    let smallest = family.balls.iter().min_by(|a, b| a.radius.total_cmp(&b.radius)).unwrap().clone();
    let base = smallest.center.clone();
    let basis = space.tangent_basis(&base);
    let dim = space.dim();
    let r = smallest.radius;
    let per_axis = ((4096f64).powf(1.0 / dim as f64).floor() as usize).clamp(3, 65);
    let at = |u: &[f64]| -> Point {
        let len = space.tangent_norm(&space.from_local(&basis, u));
        if len == 0.0 {
            base.clone()
        } else {
            space.point_at(&base, &basis, u, len)
        }
    };

    let mut best_u = vec![0.0; dim];
    let mut best = excess(&base);
    let mut idx = vec![0usize; dim];
    let step = 2.0 * r / (per_axis - 1) as f64;
    'grid: loop {
        let u: Vec<f64> = idx.iter().map(|&i| -r + step * i as f64).collect();
        let p = at(&u);
        let e = excess(&p);
        if e < best {
            best = e;
            best_u = u;
        }
        let mut a = 0;
        loop {
            idx[a] += 1;
            if idx[a] < per_axis {
                break;
            }
            idx[a] = 0;
            a += 1;
            if a == dim {
                break 'grid;
            }
        }
    }

    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for a in 0..dim {
        let mut e = vec![0.0; dim];
        e[a] = 1.0;
        dirs.push(e.clone());
        dirs.push(e.iter().map(|v| -v).collect());
        for b in a + 1..dim {
            for (sa, sb) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let mut e = vec![0.0; dim];
                e[a] = sa * std::f64::consts::FRAC_1_SQRT_2;
                e[b] = sb * std::f64::consts::FRAC_1_SQRT_2;
                dirs.push(e);
            }
        }
    }
    let mut h = step;
    let stop = 1e-14 * r.max(1e-300);
    let slack = space.tol().slack(family.max_radius());
    while h > stop && best > slack {
        let mut improved = false;
        for d in &dirs {
            let u: Vec<f64> = best_u.iter().zip(d).map(|(a, b)| a + h * b).collect();
            let e = excess(&at(&u));
            if e < best {
                best = e;
                best_u = u;
                improved = true;
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    (at(&best_u), best)
}

/// Besicovitch family check: all balls share a point and no ball contains
/// another ball's center. Center exclusion is strict (`d > r_j`) and a pair
/// within the tolerance slack of the boundary is rejected.
pub fn is_besicovitch_family(family: &BallFamily) -> Verdict {
    if let Some(v) = center_exclusion(family) {
        return v;
    }
    match common_point(family) {
        CommonPoint::Found(p) => Verdict::Valid { witness: Some(p), index: None },
        CommonPoint::Empty { reason, indices } => Verdict::invalid(format!("no common point: {reason}"), indices),
        CommonPoint::Unknown(reason) => Verdict::Indeterminate { reason },
    }
}

fn center_exclusion(family: &BallFamily) -> Option<Verdict> {
    let space = &family.space;
    let balls = &family.balls;
    for i in 0..balls.len() {
        for j in 0..balls.len() {
            if i == j {
                continue;
            }
            let d = space.dist(&balls[i].center, &balls[j].center);
            if d <= balls[j].radius + space.tol().slack(balls[j].radius) {
                return Some(Verdict::Invalid {
                    reason: format!("center of ball {i} lies in ball {j}"),
                    indices: vec![i, j],
                    witness: Some(balls[i].center.clone()),
                });
            }
        }
    }
    None
}

/// Configuration behind the constant `K(n)`: every ball meets every other
/// ball and none contains another's center. Unlike a Besicovitch family no
/// common point is required.
pub fn is_k_configuration(family: &BallFamily) -> Verdict {
    if let Some(v) = center_exclusion(family) {
        return v;
    }
    let space = &family.space;
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if !space.balls_intersect(&family.balls[i], &family.balls[j]) {
                return Verdict::invalid(format!("balls {i} and {j} are disjoint"), vec![i, j]);
            }
        }
    }
    Verdict::valid()
}
