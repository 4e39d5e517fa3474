use crate::error::{input, Result};
use crate::metric::{lp_norm, Ball, Point, Space, SpaceKind};

/// First-fit greedy ε-net: scans `points` in order and keeps a point when it
/// is at distance `≥ eps` (`> eps` when `strict`) from every point kept so far.
pub fn epsilon_net_greedy(space: &Space, points: &[Point], eps: f64, strict: bool) -> Vec<Point> {
    let mut net: Vec<Point> = Vec::new();
    for p in points {
        let far = net.iter().all(|q| {
            let d = space.dist(p, q);
            if strict {
                d > eps
            } else {
                d >= eps
            }
        });
        if far {
            net.push(p.clone());
        }
    }
    net
}

/// Bound on the size of a strict net inside an α-configuration:
/// `⌊(2α + 3)^dim⌋`.
pub fn strict_net_bound(alpha: f64, dim: usize) -> Result<u64> {
    if !(alpha > 0.5 && alpha < 1.0) {
        return input(format!("alpha must lie in (1/2, 1), got {alpha}"));
    }
    if dim == 0 {
        return input("dimension must be at least 1");
    }
    Ok((2.0 * alpha + 3.0).powi(dim as i32).floor() as u64)
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let b = base as f64;
    while i > 0 {
        f /= b;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Deterministic low-discrepancy sample of `count` points of `target`
/// (Halton points of the cube, kept when they fall in the unit ball of the
/// chart and mapped through the exponential map at the center).
pub(crate) fn sample_ball(space: &Space, target: &Ball, count: usize) -> Vec<Point> {
    let dim = space.dim();
    let basis = space.tangent_basis(&target.center);
    let pnorm = match space.kind() {
        SpaceKind::Euclidean { pnorm } => pnorm,
        _ => 2.0,
    };
    let mut out = vec![target.center.clone()];
    let mut i = 1u64;
    let cap = 1000 * count as u64 + 1000;
    while out.len() < count && i < cap {
        let u: Vec<f64> = (0..dim).map(|k| 2.0 * radical_inverse(i, PRIMES[k % PRIMES.len()]) - 1.0).collect();
        i += 1;
        let n = lp_norm(&u, pnorm);
        if n > 1.0 || n == 0.0 {
            continue;
        }
        out.push(space.point_at(&target.center, &basis, &u, n * target.radius));
    }
    out
}

/// Estimated number of `eps`-balls needed to cover `target`.
///
/// About `budget` sample points of the target are covered greedily by
/// `eps`-balls centered at sample points (largest number of newly covered
/// samples first). The count is exact for the sample and approximates the
/// covering number of the ball at the sample resolution.
pub fn covering_number(space: &Space, target: &Ball, eps: f64, budget: usize) -> Result<usize> {
    if budget < space.dim() + 1 {
        return input(format!("budget {budget} is too small to sample a {}-dimensional ball", space.dim()));
    }
    if !(eps > 0.0 && eps < target.radius) {
        return input(format!("eps must lie in (0, {}), got {eps}", target.radius));
    }
    space.check_point(&target.center)?;
    let pts = sample_ball(space, target, budget);
    let n = pts.len();
    let words = n.div_ceil(64);
    let mut cover: Vec<Vec<u64>> = vec![vec![0u64; words]; n];
    for i in 0..n {
        for j in i..n {
            if space.dist(&pts[i], &pts[j]) <= eps {
                cover[i][j / 64] |= 1 << (j % 64);
                cover[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    let mut uncovered = vec![!0u64; words];
    if !n.is_multiple_of(64) {
        uncovered[words - 1] = (1u64 << (n % 64)) - 1;
    }
    let mut left = n;
    let mut count = 0;
    while left > 0 {
        let (best, gain) = (0..n)
            .map(|i| (i, cover[i].iter().zip(&uncovered).map(|(a, b)| (a & b).count_ones() as usize).sum::<usize>()))
            .fold((0, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
        for (u, c) in uncovered.iter_mut().zip(&cover[best]) {
            *u &= !c;
        }
        left -= gain;
        count += 1;
    }
    Ok(count)
}
