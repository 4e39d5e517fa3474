use std::f64::consts::PI;

use rand_chacha::ChaCha8Rng;

use super::anneal::{gaussian, grow, Landscape};
use super::{SearchConfig, SearchResult};
use crate::error::{unsupported, Error, Result};
use crate::kernel::{BallFamily, Verdict};
use crate::metric::{norm2, Ball, Point, Space};

/// Unit vectors of the regular pentagon and the icosahedron.
pub(crate) fn unit_directions(dim: usize) -> Option<Vec<Vec<f64>>> {
    match dim {
        1 => Some(vec![vec![-1.0], vec![1.0]]),
        2 => Some((0..5).map(|k| 2.0 * PI * k as f64 / 5.0).map(|t| vec![t.cos(), t.sin()]).collect()),
        3 => {
            let phi = 0.5 * (1.0 + 5f64.sqrt());
            let mut v = Vec::with_capacity(12);
            for a in [-1.0, 1.0] {
                for b in [-phi, phi] {
                    v.push(vec![0.0, a, b]);
                    v.push(vec![a, b, 0.0]);
                    v.push(vec![b, 0.0, a]);
                }
            }
            Some(v.into_iter().map(normalized).collect())
        }
        _ => None,
    }
}

fn normalized(v: Vec<f64>) -> Vec<f64> {
    let n = norm2(&v);
    v.into_iter().map(|x| x / n).collect()
}

fn unit_balls(space: Space, dirs: &[Vec<f64>]) -> BallFamily {
    let balls = dirs.iter().map(|u| Ball { center: Point(u.iter().map(|x| 2.0 * x).collect()), radius: 1.0 }).collect();
    BallFamily { space, balls, labels: None }
}

/// Checks a strict Hadwiger configuration: unit balls in Euclidean space
/// whose centers lie at distance 2 from the origin (within 1e-12) and at
/// mutual distance strictly above 2.
pub fn verify_strict_hadwiger(family: &BallFamily) -> Verdict {
    let space = &family.space;
    if !space.is_hilbertian() {
        return Verdict::invalid("strict Hadwiger configurations live in Euclidean space", Vec::new());
    }
    let o = space.origin();
    for (i, b) in family.balls.iter().enumerate() {
        if b.radius != 1.0 {
            return Verdict::invalid(format!("ball {i} is not a unit ball"), vec![i]);
        }
        let d = space.dist(&o, &b.center);
        if (d - 2.0).abs() >= 1e-12 {
            return Verdict::invalid(format!("ball {i} is at distance {d} from the origin, not 2"), vec![i]);
        }
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let d = space.dist(&family.balls[i].center, &family.balls[j].center);
            if d <= 2.0 {
                return Verdict::invalid(format!("balls {i} and {j} meet (center distance {d})"), vec![i, j]);
            }
        }
    }
    Verdict::valid()
}

/// Disjoint unit balls touching the unit ball at the origin: two on the
/// line, the pentagon in the plane, the icosahedron in space.
pub fn construct_strict_hadwiger(dim: usize) -> Result<BallFamily> {
    let Some(dirs) = unit_directions(dim) else {
        return unsupported(format!("explicit strict Hadwiger constructions exist for dims 1 to 3, got {dim}"));
    };
    let family = unit_balls(Space::euclidean(dim)?, &dirs);
    match verify_strict_hadwiger(&family) {
        Verdict::Valid { .. } => Ok(family),
        v => Err(Error::Domain(format!("construction failed verification: {v:?}"))),
    }
}

/// Unit vectors at pairwise distance above 1 (angles above 60°).
struct StrictCode {
    dim: usize,
    margin: f64,
}

impl Landscape for StrictCode {
    type Item = Vec<f64>;

    fn unary(&self, _: &Vec<f64>) -> f64 {
        0.0
    }

    fn pair(&self, _: usize, a: &Vec<f64>, _: usize, b: &Vec<f64>) -> f64 {
        let d = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
        (1.0 + self.margin - d).max(0.0)
    }

    fn perturb(&self, rng: &mut ChaCha8Rng, u: &Vec<f64>, step: f64) -> Vec<f64> {
        let g = gaussian(rng, self.dim);
        normalized(u.iter().zip(g).map(|(x, d)| x + step * d).collect())
    }

    fn spawn(&self, rng: &mut ChaCha8Rng, _: &[Vec<f64>]) -> Vec<f64> {
        loop {
            let g = gaussian(rng, self.dim);
            if norm2(&g) > 1e-6 {
                return normalized(g);
            }
        }
    }

    fn certify(&self, items: &[Vec<f64>]) -> bool {
        let e = Space::euclidean(self.dim).expect("dim checked by caller");
        verify_strict_hadwiger(&unit_balls(e, items)).is_valid()
    }

    fn scale(&self) -> f64 {
        1.0
    }
}

/// Strict spherical code grown by annealing from the cross-polytope.
pub(crate) fn strict_code(dim: usize, cfg: &SearchConfig) -> Vec<Vec<f64>> {
    if let Some(d) = unit_directions(dim) {
        return d;
    }
    grow(&StrictCode { dim, margin: 1e-6 }, &code_warm(dim), cfg, None).best
}

/// Strict Hadwiger configuration of any dimension: the explicit
/// constructions up to dimension 3, an annealed spherical code beyond.
pub fn search_strict_hadwiger(dim: usize, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let space = Space::euclidean(dim)?;
    let (family, trace) = match construct_strict_hadwiger(dim) {
        Ok(f) => {
            let n = f.len();
            (f, vec![n])
        }
        Err(Error::Unsupported(_)) => {
            let g = grow(&StrictCode { dim, margin: 1e-6 }, &code_warm(dim), cfg, None);
            (unit_balls(space, &g.best), g.trace)
        }
        Err(e) => return Err(e),
    };
    let feasible = verify_strict_hadwiger(&family).is_valid();
    Ok(SearchResult { score: family.len(), best: family, feasible, trace, sets: None })
}

fn code_warm(dim: usize) -> Vec<Vec<f64>> {
    (0..2 * dim)
        .map(|k| {
            let mut v = vec![0.0; dim];
            v[k / 2] = if k % 2 == 0 { 1.0 } else { -1.0 };
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_counts() {
        for (dim, n) in [(1, 2), (2, 5), (3, 12)] {
            let f = construct_strict_hadwiger(dim).unwrap();
            assert_eq!(f.len(), n);
        }
        assert!(matches!(construct_strict_hadwiger(4), Err(Error::Unsupported(_))));
    }

    #[test]
    fn pairwise_distances_by_hand() {
        // pentagon: 4 sin 36°; icosahedron: edge 4 / sqrt(φ√5)
        let f = construct_strict_hadwiger(2).unwrap();
        let d = f.space.dist(&f.balls[0].center, &f.balls[1].center);
        assert!((d - 4.0 * (PI / 5.0).sin()).abs() < 1e-12);
        let f = construct_strict_hadwiger(3).unwrap();
        let phi = 0.5 * (1.0 + 5f64.sqrt());
        let edge = 4.0 / (phi * 5f64.sqrt()).sqrt();
        let mut min = f64::INFINITY;
        for i in 0..12 {
            for j in i + 1..12 {
                min = min.min(f.space.dist(&f.balls[i].center, &f.balls[j].center));
            }
        }
        assert!((min - edge).abs() < 1e-12 && min > 2.1);
    }

    #[test]
    fn touching_pair_is_rejected() {
        let e2 = Space::euclidean(2).unwrap();
        let f = BallFamily::from_pairs(e2, vec![(vec![2.0, 0.0], 1.0), (vec![0.0, 2.0], 1.0), (vec![-2.0, 0.0], 1.0)])
            .unwrap();
        assert!(verify_strict_hadwiger(&f).is_valid());
        let t = BallFamily::from_pairs(e2, vec![(vec![2.0, 0.0], 1.0), (vec![1.0, 3f64.sqrt()], 1.0)]).unwrap();
        assert!(verify_strict_hadwiger(&t).is_invalid());
    }

    #[test]
    fn four_dimensional_code_is_strict() {
        let cfg = SearchConfig::default().with_budget(20_000);
        let r = search_strict_hadwiger(4, &cfg).unwrap();
        assert!(r.feasible);
        assert!(r.score >= 8 && r.score < 24);
    }
}
