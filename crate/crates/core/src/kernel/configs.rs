use serde::{Deserialize, Serialize};

use super::{BallFamily, Verdict};
use crate::error::{input, Error, Result};
use crate::metric::{Ball, Point, Space};

/// Checks that every ball of `family` meets `target` and is large relative to
/// it: `B(x_i, r_i) ∩ B(x, r) ≠ ∅` and `r < α r_i`.
pub fn is_alpha_configuration(family: &BallFamily, target: &Ball, alpha: f64) -> Result<Verdict> {
    if !(alpha > 0.5 && alpha < 1.0) {
        return input(format!("alpha must lie in (1/2, 1), got {alpha}"));
    }
    let space = &family.space;
    space.check_point(&target.center)?;
    for (i, b) in family.balls.iter().enumerate() {
        if !space.balls_intersect(b, target) {
            return Ok(Verdict::invalid(format!("ball {i} misses the target"), vec![i]));
        }
        if target.radius >= alpha * b.radius {
            return Ok(Verdict::invalid(
                format!("target radius {} is not below alpha times radius {} of ball {i}", target.radius, b.radius),
                vec![i],
            ));
        }
    }
    Ok(Verdict::valid())
}

/// A set `S` known only through the sandwich `B(a, r) ⊆ S ⊆ B(a, λr)` and its
/// diameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawQuasiRound")]
pub struct QuasiRoundSet {
    pub anchor: Point,
    pub inner_radius: f64,
    pub lambda: f64,
    pub diameter: f64,
}

#[derive(Deserialize)]
struct RawQuasiRound {
    anchor: Point,
    inner_radius: f64,
    lambda: f64,
    diameter: f64,
}

impl TryFrom<RawQuasiRound> for QuasiRoundSet {
    type Error = Error;

    fn try_from(r: RawQuasiRound) -> Result<Self> {
        QuasiRoundSet::new(r.anchor, r.inner_radius, r.lambda, r.diameter)
    }
}

impl QuasiRoundSet {
    /// Requires `r > 0`, `λ ≥ 1` and `r ≤ diam ≤ 2λr` (relative slack 1e-9).
    pub fn new(anchor: Point, inner_radius: f64, lambda: f64, diameter: f64) -> Result<QuasiRoundSet> {
        if anchor.0.iter().any(|v| !v.is_finite()) {
            return input("anchor has non-finite coordinates");
        }
        if !(inner_radius.is_finite() && inner_radius > 0.0) {
            return input(format!("inner radius must be positive, got {inner_radius}"));
        }
        if !(lambda.is_finite() && lambda >= 1.0) {
            return input(format!("lambda must be at least 1, got {lambda}"));
        }
        let slack = 1e-9 * inner_radius * lambda;
        if !(diameter.is_finite() && diameter >= inner_radius - slack && diameter <= 2.0 * lambda * inner_radius + slack)
        {
            return input(format!(
                "diameter {diameter} is outside [r, 2λr] = [{inner_radius}, {}]",
                2.0 * lambda * inner_radius
            ));
        }
        Ok(QuasiRoundSet { anchor, inner_radius, lambda, diameter })
    }

    /// Round set: `λ = 1`, diameter `2r`.
    pub fn ball(anchor: Point, radius: f64) -> Result<QuasiRoundSet> {
        QuasiRoundSet::new(anchor, radius, 1.0, 2.0 * radius)
    }

    pub fn outer_radius(&self) -> f64 {
        self.lambda * self.inner_radius
    }

    pub fn outer_ball(&self) -> Ball {
        Ball { center: self.anchor.clone(), radius: self.outer_radius() }
    }
}

/// τ-satellite configuration check.
///
/// Membership `p ∈ S` is bracketed by the sandwich. Conditions 1 and 2 are
/// tested against the outer ball `B(a, λr)` (so they may accept a
/// configuration whose true sets fail them) and the exclusion `a_j ∉ S_i` of
/// condition 4 is violated only when `a_j ∈ B(a_i, r_i)`. Diameter conditions
/// are exact. Returns the first central index (0-based).
pub fn is_tau_satellite_configuration(
    space: &Space,
    sets: &[QuasiRoundSet],
    points: &[Point],
    tau: f64,
) -> Result<Verdict> {
    if sets.len() != points.len() {
        return input(format!("{} sets but {} points", sets.len(), points.len()));
    }
    if !(tau.is_finite() && tau > 1.0) {
        return input(format!("tau must exceed 1, got {tau}"));
    }
    for (i, (s, p)) in sets.iter().zip(points).enumerate() {
        space.check_point(&s.anchor).map_err(|e| Error::Input(format!("set {i}: {e}")))?;
        space.check_point(p).map_err(|e| Error::Input(format!("point {i}: {e}")))?;
    }
    let n = sets.len();
    if n == 0 {
        return Ok(Verdict::invalid("empty configuration has no central index", Vec::new()));
    }
    for i in 0..n {
        let d = space.dist(&points[i], &sets[i].anchor);
        if !space.within(d, sets[i].outer_radius()) {
            return Ok(Verdict::invalid(format!("point {i} is not in set {i}"), vec![i]));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if space.dist(&points[j], &sets[i].anchor) <= sets[i].inner_radius {
                return Ok(Verdict::invalid(format!("point {j} lies in set {i}"), vec![i, j]));
            }
            if sets[j].diameter >= tau * sets[i].diameter {
                return Ok(Verdict::invalid(format!("diameter of set {j} is not below tau times that of set {i}"), vec![i, j]));
            }
        }
    }
    'center: for c in 0..n {
        for i in 0..n {
            let d = space.dist(&sets[c].anchor, &sets[i].anchor);
            if !space.within(d, sets[c].outer_radius() + sets[i].outer_radius()) {
                continue 'center;
            }
            if sets[c].diameter >= tau * sets[i].diameter {
                continue 'center;
            }
        }
        return Ok(Verdict::Valid { witness: None, index: Some(c) });
    }
    Ok(Verdict::invalid("no index satisfies the central conditions", Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point(vec![x, y])
    }

    #[test]
    fn alpha_configuration_examples() {
        let fam = BallFamily::intervals(&[(1.0, 1.0)]).unwrap();
        let target = Ball { center: Point(vec![0.0]), radius: 0.5 };
        assert!(is_alpha_configuration(&fam, &target, 0.75).unwrap().is_valid());
        let empty = BallFamily::empty(Space::euclidean(1).unwrap());
        assert!(is_alpha_configuration(&empty, &target, 0.75).unwrap().is_valid());
        let same = BallFamily::intervals(&[(0.2, 0.5)]).unwrap();
        assert!(is_alpha_configuration(&same, &target, 0.99).unwrap().is_invalid());
        assert!(is_alpha_configuration(&fam, &target, 0.5).is_err());
        let far = BallFamily::intervals(&[(3.0, 1.0)]).unwrap();
        assert!(is_alpha_configuration(&far, &target, 0.75).unwrap().is_invalid());
    }

    #[test]
    fn sandwich_invariant() {
        assert!(QuasiRoundSet::new(p(0.0, 0.0), 1.0, 2.0, 4.0).is_ok());
        assert!(QuasiRoundSet::new(p(0.0, 0.0), 1.0, 2.0, 4.1).is_err());
        assert!(QuasiRoundSet::new(p(0.0, 0.0), 1.0, 2.0, 0.9).is_err());
        assert!(QuasiRoundSet::new(p(0.0, 0.0), 1.0, 0.9, 1.0).is_err());
    }

    #[test]
    fn single_set_is_central() {
        let e2 = Space::euclidean(2).unwrap();
        let s = QuasiRoundSet::ball(p(0.0, 0.0), 1.0).unwrap();
        let v = is_tau_satellite_configuration(&e2, &[s], &[p(0.0, 0.0)], 1.5).unwrap();
        assert_eq!(v, Verdict::Valid { witness: None, index: Some(0) });
    }

    #[test]
    fn growing_diameter_violates_condition_four() {
        let e2 = Space::euclidean(2).unwrap();
        let a = QuasiRoundSet::ball(p(0.0, 0.0), 1.0).unwrap();
        let b = QuasiRoundSet::ball(p(3.0, 0.0), 2.0).unwrap();
        let v = is_tau_satellite_configuration(&e2, &[a, b], &[p(0.0, 0.0), p(3.0, 0.0)], 1.5).unwrap();
        assert!(v.is_invalid());
    }

    #[test]
    fn three_set_chain() {
        // decreasing radii 1, 0.8, 0.7 along a path; each anchor outside the
        // earlier inner balls, all outer balls meeting the middle one.
        let e2 = Space::euclidean(2).unwrap();
        let sets = [
            QuasiRoundSet::new(p(0.0, 0.0), 1.0, 1.2, 2.2).unwrap(),
            QuasiRoundSet::new(p(1.5, 0.0), 0.8, 1.2, 1.8).unwrap(),
            QuasiRoundSet::new(p(1.5, 1.2), 0.7, 1.2, 1.6).unwrap(),
        ];
        let pts: Vec<Point> = sets.iter().map(|s| s.anchor.clone()).collect();
        // anchors: 1.5 > 1, |(1.5, 1.2)| > 1 and 1.2 > 0.8 keep later anchors
        // out of earlier inner balls; diameters: 1.8, 1.6 < 1.5·2.2 and 1.6 < 1.5·1.8.
        // outer balls: |a0 a2| = 1.92 ≤ 1.2 + 0.84, and 2.2 < 1.5·1.6.
        let v = is_tau_satellite_configuration(&e2, &sets, &pts, 1.5).unwrap();
        assert_eq!(v, Verdict::Valid { witness: None, index: Some(0) });
        // 2.2 ≥ 1.3·1.6, so index 0 fails condition 3 and index 1 is central.
        let v = is_tau_satellite_configuration(&e2, &sets, &pts, 1.3).unwrap();
        assert_eq!(v, Verdict::Valid { witness: None, index: Some(1) });
    }

    #[test]
    fn mismatched_lengths() {
        let e2 = Space::euclidean(2).unwrap();
        let s = QuasiRoundSet::ball(p(0.0, 0.0), 1.0).unwrap();
        assert!(is_tau_satellite_configuration(&e2, &[s], &[], 1.5).is_err());
    }
}
