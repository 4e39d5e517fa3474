use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::kernel::{BallFamily, QuasiRoundSet};
use crate::metric::{Ball, Point, Space};

/// Current scene format version.
pub const SCENE_VERSION: u32 = 1;

/// A scene: a space, a family of balls, and optional probe points and
/// quasi-round sets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SceneFile {
    pub version: u32,
    pub space: Space,
    pub balls: Vec<Ball>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Point>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sets: Option<Vec<QuasiRoundSet>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScene {
    version: Option<u32>,
    space: Space,
    balls: Vec<RawBall>,
    #[serde(default)]
    points: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    sets: Option<Vec<RawSet>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBall {
    center: Vec<f64>,
    radius: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSet {
    anchor: Vec<f64>,
    inner_radius: f64,
    lambda: f64,
    diameter: f64,
}

fn finite(what: &str, i: usize, xs: &[f64]) -> Result<()> {
    match xs.iter().position(|x| !x.is_finite()) {
        Some(k) => input(format!("{what} {i}: coordinate {k} is not a finite number")),
        None => Ok(()),
    }
}

/// Parses a scene document. Errors name the offending ball, point or set.
pub fn parse_scene(text: &str) -> Result<SceneFile> {
    let raw: RawScene = serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed scene: {e}")))?;
    let version = raw.version.ok_or_else(|| Error::Input("scene has no version field".into()))?;
    if version != SCENE_VERSION {
        return input(format!("unsupported scene version {version}, expected {SCENE_VERSION}"));
    }
    let space = raw.space;
    let mut balls = Vec::with_capacity(raw.balls.len());
    for (i, b) in raw.balls.into_iter().enumerate() {
        finite("ball", i, &b.center)?;
        if !b.radius.is_finite() {
            return input(format!("ball {i}: radius is not a finite number"));
        }
        balls.push(Ball { center: Point(b.center), radius: b.radius });
    }
    let balls = BallFamily::new(space, balls)?.balls;
    let points = match raw.points {
        None => None,
        Some(ps) => {
            let mut out = Vec::with_capacity(ps.len());
            for (i, p) in ps.into_iter().enumerate() {
                finite("point", i, &p)?;
                let p = Point(p);
                space.check_point(&p).map_err(|e| Error::Input(format!("point {i}: {e}")))?;
                out.push(p);
            }
            Some(out)
        }
    };
    let sets = match raw.sets {
        None => None,
        Some(ss) => {
            let mut out = Vec::with_capacity(ss.len());
            for (i, s) in ss.into_iter().enumerate() {
                finite("set", i, &s.anchor)?;
                let anchor = Point(s.anchor);
                space.check_point(&anchor).map_err(|e| Error::Input(format!("set {i}: {e}")))?;
                let q = QuasiRoundSet::new(anchor, s.inner_radius, s.lambda, s.diameter)
                    .map_err(|e| Error::Input(format!("set {i}: {e}")))?;
                out.push(q);
            }
            Some(out)
        }
    };
    Ok(SceneFile { version, space, balls, points, sets })
}

impl SceneFile {
    pub fn new(family: &BallFamily) -> SceneFile {
        SceneFile { version: SCENE_VERSION, space: family.space, balls: family.balls.clone(), points: None, sets: None }
    }

    pub fn family(&self) -> BallFamily {
        BallFamily { space: self.space, balls: self.balls.clone(), labels: None }
    }

    /// The probe points, defaulting to the ball centers.
    pub fn points_or_centers(&self) -> Vec<Point> {
        self.points.clone().unwrap_or_else(|| self.balls.iter().map(|b| b.center.clone()).collect())
    }

    /// Overrides the predicate tolerance of the space.
    pub fn with_space(mut self, space: Space) -> SceneFile {
        self.space = space;
        self
    }

    /// Compact JSON with shortest round-trip numbers.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scenes always serialize")
    }
}
