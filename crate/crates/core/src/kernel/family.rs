use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::metric::{Ball, Point, Space};

/// A finite ordered list of balls living in one space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFamily")]
pub struct BallFamily {
    pub space: Space,
    pub balls: Vec<Ball>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct RawFamily {
    space: Space,
    balls: Vec<Ball>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

impl TryFrom<RawFamily> for BallFamily {
    type Error = Error;

    fn try_from(raw: RawFamily) -> Result<Self> {
        let mut fam = BallFamily::new(raw.space, raw.balls)?;
        if let Some(labels) = raw.labels {
            fam = fam.with_labels(labels)?;
        }
        Ok(fam)
    }
}

impl BallFamily {
    /// Validates every ball against `space`. Errors name the first bad ball.
    pub fn new(space: Space, balls: Vec<Ball>) -> Result<BallFamily> {
        for (i, b) in balls.iter().enumerate() {
            space.check_point(&b.center).map_err(|e| Error::Input(format!("ball {i}: {e}")))?;
            space.check_radius(b.radius).map_err(|e| Error::Input(format!("ball {i}: {e}")))?;
        }
        Ok(BallFamily { space, balls, labels: None })
    }

    pub fn empty(space: Space) -> BallFamily {
        BallFamily { space, balls: Vec::new(), labels: None }
    }

    /// Family of intervals `[c − r, c + r]` on the real line.
    pub fn intervals(pairs: &[(f64, f64)]) -> Result<BallFamily> {
        let space = Space::euclidean(1)?;
        let balls = pairs.iter().map(|&(c, r)| Ball { center: Point(vec![c]), radius: r }).collect();
        BallFamily::new(space, balls)
    }

    /// Builds a family from `(center, radius)` pairs.
    pub fn from_pairs(space: Space, pairs: Vec<(Vec<f64>, f64)>) -> Result<BallFamily> {
        let balls = pairs.into_iter().map(|(c, r)| Ball { center: Point(c), radius: r }).collect();
        BallFamily::new(space, balls)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<BallFamily> {
        if labels.len() != self.balls.len() {
            return input(format!("{} labels for {} balls", labels.len(), self.balls.len()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }

    pub fn centers(&self) -> Vec<Point> {
        self.balls.iter().map(|b| b.center.clone()).collect()
    }

    pub fn max_radius(&self) -> f64 {
        self.balls.iter().fold(0.0, |m, b| m.max(b.radius))
    }

    /// The subfamily at `indices`, in that order (labels follow).
    pub fn subfamily(&self, indices: &[usize]) -> BallFamily {
        BallFamily {
            space: self.space,
            balls: indices.iter().map(|&i| self.balls[i].clone()).collect(),
            labels: self.labels.as_ref().map(|l| indices.iter().map(|&i| l[i].clone()).collect()),
        }
    }

    /// Whether `p` lies in at least one ball.
    pub fn covers(&self, p: &Point) -> bool {
        self.balls.iter().any(|b| self.space.contains(b, p))
    }

    /// Number of balls containing `p`.
    pub fn depth(&self, p: &Point) -> usize {
        self.balls.iter().filter(|b| self.space.contains(b, p)).count()
    }

    /// Whether the balls are pairwise disjoint (`d > r₁ + r₂` up to tolerance).
    pub fn is_pairwise_disjoint(&self) -> bool {
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.space.balls_intersect(&self.balls[i], &self.balls[j]) {
                    return false;
                }
            }
        }
        true
    }
}
