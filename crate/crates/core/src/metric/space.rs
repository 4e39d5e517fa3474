use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{dot, lp_norm, minkowski, norm2};
use crate::error::{domain, input, Error, Result};

/// Absolute plus relative slack used by every geometric predicate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance { abs: 1e-9, rel: 1e-9 };

    /// A tolerance with the same value for the absolute and relative parts.
    pub fn uniform(tol: f64) -> Self {
        Tolerance { abs: tol, rel: tol }
    }

    /// Slack allowed when comparing quantities of magnitude `scale`.
    #[inline]
    pub fn slack(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale.abs()
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// The three kinds of ambient space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpaceKind {
    Euclidean { pnorm: f64 },
    Sphere { radius: f64 },
    Hyperbolic,
}

/// An ambient metric space: kind, intrinsic dimension and predicate tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceDescriptor", into = "SpaceDescriptor")]
pub struct Space {
    kind: SpaceKind,
    dim: usize,
    tol: Tolerance,
}

/// Wire form of [`Space`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceDescriptor {
    kind: String,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pnorm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    radius: Option<f64>,
}

impl TryFrom<SpaceDescriptor> for Space {
    type Error = Error;

    fn try_from(d: SpaceDescriptor) -> Result<Space> {
        match d.kind.as_str() {
            "euclidean" => {
                if d.radius.is_some() {
                    return input("euclidean space takes no radius");
                }
                Space::euclidean_lp(d.dim, d.pnorm.unwrap_or(2.0))
            }
            "sphere" => {
                if d.pnorm.is_some() {
                    return input("sphere takes no pnorm");
                }
                Space::sphere(d.dim, d.radius.unwrap_or(1.0))
            }
            "hyperbolic" => {
                if d.pnorm.is_some() || d.radius.is_some() {
                    return input("hyperbolic space takes neither pnorm nor radius");
                }
                Space::hyperbolic(d.dim)
            }
            other => input(format!("unknown space kind `{other}`")),
        }
    }
}

impl From<Space> for SpaceDescriptor {
    fn from(s: Space) -> Self {
        match s.kind {
            SpaceKind::Euclidean { pnorm } => SpaceDescriptor {
                kind: "euclidean".into(),
                dim: s.dim,
                pnorm: (pnorm != 2.0).then_some(pnorm),
                radius: None,
            },
            SpaceKind::Sphere { radius } => SpaceDescriptor {
                kind: "sphere".into(),
                dim: s.dim,
                pnorm: None,
                radius: Some(radius),
            },
            SpaceKind::Hyperbolic => SpaceDescriptor {
                kind: "hyperbolic".into(),
                dim: s.dim,
                pnorm: None,
                radius: None,
            },
        }
    }
}

/// A point in the ambient representation of its space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point(v)
    }
}

/// A closed metric ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    /// Builds a ball after checking the center and radius against `space`.
    pub fn new(space: &Space, center: Point, radius: f64) -> Result<Ball> {
        space.check_point(&center)?;
        space.check_radius(radius)?;
        Ok(Ball { center, radius })
    }
}

/// A tangent vector at `base`, stored in ambient coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Tangent {
    pub base: Point,
    pub vector: Vec<f64>,
}

impl Tangent {
    /// Builds a tangent vector, checking that it is orthogonal to the base
    /// embedding (Euclidean inner product on spheres, Minkowski on the
    /// hyperboloid).
    pub fn new(space: &Space, base: Point, vector: Vec<f64>) -> Result<Tangent> {
        space.check_point(&base)?;
        if vector.len() != space.ambient_dim() {
            return input(format!(
                "tangent vector has {} coordinates, expected {}",
                vector.len(),
                space.ambient_dim()
            ));
        }
        if vector.iter().any(|v| !v.is_finite()) {
            return input("tangent vector has non-finite coordinates");
        }
        let scale = norm2(base.coords()) * norm2(&vector);
        let residual = match space.kind {
            SpaceKind::Euclidean { .. } => 0.0,
            SpaceKind::Sphere { .. } => dot(base.coords(), &vector),
            SpaceKind::Hyperbolic => minkowski(base.coords(), &vector),
        };
        if residual.abs() > space.tol.slack(scale) {
            return input(format!("vector is not tangent at base (residual {residual:e})"));
        }
        Ok(Tangent { base, vector })
    }
}

impl Space {
    /// Euclidean `ℝ^dim` with the `ℓ2` norm.
    pub fn euclidean(dim: usize) -> Result<Space> {
        Space::euclidean_lp(dim, 2.0)
    }

    /// Euclidean `ℝ^dim` with the `ℓp` norm, `p ≥ 1` finite.
    pub fn euclidean_lp(dim: usize, pnorm: f64) -> Result<Space> {
        if dim == 0 {
            return input("dimension must be at least 1");
        }
        if !(pnorm.is_finite() && pnorm >= 1.0) {
            return input(format!("pnorm must be a finite real >= 1, got {pnorm}"));
        }
        Ok(Space { kind: SpaceKind::Euclidean { pnorm }, dim, tol: Tolerance::DEFAULT })
    }

    /// The round sphere `S^dim` of the given radius.
    pub fn sphere(dim: usize, radius: f64) -> Result<Space> {
        if dim == 0 {
            return input("dimension must be at least 1");
        }
        if !(radius.is_finite() && radius > 0.0) {
            return input(format!("sphere radius must be positive, got {radius}"));
        }
        Ok(Space { kind: SpaceKind::Sphere { radius }, dim, tol: Tolerance::DEFAULT })
    }

    /// Hyperbolic space `H^dim` (curvature −1).
    pub fn hyperbolic(dim: usize) -> Result<Space> {
        if dim == 0 {
            return input("dimension must be at least 1");
        }
        Ok(Space { kind: SpaceKind::Hyperbolic, dim, tol: Tolerance::DEFAULT })
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Space {
        self.tol = tol;
        self
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tol(&self) -> Tolerance {
        self.tol
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self.kind, SpaceKind::Euclidean { .. })
    }

    /// Euclidean with the `ℓ2` norm.
    pub fn is_hilbertian(&self) -> bool {
        matches!(self.kind, SpaceKind::Euclidean { pnorm } if pnorm == 2.0)
    }

    /// `true` for the real line (any `ℓp` norm agrees with `|x − y|` there).
    pub fn is_line(&self) -> bool {
        self.is_euclidean() && self.dim == 1
    }

    /// Length of the coordinate vector of a point.
    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            SpaceKind::Euclidean { .. } => self.dim,
            _ => self.dim + 1,
        }
    }

    /// Short human-readable name such as `E2`, `S2(R=1)` or `H3`.
    pub fn label(&self) -> String {
        match self.kind {
            SpaceKind::Euclidean { pnorm } if pnorm == 2.0 => format!("E{}", self.dim),
            SpaceKind::Euclidean { pnorm } => format!("E{}(l{})", self.dim, pnorm),
            SpaceKind::Sphere { radius } => format!("S{}(R={})", self.dim, radius),
            SpaceKind::Hyperbolic => format!("H{}", self.dim),
        }
    }

    /// The distinguished base point: the origin, the north pole
    /// `(0,…,0,R)`, or the hyperboloid vertex `(0,…,0,1)`.
    pub fn origin(&self) -> Point {
        let mut c = vec![0.0; self.ambient_dim()];
        match self.kind {
            SpaceKind::Euclidean { .. } => {}
            SpaceKind::Sphere { radius } => c[self.dim] = radius,
            SpaceKind::Hyperbolic => c[self.dim] = 1.0,
        }
        Point(c)
    }

    /// `∞` for Euclidean and hyperbolic space, `πR` on the sphere.
    pub fn injectivity_radius(&self) -> f64 {
        match self.kind {
            SpaceKind::Sphere { radius } => PI * radius,
            _ => f64::INFINITY,
        }
    }

    /// Checks the representation invariants of a point.
    pub fn check_point(&self, p: &Point) -> Result<()> {
        let c = p.coords();
        if c.len() != self.ambient_dim() {
            return input(format!(
                "point has {} coordinates, expected {} for {}",
                c.len(),
                self.ambient_dim(),
                self.label()
            ));
        }
        if c.iter().any(|v| !v.is_finite()) {
            return input("point has non-finite coordinates");
        }
        match self.kind {
            SpaceKind::Euclidean { .. } => Ok(()),
            SpaceKind::Sphere { radius } => {
                let r2 = radius * radius;
                let resid = dot(c, c) - r2;
                if resid.abs() > 1e-9 * r2 {
                    return input(format!("point is off the sphere (|x|²−R² = {resid:e})"));
                }
                Ok(())
            }
            SpaceKind::Hyperbolic => {
                let resid = minkowski(c, c) + 1.0;
                if resid.abs() > 1e-9 * dot(c, c).max(1.0) {
                    return input(format!("point is off the hyperboloid (⟨x,x⟩+1 = {resid:e})"));
                }
                if c[self.dim] <= 0.0 {
                    return input("hyperboloid point must have positive last coordinate");
                }
                Ok(())
            }
        }
    }

    pub(crate) fn check_radius(&self, radius: f64) -> Result<()> {
        if !(radius.is_finite() && radius >= 0.0) {
            return input(format!("radius must be finite and nonnegative, got {radius}"));
        }
        if let SpaceKind::Sphere { .. } = self.kind {
            let inj = self.injectivity_radius();
            if radius > inj {
                return input(format!("radius {radius} exceeds πR = {inj}; the ball is the whole sphere"));
            }
        }
        Ok(())
    }

    /// Validates coordinates and wraps them in a [`Point`].
    pub fn point(&self, coords: Vec<f64>) -> Result<Point> {
        let p = Point(coords);
        self.check_point(&p)?;
        Ok(p)
    }

    /// Maps arbitrary ambient coordinates onto the space: rescales onto the
    /// sphere, or recomputes the last coordinate on the hyperboloid.
    pub fn project(&self, mut coords: Vec<f64>) -> Point {
        match self.kind {
            SpaceKind::Euclidean { .. } => {}
            SpaceKind::Sphere { radius } => {
                let n = norm2(&coords);
                if n > 0.0 {
                    coords.iter_mut().for_each(|v| *v *= radius / n);
                } else {
                    return self.origin();
                }
            }
            SpaceKind::Hyperbolic => {
                let s: f64 = coords[..self.dim].iter().map(|v| v * v).sum();
                coords[self.dim] = (1.0 + s).sqrt();
            }
        }
        Point(coords)
    }

    /// A ball whose membership predicate uses this space's tolerance.
    pub fn ball(&self, center: Point, radius: f64) -> Result<Ball> {
        Ball::new(self, center, radius)
    }

    /// Geodesic distance.
    pub fn distance(&self, p: &Point, q: &Point) -> Result<f64> {
        let n = self.ambient_dim();
        if p.len() != n || q.len() != n {
            return input(format!(
                "dimension mismatch: {} and {} coordinates for {}",
                p.len(),
                q.len(),
                self.label()
            ));
        }
        Ok(self.dist(p, q))
    }

    /// Geodesic distance without the dimension check.
    #[inline]
    pub fn dist(&self, p: &Point, q: &Point) -> f64 {
        self.dist_coords(p.coords(), q.coords())
    }

    #[inline]
    pub(crate) fn dist_coords(&self, p: &[f64], q: &[f64]) -> f64 {
        match self.kind {
            SpaceKind::Euclidean { pnorm } => {
                if self.dim == 1 {
                    return (p[0] - q[0]).abs();
                }
                if pnorm == 2.0 {
                    p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
                } else {
                    let diff: Vec<f64> = p.iter().zip(q).map(|(a, b)| a - b).collect();
                    lp_norm(&diff, pnorm)
                }
            }
            SpaceKind::Sphere { radius } => {
                let mut sub = 0.0;
                let mut add = 0.0;
                for (a, b) in p.iter().zip(q) {
                    sub += (a - b) * (a - b);
                    add += (a + b) * (a + b);
                }
                radius * 2.0 * sub.sqrt().atan2(add.sqrt())
            }
            SpaceKind::Hyperbolic => {
                let ip = -minkowski(p, q);
                if ip < 2.0 {
                    let diff: Vec<f64> = p.iter().zip(q).map(|(a, b)| a - b).collect();
                    let m = minkowski(&diff, &diff).max(0.0);
                    2.0 * (m.sqrt() / 2.0).asinh()
                } else {
                    ip.acosh()
                }
            }
        }
    }

    /// `d ≤ r` up to tolerance: the closed-ball membership predicate.
    #[inline]
    pub fn within(&self, d: f64, r: f64) -> bool {
        d <= r + self.tol.slack(r)
    }

    /// Whether `p` lies in the closed ball `b`.
    #[inline]
    pub fn contains(&self, b: &Ball, p: &Point) -> bool {
        self.within(self.dist(&b.center, p), b.radius)
    }

    /// Whether two closed balls meet (`d ≤ r₁ + r₂` up to tolerance).
    #[inline]
    pub fn balls_intersect(&self, a: &Ball, b: &Ball) -> bool {
        self.within(self.dist(&a.center, &b.center), a.radius + b.radius)
    }

    /// Length of a tangent vector in the metric of the space.
    pub fn tangent_norm(&self, v: &[f64]) -> f64 {
        match self.kind {
            SpaceKind::Euclidean { pnorm } => lp_norm(v, pnorm),
            SpaceKind::Sphere { .. } => norm2(v),
            SpaceKind::Hyperbolic => minkowski(v, v).max(0.0).sqrt(),
        }
    }

    /// Exponential map: the point reached after following the geodesic with
    /// initial velocity `t.vector` for unit time.
    pub fn exp_map(&self, t: &Tangent) -> Result<Point> {
        let len = self.tangent_norm(&t.vector);
        if len >= self.injectivity_radius() {
            return domain(format!(
                "tangent length {len} is not below the injectivity radius {}",
                self.injectivity_radius()
            ));
        }
        Ok(self.exp_unchecked(t.base.coords(), &t.vector))
    }

    pub(crate) fn exp_unchecked(&self, base: &[f64], v: &[f64]) -> Point {
        match self.kind {
            SpaceKind::Euclidean { .. } => Point(base.iter().zip(v).map(|(a, b)| a + b).collect()),
            SpaceKind::Sphere { radius } => {
                let len = norm2(v);
                if len == 0.0 {
                    return Point(base.to_vec());
                }
                let theta = len / radius;
                let (s, c) = theta.sin_cos();
                let k = s * radius / len;
                self.project(base.iter().zip(v).map(|(x, w)| c * x + k * w).collect())
            }
            SpaceKind::Hyperbolic => {
                let len = minkowski(v, v).max(0.0).sqrt();
                if len == 0.0 {
                    return Point(base.to_vec());
                }
                let c = len.cosh();
                let k = len.sinh() / len;
                self.project(base.iter().zip(v).map(|(x, w)| c * x + k * w).collect())
            }
        }
    }

    /// Logarithm map: the tangent vector at `base` whose exponential is
    /// `target`, of length `distance(base, target)`.
    pub fn log_map(&self, base: &Point, target: &Point) -> Result<Tangent> {
        let d = self.distance(base, target)?;
        let x = base.coords();
        let q = target.coords();
        let vector = match self.kind {
            SpaceKind::Euclidean { .. } => q.iter().zip(x).map(|(a, b)| a - b).collect(),
            SpaceKind::Sphere { radius } => {
                let inj = self.injectivity_radius();
                if inj - d <= self.tol.slack(radius) {
                    return domain("log map undefined for antipodal points");
                }
                let c = dot(x, q) / (radius * radius);
                let u: Vec<f64> = q.iter().zip(x).map(|(a, b)| a - c * b).collect();
                scale_to(u, norm2_of, d)
            }
            SpaceKind::Hyperbolic => {
                let c = minkowski(x, q);
                let u: Vec<f64> = q.iter().zip(x).map(|(a, b)| a + c * b).collect();
                scale_to(u, |w| minkowski(w, w).max(0.0).sqrt(), d)
            }
        };
        Ok(Tangent { base: base.clone(), vector })
    }

    /// Point at fraction `t` of the way along the minimal geodesic from `x` to `y`.
    pub fn geodesic_interpolate(&self, x: &Point, y: &Point, t: f64) -> Result<Point> {
        if !(0.0..=1.0).contains(&t) {
            return input(format!("interpolation parameter must lie in [0,1], got {t}"));
        }
        if t == 0.0 {
            self.distance(x, y)?;
            return Ok(x.clone());
        }
        if t == 1.0 {
            self.distance(x, y)?;
            return Ok(y.clone());
        }
        match self.kind {
            SpaceKind::Euclidean { .. } => {
                self.distance(x, y)?;
                Ok(Point(x.coords().iter().zip(y.coords()).map(|(a, b)| a + t * (b - a)).collect()))
            }
            _ => {
                let lg = self.log_map(x, y)?;
                let v: Vec<f64> = lg.vector.iter().map(|w| w * t).collect();
                Ok(self.exp_unchecked(x.coords(), &v))
            }
        }
    }

    /// Shrinks `outer` to a ball of radius `s` that still contains `y` and is
    /// contained in `outer`. The new center lies on the minimal geodesic from
    /// `y` to the outer center, at distance `s` from `y`. When `y` is closer
    /// than `s` to the outer center the concentric ball is returned.
    pub fn shrink_ball_toward(&self, outer: &Ball, y: &Point, s: f64) -> Result<Ball> {
        if !(s > 0.0 && s < outer.radius) {
            return input(format!("shrunk radius must lie in (0, {}), got {s}", outer.radius));
        }
        if outer.radius >= self.injectivity_radius() {
            return domain("outer radius must be below the injectivity radius");
        }
        let d = self.distance(&outer.center, y)?;
        if !self.within(d, outer.radius) {
            return input(format!("point at distance {d} is outside the outer ball of radius {}", outer.radius));
        }
        if d < s || d <= self.tol.slack(outer.radius) {
            return Ok(Ball { center: outer.center.clone(), radius: s });
        }
        let z = self.geodesic_interpolate(&outer.center, y, (d - s) / d)?;
        Ok(Ball { center: z, radius: s })
    }

    /// An orthonormal basis of the tangent space at `base`, in ambient
    /// coordinates (Minkowski-orthonormal on the hyperboloid).
    pub fn tangent_basis(&self, base: &Point) -> Vec<Vec<f64>> {
        let n = self.ambient_dim();
        let x = base.coords();
        let inner = |a: &[f64], b: &[f64]| match self.kind {
            SpaceKind::Hyperbolic => minkowski(a, b),
            _ => dot(a, b),
        };
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(self.dim);
        for i in 0..n {
            if basis.len() == self.dim {
                break;
            }
            let mut v = vec![0.0; n];
            v[i] = 1.0;
            match self.kind {
                SpaceKind::Euclidean { .. } => {}
                SpaceKind::Sphere { radius } => {
                    let c = dot(&v, x) / (radius * radius);
                    v.iter_mut().zip(x).for_each(|(w, b)| *w -= c * b);
                }
                SpaceKind::Hyperbolic => {
                    let c = minkowski(&v, x);
                    v.iter_mut().zip(x).for_each(|(w, b)| *w += c * b);
                }
            }
            for e in &basis {
                let c = inner(&v, e);
                v.iter_mut().zip(e).for_each(|(w, b)| *w -= c * b);
            }
            let len = inner(&v, &v).max(0.0).sqrt();
            if len > 1e-6 {
                v.iter_mut().for_each(|w| *w /= len);
                basis.push(v);
            }
        }
        basis
    }

    /// Combines chart coordinates with a tangent basis into an ambient vector.
    pub(crate) fn from_local(&self, basis: &[Vec<f64>], local: &[f64]) -> Vec<f64> {
        let mut v = vec![0.0; self.ambient_dim()];
        for (e, c) in basis.iter().zip(local) {
            v.iter_mut().zip(e).for_each(|(w, b)| *w += c * b);
        }
        v
    }

    /// The point at geodesic distance `len` from `base` in the chart
    /// direction `dir` (any nonzero vector of length `dim`).
    pub fn point_at(&self, base: &Point, basis: &[Vec<f64>], dir: &[f64], len: f64) -> Point {
        let v = self.from_local(basis, dir);
        let n = self.tangent_norm(&v);
        if n == 0.0 || len == 0.0 {
            return base.clone();
        }
        let v: Vec<f64> = v.iter().map(|w| w * len / n).collect();
        self.exp_unchecked(base.coords(), &v)
    }

    /// Point on the boundary sphere of `ball` in chart direction `dir`.
    pub fn boundary_point(&self, ball: &Ball, dir: &[f64]) -> Point {
        let basis = self.tangent_basis(&ball.center);
        self.point_at(&ball.center, &basis, dir, ball.radius)
    }
}

fn norm2_of(v: &[f64]) -> f64 {
    norm2(v)
}

fn scale_to(u: Vec<f64>, norm: impl Fn(&[f64]) -> f64, len: f64) -> Vec<f64> {
    let n = norm(&u);
    if n == 0.0 || len == 0.0 {
        return vec![0.0; u.len()];
    }
    u.into_iter().map(|w| w * len / n).collect()
}
