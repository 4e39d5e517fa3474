use std::f64::consts::PI;
use std::sync::OnceLock;

use statrs::function::gamma::ln_gamma;

use super::space::{Space, SpaceKind};
use crate::error::{input, Result};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn gl20() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(20))
}

/// `∫₀^b f` by composite 20-point Gauss–Legendre on panels of width ≤ 0.25.
fn integrate(f: impl Fn(f64) -> f64, b: f64) -> f64 {
    if b <= 0.0 {
        return 0.0;
    }
    let (x, w) = gl20();
    let panels = (b / 0.25).ceil().max(1.0) as usize;
    let h = b / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let mid = (k as f64 + 0.5) * h;
        let half = 0.5 * h;
        total += half * x.iter().zip(w).map(|(xi, wi)| wi * f(mid + half * xi)).sum::<f64>();
    }
    total
}

/// Area of the unit sphere `S^{n-1} ⊂ ℝⁿ`.
fn unit_sphere_area(n: usize) -> f64 {
    let h = n as f64 / 2.0;
    2.0 * (h * PI.ln() - ln_gamma(h)).exp()
}

impl Space {
    /// Volume of a geodesic ball of radius `r` (Lebesgue measure of the
    /// `ℓp` ball, Riemannian volume on the model manifolds).
    pub fn ball_volume(&self, r: f64) -> Result<f64> {
        if !(r.is_finite() && r >= 0.0) {
            return input(format!("radius must be finite and nonnegative, got {r}"));
        }
        let n = self.dim();
        let nf = n as f64;
        match self.kind() {
            SpaceKind::Euclidean { pnorm } => {
                let ln_unit = nf * (2.0f64.ln() + ln_gamma(1.0 / pnorm + 1.0)) - ln_gamma(nf / pnorm + 1.0);
                if r == 0.0 {
                    return Ok(0.0);
                }
                Ok((ln_unit + nf * r.ln()).exp())
            }
            SpaceKind::Sphere { radius } => {
                if r > PI * radius * (1.0 + 1e-12) {
                    return input(format!("radius {r} exceeds πR"));
                }
                let theta = (r / radius).min(PI);
                let rn = radius.powi(n as i32);
                Ok(match n {
                    1 => 2.0 * r,
                    2 => 4.0 * PI * rn * (theta / 2.0).sin().powi(2),
                    _ => unit_sphere_area(n) * rn * integrate(|t| t.sin().powi(n as i32 - 1), theta),
                })
            }
            SpaceKind::Hyperbolic => Ok(match n {
                1 => 2.0 * r,
                2 => 4.0 * PI * (r / 2.0).sinh().powi(2),
                _ => unit_sphere_area(n) * integrate(|t| t.sinh().powi(n as i32 - 1), r),
            }),
        }
    }
}
