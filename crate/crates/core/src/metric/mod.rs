//! Points, distances, geodesics and geodesic-ball volumes.
//!
//! Three families of spaces are supported:
//!
//! - Euclidean `ℝⁿ` with an `ℓp` norm (`p ≥ 1`, default 2);
//! - the round sphere `Sⁿ` of radius `R`, embedded in `ℝⁿ⁺¹` as `{x : ⟨x,x⟩ = R²}`;
//! - hyperbolic space `Hⁿ` in the hyperboloid model
//!   `{x ∈ ℝⁿ⁺¹ : ⟨x,x⟩_M = -1, x_n > 0}`, where the Minkowski form puts the
//!   minus sign on the last coordinate.
//!
//! Balls are closed everywhere. All geometric predicates use the slack of the
//! space's [`Tolerance`].

mod space;
mod volume;

pub use space::{Ball, Point, Space, SpaceKind, Tangent, Tolerance};
pub use volume::gauss_legendre;

/// Minkowski bilinear form `Σ_{i<n} x_i y_i − x_n y_n`.
pub fn minkowski(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let mut acc = 0.0;
    for i in 0..n - 1 {
        acc += x[i] * y[i];
    }
    acc - x[n - 1] * y[n - 1]
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub(crate) fn norm2(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

pub(crate) fn lp_norm(x: &[f64], p: f64) -> f64 {
    if p == 2.0 {
        return norm2(x);
    }
    if p == 1.0 {
        return x.iter().map(|v| v.abs()).sum();
    }
    let m = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if m == 0.0 {
        return 0.0;
    }
    m * x.iter().map(|v| (v.abs() / m).powf(p)).sum::<f64>().powf(1.0 / p)
}
