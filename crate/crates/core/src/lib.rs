//! Executable Besicovitch-type covering theorems.
//!
//! The crate is organised bottom-up:
//!
//! - [`metric`]: points, distances, geodesics and ball volumes on Euclidean
//!   `ℓp` spaces, round spheres and hyperbolic space (hyperboloid model).
//! - [`kernel`]: validators and measurements for covering structures
//!   (Besicovitch families, nets, α-configurations, τ-satellite
//!   configurations, overlap profiles, covering numbers).
//! - [`selection`]: constructive covering algorithms (bounded-overlap
//!   subcovers, disjoint-family partitions, the two-family cover of the line,
//!   contraction-based selection and the Morse partition of quasi-round sets).
//! - [`search`]: seeded configuration search for the best covering constants
//!   and the constants report.
//! - [`io`]: scene/report formats and the command-line surface.

pub mod error;
pub mod io;
pub mod kernel;
pub mod metric;
pub mod search;
pub mod selection;

pub use error::{Error, Result};
pub use kernel::{BallFamily, OverlapProfile, QuasiRoundSet, Verdict};
pub use metric::{Ball, Point, Space, SpaceKind, Tangent, Tolerance};
