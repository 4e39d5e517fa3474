//! Constructive covering algorithms.
//!
//! Tie-breaking is the same everywhere: larger radius first, then
//! lexicographic center order.

mod cip;
mod morse;
mod oned;
mod partition;
mod subcover;

pub use cip::{cip_subcover, CipSubcover};
pub use morse::{morse_partition, MorsePartition};
pub use oned::{besicovitch_cover_1d, ChainFrontier, ChainState, OneDimCover, OneDimMode, OneDimStats};
pub use partition::partition_into_disjoint_families;
pub use subcover::{band_index, select_bounded_overlap_subcover, SubcoverResult};

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::kernel::BallFamily;
use crate::metric::{Ball, Point};

/// Families of pairwise disjoint balls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisjointPartition {
    pub families: Vec<BallFamily>,
    /// Input index → family index (`None` when the ball was not kept).
    pub assignment: Vec<Option<usize>>,
    /// Bound on the number of families, when the algorithm has one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<FamilyBound>,
}

/// A bound on the family count together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyBound {
    pub value: u64,
    pub formula: String,
    /// `false` when the bound is an empirical estimate.
    pub certified: bool,
}

impl DisjointPartition {
    pub fn family_count(&self) -> usize {
        self.families.len()
    }

    /// Every family is pairwise disjoint (`d > r₁ + r₂` up to tolerance).
    pub fn is_disjoint(&self) -> bool {
        self.families.iter().all(|f| f.is_pairwise_disjoint())
    }

    /// Whether every point lies in some ball of some family.
    pub fn covers(&self, points: &[Point]) -> bool {
        points.iter().all(|p| self.families.iter().any(|f| f.covers(p)))
    }
}

/// Order used for tie-breaking: radius descending, then centers
/// lexicographically.
pub(crate) fn radius_desc_then_lex(a: &Ball, b: &Ball) -> Ordering {
    b.radius.total_cmp(&a.radius).then_with(|| lex(&a.center, &b.center))
}

pub(crate) fn lex(a: &Point, b: &Point) -> Ordering {
    for (x, y) in a.0.iter().zip(&b.0) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.0.len().cmp(&b.0.len())
}
