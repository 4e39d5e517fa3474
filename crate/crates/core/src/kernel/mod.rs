//! Validators and combinatorial measurements for covering structures.

mod besicovitch;
mod configs;
mod family;
mod net;
mod overlap;

pub(crate) use besicovitch::circle_intersections;
pub use besicovitch::{common_point, is_besicovitch_family, is_k_configuration, CommonPoint};
pub use configs::{is_alpha_configuration, is_tau_satellite_configuration, QuasiRoundSet};
pub use family::BallFamily;
pub use net::{covering_number, epsilon_net_greedy, strict_net_bound};
pub use overlap::{overlap_profile, OverlapProfile, Probes};
#[cfg(test)]
pub(crate) use overlap::max_depth_1d;

use serde::{Deserialize, Serialize};

use crate::metric::Point;

/// Outcome of a validator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// The structure is valid. `witness` is a certificate point when one
    /// exists (for example a common point of all balls) and `index` a
    /// distinguished index (the central index of a satellite configuration).
    Valid {
        #[serde(skip_serializing_if = "Option::is_none", default)]
        witness: Option<Point>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        index: Option<usize>,
    },
    /// The structure is invalid; `indices` names the offending balls.
    Invalid {
        reason: String,
        #[serde(skip_serializing_if = "Vec::is_empty", default)]
        indices: Vec<usize>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        witness: Option<Point>,
    },
    /// Neither validity nor invalidity could be certified at the tolerance.
    Indeterminate { reason: String },
}

impl Verdict {
    pub fn valid() -> Verdict {
        Verdict::Valid { witness: None, index: None }
    }

    pub(crate) fn invalid(reason: impl Into<String>, indices: Vec<usize>) -> Verdict {
        Verdict::Invalid { reason: reason.into(), indices, witness: None }
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }

    pub fn is_invalid(&self) -> bool {
        matches!(self, Verdict::Invalid { .. })
    }

    pub fn witness(&self) -> Option<&Point> {
        match self {
            Verdict::Valid { witness, .. } | Verdict::Invalid { witness, .. } => witness.as_ref(),
            Verdict::Indeterminate { .. } => None,
        }
    }
}
