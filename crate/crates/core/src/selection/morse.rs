use serde::{Deserialize, Serialize};

use super::{lex, DisjointPartition, FamilyBound};
use crate::error::{input, Error, Result};
use crate::kernel::{BallFamily, QuasiRoundSet};
use crate::metric::{Space, SpaceKind};

/// Output of [`morse_partition`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorsePartition {
    /// Families of outer balls `B(a, λr)`; `assignment` is indexed by set.
    pub partition: DisjointPartition,
    /// Indices of the selected sets, in selection order.
    pub selected: Vec<usize>,
    /// Diameter band of every set: `k` with `diam ∈ (D/τᵏ⁺¹, D/τᵏ]`.
    pub bands: Vec<i64>,
    /// Every anchor lies in the inner ball of a selected set.
    pub anchors_covered: bool,
}

/// Disjoint families for quasi-round sets.
///
/// Sets are grouped into diameter bands of ratio `τ`, largest first, and
/// inside a band by diameter then anchor. A set is selected when its anchor
/// is not yet in the inner ball `B(a_i, r_i)` of a selected set (inner balls
/// lie in the sets, so coverage is certain). Each selected set's outer ball
/// `B(a, λr)` goes to the lowest family whose outer balls it misses.
///
/// The reported bound is one more than the largest number of earlier
/// selected outer balls met by a selected outer ball, which bounds the
/// first-fit family count on this instance.
pub fn morse_partition(space: &Space, sets: &[QuasiRoundSet], tau: f64, lambda: f64) -> Result<MorsePartition> {
    if !(tau > 1.0 && tau <= 2.0) {
        return input(format!("tau must lie in (1, 2], got {tau}"));
    }
    if !(lambda.is_finite() && lambda >= 1.0) {
        return input(format!("lambda must be at least 1, got {lambda}"));
    }
    for (i, s) in sets.iter().enumerate() {
        space.check_point(&s.anchor).map_err(|e| Error::Input(format!("set {i}: {e}")))?;
        if s.lambda > lambda * (1.0 + 1e-12) {
            return input(format!("set {i} has lambda {} above the partition lambda {lambda}", s.lambda));
        }
        if let SpaceKind::Sphere { .. } = space.kind() {
            let cap = space.injectivity_radius() / 4.0;
            if s.diameter >= cap {
                return input(format!("set {i} has diameter {} not below inj/4 = {cap}", s.diameter));
            }
        }
    }

    let dmax = sets.iter().fold(0.0f64, |m, s| m.max(s.diameter));
    let bands: Vec<i64> = sets
        .iter()
        .map(|s| {
            let mut k = ((dmax / s.diameter).ln() / tau.ln()).floor() as i64;
            while k > 0 && s.diameter > dmax / tau.powi(k as i32) {
                k -= 1;
            }
            while s.diameter <= dmax / tau.powi(k as i32 + 1) {
                k += 1;
            }
            k
        })
        .collect();
    let mut order: Vec<usize> = (0..sets.len()).collect();
    order.sort_by(|&a, &b| {
        bands[a]
            .cmp(&bands[b])
            .then(sets[b].diameter.total_cmp(&sets[a].diameter))
            .then_with(|| lex(&sets[a].anchor, &sets[b].anchor))
    });

    let mut selected: Vec<usize> = Vec::new();
    for &i in &order {
        let a = &sets[i].anchor;
        if selected.iter().any(|&j| space.dist(&sets[j].anchor, a) <= sets[j].inner_radius) {
            continue;
        }
        selected.push(i);
    }

    let outer: Vec<_> = sets.iter().map(|s| s.outer_ball()).collect();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut assignment = vec![None; sets.len()];
    let mut degree = 0usize;
    for (pos, &i) in selected.iter().enumerate() {
        let met = selected[..pos].iter().filter(|&&j| space.balls_intersect(&outer[i], &outer[j])).count();
        degree = degree.max(met);
        let slot = members.iter().position(|m| m.iter().all(|&j| !space.balls_intersect(&outer[i], &outer[j])));
        let k = slot.unwrap_or_else(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        members[k].push(i);
        assignment[i] = Some(k);
    }

    let anchors_covered =
        sets.iter().all(|s| selected.iter().any(|&j| space.dist(&sets[j].anchor, &s.anchor) <= sets[j].inner_radius));
    let families = members
        .iter()
        .map(|m| BallFamily { space: *space, balls: m.iter().map(|&i| outer[i].clone()).collect(), labels: None })
        .collect();
    Ok(MorsePartition {
        partition: DisjointPartition {
            families,
            assignment,
            bound: Some(FamilyBound {
                value: degree as u64 + 1,
                formula: "max earlier outer balls met + 1".into(),
                certified: true,
            }),
        },
        selected,
        bands,
        anchors_covered,
    })
}
