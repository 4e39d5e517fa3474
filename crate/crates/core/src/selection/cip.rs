use serde::{Deserialize, Serialize};

use super::subcover::{band_index, check_radii, measure_overlap};
use super::{lex, FamilyBound, SubcoverResult};
use crate::error::{input, Result};
use crate::kernel::BallFamily;

/// Output of [`cip_subcover`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CipSubcover {
    pub subcover: SubcoverResult,
    /// `d(x_t, x_j) > s · max(r_t, r_j)` for every selected pair.
    pub separated: bool,
    /// The `s`-shrunk selected balls exclude each other's centers.
    pub shrunk_center_exclusion: bool,
    /// Number of admissible candidates at each step, in selection order.
    pub admissible: Vec<usize>,
    pub bound: FamilyBound,
}

/// Band-wise selection with a contraction threshold.
///
/// Bands are `r ∈ (βⁱ R, βⁱ⁻¹ R]`. Inside a band, a ball is admissible when
/// its center is not covered by any ball selected so far and its radius
/// exceeds `s` times the largest radius among balls with uncovered centers
/// in the band. The admissible ball with the lexicographically smallest
/// center is selected (larger radius on ties).
pub fn cip_subcover(family: &BallFamily, m: usize, s: f64, beta: f64) -> Result<CipSubcover> {
    if !(s > 0.0 && s < 1.0) {
        return input(format!("shrink factor s must lie in (0, 1), got {s}"));
    }
    if !(beta > 0.0 && beta < 1.0) {
        return input(format!("beta must lie in (0, 1), got {beta}"));
    }
    if m == 0 {
        return input("m must be at least 1");
    }
    check_radii(family)?;
    let space = family.space;
    let centers = family.centers();
    let cap = family.max_radius();
    let bands: Vec<i64> = family.balls.iter().map(|b| band_index(b.radius, cap, beta)).collect();
    let mut band_ids: Vec<i64> = bands.clone();
    band_ids.sort();
    band_ids.dedup();

    let mut covered = vec![false; family.len()];
    let mut chosen: Vec<usize> = Vec::new();
    let mut admissible_counts = Vec::new();
    for band in band_ids {
        loop {
            let open: Vec<usize> = (0..family.len()).filter(|&b| bands[b] == band && !covered[b]).collect();
            if open.is_empty() {
                break;
            }
            let sup = open.iter().map(|&b| family.balls[b].radius).fold(0.0, f64::max);
            let adm: Vec<usize> = open.iter().copied().filter(|&b| family.balls[b].radius > s * sup).collect();
            admissible_counts.push(adm.len());
            let pick = *adm
                .iter()
                .min_by(|&&a, &&b| {
                    lex(&family.balls[a].center, &family.balls[b].center)
                        .then(family.balls[b].radius.total_cmp(&family.balls[a].radius))
                })
                .unwrap();
            chosen.push(pick);
            let ball = &family.balls[pick];
            for (c, p) in centers.iter().enumerate() {
                if !covered[c] && space.contains(ball, p) {
                    covered[c] = true;
                }
            }
        }
    }

    let mut separated = true;
    let mut exclusion = true;
    for (a, &t) in chosen.iter().enumerate() {
        for &j in &chosen[a + 1..] {
            let (bt, bj) = (&family.balls[t], &family.balls[j]);
            let d = space.dist(&bt.center, &bj.center);
            if !(d > s * bt.radius.max(bj.radius)) {
                separated = false;
            }
            if !(d > s * bt.radius && d > s * bj.radius) {
                exclusion = false;
            }
        }
    }

    let selected = family.subfamily(&chosen);
    let overlap = measure_overlap(&selected, &centers)?;
    let subcover = SubcoverResult { selected, indices: chosen, covered_centers: covered, overlap, bands };
    Ok(CipSubcover {
        subcover,
        separated,
        shrunk_center_exclusion: exclusion,
        admissible: admissible_counts,
        bound: FamilyBound { value: (2 * m * m) as u64, formula: format!("m * C(m) = {m} * {}", 2 * m), certified: false },
    })
}
