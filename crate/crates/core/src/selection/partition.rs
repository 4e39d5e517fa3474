use super::subcover::{band_index, check_radii, measure_overlap};
use super::{radius_desc_then_lex, DisjointPartition, FamilyBound};
use crate::error::{input, Result};
use crate::kernel::{strict_net_bound, BallFamily};

/// Splits a family into subfamilies of pairwise disjoint balls.
///
/// Balls are taken by α-bands `r ∈ (αⁿ R, αⁿ⁻¹ R]`, largest first, and inside
/// a band by radius then center. Each ball joins the lowest-index family
/// whose balls it all misses, opening a new family when none fits. The
/// reported bound is `overlap · ⌊(2α+3)^dim⌋ + 1`, with the overlap measured
/// exactly on the line and at the centers elsewhere.
pub fn partition_into_disjoint_families(family: &BallFamily, alpha: f64) -> Result<DisjointPartition> {
    if !(alpha > 0.5 && alpha < 1.0) {
        return input(format!("alpha must lie in (1/2, 1), got {alpha}"));
    }
    check_radii(family)?;
    let space = family.space;
    let cap = family.max_radius();
    let bands: Vec<i64> = family.balls.iter().map(|b| band_index(b.radius, cap, alpha)).collect();
    let mut order: Vec<usize> = (0..family.len()).collect();
    order.sort_by(|&a, &b| bands[a].cmp(&bands[b]).then_with(|| radius_desc_then_lex(&family.balls[a], &family.balls[b])));

    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut assignment = vec![None; family.len()];
    for &b in &order {
        let ball = &family.balls[b];
        let slot = members
            .iter()
            .position(|m| m.iter().all(|&o| !space.balls_intersect(ball, &family.balls[o])));
        let k = match slot {
            Some(k) => k,
            None => {
                members.push(Vec::new());
                members.len() - 1
            }
        };
        members[k].push(b);
        assignment[b] = Some(k);
    }

    let overlap = measure_overlap(family, &[])?.max_overlap as u64;
    let net = strict_net_bound(alpha, space.dim())?;
    Ok(DisjointPartition {
        families: members.iter().map(|m| family.subfamily(m)).collect(),
        assignment,
        bound: Some(FamilyBound {
            value: overlap * net + 1,
            formula: format!("overlap {overlap} x floor((2*{alpha}+3)^{}) + 1", space.dim()),
            certified: space.is_line(),
        }),
    })
}
