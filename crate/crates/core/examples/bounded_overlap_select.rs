//! Bounded-overlap subcover by radius bands, then a partition of the
//! subcover into families of pairwise disjoint balls.

use besicover::kernel::strict_net_bound;
use besicover::selection::{partition_into_disjoint_families, select_bounded_overlap_subcover};
use besicover::{BallFamily, Result, Space};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for dim in [1usize, 2] {
        let space = Space::euclidean(dim)?;
        let pairs: Vec<(Vec<f64>, f64)> = (0..400)
            .map(|_| ((0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect(), 2f64.powf(-4.0 * rng.gen::<f64>())))
            .collect();
        let family = BallFamily::from_pairs(space, pairs)?;
        let sub = select_bounded_overlap_subcover(&family, &family.centers(), 0.5)?;
        let mut bands = sub.bands.clone();
        bands.sort_unstable();
        bands.dedup();
        println!(
            "{}: {} balls in bands {:?} -> {} selected, covers all centers: {}, max overlap {} (exact: {})",
            space.label(),
            family.len(),
            bands,
            sub.selected.len(),
            sub.covers_all(),
            sub.overlap.max_overlap,
            sub.overlap.exact
        );
        let part = partition_into_disjoint_families(&sub.selected, 0.75)?;
        println!(
            "  {} disjoint families, disjoint: {}, covers: {}, bound {:?}",
            part.family_count(),
            part.is_disjoint(),
            part.covers(&family.centers()),
            part.bound.as_ref().map(|b| (b.value, b.certified))
        );
        println!("  overlap * net bound + 1 = {}", sub.overlap.max_overlap as u64 * strict_net_bound(0.75, dim)? + 1);
    }
    Ok(())
}
