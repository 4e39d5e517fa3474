//! The contraction intersecting property in the plane: among 2m + 1 balls
//! with a common point, m + 1 of them still meet after shrinking radii by s.

use besicover::search::{cip_check, cip_trials, largest_working_shrink, random_common_point_family, CipVerdict};
use besicover::selection::cip_subcover;
use besicover::{BallFamily, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let family = random_common_point_family(&mut rng, 2, 7, 0.9)?;
    match cip_check(&family, 3, 0.95)? {
        CipVerdict::Found { indices, witness, route } => {
            println!("m = 3: balls {indices:?} share {:?} after shrinking (route: {route})", witness.0)
        }
        CipVerdict::NotFound { reason } => println!("m = 3: not found: {reason}"),
    }

    for m in 1..=4 {
        let t = cip_trials(m, 0.95, 500, 2, 7)?;
        let best = largest_working_shrink(m, 200, 2, 7)?;
        println!("m = {m}: {}/{} found, bad witnesses {}, largest working shrink {best:?}", t.found, t.trials, t.bad_witnesses.len());
    }

    // selection driven by the contraction threshold
    let iv: Vec<(f64, f64)> = (0..60).map(|k| (k as f64 * 0.37, 0.2 + (k % 7) as f64 * 0.1)).collect();
    let family = BallFamily::intervals(&iv)?;
    let sel = cip_subcover(&family, 2, 0.9, 0.5)?;
    println!(
        "cip subcover: {} balls, covers {}, overlap {}, separated {}, bound {}",
        sel.subcover.selected.len(),
        sel.subcover.covers_all(),
        sel.subcover.overlap.max_overlap,
        sel.separated,
        sel.bound.value
    );
    Ok(())
}
