//! Quasi-round sets: satellite configuration checks, the disjoint-family
//! partition of a cover by quasi-round sets, and the satellite search.

use besicover::kernel::{is_tau_satellite_configuration, QuasiRoundSet};
use besicover::search::{satellite_max_search, SearchConfig};
use besicover::selection::morse_partition;
use besicover::{Point, Result, Space};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let e2 = Space::euclidean(2)?;
    let sets = vec![
        QuasiRoundSet::new(Point(vec![0.0, 0.0]), 1.0, 1.2, 2.2)?,
        QuasiRoundSet::new(Point(vec![1.5, 0.0]), 0.8, 1.2, 1.7)?,
        QuasiRoundSet::new(Point(vec![-1.2, 1.0]), 0.9, 1.1, 1.9)?,
    ];
    let anchors: Vec<Point> = sets.iter().map(|s| s.anchor.clone()).collect();
    println!("satellite (tau 1.5): {:?}", is_tau_satellite_configuration(&e2, &sets, &anchors, 1.5)?);

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cover: Vec<QuasiRoundSet> = (0..300)
        .map(|_| {
            let r = rng.gen_range(0.1..1.0);
            let lambda = rng.gen_range(1.0..1.5);
            let a = Point(vec![rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0)]);
            QuasiRoundSet::new(a, r, lambda, 2.0 * r * rng.gen_range(1.0..lambda))
        })
        .collect::<Result<_>>()?;
    let m = morse_partition(&e2, &cover, 1.5, 1.5)?;
    println!(
        "partition: {} selected sets in {} families, anchors covered {}, bound {:?}",
        m.selected.len(),
        m.partition.family_count(),
        m.anchors_covered,
        m.partition.bound.as_ref().map(|b| b.value)
    );

    for lambda in [1.0, 1.5, 2.0] {
        let r = satellite_max_search(&Space::euclidean(1)?, 2.0, lambda, &SearchConfig::with_seed(1).with_budget(20_000))?;
        println!("line, tau 2, lambda {lambda}: {} sets (feasible {})", r.score, r.feasible);
    }
    Ok(())
}
