//! Two disjoint families of intervals covering every center.

use besicover::selection::{besicovitch_cover_1d, OneDimMode};
use besicover::{BallFamily, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let family = BallFamily::intervals(&[(0.0, 1.0), (1.5, 1.0), (3.0, 1.0), (0.7, 0.5), (2.2, 0.1)])?;
    let centers: Vec<f64> = family.centers().iter().map(|p| p.0[0]).collect();
    let cover = besicovitch_cover_1d(&family, &centers, OneDimMode::Auto)?;
    for (k, f) in cover.partition.families.iter().enumerate() {
        let iv: Vec<String> = f.balls.iter().map(|b| format!("[{}, {}]", b.center.0[0] - b.radius, b.center.0[0] + b.radius)).collect();
        println!("family {k}: {}", iv.join(" "));
    }
    println!("{:?}", cover.stats);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let iv: Vec<(f64, f64)> = (0..10_000).map(|_| (rng.gen_range(-1e6..1e6), 10f64.powf(rng.gen_range(0.0..4.0)))).collect();
    let family = BallFamily::intervals(&iv)?;
    let centers: Vec<f64> = iv.iter().map(|p| p.0).collect();
    let t = std::time::Instant::now();
    let cover = besicovitch_cover_1d(&family, &centers, OneDimMode::Auto)?;
    println!(
        "10^4 random intervals: {} families, disjoint {}, covering {}, {:?}",
        cover.partition.family_count(),
        cover.partition.is_disjoint(),
        cover.partition.covers(&family.centers()),
        t.elapsed()
    );
    Ok(())
}
