//! Validators: Besicovitch families, K-configurations, α-configurations
//! and greedy ε-nets.

use besicover::kernel::{
    common_point, epsilon_net_greedy, is_alpha_configuration, is_besicovitch_family, is_k_configuration, strict_net_bound,
    CommonPoint,
};
use besicover::{Ball, BallFamily, Point, Result, Space};

fn main() -> Result<()> {
    let e2 = Space::euclidean(2)?;

    // five unit balls with centers on a regular pentagon of circumradius 0.95
    let pentagon: Vec<(Vec<f64>, f64)> = (0..5)
        .map(|k| {
            let a = k as f64 * std::f64::consts::TAU / 5.0;
            (vec![0.95 * a.cos(), 0.95 * a.sin()], 1.0)
        })
        .collect();
    let family = BallFamily::from_pairs(e2, pentagon)?;
    println!("pentagon: {:?}", is_besicovitch_family(&family));
    if let CommonPoint::Found(p) = common_point(&family) {
        println!("  common point {:?}", p.0);
    }
    println!("  as a K-configuration: {}", is_k_configuration(&family).is_valid());

    // moving one center inwards puts it inside its neighbours
    let mut bad = family.clone();
    bad.balls[0].center = Point(vec![0.3, 0.0]);
    println!("moved: {:?}", is_besicovitch_family(&bad));

    // small target ball at the origin, the pentagon balls are 3/4-large
    let target = Ball { center: e2.origin(), radius: 0.7 };
    println!("alpha-configuration (alpha 3/4): {:?}", is_alpha_configuration(&family, &target, 0.75)?);

    // greedy strict 0.5-net of a grid
    let grid: Vec<Point> = (0..21).flat_map(|i| (0..21).map(move |j| Point(vec![i as f64 * 0.1, j as f64 * 0.1]))).collect();
    let net = epsilon_net_greedy(&e2, &grid, 0.5, true);
    println!("strict 0.5-net of a 21x21 grid: {} points", net.len());
    println!("net bound for alpha 3/4 in the plane: {}", strict_net_bound(0.75, 2)?);
    Ok(())
}
