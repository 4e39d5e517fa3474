//! Distances, exponential and logarithm maps, ball shrinking and ball
//! volumes in the three model geometries.

use besicover::{Ball, Result, Space, Tangent};

fn main() -> Result<()> {
    let spaces = [Space::euclidean(2)?, Space::euclidean_lp(2, 1.0)?, Space::sphere(2, 1.0)?, Space::hyperbolic(2)?];
    for s in &spaces {
        let o = s.origin();
        let basis = s.tangent_basis(&o);
        let p = s.point_at(&o, &basis, &[1.0, 0.0], 0.7);
        let q = s.point_at(&o, &basis, &[0.0, 1.0], 0.7);
        let v = s.log_map(&p, &q)?;
        let back = s.exp_map(&Tangent { base: p.clone(), vector: v.vector.clone() })?;
        println!("{}: d(p, q) = {:.6}, |log| = {:.6}, exp(log) error {:.1e}", s.label(), s.distance(&p, &q)?, s.tangent_norm(&v.vector), s.dist(&back, &q));

        // a ball of radius 0.2 inside B(o, 0.7) that still contains p
        let outer = Ball { center: o.clone(), radius: 0.7 };
        let inner = s.shrink_ball_toward(&outer, &p, 0.2)?;
        println!("  shrunk center at distance {:.3} from o", s.dist(&inner.center, &o));
        println!("  vol B(0.5) = {:.6}", s.ball_volume(0.5)?);
    }

    let s2 = Space::sphere(2, 1.0)?;
    for r in [0.5, 1.0, 2.0, 3.0] {
        let exact = 2.0 * std::f64::consts::PI * (1.0 - f64::cos(r));
        println!("S2 cap r = {r}: {:.12} (closed form {exact:.12})", s2.ball_volume(r)?);
    }
    Ok(())
}
