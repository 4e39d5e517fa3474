use besicover::kernel::{epsilon_net_greedy, is_besicovitch_family, overlap_profile, Probes};
use besicover::selection::{besicovitch_cover_1d, OneDimMode};
use besicover::{Ball, BallFamily, Point, Space, Tangent};
use proptest::prelude::*;

fn spaces() -> Vec<Space> {
    vec![
        Space::euclidean(2).unwrap(),
        Space::euclidean_lp(3, 1.5).unwrap(),
        Space::sphere(2, 1.0).unwrap(),
        Space::sphere(3, 2.0).unwrap(),
        Space::hyperbolic(2).unwrap(),
    ]
}

fn embed(space: &Space, raw: &[f64]) -> Point {
    let n = space.ambient_dim();
    let mut v: Vec<f64> = raw.iter().copied().cycle().take(n).collect();
    if space.label().starts_with('S') && v.iter().all(|x| *x == 0.0) {
        v[0] = 1.0;
    }
    space.project(v)
}

fn coords() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, 4)
}

/// Planar Besicovitch family: centers at distance 0.9 to 1 from the origin
/// in directions at least 65 degrees apart, radii just above that distance.
fn planar_besicovitch() -> impl Strategy<Value = BallFamily> {
    (2usize..=5, 0.0f64..360.0, prop::collection::vec((0.9f64..1.0, 0.0f64..0.02, 0.0f64..7.0), 5)).prop_map(
        |(k, start, params)| {
            let gap = 360.0 / k as f64;
            let balls = params[..k]
                .iter()
                .enumerate()
                .map(|(i, &(d, extra, jitter))| {
                    let a = (start + i as f64 * gap + jitter).to_radians();
                    Ball { center: Point(vec![d * a.cos(), d * a.sin()]), radius: d + extra }
                })
                .collect();
            BallFamily::new(Space::euclidean(2).unwrap(), balls).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn triangle_inequality(a in coords(), b in coords(), c in coords()) {
        for s in spaces() {
            let (p, q, r) = (embed(&s, &a), embed(&s, &b), embed(&s, &c));
            let (pq, qr, pr) = (s.dist(&p, &q), s.dist(&q, &r), s.dist(&p, &r));
            prop_assert!(pr <= pq + qr + 1e-9 * (1.0 + pr), "{}: {pr} > {pq} + {qr}", s.label());
            prop_assert!((pq - s.dist(&q, &p)).abs() <= 1e-12 * (1.0 + pq));
        }
    }

    #[test]
    fn exp_inverts_log(a in coords(), b in coords()) {
        for s in spaces() {
            let (p, q) = (embed(&s, &a), embed(&s, &b));
            if s.dist(&p, &q) > 0.9 * s.injectivity_radius() {
                continue;
            }
            let t = s.log_map(&p, &q).unwrap();
            let back = s.exp_map(&Tangent { base: p.clone(), vector: t.vector.clone() }).unwrap();
            prop_assert!(s.dist(&back, &q) < 1e-8, "{}", s.label());
        }
    }

    #[test]
    fn greedy_net_is_a_fixed_point(pts in prop::collection::vec(coords(), 1..60), eps in 0.1f64..2.0, strict: bool) {
        for s in spaces() {
            let pts: Vec<Point> = pts.iter().map(|c| embed(&s, c)).collect();
            let net = epsilon_net_greedy(&s, &pts, eps, strict);
            prop_assert_eq!(&epsilon_net_greedy(&s, &net, eps, strict), &net);
            for p in &pts {
                let near = net.iter().any(|q| if strict { s.dist(p, q) <= eps } else { s.dist(p, q) < eps });
                prop_assert!(near);
            }
        }
    }

    #[test]
    fn subfamilies_of_besicovitch_families_are_besicovitch(f in planar_besicovitch()) {
        prop_assume!(is_besicovitch_family(&f).is_valid());
        let k = f.len();
        for mask in 1u32..(1 << k) {
            let idx: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
            prop_assert!(is_besicovitch_family(&f.subfamily(&idx)).is_valid(), "{idx:?}");
        }
    }

    #[test]
    fn similarities_preserve_the_verdict(
        f in planar_besicovitch(),
        nudge in prop::collection::vec(-0.4f64..0.4, 5),
        scale in 0.1f64..10.0,
        theta in 0.0f64..std::f64::consts::TAU,
        shift in (-50.0f64..50.0, -50.0f64..50.0),
    ) {
        // nudged radii give a mix of valid and invalid families
        let balls: Vec<Ball> = f.balls.iter().zip(&nudge).map(|(b, n)| Ball { radius: b.radius + n, ..b.clone() }).collect();
        prop_assume!(balls.iter().all(|b| b.radius > 0.0));
        let base = BallFamily::new(f.space, balls).unwrap();
        let (s, c) = theta.sin_cos();
        let moved: Vec<Ball> = base.balls.iter().map(|b| {
            let (x, y) = (b.center.0[0], b.center.0[1]);
            Ball {
                center: Point(vec![scale * (c * x - s * y) + shift.0, scale * (s * x + c * y) + shift.1]),
                radius: scale * b.radius,
            }
        }).collect();
        let moved = BallFamily::new(f.space, moved).unwrap();
        let (v0, v1) = (is_besicovitch_family(&base), is_besicovitch_family(&moved));
        prop_assume!(!matches!(v0, besicover::Verdict::Indeterminate { .. }));
        prop_assert_eq!(v0.is_valid(), v1.is_valid());
    }

    #[test]
    fn the_line_never_needs_a_third_family(iv in prop::collection::vec((-100.0f64..100.0, 0.01f64..30.0), 1..120)) {
        let f = BallFamily::intervals(&iv).unwrap();
        let centers: Vec<f64> = iv.iter().map(|p| p.0).collect();
        let c = besicovitch_cover_1d(&f, &centers, OneDimMode::Auto).unwrap();
        prop_assert!(c.partition.family_count() <= 2);
        prop_assert!(c.partition.is_disjoint());
        prop_assert!(c.partition.covers(&f.centers()));
    }

    #[test]
    fn shrunk_balls_stay_inside(a in coords(), dir in coords(), frac in 0.0f64..1.0, s in 0.05f64..0.95) {
        for sp in spaces() {
            let r = 0.2 * sp.injectivity_radius().min(5.0);
            let outer = Ball { center: embed(&sp, &a), radius: r };
            let y = sp.boundary_point(&Ball { radius: frac * r, ..outer.clone() }, &dir[..sp.dim()]);
            let inner = sp.shrink_ball_toward(&outer, &y, s * r).unwrap();
            prop_assert!(sp.dist(&inner.center, &y) <= inner.radius + 1e-9);
            for k in 0..64 {
                let t = k as f64 * std::f64::consts::TAU / 64.0;
                let mut d = vec![0.0; sp.dim()];
                d[0] = t.cos();
                d[1 % sp.dim()] += t.sin();
                d[sp.dim() - 1] += 0.3 * (3.0 * t).sin();
                let q = sp.boundary_point(&inner, &d);
                prop_assert!(sp.dist(&q, &outer.center) <= r + 1e-9, "{}", sp.label());
            }
        }
    }

    #[test]
    fn endpoint_sweep_matches_probing(iv in prop::collection::vec((-20.0f64..20.0, 0.01f64..5.0), 1..80)) {
        let f = BallFamily::intervals(&iv).unwrap();
        let probes: Vec<Point> = iv.iter().flat_map(|&(c, r)| [Point(vec![c - r]), Point(vec![c + r])]).collect();
        let exact = overlap_profile(&f, Probes::Exact1d).unwrap();
        let probed = overlap_profile(&f, Probes::Points(&probes)).unwrap();
        prop_assert_eq!(exact.max_overlap, probed.max_overlap);
    }
}
