use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::SearchConfig;
use crate::metric::{Point, Space};

/// A penalty landscape over configurations of items.
///
/// The energy of a configuration is `Σ unary + Σ_{i<j} pair` and vanishes
/// on feasible configurations; `certify` runs the exact validator.
pub(crate) trait Landscape {
    type Item: Clone;

    fn unary(&self, item: &Self::Item) -> f64;
    /// Called with `i < j`.
    fn pair(&self, i: usize, a: &Self::Item, j: usize, b: &Self::Item) -> f64;
    fn perturb(&self, rng: &mut ChaCha8Rng, item: &Self::Item, step: f64) -> Self::Item;
    fn spawn(&self, rng: &mut ChaCha8Rng, items: &[Self::Item]) -> Self::Item;
    fn certify(&self, items: &[Self::Item]) -> bool;
    /// Typical length, used to scale temperatures and thresholds.
    fn scale(&self) -> f64;
    fn pinned(&self, _i: usize) -> bool {
        false
    }
}

pub(crate) struct Grown<I> {
    pub best: Vec<I>,
    pub trace: Vec<usize>,
}

fn local<L: Landscape>(land: &L, items: &[L::Item], i: usize, item: &L::Item) -> f64 {
    let mut e = land.unary(item);
    for (j, other) in items.iter().enumerate() {
        if j < i {
            e += land.pair(j, other, i, item);
        } else if j > i {
            e += land.pair(i, item, j, other);
        }
    }
    e
}

fn total<L: Landscape>(land: &L, items: &[L::Item]) -> f64 {
    let mut e = 0.0;
    for (i, a) in items.iter().enumerate() {
        e += land.unary(a);
        for (j, b) in items.iter().enumerate().skip(i + 1) {
            e += land.pair(i, a, j, b);
        }
    }
    e
}

/// Grows a configuration one item at a time.
///
/// Every restart starts from `warm`. Once the current configuration is
/// certified a fresh item is spawned and the annealer tries to drive the
/// energy back to zero; after a stalled phase it starts over from the best
/// certified configuration. Restarts use independent ChaCha streams of the
/// seed and the best result wins, ties going to the lowest restart.
pub(crate) fn grow<L: Landscape>(land: &L, warm: &[L::Item], cfg: &SearchConfig, cap: Option<usize>) -> Grown<L::Item> {
    let mut out: Option<(Vec<L::Item>, bool)> = None;
    let mut trace = Vec::with_capacity(cfg.restarts as usize);
    for restart in 0..cfg.restarts {
        let (best, ok) = run(land, warm, cfg, cap, restart as u64);
        trace.push(if ok { best.len() } else { 0 });
        let better = match &out {
            None => true,
            Some((b, bok)) => (ok && !bok) || (ok == *bok && best.len() > b.len()),
        };
        if better {
            out = Some((best, ok));
        }
    }
    let best = out.map(|(b, _)| b).unwrap_or_default();
    Grown { best, trace }
}

fn run<L: Landscape>(land: &L, warm: &[L::Item], cfg: &SearchConfig, cap: Option<usize>, stream: u64) -> (Vec<L::Item>, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let per = (cfg.budget / cfg.restarts as u64).max(1);
    let phase = (per / 8).max(200);
    let scale = land.scale();
    let tiny = 1e-12 * scale;
    let full = |n: usize| cap.is_some_and(|c| n >= c);

    let mut ok = land.certify(warm);
    let mut best: Vec<L::Item> = if ok { warm.to_vec() } else { Vec::new() };
    let mut cur = warm.to_vec();
    if ok && full(cur.len()) {
        return (best, ok);
    }
    if ok || cur.is_empty() {
        let s = land.spawn(&mut rng, &cur);
        cur.push(s);
    }
    let mut e = total(land, &cur);
    let mut temp = cfg.t0 * scale;
    let mut age = 0u64;
    for _ in 0..per {
        if e <= 1e-9 * scale {
            e = total(land, &cur);
            if e <= tiny && (!ok || cur.len() > best.len()) && land.certify(&cur) {
                best = cur.clone();
                ok = true;
                if full(best.len()) {
                    break;
                }
                let s = land.spawn(&mut rng, &cur);
                cur.push(s);
                e = total(land, &cur);
                temp = cfg.t0 * scale;
                age = 0;
                continue;
            }
        }
        if ok && age >= phase {
            cur = best.clone();
            let s = land.spawn(&mut rng, &cur);
            cur.push(s);
            e = total(land, &cur);
            temp = cfg.t0 * scale;
            age = 0;
        }
        age += 1;
        let i = rng.gen_range(0..cur.len());
        if land.pinned(i) {
            continue;
        }
        // steps spread over two decades so the search can both explore and settle
        let step = cfg.perturbation * 10f64.powf(-2.0 * rng.gen::<f64>());
        let cand = land.perturb(&mut rng, &cur[i], step);
        let d = local(land, &cur, i, &cand) - local(land, &cur, i, &cur[i]);
        if d <= 0.0 || (temp > 0.0 && rng.gen::<f64>() < (-d / temp).exp()) {
            cur[i] = cand;
            e = (e + d).max(0.0);
        }
        temp *= cfg.decay;
    }
    (best, ok)
}

pub(crate) fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Moves `p` by a Gaussian step of typical length `len` along a geodesic.
pub(crate) fn jiggle(space: &Space, rng: &mut ChaCha8Rng, p: &Point, len: f64) -> Point {
    let g = gaussian(rng, space.dim());
    if space.is_euclidean() {
        return Point(p.0.iter().zip(&g).map(|(x, d)| x + len * d).collect());
    }
    let basis = space.tangent_basis(p);
    let mut v = space.from_local(&basis, &g);
    let cap = 0.5 * space.injectivity_radius();
    let n = space.tangent_norm(&v) * len;
    let k = if n > cap { len * cap / n } else { len };
    v.iter_mut().for_each(|w| *w *= k);
    space.exp_unchecked(p.coords(), &v)
}

/// Uniform-in-chart point within distance `r` of `base`.
pub(crate) fn point_near(space: &Space, rng: &mut ChaCha8Rng, base: &Point, r: f64) -> Point {
    let dir = gaussian(rng, space.dim());
    let len = r * rng.gen::<f64>().powf(1.0 / space.dim() as f64);
    let basis = space.tangent_basis(base);
    space.point_at(base, &basis, &dir, len)
}
