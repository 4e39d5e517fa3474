use std::collections::BTreeMap;

use ordered_float::OrderedFloat;
use serde::{Deserialize, Serialize};

use super::{DisjointPartition, FamilyBound};
use crate::error::{input, unsupported, Result};
use crate::kernel::BallFamily;

/// Which construction [`besicovitch_cover_1d`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OneDimMode {
    /// Unbounded construction when the centers span more than 16 times the
    /// largest radius, bounded construction otherwise.
    Auto,
    /// Greedy half-supremum selection with incremental two-colouring.
    Bounded,
    /// Anchor decomposition into three-interval groups, then a sweep.
    Unbounded,
}

/// Counters describing a run of [`besicovitch_cover_1d`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OneDimStats {
    pub mode: String,
    /// Intervals chosen by the greedy stage (bounded) or kept in the anchor
    /// groups (unbounded).
    pub candidates: usize,
    pub anchors: usize,
    /// Chains re-tagged when a new interval bridged two chains.
    pub exchanges: usize,
    /// Intervals dropped because two others already covered them.
    pub removals: usize,
    /// Set when the incremental colouring met a float-rounding conflict and
    /// the sweep was used instead.
    pub fallback: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OneDimCover {
    pub partition: DisjointPartition,
    pub stats: OneDimStats,
}

/// Leftmost and rightmost coordinates of a maximal chain of overlapping
/// kept intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainFrontier {
    pub left: f64,
    pub right: f64,
    pub len: usize,
}

/// Sweep state for two disjoint families of closed intervals.
///
/// Intervals must arrive in nondecreasing order of left endpoint. Every kept
/// point is in at most two kept intervals; when a third interval arrives at a
/// point, the one that is neither the leftmost-starting nor the
/// rightmost-ending is dropped (it lies in the union of the other two).
/// Overlapping kept intervals carry opposite tags, so tag 0 and tag 1 are the
/// two families.
#[derive(Debug, Clone, Default)]
pub struct ChainState {
    lo: Vec<f64>,
    hi: Vec<f64>,
    id: Vec<usize>,
    tag: Vec<u8>,
    alive: Vec<bool>,
    active: Vec<usize>,
    chains: Vec<ChainFrontier>,
    removals: usize,
}

impl ChainState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `[lo, hi]` under the caller's identifier `id`.
    pub fn insert(&mut self, lo: f64, hi: f64, id: usize) {
        debug_assert!(self.lo.last().is_none_or(|&l| l <= lo));
        self.active.retain(|&k| self.hi[k] >= lo && self.alive[k]);
        let k = self.lo.len();
        self.lo.push(lo);
        self.hi.push(hi);
        self.id.push(id);
        self.alive.push(true);
        self.tag.push(0);

        if self.active.len() == 2 {
            let (a, b) = (self.active[0], self.active[1]);
            let far = if self.hi[a] >= self.hi[b] { a } else { b };
            if hi <= self.hi[far] {
                self.alive[k] = false;
                self.removals += 1;
                return;
            }
            let left = if self.lo[a] <= self.lo[b] { a } else { b };
            let mid = if left == a { b } else { a };
            self.alive[mid] = false;
            self.removals += 1;
            self.active = vec![left];
        }

        match self.active.first() {
            Some(&a) => {
                self.tag[k] = 1 - self.tag[a];
                let c = self.chains.last_mut().unwrap();
                c.right = c.right.max(hi);
                c.len += 1;
            }
            None => {
                self.chains.push(ChainFrontier { left: lo, right: hi, len: 1 });
            }
        }
        self.active.push(k);
    }

    /// Kept intervals as `(id, tag)`.
    pub fn kept(&self) -> Vec<(usize, u8)> {
        (0..self.lo.len()).filter(|&k| self.alive[k]).map(|k| (self.id[k], self.tag[k])).collect()
    }

    /// Frontiers of the chains, left to right. A chain length counts every
    /// interval that joined it, including ones dropped later.
    pub fn chains(&self) -> &[ChainFrontier] {
        &self.chains
    }

    pub fn removals(&self) -> usize {
        self.removals
    }
}

/// Union–find over intervals with a tag parity per node; flipping a root
/// re-tags its whole chain.
struct TaggedChains {
    parent: Vec<usize>,
    rel: Vec<u8>,
    size: Vec<usize>,
}

impl TaggedChains {
    fn new() -> Self {
        TaggedChains { parent: Vec::new(), rel: Vec::new(), size: Vec::new() }
    }

    fn add(&mut self, tag: u8) -> usize {
        let k = self.parent.len();
        self.parent.push(k);
        self.rel.push(tag);
        self.size.push(1);
        k
    }

    /// Root of `x` and the parity from `x` up to (excluding) the root.
    fn find(&mut self, x: usize) -> (usize, u8) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        let mut acc = 0u8;
        for &node in path.iter().rev() {
            acc ^= self.rel[node];
            self.rel[node] = acc;
            self.parent[node] = root;
        }
        let p = if path.is_empty() { 0 } else { self.rel[x] };
        (root, p)
    }

    fn tag(&mut self, x: usize) -> u8 {
        let (r, p) = self.find(x);
        p ^ self.rel[r]
    }

    fn flip(&mut self, root: usize) {
        self.rel[root] ^= 1;
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, _) = self.find(a);
        let (rb, _) = self.find(b);
        if ra == rb {
            return;
        }
        let (small, big) = if self.size[ra] < self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.rel[small] ^= self.rel[big];
        self.parent[small] = big;
        self.size[big] += self.size[small];
    }
}

#[derive(Clone, Copy)]
struct Iv {
    lo: f64,
    hi: f64,
    c: f64,
    ball: usize,
}

/// Two disjoint subfamilies of intervals covering every center.
///
/// The bounded construction selects greedily the largest interval whose
/// center is still uncovered (so each choice exceeds half the supremum of the
/// remaining radii) and keeps the selection two-coloured as it grows: a new
/// interval takes the tag opposite to its neighbours, and when it bridges two
/// chains whose neighbouring tags differ the shorter chain is re-tagged.
///
/// The unbounded construction picks a disjoint anchor family (radius
/// descending), attaches every interval to an anchor it meets with
/// `r < 4/3 r_anchor`, keeps for each anchor the anchor plus the largest
/// interval on each side that covers remaining centers, and colours the union
/// with [`ChainState`].
pub fn besicovitch_cover_1d(family: &BallFamily, centers: &[f64], mode: OneDimMode) -> Result<OneDimCover> {
    if !family.space.is_line() {
        return unsupported(format!("the two-family cover needs the real line, got {}", family.space.label()));
    }
    for (i, b) in family.balls.iter().enumerate() {
        if b.radius <= 0.0 {
            return input(format!("ball {i} has radius {}, radii must be positive", b.radius));
        }
    }
    let ivs: Vec<Iv> = family
        .balls
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let c = b.center.0[0];
            Iv { lo: c - b.radius, hi: c + b.radius, c, ball: i }
        })
        .collect();

    let mut target: Vec<f64> = Vec::with_capacity(centers.len());
    for (i, &x) in centers.iter().enumerate() {
        if !x.is_finite() {
            return input(format!("center {i} is not finite"));
        }
        target.push(x);
    }
    target.sort_by(f64::total_cmp);
    target.dedup();
    let wanted: std::collections::HashSet<u64> = target.iter().map(|x| (x + 0.0).to_bits()).collect();
    let mut usable: Vec<Iv> = ivs.iter().copied().filter(|iv| wanted.contains(&(iv.c + 0.0).to_bits())).collect();
    {
        let mut have: Vec<f64> = usable.iter().map(|iv| iv.c).collect();
        have.sort_by(f64::total_cmp);
        have.dedup();
        if have.len() != target.len() {
            let missing = target.iter().find(|x| have.binary_search_by(|h| h.total_cmp(x)).is_err()).unwrap();
            return input(format!("center {missing} is not the center of any interval"));
        }
    }
    usable.sort_by(|a, b| (b.hi - b.lo).total_cmp(&(a.hi - a.lo)).then(a.c.total_cmp(&b.c)));

    let mode = match mode {
        OneDimMode::Auto => {
            let span = target.last().map_or(0.0, |l| l - target[0]);
            let rmax = usable.first().map_or(0.0, |iv| 0.5 * (iv.hi - iv.lo));
            if span > 16.0 * rmax {
                OneDimMode::Unbounded
            } else {
                OneDimMode::Bounded
            }
        }
        m => m,
    };

    let mut stats = OneDimStats::default();
    let kept: Vec<(usize, u8)> = match mode {
        OneDimMode::Unbounded => {
            stats.mode = "unbounded".into();
            let groups = anchor_groups(&usable, &mut stats);
            let mut pool: Vec<Iv> = groups;
            stats.candidates = pool.len();
            sweep_colour(&mut pool, &mut stats)
        }
        _ => {
            stats.mode = "bounded".into();
            let selected = greedy_half_sup(&usable);
            stats.candidates = selected.len();
            match incremental_colour(&selected, &mut stats) {
                Some(k) => k,
                None => {
                    stats.fallback = true;
                    let mut pool = selected.clone();
                    sweep_colour(&mut pool, &mut stats)
                }
            }
        }
    };

    let mut members: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    let mut assignment = vec![None; family.len()];
    for &(ball, tag) in &kept {
        members[tag as usize].push(ball);
    }
    for m in members.iter_mut() {
        m.sort_by(|&a, &b| ivs[a].lo.total_cmp(&ivs[b].lo));
    }
    let members: Vec<Vec<usize>> = members.into_iter().filter(|m| !m.is_empty()).collect();
    for (k, m) in members.iter().enumerate() {
        for &b in m {
            assignment[b] = Some(k);
        }
    }
    let partition = DisjointPartition {
        families: members.iter().map(|m| family.subfamily(m)).collect(),
        assignment,
        bound: Some(FamilyBound { value: 2, formula: "two families on the line".into(), certified: true }),
    };
    Ok(OneDimCover { partition, stats })
}

/// Greedy selection: intervals by radius descending, kept when their center
/// is not yet covered. Coverage of `x` is read off the selected intervals with
/// the nearest centers on each side of `x`.
fn greedy_half_sup(usable: &[Iv]) -> Vec<Iv> {
    let mut by_center: BTreeMap<OrderedFloat<f64>, (f64, f64)> = BTreeMap::new();
    let mut out = Vec::new();
    for iv in usable {
        let key = OrderedFloat(iv.c);
        let left = by_center.range(..=key).next_back().map(|(_, v)| *v);
        let right = by_center.range(key..).next().map(|(_, v)| *v);
        let covered = [left, right].into_iter().flatten().any(|(lo, hi)| lo <= iv.c && iv.c <= hi);
        if covered {
            continue;
        }
        by_center.insert(key, (iv.lo, iv.hi));
        out.push(*iv);
    }
    out
}

/// Colours the greedy selection in selection order. Returns `None` when an
/// interval would meet both tags inside one chain, which needs a point in
/// three selected intervals and only happens through rounding.
fn incremental_colour(selected: &[Iv], stats: &mut OneDimStats) -> Option<Vec<(usize, u8)>> {
    let mut by_center: BTreeMap<OrderedFloat<f64>, usize> = BTreeMap::new();
    let mut dsu = TaggedChains::new();
    for (k, iv) in selected.iter().enumerate() {
        let mut nbrs: Vec<usize> = Vec::new();
        for p in [iv.lo, iv.hi] {
            let key = OrderedFloat(p);
            let cands = by_center.range(..=key).next_back().into_iter().chain(by_center.range(key..).next());
            for (_, &j) in cands {
                let o = &selected[j];
                if o.lo <= iv.hi && iv.lo <= o.hi && !nbrs.contains(&j) {
                    nbrs.push(j);
                }
            }
        }
        // chains touched by the new interval and the tag each one shows it.
        let mut touched: Vec<(usize, u8, usize)> = Vec::new();
        for &j in &nbrs {
            let t = dsu.tag(j);
            let (root, _) = dsu.find(j);
            match touched.iter().find(|e| e.0 == root) {
                Some(e) if e.1 != t => return None,
                Some(_) => {}
                None => touched.push((root, t, dsu.size[root])),
            }
        }
        let cost = |t: u8| touched.iter().filter(|e| e.1 != t).map(|e| e.2).sum::<usize>();
        let t = if cost(0) <= cost(1) { 0 } else { 1 };
        for e in &touched {
            if e.1 != t {
                dsu.flip(e.0);
                stats.exchanges += 1;
            }
        }
        let node = dsu.add(1 - t);
        debug_assert_eq!(node, k);
        for e in &touched {
            dsu.union(node, e.0);
        }
        by_center.insert(OrderedFloat(iv.c), k);
    }
    let tags: Vec<(usize, u8)> = (0..selected.len()).map(|k| (selected[k].ball, dsu.tag(k))).collect();
    // the ordered-map neighbour search relies on center exclusion, which
    // rounding can break; confirm disjointness before trusting the colouring.
    let mut per: [Vec<(f64, f64)>; 2] = [Vec::new(), Vec::new()];
    for (k, &(_, t)) in tags.iter().enumerate() {
        per[t as usize].push((selected[k].lo, selected[k].hi));
    }
    for fam in per.iter_mut() {
        fam.sort_by(|a, b| a.0.total_cmp(&b.0));
        if fam.windows(2).any(|w| w[1].0 <= w[0].1) {
            return None;
        }
    }
    Some(tags)
}

fn sweep_colour(pool: &mut [Iv], stats: &mut OneDimStats) -> Vec<(usize, u8)> {
    pool.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(b.hi.total_cmp(&a.hi)).then(a.ball.cmp(&b.ball)));
    let mut st = ChainState::new();
    for iv in pool.iter() {
        st.insert(iv.lo, iv.hi, iv.ball);
    }
    stats.removals += st.removals();
    st.kept()
}

/// Anchor decomposition followed by the per-anchor reduction.
fn anchor_groups(usable: &[Iv], stats: &mut OneDimStats) -> Vec<Iv> {
    // anchors: disjoint, radius descending. Every other interval meets an
    // anchor at least as large, found through the anchor map keyed by `lo`.
    let mut anchors: BTreeMap<OrderedFloat<f64>, usize> = BTreeMap::new();
    let mut anchor_list: Vec<usize> = Vec::new();
    let mut owner = vec![usize::MAX; usable.len()];
    for (k, iv) in usable.iter().enumerate() {
        let hit = anchors
            .range(..=OrderedFloat(iv.hi))
            .next_back()
            .map(|(_, &a)| a)
            .filter(|&a| usable[a].hi >= iv.lo);
        match hit {
            Some(a) if (iv.hi - iv.lo) < 4.0 / 3.0 * (usable[a].hi - usable[a].lo) => owner[k] = a,
            _ => {
                anchors.insert(OrderedFloat(iv.lo), k);
                anchor_list.push(k);
                owner[k] = k;
            }
        }
    }
    stats.anchors = anchor_list.len();

    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); usable.len()];
    for k in 0..usable.len() {
        groups[owner[k]].push(k);
    }
    let mut out = Vec::new();
    for &a in &anchor_list {
        // group members are already in radius-descending order.
        let members: Vec<Iv> = groups[a].iter().map(|&k| usable[k]).collect();
        let mut picked = vec![usable[a]];
        let mut rest: Vec<Iv> = members.into_iter().filter(|iv| iv.ball != usable[a].ball).collect();
        loop {
            rest.retain(|iv| !picked.iter().any(|p| p.lo <= iv.c && iv.c <= p.hi));
            match rest.first() {
                Some(&iv) => picked.push(iv),
                None => break,
            }
        }
        out.extend(picked);
    }
    out
}
