//! Exact optimum oriented diameter by exhaustive search, plus independent
//! checks used to validate the constructive pipeline.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, Rational};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, Path};
use crate::orientation::{robbins_orient, Orientation};

/// Default edge budget for [`exact_oriented_diameter`].
pub const DEFAULT_BUDGET: usize = 24;

/// Hard ceiling: the search stores vertex sets in a `u64`.
pub const MAX_BUDGET: usize = 40;

/// Result of the exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub optimum: usize,
    /// `(tail, head)` arcs of one optimal orientation, in edge-id order.
    pub witness: Vec<(usize, usize)>,
    /// Complete orientations whose diameter was evaluated.
    pub orientations_examined: u64,
    /// Partial assignments cut by the lower bound.
    pub pruned: u64,
}

/// Search knobs. `jobs = 1` runs sequentially; larger values split the
/// search tree across the rayon pool. Optimum and witness do not depend on
/// `jobs`; the two counters may.
#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    pub budget: usize,
    pub jobs: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

struct Search<'a> {
    n: usize,
    full: u64,
    /// Edge endpoints in search order.
    order: &'a [(usize, usize)],
    out: Vec<u64>,
    /// Arcs usable by the lower bound: assigned arcs plus both directions of
    /// every unassigned edge.
    relaxed: Vec<u64>,
    dir: Vec<bool>,
    best: usize,
    best_dir: Option<Vec<bool>>,
    shared: &'a AtomicUsize,
    examined: u64,
    pruned: u64,
}

/// True when some eccentricity in `adj` is at least `limit` (or infinite).
fn diameter_at_least(adj: &[u64], n: usize, full: u64, limit: usize) -> bool {
    for s in 0..n {
        let mut reached = 1u64 << s;
        let mut frontier = reached;
        let mut steps = 0;
        while reached != full {
            if steps + 1 >= limit {
                return true;
            }
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v];
            }
            next &= !reached;
            if next == 0 {
                return true;
            }
            reached |= next;
            frontier = next;
            steps += 1;
        }
    }
    false
}

fn exact_diameter(adj: &[u64], n: usize, full: u64) -> Option<usize> {
    let mut best = 0;
    for s in 0..n {
        let mut reached = 1u64 << s;
        let mut frontier = reached;
        let mut steps = 0;
        while reached != full {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v];
            }
            next &= !reached;
            if next == 0 {
                return None;
            }
            reached |= next;
            frontier = next;
            steps += 1;
        }
        best = best.max(steps);
    }
    Some(best)
}

impl Search<'_> {
    fn assign(&mut self, k: usize, forward: bool) {
        let (a, b) = self.order[k];
        let (t, h) = if forward { (a, b) } else { (b, a) };
        self.out[t] |= 1 << h;
        self.relaxed[h] &= !(1 << t);
        self.dir[k] = forward;
    }

    fn unassign(&mut self, k: usize, forward: bool) {
        let (a, b) = self.order[k];
        let (t, h) = if forward { (a, b) } else { (b, a) };
        self.out[t] &= !(1 << h);
        self.relaxed[h] |= 1 << t;
    }

    fn limit(&self) -> usize {
        // Within a task prune at >= own best; across tasks prune only when
        // strictly worse than the shared best so tie witnesses stay stable.
        self.best.min(self.shared.load(Ordering::Relaxed).saturating_add(1))
    }

    fn run(&mut self, k: usize) {
        if k == self.order.len() {
            self.examined += 1;
            if let Some(d) = exact_diameter(&self.out, self.n, self.full) {
                if d < self.best {
                    self.best = d;
                    self.best_dir = Some(self.dir.clone());
                    self.shared.fetch_min(d, Ordering::Relaxed);
                }
            }
            return;
        }
        for forward in [true, false] {
            self.assign(k, forward);
            if diameter_at_least(&self.relaxed, self.n, self.full, self.limit()) {
                self.pruned += 1;
            } else {
                self.run(k + 1);
            }
            self.unassign(k, forward);
        }
    }
}

/// Minimum directed diameter over all strong orientations of `g`.
///
/// Edges are branched in BFS order from vertex 0 with the first one fixed
/// (reversing every arc preserves the diameter). A node is cut when the
/// diameter of the relaxation that keeps unassigned edges bidirectional
/// already reaches the best value found; the search starts from the DFS
/// strong orientation as incumbent.
pub fn exact_oriented_diameter(g: &Graph, opts: OracleOptions) -> Result<OracleResult> {
    let budget = opts.budget.min(MAX_BUDGET);
    if g.m() > budget {
        return Err(Error::BudgetExceeded {
            edges: g.m(),
            budget,
        });
    }
    g.require_bridgeless_connected().map_err(|e| Error::Infeasible(format!("no strong orientation exists: {e}")))?;
    let n = g.n();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    let incumbent = robbins_orient(g)?;
    let inc_diam = incumbent
        .directed_diameter()?
        .ok_or_else(|| Error::CertifiedFailure("DFS orientation is not strong".into()))?;

    // Edge order: incident edges of vertices in BFS order.
    let dist = g.distances_from(0);
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by_key(|&v| (dist[v], v));
    let mut seen = vec![false; g.m()];
    let mut ids = Vec::with_capacity(g.m());
    for &v in &verts {
        for &id in g.incident_edges(v) {
            if !seen[id] {
                seen[id] = true;
                ids.push(id);
            }
        }
    }
    let order: Vec<(usize, usize)> = ids.iter().map(|&id| (g.edge(id).u, g.edge(id).v)).collect();

    let mut relaxed = vec![0u64; n];
    for &(a, b) in &order {
        relaxed[a] |= 1 << b;
        relaxed[b] |= 1 << a;
    }
    let shared = AtomicUsize::new(inc_diam);
    let fresh = || Search {
        n,
        full,
        order: &order,
        out: vec![0; n],
        relaxed: relaxed.clone(),
        dir: vec![false; order.len()],
        best: inc_diam,
        best_dir: None,
        shared: &shared,
        examined: 0,
        pruned: 0,
    };

    // Prefixes: edge 0 fixed forward, then `split` further edges enumerated.
    let split = if opts.jobs > 1 { order.len().saturating_sub(1).min(6) } else { 0 };
    let prefixes: Vec<u32> = (0..1u32 << split).collect();
    let run_prefix = |mask: u32| -> (Option<(usize, Vec<bool>)>, u64, u64) {
        let mut s = fresh();
        s.assign(0, true);
        let mut ok = true;
        for i in 0..split {
            let fw = mask >> (split - 1 - i) & 1 == 0;
            s.assign(i + 1, fw);
            if diameter_at_least(&s.relaxed, n, full, s.limit()) {
                s.pruned += 1;
                ok = false;
                break;
            }
        }
        if ok {
            s.run(split + 1);
        }
        let found = s.best_dir.take().map(|d| (s.best, d));
        (found, s.examined, s.pruned)
    };
    let results: Vec<_> = if split > 0 {
        prefixes.par_iter().map(|&m| run_prefix(m)).collect()
    } else {
        vec![run_prefix(0)]
    };

    let mut examined = 0;
    let mut pruned = 0;
    let mut best: Option<(usize, Vec<bool>)> = None;
    for (found, e, p) in results {
        examined += e;
        pruned += p;
        if let Some((d, dir)) = found {
            if best.as_ref().is_none_or(|(b, _)| d < *b) {
                best = Some((d, dir));
            }
        }
    }
    let (optimum, witness) = match best {
        Some((d, dir)) => {
            let mut arcs = vec![(0, 0); g.m()];
            for (k, &id) in ids.iter().enumerate() {
                let (a, b) = order[k];
                arcs[id] = if dir[k] { (a, b) } else { (b, a) };
            }
            (d, arcs)
        }
        None => (inc_diam, incumbent.arcs()),
    };
    Ok(OracleResult {
        optimum,
        witness,
        orientations_examined: examined,
        pruned,
    })
}

/// Outcome of an independent recomputation of strongness and diameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub strong: bool,
    pub diameter: Option<usize>,
}

/// Recomputes strong connectivity and diameter from the arc list alone with
/// its own BFS. Errors with a certified failure if the orientation's own
/// answer differs.
pub fn cross_check(o: &Orientation<'_>) -> Result<CrossCheck> {
    let g = o.graph();
    let n = g.n();
    let mut out = vec![Vec::new(); n];
    for id in 0..g.m() {
        let (t, h) = o
            .arc(id)
            .ok_or_else(|| Error::InvalidState(format!("edge {} is unoriented", g.edge(id))))?;
        out[t].push(h);
    }
    let mut diameter = Some(0);
    let mut dist = vec![usize::MAX; n];
    let mut q = VecDeque::new();
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        q.push_back(s);
        let mut reached = 1;
        let mut far = 0;
        while let Some(u) = q.pop_front() {
            for &w in &out[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    far = far.max(dist[w]);
                    reached += 1;
                    q.push_back(w);
                }
            }
        }
        if reached < n {
            diameter = None;
            break;
        }
        diameter = diameter.map(|d: usize| d.max(far));
    }
    let own = o.directed_diameter()?;
    if own != diameter {
        return Err(Error::CertifiedFailure(format!(
            "diameter disagreement: orientation reports {own:?}, recomputation gives {diameter:?}"
        )));
    }
    Ok(CrossCheck {
        strong: diameter.is_some(),
        diameter,
    })
}

/// Status of a ball-size sampling run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BallCheckStatus {
    Verified,
    Violated,
    /// Minimum degree at most 3: the lower bound is not claimed.
    HypothesisNotMet,
}

/// Sampled check that balls avoiding the edges of a geodesic are large:
/// for a shortest path `P` and `x ∉ V(P)`, the ball of radius
/// `⌊(g−1)/2⌋` around `x` in `G \ E(P)` has at least `h(δ, g)` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallCheckReport {
    pub status: BallCheckStatus,
    pub samples: usize,
    pub delta: usize,
    pub girth: usize,
    pub h_value: i128,
    pub min_ball: Option<usize>,
    /// `min_ball / h`, as an exact rational string.
    pub min_ratio: Option<String>,
    pub violations: usize,
}

/// Samples `samples` (path, vertex) pairs with a seeded generator.
pub fn verify_ball_bound(g: &Graph, samples: usize, seed: u64) -> Result<BallCheckReport> {
    g.require_bridgeless_connected()?;
    let delta = g.min_degree();
    let girth = g
        .girth()
        .ok_or_else(|| Error::Precondition("graph is acyclic".into()))?;
    let h_value = bounds::h(delta, girth);
    let mut report = BallCheckReport {
        status: BallCheckStatus::HypothesisNotMet,
        samples: 0,
        delta,
        girth,
        h_value,
        min_ball: None,
        min_ratio: None,
        violations: 0,
    };
    if delta <= 3 {
        return Ok(report);
    }
    let n = g.n();
    let radius = bounds::ball_radius(girth);
    let diam = g.diameter().expect("connected");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0usize;
    while report.samples < samples {
        attempts += 1;
        if attempts > 100 * samples.max(1) {
            return Err(Error::Infeasible(format!(
                "could only draw {} of {samples} samples",
                report.samples
            )));
        }
        let len = rng.gen_range(0..=diam);
        let start = rng.gen_range(0..n);
        let dist = g.distances_from(start);
        let at: Vec<usize> = (0..n).filter(|&v| dist[v] == Some(len)).collect();
        if at.is_empty() {
            continue;
        }
        let mut cur = at[rng.gen_range(0..at.len())];
        let mut verts = vec![cur];
        while cur != start {
            let d = dist[cur].unwrap();
            let preds: Vec<usize> = g
                .neighbors(cur)
                .iter()
                .copied()
                .filter(|&w| dist[w] == Some(d - 1))
                .collect();
            cur = preds[rng.gen_range(0..preds.len())];
            verts.push(cur);
        }
        verts.reverse();
        let path = Path::new(g, verts)?;
        // Geodesic hypothesis, checked rather than assumed.
        for (i, &p) in path.vertices().iter().enumerate() {
            let dp = g.distances_from(p);
            for (j, &q) in path.vertices().iter().enumerate() {
                if dp[q] != Some(i.abs_diff(j)) {
                    return Err(Error::CertifiedFailure("sampled path is not a geodesic".into()));
                }
            }
        }
        let on_path: Vec<bool> = {
            let mut m = vec![false; n];
            path.vertices().iter().for_each(|&v| m[v] = true);
            m
        };
        let off: Vec<usize> = (0..n).filter(|&v| !on_path[v]).collect();
        if off.is_empty() {
            continue;
        }
        let x = off[rng.gen_range(0..off.len())];
        let excluded: EdgeSet = path.edge_set(g);
        let size = g.ball(x, radius, &excluded).len();
        report.samples += 1;
        if (size as i128) < h_value {
            report.violations += 1;
        }
        if report.min_ball.is_none_or(|m| size < m) {
            report.min_ball = Some(size);
        }
    }
    if let Some(m) = report.min_ball {
        report.min_ratio = Some(bounds::fmt_rational(&Rational::new(m as i128, h_value)));
    }
    report.status = if report.violations == 0 {
        BallCheckStatus::Verified
    } else {
        BallCheckStatus::Violated
    };
    Ok(report)
}
