//! Growth of a small bridgeless core `H_0 ⊂ H_1 ⊂ … ⊂ H_k` with witness
//! sets `B_i` and disjoint-ball sets `F_i` such that
//!
//! 1. every vertex lies at distance `< L·g` from `H_k`,
//! 2. `|F_i| ≥ h(δ, g)·|B_i|`,
//! 3. `|H_i| ≤ (2g + ε)·|B_i|`.
//!
//! Each iteration picks a vertex at distance exactly `L·g` from `H_i`, takes a
//! shortest path `P` to it and covers the edges of `P` one by one with
//! shortest paths in `G \ E(P)`. The interior vertices of those covering
//! paths form the ordered list `cov`; a vertex's 1-based position is its
//! label. Whenever a label overstates a distance (to `H_i`, or between two
//! `cov` vertices) the detour is replaced by a shortcut, which strictly
//! shrinks `cov`.
//!
//! Balls are taken with radius `⌊(g−1)/2⌋` (see [`bounds::ball_radius`]).

use serde::{Deserialize, Serialize};

use crate::bounds::{self, Epsilon, Rational};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, Subgraph};

/// How `B_{i+1} \ B_i` was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessCase {
    /// `B_0 = {v_0}`.
    Initial,
    /// `cov` vertices whose label is a multiple of `g`; balls avoid `E(P)`.
    Labels,
    /// `p_g, p_2g, …, p_Lg`; balls in `G`.
    PathPoints,
}

/// One entry per `H_i`, `i = 0..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthIteration {
    pub index: usize,
    pub case: WitnessCase,
    /// The path `P` used to reach this state; empty for `H_0`.
    pub path: Vec<usize>,
    pub new_witnesses: Vec<usize>,
    pub h_vertices: Vec<usize>,
    pub h_edges: Vec<(usize, usize)>,
    pub h_order: usize,
    pub b_size: usize,
    pub f_size: usize,
    /// Vertices of the new balls that were already in `F_i`.
    pub f_overlap: usize,
    pub property2: bool,
    pub property3: bool,
    pub bridgeless: bool,
    pub cover_steps: usize,
    pub shortcuts_to_core: usize,
    pub shortcuts_between: usize,
    /// Radius `⌊g/2⌋ − 1` balls around the new witnesses induce trees.
    pub small_balls_acyclic: bool,
}

/// Full record of a [`grow`] run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthTrace {
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub girth: usize,
    #[serde(with = "bounds::rational_str")]
    pub epsilon: Rational,
    pub h_value: i128,
    pub l_value: usize,
    pub radius: usize,
    pub v0: usize,
    pub iterations: Vec<GrowthIteration>,
    pub k: usize,
    /// `max_v ρ(v, H_k)`.
    pub max_distance: usize,
    pub property1: bool,
}

impl GrowthTrace {
    /// Every recorded check passed.
    pub fn all_pass(&self) -> bool {
        self.property1
            && self
                .iterations
                .iter()
                .all(|it| it.property2 && it.property3 && it.bridgeless)
    }
}

#[derive(Debug, Clone)]
pub struct GrowthOutcome {
    pub core: Subgraph,
    pub witnesses: Vec<usize>,
    pub trace: GrowthTrace,
}

/// Everything derived from `(g, ε)` that the iterations share.
struct Params {
    girth: usize,
    h_value: i128,
    lg: usize,
    l_value: usize,
    radius: usize,
    epsilon: Rational,
}

impl Params {
    fn property3(&self, h_order: usize, b_size: usize) -> bool {
        let g = Rational::from_integer(self.girth as i128);
        Rational::from_integer(h_order as i128)
            <= (g * 2 + self.epsilon) * Rational::from_integer(b_size as i128)
    }

    fn property2(&self, f_size: usize, b_size: usize) -> bool {
        f_size as i128 >= self.h_value.saturating_mul(b_size as i128)
    }
}

fn mask_of(n: usize, vs: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    vs.iter().for_each(|&v| m[v] = true);
    m
}

/// Runs the growth. The input must be connected and bridgeless.
pub fn grow(g: &Graph, epsilon: Epsilon) -> Result<GrowthOutcome> {
    g.require_bridgeless_connected()?;
    let n = g.n();
    let delta = g.min_degree();
    let girth = g
        .girth()
        .ok_or_else(|| Error::Precondition("graph is acyclic".into()))?;
    let l_value = bounds::big_l(girth, epsilon)?;
    let p = Params {
        girth,
        h_value: bounds::h(delta, girth),
        lg: l_value
            .checked_mul(girth)
            .ok_or_else(|| Error::InvalidArgument("L·g overflows".into()))?,
        l_value,
        radius: bounds::ball_radius(girth),
        epsilon: epsilon.value(),
    };

    let max_deg = g.max_degree();
    let v0 = (0..n).find(|&v| g.degree(v) == max_deg).expect("non-empty graph");
    let mut core = Subgraph::single(g, v0);
    let mut witnesses = vec![v0];
    let mut f = vec![false; n];
    let nothing = EdgeSet::empty(g);
    for u in g.ball(v0, p.radius, &nothing) {
        f[u] = true;
    }
    let f_size = f.iter().filter(|&&x| x).count();
    let mut iterations = vec![GrowthIteration {
        index: 0,
        case: WitnessCase::Initial,
        path: Vec::new(),
        new_witnesses: vec![v0],
        h_vertices: vec![v0],
        h_edges: Vec::new(),
        h_order: 1,
        b_size: 1,
        f_size,
        f_overlap: 0,
        property2: p.property2(f_size, 1),
        property3: p.property3(1, 1),
        bridgeless: true,
        cover_steps: 0,
        shortcuts_to_core: 0,
        shortcuts_between: 0,
        small_balls_acyclic: small_balls_acyclic(g, &[v0], girth, &nothing),
    }];
    check_iteration(iterations.last().unwrap())?;

    loop {
        let dist = core.distances_to(g);
        let far = dist.iter().map(|d| d.expect("connected")).max().unwrap_or(0);
        if far < p.lg {
            let index = iterations.len() - 1;
            return Ok(GrowthOutcome {
                core,
                witnesses,
                trace: GrowthTrace {
                    n,
                    m: g.m(),
                    delta,
                    girth,
                    epsilon: p.epsilon,
                    h_value: p.h_value,
                    l_value,
                    radius: p.radius,
                    v0,
                    iterations,
                    k: index,
                    max_distance: far,
                    property1: true,
                },
            });
        }
        let target = (0..n).find(|&v| dist[v] == Some(p.lg)).expect("BFS layers are contiguous");
        let path = g
            .nearest_path(core.vertex_mask(), &mask_of(n, &[target]), None, None)
            .ok_or_else(|| Error::CertifiedFailure("no path to the far vertex".into()))?;
        debug_assert_eq!(path.len(), p.lg + 1);
        let it = iterate(g, &p, &core, &mut witnesses, &mut f, path, iterations.len())?;
        core = it.0;
        iterations.push(it.1);
        check_iteration(iterations.last().unwrap())?;
    }
}

fn check_iteration(it: &GrowthIteration) -> Result<()> {
    if it.property2 && it.property3 && it.bridgeless {
        Ok(())
    } else {
        Err(Error::CertifiedFailure(format!(
            "iteration {}: property2={} property3={} bridgeless={} (|H|={}, |B|={}, |F|={})",
            it.index, it.property2, it.property3, it.bridgeless, it.h_order, it.b_size, it.f_size
        )))
    }
}

/// Covering state for a single path.
struct Cover<'a> {
    g: &'a Graph,
    path: Vec<usize>,
    path_edges: EdgeSet,
    on_path: Vec<bool>,
    /// `H_i`, fixed during the iteration.
    base: Vec<bool>,
    /// `H_i'`.
    grown: Subgraph,
    cov: Vec<usize>,
    cover_steps: usize,
    to_core: usize,
    between: usize,
}

impl Cover<'_> {
    /// Largest `β` such that `e_1 … e_β` are non-bridges of `H_i' ∪ P`.
    fn covered_prefix(&self) -> usize {
        let mut mask = self.grown.edge_set().clone();
        for id in self.path_edges.ids() {
            mask.insert(id);
        }
        let bridges = EdgeSet::from_ids(self.g, self.g.bridge_ids(Some(&mask)));
        self.path
            .windows(2)
            .take_while(|w| !bridges.contains(self.g.edge_id(w[0], w[1]).unwrap()))
            .count()
    }

    fn add_prefix(&mut self, beta: usize) {
        let prefix = self.path[..=beta].to_vec();
        self.grown.add_walk(self.g, &prefix);
    }

    /// Shortest path in `G \ E(P)` from `H_i'` to `{p_j, …, p_Lg}`; its
    /// interior is appended to `cov`.
    fn cover_from(&mut self, j: usize) -> Result<()> {
        let n = self.g.n();
        let targets = mask_of(n, &self.path[j..]);
        let r = self
            .g
            .nearest_path(self.grown.vertex_mask(), &targets, Some(&self.path_edges), None)
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "edge {}-{} of the covering path cannot be covered",
                    self.path[j - 1],
                    self.path[j]
                ))
            })?;
        let interior = &r[1..r.len() - 1];
        if let Some(&bad) = interior.iter().find(|&&v| self.on_path[v] || self.grown.contains(v)) {
            return Err(Error::CertifiedFailure(format!(
                "covering path interior meets vertex {bad} of P or H'"
            )));
        }
        self.cov.extend_from_slice(interior);
        self.grown.add_walk(self.g, &r);
        self.cover_steps += 1;
        Ok(())
    }

    fn core_distances(&self) -> Vec<Option<usize>> {
        let src: Vec<usize> = (0..self.g.n()).filter(|&v| self.base[v]).collect();
        self.g.bfs_restricted(&src, Some(&self.path_edges), None, None)
    }

    /// Applies one shortcut if the labels are not stable. Returns whether
    /// anything changed.
    fn shortcut_once(&mut self) -> Result<bool> {
        let t = self.cov.len();
        if t == 0 {
            return Ok(false);
        }
        let to_core = self.core_distances();
        // Largest position whose distance to H_i is below its label.
        let viol = (0..t).rev().find_map(|i| {
            let d = to_core[self.cov[i]].expect("bridgeless host");
            (d < i + 1).then_some((i, d))
        });
        if let Some((i, s)) = viol {
            let q = self.cov[i];
            let s_path = self
                .g
                .nearest_path(&mask_of(self.g.n(), &[q]), &self.base, Some(&self.path_edges), None)
                .expect("distance is finite");
            debug_assert_eq!(s_path.len(), s + 1);
            for &r in &self.cov[..i] {
                self.grown.remove_vertex(self.g, r);
            }
            let interior: Vec<usize> = s_path[1..s_path.len() - 1].iter().rev().copied().collect();
            self.check_fresh(&interior, &self.cov[i..])?;
            self.grown.add_walk(self.g, &s_path);
            let mut next = interior;
            next.extend_from_slice(&self.cov[i..]);
            self.cov = next;
            self.to_core += 1;
            return Ok(true);
        }
        // Smallest first position, then largest second position.
        for a in 0..t {
            let d = self.g.bfs_restricted(&[self.cov[a]], Some(&self.path_edges), None, None);
            if let Some(b) = (a + 1..t).rev().find(|&b| d[self.cov[b]].expect("bridgeless host") < b - a) {
                let s_path = self
                    .g
                    .nearest_path(
                        &mask_of(self.g.n(), &[self.cov[a]]),
                        &mask_of(self.g.n(), &[self.cov[b]]),
                        Some(&self.path_edges),
                        None,
                    )
                    .expect("distance is finite");
                for &r in &self.cov[a + 1..b] {
                    self.grown.remove_vertex(self.g, r);
                }
                let interior = s_path[1..s_path.len() - 1].to_vec();
                let kept: Vec<usize> = self.cov[..=a].iter().chain(&self.cov[b..]).copied().collect();
                self.check_fresh(&interior, &kept)?;
                self.grown.add_walk(self.g, &s_path);
                let mut next = self.cov[..=a].to_vec();
                next.extend_from_slice(&interior);
                next.extend_from_slice(&self.cov[b..]);
                self.cov = next;
                self.between += 1;
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Shortcut interiors must be new `cov` vertices: off `P`, off `H_i` and
    /// not already listed.
    fn check_fresh(&self, interior: &[usize], kept: &[usize]) -> Result<()> {
        for &v in interior {
            if self.on_path[v] || self.base[v] || kept.contains(&v) {
                return Err(Error::CertifiedFailure(format!(
                    "shortcut passes through vertex {v}, which is on P, in H_i or already labeled"
                )));
            }
        }
        Ok(())
    }
}

fn iterate(
    g: &Graph,
    p: &Params,
    core: &Subgraph,
    witnesses: &mut Vec<usize>,
    f: &mut [bool],
    path: Vec<usize>,
    index: usize,
) -> Result<(Subgraph, GrowthIteration)> {
    let n = g.n();
    let path_edges = EdgeSet::from_ids(g, path.windows(2).map(|w| g.edge_id(w[0], w[1]).unwrap()));
    let mut c = Cover {
        g,
        on_path: mask_of(n, &path),
        path_edges,
        base: core.vertex_mask().to_vec(),
        grown: core.clone(),
        cov: Vec::new(),
        path,
        cover_steps: 0,
        to_core: 0,
        between: 0,
    };
    let guard = 1000 + 50 * n * (p.lg + 1);
    let mut rounds = 0;
    loop {
        rounds += 1;
        if rounds > guard {
            return Err(Error::CertifiedFailure(format!(
                "covering of path {:?} did not settle after {guard} rounds",
                c.path
            )));
        }
        while c.shortcut_once()? {
            rounds += 1;
            if rounds > guard {
                return Err(Error::CertifiedFailure("shortcut loop did not settle".into()));
            }
        }
        let beta = c.covered_prefix();
        c.add_prefix(beta);
        if beta == p.lg {
            break;
        }
        c.cover_from(beta + 1)?;
        let beta = c.covered_prefix();
        c.add_prefix(beta);
    }

    // Keep the 2-edge-connected piece containing p_0.
    let bridges = EdgeSet::from_ids(g, g.bridge_ids(Some(c.grown.edge_set())));
    let mut keep = c.grown.edge_set().clone();
    for id in bridges.ids() {
        keep.remove(id);
    }
    let mut inside = vec![false; n];
    inside[c.path[0]] = true;
    let mut stack = vec![c.path[0]];
    while let Some(u) = stack.pop() {
        for (&w, &id) in g.neighbors(u).iter().zip(g.incident_edges(u)) {
            if keep.contains(id) && !inside[w] {
                inside[w] = true;
                stack.push(w);
            }
        }
    }
    let mut next = Subgraph::empty(g);
    for v in (0..n).filter(|&v| inside[v]) {
        next.add_vertex(v);
    }
    for id in keep.ids() {
        let e = g.edge(id);
        if inside[e.u] && inside[e.v] {
            next.add_edge(g, id);
        }
    }
    if let Some(v) = (0..n).find(|&v| core.contains(v) && !next.contains(v)) {
        return Err(Error::CertifiedFailure(format!("vertex {v} of H_i dropped from H_(i+1)")));
    }
    if let Some(id) = c.path_edges.ids().find(|&id| !next.edge_set().contains(id)) {
        return Err(Error::CertifiedFailure(format!("path edge {} left uncovered", g.edge(id))));
    }
    let cov: Vec<usize> = c.cov.iter().copied().filter(|&v| next.contains(v)).collect();

    let t = cov.len();
    let (case, new_b, excluded) = if t / p.girth >= p.l_value {
        let chosen: Vec<usize> = (1..=t / p.girth).map(|c| cov[c * p.girth - 1]).collect();
        (WitnessCase::Labels, chosen, c.path_edges.clone())
    } else {
        let chosen = (1..=p.l_value).map(|k| c.path[k * p.girth]).collect();
        (WitnessCase::PathPoints, chosen, EdgeSet::empty(g))
    };

    let mut fresh = vec![false; n];
    let mut overlap = 0;
    for (a, &b) in new_b.iter().enumerate() {
        for u in g.ball(b, p.radius, &excluded) {
            if fresh[u] {
                return Err(Error::CertifiedFailure(format!(
                    "balls around witnesses {} and {b} intersect at {u}",
                    new_b[..a].iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
                )));
            }
            fresh[u] = true;
            if f[u] {
                overlap += 1;
            }
        }
    }
    for u in 0..n {
        f[u] |= fresh[u];
    }
    witnesses.extend_from_slice(&new_b);
    let f_size = f.iter().filter(|&&x| x).count();
    let b_size = witnesses.len();
    let h_order = next.order();
    let record = GrowthIteration {
        index,
        case,
        path: c.path.clone(),
        new_witnesses: new_b.clone(),
        h_vertices: next.vertex_list(),
        h_edges: next.edge_set().ids().map(|id| (g.edge(id).u, g.edge(id).v)).collect(),
        h_order,
        b_size,
        f_size,
        f_overlap: overlap,
        property2: p.property2(f_size, b_size),
        property3: p.property3(h_order, b_size),
        bridgeless: next.is_bridgeless_connected(g),
        cover_steps: c.cover_steps,
        shortcuts_to_core: c.to_core,
        shortcuts_between: c.between,
        small_balls_acyclic: small_balls_acyclic(g, &new_b, p.girth, &excluded),
    };
    Ok((next, record))
}

/// Balls of radius `⌊g/2⌋ − 1` induce trees in a graph of girth `g`.
fn small_balls_acyclic(g: &Graph, centers: &[usize], girth: usize, excluded: &EdgeSet) -> bool {
    let r = (girth / 2).saturating_sub(1);
    centers.iter().all(|&b| {
        let ball = g.ball(b, r, excluded);
        let inside = mask_of(g.n(), &ball);
        let edges = ball
            .iter()
            .map(|&u| {
                g.neighbors(u)
                    .iter()
                    .zip(g.incident_edges(u))
                    .filter(|&(&w, &id)| u < w && inside[w] && !excluded.contains(id))
                    .count()
            })
            .sum::<usize>();
        edges + 1 == ball.len()
    })
}

/// Independent recomputation of every property recorded in `trace`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthAudit {
    pub iterations: usize,
    pub property1: bool,
    pub property2: bool,
    pub property3: bool,
    pub bridgeless: bool,
    pub nested: bool,
    /// Recorded sizes agree with the recomputation.
    pub consistent: bool,
}

impl GrowthAudit {
    pub fn all_pass(&self) -> bool {
        self.property1 && self.property2 && self.property3 && self.bridgeless && self.nested && self.consistent
    }
}

/// Rebuilds every `H_i`, `B_i` and `F_i` from the trace alone and checks the
/// three properties, bridgelessness and nesting.
pub fn audit(g: &Graph, trace: &GrowthTrace) -> Result<GrowthAudit> {
    let n = g.n();
    let girth = g.girth().ok_or_else(|| Error::Precondition("graph is acyclic".into()))?;
    let delta = g.min_degree();
    let h_value = bounds::h(delta, girth);
    let eps = Epsilon::from_rational(trace.epsilon)?;
    let l_value = bounds::big_l(girth, eps)?;
    let radius = bounds::ball_radius(girth);
    let p = Params {
        girth,
        h_value,
        lg: l_value * girth,
        l_value,
        radius,
        epsilon: trace.epsilon,
    };
    let mut out = GrowthAudit {
        iterations: trace.iterations.len(),
        property1: false,
        property2: true,
        property3: true,
        bridgeless: true,
        nested: true,
        consistent: trace.girth == girth && trace.delta == delta && trace.h_value == h_value && trace.l_value == l_value,
    };
    let mut f = vec![false; n];
    let mut b_count = 0;
    let mut prev: Option<Subgraph> = None;
    for it in &trace.iterations {
        let mut h = Subgraph::empty(g);
        for &v in &it.h_vertices {
            if v >= n {
                return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
            }
            h.add_vertex(v);
        }
        for &(a, b) in &it.h_edges {
            let id = g
                .edge_id(a, b)
                .ok_or_else(|| Error::InvalidArgument(format!("{a}-{b} is not an edge")))?;
            h.add_edge(g, id);
        }
        out.bridgeless &= h.is_bridgeless_connected(g);
        if let Some(prev) = &prev {
            out.nested &= (0..n).all(|v| !prev.contains(v) || h.contains(v));
            out.nested &= prev.edge_set().ids().all(|id| h.edge_set().contains(id));
        }
        let excluded = match it.case {
            WitnessCase::Labels => {
                let ids = it
                    .path
                    .windows(2)
                    .map(|w| g.edge_id(w[0], w[1]).ok_or_else(|| Error::InvalidArgument("path is not a walk".into())))
                    .collect::<Result<Vec<_>>>()?;
                EdgeSet::from_ids(g, ids)
            }
            _ => EdgeSet::empty(g),
        };
        for &b in &it.new_witnesses {
            for u in g.ball(b, radius, &excluded) {
                f[u] = true;
            }
        }
        b_count += it.new_witnesses.len();
        let f_size = f.iter().filter(|&&x| x).count();
        out.property2 &= p.property2(f_size, b_count);
        out.property3 &= p.property3(h.order(), b_count);
        out.consistent &= f_size == it.f_size && b_count == it.b_size && h.order() == it.h_order;
        prev = Some(h);
    }
    if let Some(h) = &prev {
        let far = h.distances_to(g).iter().map(|d| d.unwrap_or(usize::MAX)).max().unwrap_or(0);
        out.property1 = far < p.lg;
        out.consistent &= far == trace.max_distance;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{circulant, complete, cycle, petersen, triangle_chain};

    fn eps(s: &str) -> Epsilon {
        s.parse().unwrap()
    }

    #[test]
    fn k4_needs_no_iteration() {
        let g = complete(4).unwrap();
        let out = grow(&g, eps("1/2")).unwrap();
        assert_eq!(out.trace.k, 0);
        assert_eq!(out.core.vertex_list(), vec![0]);
        assert_eq!(out.core.size(), 0);
        assert!(out.trace.all_pass());
    }

    #[test]
    fn c20_terminates_immediately() {
        let g = cycle(20).unwrap();
        let out = grow(&g, eps("1")).unwrap();
        assert_eq!(out.trace.k, 0);
    }

    #[test]
    fn triangle_chain_iterates() {
        let g = triangle_chain(12).unwrap();
        let out = grow(&g, eps("2")).unwrap();
        assert!(out.trace.k >= 2, "k = {}", out.trace.k);
        assert!(out.trace.all_pass());
        let a = audit(&g, &out.trace).unwrap();
        assert!(a.all_pass(), "{a:?}");
        // L = 1: each iteration adds at least one witness.
        for it in &out.trace.iterations[1..] {
            assert_ne!(it.case, WitnessCase::Initial);
            assert!(!it.new_witnesses.is_empty());
        }
    }

    #[test]
    fn path_distances_are_exact() {
        let g = triangle_chain(12).unwrap();
        let out = grow(&g, eps("2")).unwrap();
        let it = &out.trace.iterations[1];
        let h0 = Subgraph::single(&g, out.trace.v0);
        let d = h0.distances_to(&g);
        for (j, &p) in it.path.iter().enumerate() {
            assert_eq!(d[p], Some(j));
        }
    }

    #[test]
    fn circulant_property3() {
        let g = circulant(40, &[1, 2]).unwrap();
        let out = grow(&g, eps("2")).unwrap();
        let b = out.witnesses.len();
        assert!(out.core.order() <= 8 * b);
        assert!(audit(&g, &out.trace).unwrap().all_pass());
    }

    #[test]
    fn petersen_and_bridges() {
        let g = petersen();
        assert!(grow(&g, eps("1/3")).unwrap().trace.all_pass());
        let bowtie_with_tail = Graph::from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert!(matches!(grow(&bowtie_with_tail, eps("1")), Err(Error::Bridge(_))));
    }

    /// Cover state over `g` with `H_i = {0}`, a trivial path and a given
    /// labeled list; `H_i'` holds `0` plus the listed vertices.
    fn cover_with<'a>(g: &'a Graph, cov: &[usize]) -> Cover<'a> {
        let mut grown = Subgraph::single(g, 0);
        for &v in cov {
            grown.add_vertex(v);
        }
        Cover {
            g,
            path: vec![0],
            path_edges: EdgeSet::empty(g),
            on_path: mask_of(g.n(), &[0]),
            base: mask_of(g.n(), &[0]),
            grown,
            cov: cov.to_vec(),
            cover_steps: 0,
            to_core: 0,
            between: 0,
        }
    }

    #[test]
    fn shortcut_to_core() {
        // 0 - q1 - q2 - q3 with the chord 0-q3: q3 is at distance 1 < 3.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let mut c = cover_with(&g, &[1, 2, 3]);
        assert!(c.shortcut_once().unwrap());
        assert_eq!(c.cov, vec![3]);
        assert!(!c.grown.contains(1) && !c.grown.contains(2));
        assert_eq!(c.to_core, 1);
        assert!(!c.shortcut_once().unwrap());
    }

    #[test]
    fn shortcut_between_labels() {
        // q1 hangs off 0; q2..q6 sit at the end of a long arm with chord q2-q6.
        // Vertices: 0, x1..x4 = 1..4, q1 = 5, q2..q6 = 6..10.
        let mut e = vec![(0, 5), (0, 1), (1, 2), (2, 3), (3, 4), (4, 6)];
        e.extend([(6, 7), (7, 8), (8, 9), (9, 10), (6, 10)]);
        let g = Graph::from_edges(11, e).unwrap();
        let mut c = cover_with(&g, &[5, 6, 7, 8, 9, 10]);
        assert!(c.shortcut_once().unwrap());
        // q3, q4, q5 removed; q6 now carries label 3.
        assert_eq!(c.cov, vec![5, 6, 10]);
        assert_eq!(c.between, 1);
        assert!(!c.shortcut_once().unwrap());
        // Stable now: every label is a lower bound on the distances.
        let to_core = c.core_distances();
        for (i, &q) in c.cov.iter().enumerate() {
            assert!(to_core[q].unwrap() > i);
            let d = g.distances_from(q);
            for (j, &r) in c.cov.iter().enumerate() {
                assert!(d[r].unwrap() >= i.abs_diff(j));
            }
        }
    }

    #[test]
    fn stable_list_is_unchanged() {
        let g = cycle(6).unwrap();
        let mut c = cover_with(&g, &[1, 2]);
        assert!(!c.shortcut_once().unwrap());
        assert_eq!(c.cov, vec![1, 2]);
    }

    #[test]
    fn audit_detects_tampering() {
        let g = triangle_chain(8).unwrap();
        let mut out = grow(&g, eps("2")).unwrap();
        assert!(audit(&g, &out.trace).unwrap().all_pass());
        let last = out.trace.iterations.last_mut().unwrap();
        last.h_edges.pop();
        assert!(!audit(&g, &out.trace).unwrap().all_pass());
    }
}
