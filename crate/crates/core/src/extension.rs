//! Extension of a strong orientation of a core subgraph `H` to all of `G`.
//!
//! Vertices are absorbed in rounds. A round fixes the current oriented
//! region `W` and handles every vertex `v` adjacent to `W`: with `x` the
//! smallest-id neighbour of `v` in `W`, take a shortest path `Q` from `v` back
//! to the region in `G − vx` and orient the ear `x, v, …, v'` as a directed
//! path one way or the other. Each ear joins two vertices of a strongly
//! connected region, so the region stays strong. Vertices are picked by
//! shortest `Q` first. Edges left over at the end join two oriented vertices
//! and are oriented from the smaller to the larger id.
//!
//! All distances `in(u) = ρ(u → H)` and `out(u) = ρ(H → u)` are measured
//! against the original core, so the diameter grows by at most
//! `max in + max out`.

use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, Subgraph};
use crate::orientation::Orientation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionStep {
    pub round: usize,
    pub vertex: usize,
    pub anchor: usize,
    /// `x, v, …, v'` in the order of the undirected ear.
    pub ear: Vec<usize>,
    /// `true`: `x → v → … → v'`; `false`: the reverse.
    pub forward: bool,
    /// Integer `j` with `in(v') ≤ i − j`, `out(v') ≤ i + j` of least `|j|`
    /// (ties to `j ≥ 0`), where `i = |Q|`; `None` when no such `j` exists
    /// or `v'` lies in the original core.
    pub balance: Option<i64>,
    /// Largest `in + out` over all oriented vertices after this step.
    pub round_trip: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionTrace {
    /// `max_v ρ_G(v, H)`.
    pub s: usize,
    pub core_diameter: usize,
    pub full_diameter: usize,
    pub increase: i64,
    /// `4·C(s+1, 2)`.
    pub allowance: u128,
    pub within_allowance: bool,
    pub within_4s: bool,
    pub max_in: usize,
    pub max_out: usize,
    pub max_round_trip: usize,
    pub rounds: usize,
    pub chords: usize,
    /// Arcs of the core orientation, so the run can be replayed.
    pub core_arcs: Vec<(usize, usize)>,
    pub steps: Vec<ExtensionStep>,
}

#[derive(Debug, Clone)]
pub struct ExtensionOutcome<'g> {
    pub orientation: Orientation<'g>,
    pub trace: ExtensionTrace,
}

/// Directed eccentricities restricted to arcs already assigned, from every
/// vertex of `vs`; `None` if some vertex of `vs` is unreachable.
fn region_diameter(o: &Orientation<'_>, vs: &[usize]) -> Option<usize> {
    let mut best = 0;
    for &a in vs {
        let d = o.assigned_distances(&[a], false);
        for &b in vs {
            best = best.max(d[b]?);
        }
    }
    Some(best)
}

fn smallest_abs_in(lo: i64, hi: i64) -> Option<i64> {
    if lo > hi {
        None
    } else if lo <= 0 && 0 <= hi {
        Some(0)
    } else if lo > 0 {
        Some(lo)
    } else {
        Some(hi)
    }
}

/// Extends `core_orientation`, which must orient exactly the edges of `core`
/// and be strong on it, to a strong orientation of `g`.
pub fn extend<'g>(
    g: &'g Graph,
    core: &Subgraph,
    core_orientation: &Orientation<'g>,
) -> Result<ExtensionOutcome<'g>> {
    g.require_bridgeless_connected()?;
    if !std::ptr::eq(core_orientation.graph(), g) {
        return Err(Error::InvalidArgument("core orientation belongs to another graph".into()));
    }
    let n = g.n();
    let core_vs = core.vertex_list();
    if core_vs.is_empty() {
        return Err(Error::Precondition("core is empty".into()));
    }
    if let Some(id) = (0..g.m()).find(|&id| core_orientation.direction(id).is_some() != core.edge_set().contains(id)) {
        return Err(Error::InvalidArgument(format!(
            "core orientation and core disagree on edge {}",
            g.edge(id)
        )));
    }
    if core_vs.len() > 1 && !core.is_bridgeless_connected(g) {
        return Err(Error::Precondition("core is not bridgeless and connected".into()));
    }
    let core_diameter = region_diameter(core_orientation, &core_vs)
        .ok_or_else(|| Error::Precondition("core orientation is not strong on the core".into()))?;
    let s = core
        .distances_to(g)
        .iter()
        .map(|d| d.expect("connected"))
        .max()
        .unwrap_or(0);

    let mut o = core_orientation.clone();
    let mut region = core.vertex_mask().to_vec();
    let mut to_core = o.assigned_distances(&core_vs, true);
    let mut from_core = o.assigned_distances(&core_vs, false);
    let mut steps = Vec::new();
    let mut rounds = 0;

    while region.iter().any(|&r| !r) {
        rounds += 1;
        let frontier: Vec<(usize, usize)> = (0..n)
            .filter(|&v| !region[v])
            .filter_map(|v| {
                g.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| region[w])
                    .min()
                    .map(|x| (v, x))
            })
            .collect();
        let mut pending = frontier;
        while !pending.is_empty() {
            pending.retain(|&(v, _)| !region[v]);
            // Shortest escape first, then smallest id.
            let mut best: Option<(usize, usize, Vec<usize>)> = None;
            for &(v, x) in &pending {
                let skip = EdgeSet::from_ids(g, [g.edge_id(v, x).unwrap()]);
                let mut src = vec![false; n];
                src[v] = true;
                let q = g.nearest_path(&src, &region, Some(&skip), None).ok_or(Error::Bridge(g.edge(
                    g.edge_id(v, x).unwrap(),
                )))?;
                if best.as_ref().is_none_or(|b| q.len() < b.2.len()) {
                    best = Some((v, x, q));
                }
            }
            let Some((v, x, q)) = best else { break };
            let end = *q.last().unwrap();
            let interior = &q[..q.len() - 1];
            let k = interior.len();
            let (ix, ox) = (to_core[x].unwrap(), from_core[x].unwrap());
            let (iv, ov) = (to_core[end].unwrap(), from_core[end].unwrap());
            // Forward: out(a_t) = ox + t, in(a_t) = (k + 1 − t) + iv.
            let fwd_trip = ox + iv + k + 1;
            let fwd_peak = (ox + k).max(iv + k);
            // Backward: in(a_t) = ix + t, out(a_t) = ov + (k + 1 − t).
            let bwd_trip = ix + ov + k + 1;
            let bwd_peak = (ix + k).max(ov + k);
            let forward = (fwd_trip, fwd_peak) <= (bwd_trip, bwd_peak);

            let mut ear = vec![x];
            ear.extend_from_slice(&q);
            for w in ear.windows(2) {
                if forward {
                    o.set_arc(w[0], w[1])?;
                } else {
                    o.set_arc(w[1], w[0])?;
                }
            }
            for &a in interior {
                region[a] = true;
            }
            to_core = o.assigned_distances(&core_vs, true);
            from_core = o.assigned_distances(&core_vs, false);
            let i = q.len() as i64 - 1;
            let balance = if core.contains(end) {
                None
            } else {
                smallest_abs_in(iv as i64 - i, i - ov as i64)
            };
            let round_trip = (0..n)
                .filter(|&u| region[u])
                .map(|u| match (to_core[u], from_core[u]) {
                    (Some(a), Some(b)) => Ok(a + b),
                    _ => Err(Error::CertifiedFailure(format!(
                        "absorbed vertex {u} lost contact with the core"
                    ))),
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .max()
                .unwrap_or(0);
            steps.push(ExtensionStep {
                round: rounds,
                vertex: v,
                anchor: x,
                ear,
                forward,
                balance,
                round_trip,
            });
        }
    }

    let mut chords = 0;
    for id in 0..g.m() {
        if o.direction(id).is_none() {
            let e = g.edge(id);
            o.set_arc(e.u, e.v)?;
            chords += 1;
        }
    }

    if let Some(id) = (0..g.m()).find(|&id| core.edge_set().contains(id) && o.direction(id) != core_orientation.direction(id)) {
        return Err(Error::CertifiedFailure(format!("core arc on {} changed", g.edge(id))));
    }
    let full_diameter = o
        .directed_diameter()?
        .ok_or_else(|| Error::CertifiedFailure("extended orientation is not strong".into()))?;
    to_core = o.assigned_distances(&core_vs, true);
    from_core = o.assigned_distances(&core_vs, false);
    let max_in = to_core.iter().map(|d| d.unwrap()).max().unwrap_or(0);
    let max_out = from_core.iter().map(|d| d.unwrap()).max().unwrap_or(0);
    let max_round_trip = (0..n).map(|u| to_core[u].unwrap() + from_core[u].unwrap()).max().unwrap_or(0);
    let increase = full_diameter as i64 - core_diameter as i64;
    let allowance = bounds::extension_allowance(s);
    Ok(ExtensionOutcome {
        orientation: o,
        trace: ExtensionTrace {
            s,
            core_diameter,
            full_diameter,
            increase,
            allowance,
            within_allowance: increase <= 0 || (increase as u128) <= allowance,
            within_4s: increase <= 4 * s as i64,
            max_in,
            max_out,
            max_round_trip,
            rounds,
            chords,
            core_arcs: core_orientation.arcs(),
            steps,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, petersen};
    use crate::orientation::robbins_orient;

    fn core_from_cycle<'g>(g: &'g Graph, cyc: &[usize]) -> (Subgraph, Orientation<'g>) {
        let mut walk = cyc.to_vec();
        walk.push(cyc[0]);
        let mut h = Subgraph::empty(g);
        h.add_walk(g, &walk);
        let o = Orientation::from_arcs(g, walk.windows(2).map(|w| (w[0], w[1]))).unwrap();
        (h, o)
    }

    #[test]
    fn whole_graph_core_is_identity() {
        let g = petersen();
        let core = Subgraph::whole(&g);
        let o = robbins_orient(&g).unwrap();
        let out = extend(&g, &core, &o).unwrap();
        assert_eq!(out.orientation, o);
        assert!(out.trace.steps.is_empty());
        assert_eq!(out.trace.s, 0);
        assert_eq!(out.trace.increase, 0);
    }

    #[test]
    fn k4_from_triangle() {
        let g = complete(4).unwrap();
        let (h, o) = core_from_cycle(&g, &[0, 1, 2]);
        let out = extend(&g, &h, &o).unwrap();
        assert!(out.orientation.is_strong().unwrap());
        assert_eq!(out.trace.s, 1);
        assert!(out.trace.increase <= 4);
        // The single absorbed vertex uses the base step x → v → y.
        assert_eq!(out.trace.steps.len(), 1);
        assert_eq!(out.trace.steps[0].ear.len(), 3);
        assert!(out.trace.steps[0].round_trip <= 2);
    }

    #[test]
    fn petersen_from_outer_cycle() {
        let g = petersen();
        let (h, o) = core_from_cycle(&g, &[0, 1, 2, 3, 4]);
        let out = extend(&g, &h, &o).unwrap();
        assert!(out.orientation.is_strong().unwrap());
        assert_eq!(out.trace.s, 1);
        assert!(out.trace.within_allowance);
        assert!(out.trace.increase <= 4);
        for id in h.edge_set().ids() {
            assert_eq!(out.orientation.direction(id), o.direction(id));
        }
    }

    #[test]
    fn cycle_from_single_vertex() {
        for n in 3..=12 {
            let g = cycle(n).unwrap();
            let h = Subgraph::single(&g, 0);
            let o = Orientation::new(&g);
            let out = extend(&g, &h, &o).unwrap();
            assert_eq!(out.trace.full_diameter, n - 1);
            assert!(out.trace.within_allowance);
        }
    }

    #[test]
    fn balance_rule() {
        assert_eq!(smallest_abs_in(-2, 3), Some(0));
        assert_eq!(smallest_abs_in(1, 3), Some(1));
        assert_eq!(smallest_abs_in(-3, -1), Some(-1));
        assert_eq!(smallest_abs_in(2, 1), None);
    }

    #[test]
    fn rejects_bad_core() {
        let g = cycle(5).unwrap();
        let (h, _) = core_from_cycle(&g, &[0, 1, 2, 3, 4]);
        // Not strong: 0→1, the rest backwards.
        let arcs = [(0, 1), (2, 1), (3, 2), (4, 3), (0, 4)];
        let o = Orientation::from_arcs(&g, arcs).unwrap();
        assert!(matches!(extend(&g, &h, &o), Err(Error::Precondition(_))));
        // Orientation with an arc outside the core.
        let h0 = Subgraph::single(&g, 0);
        let o1 = Orientation::from_arcs(&g, [(0, 1)]).unwrap();
        assert!(matches!(extend(&g, &h0, &o1), Err(Error::InvalidArgument(_))));
    }
}
