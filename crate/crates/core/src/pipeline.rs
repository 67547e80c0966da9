//! Full construction: grow the core, orient it by DFS, extend, and check the
//! result against the bound.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundParameters, BoundReport, Epsilon};
use crate::error::{Error, Result};
use crate::extension::{self, ExtensionTrace};
use crate::graph::Graph;
use crate::growth::{self, GrowthTrace};
use crate::oracle;
use crate::orientation::{robbins_orient, Orientation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub girth: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub grow_ms: f64,
    pub orient_core_ms: f64,
    pub extend_ms: f64,
    pub verify_ms: f64,
}

/// Outcome of [`run`]. `orientation` is complete and strong.
#[derive(Debug, Clone)]
pub struct PipelineResult<'g> {
    pub summary: GraphSummary,
    pub bound: BoundReport,
    pub growth: GrowthTrace,
    pub extension: ExtensionTrace,
    pub orientation: Orientation<'g>,
    pub timings: PhaseTimings,
}

impl PipelineResult<'_> {
    pub fn achieved(&self) -> usize {
        self.extension.full_diameter
    }

    /// All checks that a run must satisfy.
    pub fn invariants_hold(&self) -> bool {
        self.growth.all_pass()
            && self.extension.within_allowance
            && (self.achieved() as i128) <= self.bound.total_floor()
            && self.bound.sandwich_holds()
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Runs the construction on a connected bridgeless graph.
pub fn run(g: &Graph, epsilon: Epsilon) -> Result<PipelineResult<'_>> {
    g.require_bridgeless_connected()?;
    let girth = g
        .girth()
        .ok_or_else(|| Error::Precondition("graph is acyclic".into()))?;
    let summary = GraphSummary {
        n: g.n(),
        m: g.m(),
        delta: g.min_degree(),
        girth,
    };
    let params = BoundParameters::new(summary.n, summary.delta, girth, epsilon)
        .map_err(|e| Error::Precondition(e.to_string()))?;
    let mut bound = bounds::theorem_bound(&params)?;

    let t = Instant::now();
    let grown = growth::grow(g, epsilon)?;
    let grow_ms = ms(t);

    let t = Instant::now();
    let mut core_orientation = Orientation::new(g);
    if grown.core.size() > 0 {
        let (local, map) = grown.core.to_graph(g);
        let lo = robbins_orient(&local)?;
        for (t, h) in lo.arcs() {
            core_orientation.set_arc(map[t], map[h])?;
        }
    }
    let orient_core_ms = ms(t);

    let t = Instant::now();
    let ext = extension::extend(g, &grown.core, &core_orientation)?;
    let extend_ms = ms(t);

    let t = Instant::now();
    let check = oracle::cross_check(&ext.orientation)?;
    if !check.strong || check.diameter != Some(ext.trace.full_diameter) {
        return Err(Error::CertifiedFailure("independent recomputation disagrees".into()));
    }
    let verify_ms = ms(t);

    bound.achieved_diameter = Some(ext.trace.full_diameter);
    Ok(PipelineResult {
        summary,
        bound,
        growth: grown.trace,
        extension: ext.trace,
        orientation: ext.orientation,
        timings: PhaseTimings {
            grow_ms,
            orient_core_ms,
            extend_ms,
            verify_ms,
        },
    })
}
