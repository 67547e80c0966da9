//! Orientations of a [`Graph`]: directed distances, strong connectivity and
//! the DFS-based strong orientation of a bridgeless graph.
//!
//! An orientation may be partial while it is being built. Diameter and
//! strong-connectivity queries require a complete orientation and return
//! [`Error::InvalidState`] otherwise; [`Orientation::assigned_distances`] is
//! the explicit way to measure the assigned part only.

use std::collections::VecDeque;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{Dist, Edge, Graph, Path};

/// Direction of a canonical edge `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `u → v`
    Forward,
    /// `v → u`
    Backward,
}

impl Direction {
    /// Direction that makes `tail → head` for the canonical edge of the pair.
    pub fn of(tail: usize, head: usize) -> Direction {
        if tail < head {
            Direction::Forward
        } else {
            Direction::Backward
        }
    }

    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    /// `(tail, head)` of `e` under this direction.
    pub fn arc(self, e: Edge) -> (usize, usize) {
        match self {
            Direction::Forward => (e.u, e.v),
            Direction::Backward => (e.v, e.u),
        }
    }
}

#[derive(Debug)]
struct DirectedAdjacency {
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

/// Distances along arcs from a single source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedDistanceTable {
    pub source: usize,
    pub dist: Vec<Dist>,
}

impl DirectedDistanceTable {
    pub fn eccentricity(&self) -> Dist {
        self.dist.iter().try_fold(0usize, |acc, d| d.map(|d| acc.max(d)))
    }
}

/// A (possibly partial) orientation of a base graph.
#[derive(Debug)]
pub struct Orientation<'g> {
    graph: &'g Graph,
    dir: Vec<Option<Direction>>,
    assigned: usize,
    cache: OnceLock<DirectedAdjacency>,
}

impl Clone for Orientation<'_> {
    fn clone(&self) -> Self {
        Orientation {
            graph: self.graph,
            dir: self.dir.clone(),
            assigned: self.assigned,
            cache: OnceLock::new(),
        }
    }
}

impl PartialEq for Orientation<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.graph, other.graph) && self.dir == other.dir
    }
}

impl<'g> Orientation<'g> {
    /// Empty orientation: nothing assigned.
    pub fn new(graph: &'g Graph) -> Orientation<'g> {
        Orientation {
            graph,
            dir: vec![None; graph.m()],
            assigned: 0,
            cache: OnceLock::new(),
        }
    }

    /// Builds from `(tail, head)` arcs. Every arc must be an edge of `graph`
    /// and no edge may appear twice.
    pub fn from_arcs<I>(graph: &'g Graph, arcs: I) -> Result<Orientation<'g>>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut o = Orientation::new(graph);
        for (t, h) in arcs {
            let id = graph
                .edge_id(t, h)
                .ok_or_else(|| Error::InvalidArgument(format!("arc {t}->{h} is not an edge")))?;
            if o.dir[id].is_some() {
                return Err(Error::InvalidArgument(format!("edge {} listed twice", graph.edge(id))));
            }
            o.set(id, Direction::of(t, h))?;
        }
        Ok(o)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn direction(&self, id: usize) -> Option<Direction> {
        self.dir[id]
    }

    /// `(tail, head)` of edge `id`, if assigned.
    pub fn arc(&self, id: usize) -> Option<(usize, usize)> {
        self.dir[id].map(|d| d.arc(self.graph.edge(id)))
    }

    pub fn assigned_count(&self) -> usize {
        self.assigned
    }

    pub fn is_complete(&self) -> bool {
        self.assigned == self.graph.m()
    }

    /// Assigned arcs in edge-id order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.graph.m()).filter_map(|id| self.arc(id)).collect()
    }

    /// Assigns a direction to edge `id`. Re-assigning the same direction is a
    /// no-op; the opposite direction is a conflict.
    pub fn set(&mut self, id: usize, d: Direction) -> Result<()> {
        match self.dir[id] {
            Some(cur) if cur == d => Ok(()),
            Some(_) => Err(Error::OrientationConflict(self.graph.edge(id))),
            None => {
                self.dir[id] = Some(d);
                self.assigned += 1;
                self.cache.take();
                Ok(())
            }
        }
    }

    /// Orients `tail → head`.
    pub fn set_arc(&mut self, tail: usize, head: usize) -> Result<()> {
        let id = self
            .graph
            .edge_id(tail, head)
            .ok_or_else(|| Error::InvalidArgument(format!("{tail}-{head} is not an edge")))?;
        self.set(id, Direction::of(tail, head))
    }

    /// Orients every edge of `path` along its vertex order (`forward`) or
    /// against it. Fails without modifying anything on a conflicting arc.
    pub fn orient_path(&mut self, path: &Path, forward: bool) -> Result<()> {
        let verts = path.vertices();
        let arcs: Vec<(usize, usize)> = verts
            .windows(2)
            .map(|w| if forward { (w[0], w[1]) } else { (w[1], w[0]) })
            .collect();
        for &(t, h) in &arcs {
            let id = self.graph.edge_id(t, h).expect("validated path");
            if let Some(d) = self.dir[id] {
                if d != Direction::of(t, h) {
                    return Err(Error::OrientationConflict(self.graph.edge(id)));
                }
            }
        }
        for (t, h) in arcs {
            self.set_arc(t, h)?;
        }
        Ok(())
    }

    /// Same orientation with every arc reversed.
    pub fn reversed(&self) -> Orientation<'g> {
        Orientation {
            graph: self.graph,
            dir: self.dir.iter().map(|d| d.map(Direction::flip)).collect(),
            assigned: self.assigned,
            cache: OnceLock::new(),
        }
    }

    fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::InvalidState(format!(
                "orientation is partial: {} of {} edges assigned",
                self.assigned,
                self.graph.m()
            )))
        }
    }

    fn adjacency(&self) -> &DirectedAdjacency {
        self.cache.get_or_init(|| {
            let n = self.graph.n();
            let mut out = vec![Vec::new(); n];
            let mut inc = vec![Vec::new(); n];
            for (t, h) in self.arcs() {
                out[t].push(h);
                inc[h].push(t);
            }
            for row in out.iter_mut().chain(inc.iter_mut()) {
                row.sort_unstable();
            }
            DirectedAdjacency { out, inc }
        })
    }

    /// Multi-source BFS along assigned arcs only; `reverse` follows arcs
    /// backwards (distances *to* the sources). Works on partial orientations.
    pub fn assigned_distances(&self, sources: &[usize], reverse: bool) -> Vec<Dist> {
        let adj = self.adjacency();
        let nbrs = if reverse { &adj.inc } else { &adj.out };
        let mut dist = vec![None; self.graph.n()];
        let mut q = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                q.push_back(s);
            }
        }
        while let Some(u) = q.pop_front() {
            let du = dist[u].unwrap();
            for &w in &nbrs[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    q.push_back(w);
                }
            }
        }
        dist
    }

    pub fn directed_distances(&self, source: usize) -> Result<DirectedDistanceTable> {
        self.require_complete()?;
        if source >= self.graph.n() {
            return Err(Error::InvalidArgument(format!("source {source} out of range")));
        }
        Ok(DirectedDistanceTable {
            source,
            dist: self.assigned_distances(&[source], false),
        })
    }

    /// Largest directed distance over ordered pairs; `Ok(None)` when not
    /// strongly connected.
    pub fn directed_diameter(&self) -> Result<Dist> {
        self.require_complete()?;
        let mut best = 0;
        for s in 0..self.graph.n() {
            match self.assigned_distances(&[s], false).iter().try_fold(0usize, |a, d| d.map(|d| a.max(d))) {
                Some(e) => best = best.max(e),
                None => return Ok(None),
            }
        }
        Ok(Some(best))
    }

    /// One forward and one backward BFS from vertex 0.
    pub fn is_strong(&self) -> Result<bool> {
        self.require_complete()?;
        if self.graph.n() == 0 {
            return Ok(true);
        }
        let fwd = self.assigned_distances(&[0], false);
        let bwd = self.assigned_distances(&[0], true);
        Ok(fwd.iter().chain(bwd.iter()).all(Option::is_some))
    }

    /// Orientation text format: `orientation n m` then one `tail head` line
    /// per arc, in edge-id order.
    pub fn to_text(&self) -> Result<String> {
        self.require_complete()?;
        let mut s = format!("orientation {} {}\n", self.graph.n(), self.graph.m());
        for (t, h) in self.arcs() {
            s.push_str(&format!("{t} {h}\n"));
        }
        Ok(s)
    }

    /// Parses the orientation text format against `graph`; the arcs must be a
    /// permutation of the graph's edge set.
    pub fn parse(graph: &'g Graph, text: &str) -> Result<Orientation<'g>> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let perr = |line: usize, message: String| Error::Parse { line, message };
        let (hl, header) = lines
            .next()
            .ok_or_else(|| perr(0, "missing `orientation n m` header".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "orientation" {
            return Err(perr(hl, "expected `orientation n m`".into()));
        }
        let n: usize = toks[1].parse().map_err(|_| perr(hl, "bad n".into()))?;
        let m: usize = toks[2].parse().map_err(|_| perr(hl, "bad m".into()))?;
        if n != graph.n() || m != graph.m() {
            return Err(perr(
                hl,
                format!("header {n} {m} does not match graph {} {}", graph.n(), graph.m()),
            ));
        }
        let mut o = Orientation::new(graph);
        for (line, l) in lines {
            let mut it = l.split_whitespace().map(str::parse::<usize>);
            let (Some(Ok(t)), Some(Ok(h)), None) = (it.next(), it.next(), it.next()) else {
                return Err(perr(line, "expected `tail head`".into()));
            };
            let id = graph
                .edge_id(t, h)
                .ok_or_else(|| perr(line, format!("{t} {h} is not an edge")))?;
            if o.dir[id].is_some() {
                return Err(perr(line, format!("edge {} listed twice", graph.edge(id))));
            }
            o.set(id, Direction::of(t, h))?;
        }
        if !o.is_complete() {
            return Err(perr(
                text.lines().count(),
                format!("{} of {} edges oriented", o.assigned, m),
            ));
        }
        Ok(o)
    }
}

/// Strong orientation of a bridgeless connected graph: DFS from vertex 0 with
/// ascending neighbor order; tree edges point away from the root and every
/// other edge points from descendant to ancestor.
pub fn robbins_orient(g: &Graph) -> Result<Orientation<'_>> {
    g.require_bridgeless_connected()?;
    let n = g.n();
    let mut o = Orientation::new(g);
    let mut disc = vec![usize::MAX; n];
    let mut timer = 0;
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    disc[0] = timer;
    timer += 1;
    while let Some(top) = stack.last_mut() {
        let (u, idx) = *top;
        if idx == g.degree(u) {
            stack.pop();
            continue;
        }
        top.1 += 1;
        let w = g.neighbors(u)[idx];
        let id = g.incident_edges(u)[idx];
        if o.direction(id).is_some() {
            continue;
        }
        if disc[w] == usize::MAX {
            disc[w] = timer;
            timer += 1;
            o.set_arc(u, w)?;
            stack.push((w, 0));
        } else {
            // Undirected DFS has no cross edges, so the endpoint discovered
            // later is the descendant.
            if disc[u] > disc[w] {
                o.set_arc(u, w)?;
            } else {
                o.set_arc(w, u)?;
            }
        }
    }
    debug_assert!(o.is_complete());
    Ok(o)
}
