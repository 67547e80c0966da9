//! Undirected simple graphs and the structural queries the rest of the crate
//! is built on: BFS distances with edge exclusion, diameter, girth, minimum
//! degree, bridges and closed balls.
//!
//! Vertices are dense ids `0..n`. Every neighbor list is sorted ascending and
//! BFS always explores neighbors in that order, so every query here is
//! deterministic.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance from a BFS; `None` means unreachable.
pub type Dist = Option<usize>;

/// An undirected edge in canonical form (`u < v`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds the canonical edge between `a` and `b`. Panics on a loop.
    pub fn new(a: usize, b: usize) -> Edge {
        assert_ne!(a, b, "self-loop {a}-{a}");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A set of edges of a particular graph, stored as a bitmap over edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    bits: Vec<bool>,
    len: usize,
}

impl EdgeSet {
    pub fn empty(g: &Graph) -> EdgeSet {
        EdgeSet {
            bits: vec![false; g.m()],
            len: 0,
        }
    }

    pub fn full(g: &Graph) -> EdgeSet {
        EdgeSet {
            bits: vec![true; g.m()],
            len: g.m(),
        }
    }

    pub fn from_ids(g: &Graph, ids: impl IntoIterator<Item = usize>) -> EdgeSet {
        let mut s = EdgeSet::empty(g);
        for id in ids {
            s.insert(id);
        }
        s
    }

    /// Returns `true` if the id was newly inserted.
    pub fn insert(&mut self, id: usize) -> bool {
        if self.bits[id] {
            false
        } else {
            self.bits[id] = true;
            self.len += 1;
            true
        }
    }

    pub fn remove(&mut self, id: usize) -> bool {
        if self.bits[id] {
            self.bits[id] = false;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    #[inline]
    pub fn contains(&self, id: usize) -> bool {
        self.bits[id]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| if b { Some(i) } else { None })
    }
}

/// Immutable undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    adj_edge: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Rejects loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge {a}-{b} out of range for {n} vertices"
                )));
            }
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {a}")));
            }
            list.push(Edge::new(a, b));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!("duplicate edge {}", w[0])));
        }
        let mut adj = vec![Vec::new(); n];
        for e in &list {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        let mut adj_edge = vec![Vec::new(); n];
        for (v, row) in adj.iter().enumerate() {
            adj_edge[v] = row
                .iter()
                .map(|&w| {
                    list.binary_search(&Edge::new(v, w))
                        .expect("edge list built from the same pairs")
                })
                .collect();
        }
        Ok(Graph {
            adj,
            adj_edge,
            edges: list,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Edge ids parallel to [`Graph::neighbors`].
    #[inline]
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.adj_edge[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges sorted in canonical order; an edge's id is its index here.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        if a >= self.n() || b >= self.n() || a == b {
            return None;
        }
        let pos = self.adj[a].binary_search(&b).ok()?;
        Some(self.adj_edge[a][pos])
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_id(a, b).is_some()
    }

    /// Parses the graph text format: `#` comment lines, a header `n m`, then
    /// `m` lines `u v`.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing header line `n m`".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut pairs = Vec::with_capacity(m);
        let mut seen = std::collections::HashSet::with_capacity(m);
        for (line, l) in lines.by_ref() {
            if pairs.len() == m {
                return Err(Error::Parse {
                    line,
                    message: format!("more than the declared {m} edges"),
                });
            }
            let (a, b) = parse_pair(line, l)?;
            if a >= n || b >= n {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex out of range 0..{n}"),
                });
            }
            if a == b {
                return Err(Error::Parse {
                    line,
                    message: format!("self-loop at vertex {a}"),
                });
            }
            if !seen.insert(Edge::new(a, b)) {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate edge {}", Edge::new(a, b)),
                });
            }
            pairs.push((a, b));
        }
        if pairs.len() != m {
            return Err(Error::Parse {
                line: text.lines().count(),
                message: format!("declared {m} edges, found {}", pairs.len()),
            });
        }
        Graph::from_edges(n, pairs)
    }

    /// Serializes to the graph text format with canonical `u < v` lines.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.m());
        for e in &self.edges {
            s.push_str(&format!("{} {}\n", e.u, e.v));
        }
        s
    }

    /// Multi-source BFS in `(V, E \ excluded)`.
    pub fn bfs_distances(&self, sources: &[usize], excluded: &EdgeSet) -> Result<Vec<Dist>> {
        if sources.is_empty() {
            return Err(Error::InvalidArgument("empty source set".into()));
        }
        if let Some(&s) = sources.iter().find(|&&s| s >= self.n()) {
            return Err(Error::InvalidArgument(format!(
                "source {s} out of range for {} vertices",
                self.n()
            )));
        }
        Ok(self.bfs_restricted(sources, Some(excluded), None, None))
    }

    /// BFS without edge exclusion from a single vertex.
    pub fn distances_from(&self, source: usize) -> Vec<Dist> {
        self.bfs_restricted(&[source], None, None, None)
    }

    /// Workhorse BFS. `excluded` edges are never traversed; `blocked` vertices
    /// can be reached but are never expanded; BFS stops expanding past
    /// `limit`.
    pub(crate) fn bfs_restricted(
        &self,
        sources: &[usize],
        excluded: Option<&EdgeSet>,
        blocked: Option<&[bool]>,
        limit: Option<usize>,
    ) -> Vec<Dist> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            if limit.is_some_and(|l| du >= l) {
                continue;
            }
            if du > 0 && blocked.is_some_and(|b| b[u]) {
                continue;
            }
            for (&w, &eid) in self.adj[u].iter().zip(&self.adj_edge[u]) {
                if excluded.is_some_and(|x| x.contains(eid)) {
                    continue;
                }
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// A shortest path from the source set to the nearest target, avoiding
    /// `excluded` edges and never passing *through* a `blocked` vertex.
    ///
    /// Ties: the nearest target with the smallest id, then the
    /// lexicographically smallest vertex sequence starting at a source.
    /// The returned sequence runs source → target.
    pub fn nearest_path(
        &self,
        sources: &[bool],
        targets: &[bool],
        excluded: Option<&EdgeSet>,
        blocked: Option<&[bool]>,
    ) -> Option<Vec<usize>> {
        let n = self.n();
        let src: Vec<usize> = (0..n).filter(|&v| sources[v]).collect();
        if src.is_empty() {
            return None;
        }
        // A source that is also a target is a path of length zero.
        if let Some(&t) = src.iter().find(|&&v| targets[v]) {
            return Some(vec![t]);
        }
        // Targets and blocked vertices are terminal for the forward search.
        let stop: Vec<bool> = (0..n)
            .map(|v| targets[v] || blocked.is_some_and(|b| b[v]))
            .collect();
        let ds = self.bfs_restricted(&src, excluded, Some(&stop), None);
        let (t, d) = (0..n)
            .filter(|&v| targets[v])
            .filter_map(|v| ds[v].map(|d| (v, d)))
            .min_by_key(|&(v, d)| (d, v))?;
        let dt = self.bfs_restricted(&[t], excluded, Some(&stop), None);
        let on_path = |w: usize, step: usize| {
            ds[w] == Some(step) && dt[w] == Some(d - step) && (step == d || !stop[w])
        };
        let start = *src.iter().find(|&&s| dt[s] == Some(d))?;
        let mut path = vec![start];
        let mut cur = start;
        for step in 1..=d {
            let next = self.adj[cur]
                .iter()
                .zip(&self.adj_edge[cur])
                .filter(|&(_, &eid)| !excluded.is_some_and(|x| x.contains(eid)))
                .map(|(&w, _)| w)
                .find(|&w| on_path(w, step))?;
            path.push(next);
            cur = next;
        }
        Some(path)
    }

    /// Largest BFS distance; `None` if the graph is disconnected.
    pub fn diameter(&self) -> Dist {
        let mut best = 0;
        for v in 0..self.n() {
            let d = self.distances_from(v);
            for x in d {
                best = best.max(x?);
            }
        }
        Some(best)
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent_edge = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            queue.clear();
            dist[root] = 0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] >= b {
                        break;
                    }
                }
                for (&w, &eid) in self.adj[u].iter().zip(&self.adj_edge[u]) {
                    if eid == parent_edge[u] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent_edge[w] = eid;
                        queue.push_back(w);
                    } else {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
            parent_edge.iter_mut().for_each(|p| *p = usize::MAX);
        }
        best
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Connected-component label for every vertex, labels in order of the
    /// smallest vertex of each component.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut comp = vec![usize::MAX; self.n()];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 <= 1
    }

    /// Every bridge of the graph (per component when disconnected), sorted.
    pub fn bridges(&self) -> Vec<Edge> {
        let mut ids = self.bridge_ids(None);
        ids.sort_unstable();
        ids.into_iter().map(|id| self.edges[id]).collect()
    }

    /// Bridge ids of the spanning subgraph `(V, mask)`; all edges when `mask`
    /// is `None`. Iterative low-point DFS.
    pub(crate) fn bridge_ids(&self, mask: Option<&EdgeSet>) -> Vec<usize> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut out = Vec::new();
        let mut timer = 0;
        // (vertex, edge id used to enter it, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, usize::MAX, 0));
            while let Some(top) = stack.last_mut() {
                let (u, via, idx) = *top;
                if idx < self.adj[u].len() {
                    top.2 += 1;
                    let w = self.adj[u][idx];
                    let eid = self.adj_edge[u][idx];
                    if eid == via || mask.is_some_and(|m| !m.contains(eid)) {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, eid, 0));
                    } else {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[u]);
                        if low[u] > disc[p] {
                            out.push(via);
                        }
                    }
                }
            }
        }
        out
    }

    /// Connected and free of bridges. The one-vertex graph qualifies.
    pub fn is_bridgeless_connected(&self) -> bool {
        self.n() >= 1 && self.is_connected() && self.bridge_ids(None).is_empty()
    }

    /// Returns `Ok(())` when the graph is connected and bridgeless, otherwise
    /// an error carrying a witness.
    pub fn require_bridgeless_connected(&self) -> Result<()> {
        if self.n() == 0 {
            return Err(Error::Precondition("empty graph".into()));
        }
        let (count, comp) = self.components();
        if count > 1 {
            let unreached = comp.iter().position(|&c| c != 0).unwrap();
            return Err(Error::Disconnected { unreached });
        }
        if let Some(b) = self.bridges().first() {
            return Err(Error::Bridge(*b));
        }
        Ok(())
    }

    /// Closed ball `{u : dist_{G \ excluded}(u, v) <= radius}`, sorted.
    pub fn ball(&self, v: usize, radius: usize, excluded: &EdgeSet) -> Vec<usize> {
        let d = self.bfs_restricted(&[v], Some(excluded), None, Some(radius));
        (0..self.n()).filter(|&u| d[u].is_some()).collect()
    }
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize)> {
    let mut it = l.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse {
                line,
                message: "expected two integers".into(),
            })?
            .parse::<usize>()
            .map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            message: "trailing tokens".into(),
        });
    }
    Ok((a, b))
}

/// A simple path in a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<usize>,
}

impl Path {
    /// Validates adjacency and distinctness against `g`.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Path> {
        if vertices.is_empty() {
            return Err(Error::InvalidArgument("path needs at least one vertex".into()));
        }
        let mut seen = vec![false; g.n()];
        for &v in &vertices {
            if v >= g.n() {
                return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidArgument(format!("vertex {v} repeats on path")));
            }
        }
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::InvalidArgument(format!(
                    "{} and {} are not adjacent",
                    w[0], w[1]
                )));
            }
        }
        Ok(Path { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Edge ids in path order.
    pub fn edge_ids(&self, g: &Graph) -> Vec<usize> {
        self.vertices
            .windows(2)
            .map(|w| g.edge_id(w[0], w[1]).expect("validated path"))
            .collect()
    }

    pub fn edge_set(&self, g: &Graph) -> EdgeSet {
        EdgeSet::from_ids(g, self.edge_ids(g))
    }
}

/// A subgraph of a host graph, given by a vertex mask and an edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    vertices: Vec<bool>,
    order: usize,
    edges: EdgeSet,
}

impl Subgraph {
    pub fn empty(g: &Graph) -> Subgraph {
        Subgraph {
            vertices: vec![false; g.n()],
            order: 0,
            edges: EdgeSet::empty(g),
        }
    }

    pub fn single(g: &Graph, v: usize) -> Subgraph {
        let mut s = Subgraph::empty(g);
        s.add_vertex(v);
        s
    }

    pub fn whole(g: &Graph) -> Subgraph {
        Subgraph {
            vertices: vec![true; g.n()],
            order: g.n(),
            edges: EdgeSet::full(g),
        }
    }

    pub fn add_vertex(&mut self, v: usize) {
        if !std::mem::replace(&mut self.vertices[v], true) {
            self.order += 1;
        }
    }

    pub fn add_edge(&mut self, g: &Graph, id: usize) {
        let e = g.edge(id);
        self.add_vertex(e.u);
        self.add_vertex(e.v);
        self.edges.insert(id);
    }

    /// Adds every vertex and edge of the walk `vertices`.
    pub fn add_walk(&mut self, g: &Graph, vertices: &[usize]) {
        for &v in vertices {
            self.add_vertex(v);
        }
        for w in vertices.windows(2) {
            let id = g.edge_id(w[0], w[1]).expect("walk follows host edges");
            self.edges.insert(id);
        }
    }

    /// Removes `v` and every incident edge.
    pub fn remove_vertex(&mut self, g: &Graph, v: usize) {
        if std::mem::replace(&mut self.vertices[v], false) {
            self.order -= 1;
            for &eid in g.incident_edges(v) {
                self.edges.remove(eid);
            }
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.vertices[v]
    }

    pub fn vertex_mask(&self) -> &[bool] {
        &self.vertices
    }

    pub fn edge_set(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_list(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.vertices[v])
            .collect()
    }

    /// Materializes as a standalone graph; also returns local → host ids.
    pub fn to_graph(&self, g: &Graph) -> (Graph, Vec<usize>) {
        let map = self.vertex_list();
        let mut local = vec![usize::MAX; g.n()];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let pairs = self.edges.ids().map(|id| {
            let e = g.edge(id);
            (local[e.u], local[e.v])
        });
        let sub = Graph::from_edges(map.len(), pairs).expect("subgraph of a simple graph is simple");
        (sub, map)
    }

    /// Non-empty, connected and free of bridges.
    pub fn is_bridgeless_connected(&self, g: &Graph) -> bool {
        self.order > 0 && self.to_graph(g).0.is_bridgeless_connected()
    }

    /// Distance from every host vertex to the subgraph's vertex set.
    pub fn distances_to(&self, g: &Graph) -> Vec<Dist> {
        let src = self.vertex_list();
        g.bfs_restricted(&src, None, None, None)
    }
}
