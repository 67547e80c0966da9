//! Deterministic test families and the fixed corpora used by experiments.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A graph family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Cycle { n: usize },
    Complete { n: usize },
    /// Vertex `i` adjacent to `i ± o (mod n)` for every offset `o`.
    Circulant { n: usize, offsets: Vec<usize> },
    Petersen,
    /// `triangles` triangles glued in a chain, consecutive ones sharing a vertex.
    TriangleChain { triangles: usize },
    /// Two hubs joined by `paths` internally disjoint paths of `length` edges.
    Theta { paths: usize, length: usize },
    /// Hamilton cycle plus random chords until the minimum degree is reached,
    /// never closing a cycle shorter than `girth_floor`.
    RandomBridgeless {
        n: usize,
        min_degree: usize,
        girth_floor: usize,
        seed: u64,
    },
}

impl FamilySpec {
    /// Short stable name, used in CSV rows and file names.
    pub fn label(&self) -> String {
        match self {
            FamilySpec::Cycle { n } => format!("cycle-{n}"),
            FamilySpec::Complete { n } => format!("complete-{n}"),
            FamilySpec::Circulant { n, offsets } => {
                let o: Vec<String> = offsets.iter().map(ToString::to_string).collect();
                format!("circulant-{n}-{}", o.join("_"))
            }
            FamilySpec::Petersen => "petersen".into(),
            FamilySpec::TriangleChain { triangles } => format!("triangle-chain-{triangles}"),
            FamilySpec::Theta { paths, length } => format!("theta-{paths}x{length}"),
            FamilySpec::RandomBridgeless {
                n,
                min_degree,
                girth_floor,
                seed,
            } => format!("random-{n}-d{min_degree}-g{girth_floor}-s{seed}"),
        }
    }
}

/// Builds the graph for `spec`. Every result is connected and bridgeless.
pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    let g = match spec {
        FamilySpec::Cycle { n } => cycle(*n)?,
        FamilySpec::Complete { n } => complete(*n)?,
        FamilySpec::Circulant { n, offsets } => circulant(*n, offsets)?,
        FamilySpec::Petersen => petersen(),
        FamilySpec::TriangleChain { triangles } => triangle_chain(*triangles)?,
        FamilySpec::Theta { paths, length } => theta(*paths, *length)?,
        FamilySpec::RandomBridgeless {
            n,
            min_degree,
            girth_floor,
            seed,
        } => random_bridgeless(*n, *min_degree, *girth_floor, *seed)?,
    };
    if !g.is_bridgeless_connected() {
        return Err(Error::Infeasible(format!(
            "{} is not bridgeless and connected",
            spec.label()
        )));
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("complete graph needs n >= 3, got {n}")));
    }
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    Graph::from_edges(n, edges)
}

pub fn circulant(n: usize, offsets: &[usize]) -> Result<Graph> {
    if n < 3 || offsets.is_empty() {
        return Err(Error::InvalidArgument("circulant needs n >= 3 and offsets".into()));
    }
    let mut sorted = offsets.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != offsets.len() {
        return Err(Error::InvalidArgument("circulant offsets must be distinct".into()));
    }
    if let Some(&o) = sorted.iter().find(|&&o| o == 0 || 2 * o > n) {
        return Err(Error::InvalidArgument(format!(
            "circulant offset {o} outside 1..={}",
            n / 2
        )));
    }
    let mut edges = std::collections::BTreeSet::new();
    for i in 0..n {
        for &o in &sorted {
            let j = (i + o) % n;
            edges.insert((i.min(j), i.max(j)));
        }
    }
    Graph::from_edges(n, edges)
}

pub fn petersen() -> Graph {
    let mut e = Vec::with_capacity(15);
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, e).expect("fixed edge list")
}

/// Hinge vertices `0..=k` run along the chain; apex `k + 1 + i` closes the
/// triangle on hinges `i, i + 1`.
pub fn triangle_chain(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidArgument("triangle chain needs at least one triangle".into()));
    }
    let mut e = Vec::with_capacity(3 * k);
    for i in 0..k {
        let apex = k + 1 + i;
        e.push((i, i + 1));
        e.push((i, apex));
        e.push((i + 1, apex));
    }
    Graph::from_edges(2 * k + 1, e)
}

/// Hubs are 0 and 1; path `p` uses internal vertices `2 + p(length−1) ..`.
pub fn theta(paths: usize, length: usize) -> Result<Graph> {
    if paths < 2 || length < 2 {
        return Err(Error::InvalidArgument(
            "theta needs at least 2 paths of length at least 2".into(),
        ));
    }
    let inner = length - 1;
    let n = 2 + paths * inner;
    let mut e = Vec::new();
    for p in 0..paths {
        let base = 2 + p * inner;
        let mut prev = 0;
        for k in 0..inner {
            e.push((prev, base + k));
            prev = base + k;
        }
        e.push((prev, 1));
    }
    Graph::from_edges(n, e)
}

/// Hamilton cycle through a seeded random vertex order, then chords chosen at
/// random among non-adjacent pairs at distance at least `girth_floor − 1`
/// until every vertex has degree `min_degree`.
pub fn random_bridgeless(n: usize, min_degree: usize, girth_floor: usize, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("random graph needs n >= 3, got {n}")));
    }
    if girth_floor > n {
        return Err(Error::Infeasible(format!(
            "girth floor {girth_floor} exceeds the Hamilton cycle length {n}"
        )));
    }
    if min_degree >= n {
        return Err(Error::Infeasible(format!("minimum degree {min_degree} needs more than {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut adj = vec![Vec::<usize>::new(); n];
    let add = |adj: &mut Vec<Vec<usize>>, a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
    };
    for i in 0..n {
        add(&mut adj, order[i], order[(i + 1) % n]);
    }
    let need = girth_floor.saturating_sub(1).max(2);
    let max_rejections = 200 * n * min_degree.max(1) + 1000;
    let mut rejections = 0;
    let mut dist = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    loop {
        let deficient: Vec<usize> = (0..n).filter(|&v| adj[v].len() < min_degree).collect();
        if deficient.is_empty() {
            break;
        }
        if rejections > max_rejections {
            return Err(Error::Infeasible(format!(
                "gave up after {rejections} rejected chords: {} vertices still below degree {min_degree} \
                 with girth floor {girth_floor} on {n} vertices",
                deficient.len()
            )));
        }
        let u = deficient[rng.gen_range(0..deficient.len())];
        let v = if deficient.len() > 1 && rng.gen_bool(0.75) {
            deficient[rng.gen_range(0..deficient.len())]
        } else {
            rng.gen_range(0..n)
        };
        if u == v || adj[u].contains(&v) {
            rejections += 1;
            continue;
        }
        // Distance from u, explored only up to need − 1.
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[u] = 0;
        queue.clear();
        queue.push_back(u);
        let mut close = false;
        while let Some(x) = queue.pop_front() {
            if x == v {
                close = true;
                break;
            }
            if dist[x] + 1 >= need {
                continue;
            }
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if close {
            rejections += 1;
            continue;
        }
        add(&mut adj, u, v);
    }
    let edges = (0..n).flat_map(|a| adj[a].iter().filter(move |&&b| a < b).map(move |&b| (a, b)));
    let g = Graph::from_edges(n, edges.collect::<Vec<_>>())?;
    match g.girth() {
        Some(gg) if gg >= girth_floor => Ok(g),
        other => Err(Error::CertifiedFailure(format!(
            "random graph has girth {other:?} below floor {girth_floor}"
        ))),
    }
}

/// One corpus member.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: FamilySpec,
    pub graph: Graph,
}

/// Names accepted by [`corpus`].
pub const PROFILES: &[&str] = &["tiny", "small", "girth-sweep", "degree4"];

/// Fixed list of specs for a profile. Random members take seeds
/// `seed, seed + 1, …` in list order.
pub fn corpus_specs(profile: &str, seed: u64) -> Result<Vec<FamilySpec>> {
    let mut k = 0u64;
    let mut rnd = |n: usize, min_degree: usize, girth_floor: usize| {
        let s = seed.wrapping_add(k);
        k += 1;
        FamilySpec::RandomBridgeless {
            n,
            min_degree,
            girth_floor,
            seed: s,
        }
    };
    use FamilySpec::*;
    let specs = match profile {
        "tiny" => {
            let mut v: Vec<FamilySpec> = (3..=8).map(|n| Cycle { n }).collect();
            v.extend([
                Complete { n: 4 },
                Complete { n: 5 },
                Circulant { n: 6, offsets: vec![1, 2] },
                Circulant { n: 6, offsets: vec![1, 3] },
                Circulant { n: 8, offsets: vec![1, 4] },
                Circulant { n: 8, offsets: vec![1, 2] },
                Circulant { n: 10, offsets: vec![1, 2] },
                Theta { paths: 3, length: 2 },
                Theta { paths: 4, length: 3 },
                Petersen,
                TriangleChain { triangles: 3 },
                TriangleChain { triangles: 6 },
                rnd(10, 3, 4),
                rnd(9, 3, 3),
            ]);
            v
        }
        "small" => {
            let mut v: Vec<FamilySpec> = (4..=12).map(|triangles| TriangleChain { triangles }).collect();
            v.extend([
                Cycle { n: 20 },
                Cycle { n: 31 },
                Petersen,
                Circulant { n: 20, offsets: vec![1, 2] },
                Circulant { n: 30, offsets: vec![1, 2, 3] },
                Circulant { n: 40, offsets: vec![1, 2] },
                Circulant { n: 60, offsets: vec![1, 2] },
                Circulant { n: 24, offsets: vec![1, 5] },
                Circulant { n: 40, offsets: vec![1, 20] },
                Theta { paths: 5, length: 6 },
                rnd(40, 3, 3),
                rnd(40, 4, 5),
                rnd(60, 3, 5),
                rnd(30, 2, 3),
            ]);
            v
        }
        "girth-sweep" => vec![
            rnd(60, 3, 3),
            rnd(60, 4, 3),
            rnd(80, 3, 5),
            rnd(80, 4, 5),
            rnd(120, 3, 7),
            rnd(150, 3, 7),
            Circulant { n: 48, offsets: vec![1, 2] },
            Petersen,
        ],
        "degree4" => vec![
            Circulant { n: 20, offsets: vec![1, 2] },
            Circulant { n: 30, offsets: vec![1, 2, 3] },
            Circulant { n: 40, offsets: vec![1, 2] },
            Circulant { n: 24, offsets: vec![1, 2, 3, 4] },
            Circulant { n: 50, offsets: vec![1, 2, 7] },
            rnd(60, 4, 5),
            rnd(80, 4, 5),
            rnd(100, 4, 5),
            rnd(70, 5, 5),
            rnd(50, 4, 3),
            Complete { n: 7 },
        ],
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown corpus profile `{other}`; expected one of {}",
                PROFILES.join(", ")
            )))
        }
    };
    Ok(specs)
}

pub fn corpus(profile: &str, seed: u64) -> Result<Vec<CorpusEntry>> {
    corpus_specs(profile, seed)?
        .into_iter()
        .map(|spec| {
            let graph = generate(&spec)?;
            Ok(CorpusEntry {
                name: spec.label(),
                spec,
                graph,
            })
        })
        .collect()
}
