//! JSON-lines trace files and their replay.
//!
//! A trace holds, one JSON object per line, tagged by `record`:
//! `growth` (run parameters and result), one `growth-iteration` per `H_i`,
//! `extension` (summary), one `extension-step` per ear, and `bound`.

use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::bounds::{self, BoundParameters, BoundReport, Epsilon};
use crate::error::{Error, Result};
use crate::extension::ExtensionTrace;
use crate::graph::{Graph, Subgraph};
use crate::growth::{self, GrowthTrace};
use crate::orientation::Orientation;

fn tagged(tag: &str, value: Value) -> Value {
    let mut obj = Map::new();
    obj.insert("record".into(), Value::String(tag.into()));
    if let Value::Object(fields) = value {
        obj.extend(fields);
    }
    Value::Object(obj)
}

fn split_list(value: Value, key: &str) -> (Value, Vec<Value>) {
    match value {
        Value::Object(mut m) => {
            let items = match m.remove(key) {
                Some(Value::Array(a)) => a,
                _ => Vec::new(),
            };
            (Value::Object(m), items)
        }
        other => (other, Vec::new()),
    }
}

fn to_value<T: Serialize>(t: &T) -> Result<Value> {
    serde_json::to_value(t).map_err(|e| Error::InvalidState(e.to_string()))
}

/// Writes the trace of one pipeline run.
pub fn write_trace<W: Write>(
    mut w: W,
    growth: &GrowthTrace,
    extension: Option<&ExtensionTrace>,
    bound: Option<&BoundReport>,
) -> Result<()> {
    let mut line = |v: Value| -> Result<()> {
        serde_json::to_writer(&mut w, &v).map_err(|e| Error::Io(e.to_string()))?;
        w.write_all(b"\n")?;
        Ok(())
    };
    let (head, items) = split_list(to_value(growth)?, "iterations");
    line(tagged("growth", head))?;
    for it in items {
        line(tagged("growth-iteration", it))?;
    }
    if let Some(ext) = extension {
        let (head, items) = split_list(to_value(ext)?, "steps");
        line(tagged("extension", head))?;
        for st in items {
            line(tagged("extension-step", st))?;
        }
    }
    if let Some(b) = bound {
        line(tagged("bound", to_value(b)?))?;
    }
    Ok(())
}

/// Parsed trace file.
#[derive(Debug, Clone)]
pub struct TraceFile {
    pub growth: GrowthTrace,
    pub extension: Option<ExtensionTrace>,
    pub bound: Option<BoundReport>,
}

pub fn read_trace(text: &str) -> Result<TraceFile> {
    let mut growth: Option<Map<String, Value>> = None;
    let mut iterations = Vec::new();
    let mut extension: Option<Map<String, Value>> = None;
    let mut steps = Vec::new();
    let mut bound = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let perr = |message: String| Error::Parse { line, message };
        let mut obj = match serde_json::from_str::<Value>(raw).map_err(|e| perr(e.to_string()))? {
            Value::Object(m) => m,
            _ => return Err(perr("expected a JSON object".into())),
        };
        let tag = match obj.remove("record") {
            Some(Value::String(s)) => s,
            _ => return Err(perr("missing `record` tag".into())),
        };
        match tag.as_str() {
            "growth" => growth = Some(obj),
            "growth-iteration" => iterations.push(Value::Object(obj)),
            "extension" => extension = Some(obj),
            "extension-step" => steps.push(Value::Object(obj)),
            "bound" => {
                bound = Some(serde_json::from_value(Value::Object(obj)).map_err(|e| perr(e.to_string()))?)
            }
            other => return Err(perr(format!("unknown record `{other}`"))),
        }
    }
    let perr = |message: String| Error::Parse { line: 0, message };
    let mut growth = growth.ok_or_else(|| perr("trace has no growth record".into()))?;
    growth.insert("iterations".into(), Value::Array(iterations));
    let growth = serde_json::from_value(Value::Object(growth)).map_err(|e| perr(e.to_string()))?;
    let extension = match extension {
        Some(mut e) => {
            e.insert("steps".into(), Value::Array(steps));
            Some(serde_json::from_value(Value::Object(e)).map_err(|e| perr(e.to_string()))?)
        }
        None => None,
    };
    Ok(TraceFile {
        growth,
        extension,
        bound,
    })
}

/// One named check of a replay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }
}

/// Re-checks every inequality recorded in `trace`. Without a graph only the
/// arithmetic is checked; with the graph the growth is audited from scratch
/// and the extension is replayed arc by arc.
pub fn verify(trace: &TraceFile, graph: Option<&Graph>) -> Result<VerifyReport> {
    let mut r = VerifyReport { checks: Vec::new() };
    let gt = &trace.growth;
    let eps = Epsilon::from_rational(gt.epsilon)?;
    let l_value = bounds::big_l(gt.girth, eps)?;
    let h_value = bounds::h(gt.delta, gt.girth);
    r.push(
        "growth parameters",
        l_value == gt.l_value && h_value == gt.h_value && gt.radius == bounds::ball_radius(gt.girth),
        format!("L={l_value} h={h_value}"),
    );
    let two_g_eps = bounds::Rational::from_integer(2 * gt.girth as i128) + gt.epsilon;
    let mut ok2 = true;
    let mut ok3 = true;
    for it in &gt.iterations {
        let p2 = it.f_size as i128 >= h_value * it.b_size as i128;
        let p3 = bounds::Rational::from_integer(it.h_order as i128) <= two_g_eps * bounds::Rational::from_integer(it.b_size as i128);
        ok2 &= p2 && it.property2;
        ok3 &= p3 && it.property3;
    }
    r.push("property 2 (recorded sizes)", ok2, format!("{} iterations", gt.iterations.len()));
    r.push("property 3 (recorded sizes)", ok3, format!("{} iterations", gt.iterations.len()));
    r.push(
        "property 1 (recorded distance)",
        gt.max_distance < l_value * gt.girth && gt.property1,
        format!("max distance {} < {}", gt.max_distance, l_value * gt.girth),
    );
    if let Some(ext) = &trace.extension {
        r.push(
            "extension allowance",
            ext.allowance == bounds::extension_allowance(ext.s)
                && ext.increase == ext.full_diameter as i64 - ext.core_diameter as i64
                && (ext.increase <= 0 || ext.increase as u128 <= ext.allowance),
            format!("increase {} <= {}", ext.increase, ext.allowance),
        );
    }
    if let Some(b) = &trace.bound {
        let p = BoundParameters::new(b.n, b.delta, b.girth, b.epsilon)?;
        let fresh = bounds::theorem_bound(&p)?;
        let same = fresh.total_bound == b.total_bound && fresh.core_bound == b.core_bound;
        let within = b.achieved_diameter.is_none_or(|a| (a as i128) <= fresh.total_floor());
        r.push(
            "theorem bound",
            same && within,
            format!("achieved {:?} <= {}", b.achieved_diameter, fresh.total_floor()),
        );
    }
    if let Some(g) = graph {
        let a = growth::audit(g, gt)?;
        r.push("growth audit", a.all_pass(), format!("{a:?}"));
        if let Some(ext) = &trace.extension {
            let (pass, detail) = replay_extension(g, gt, ext)?;
            r.push("extension replay", pass, detail);
        }
    }
    Ok(r)
}

fn replay_extension(g: &Graph, gt: &GrowthTrace, ext: &ExtensionTrace) -> Result<(bool, String)> {
    let last = gt
        .iterations
        .last()
        .ok_or_else(|| Error::InvalidArgument("trace has no iterations".into()))?;
    let mut core = Subgraph::empty(g);
    for &v in &last.h_vertices {
        core.add_vertex(v);
    }
    for &(a, b) in &last.h_edges {
        let id = g
            .edge_id(a, b)
            .ok_or_else(|| Error::InvalidArgument(format!("{a}-{b} is not an edge")))?;
        core.add_edge(g, id);
    }
    let core_vs = core.vertex_list();
    let mut o = Orientation::from_arcs(g, ext.core_arcs.iter().copied())?;
    if o.assigned_count() != core.size() {
        return Ok((false, "core arcs do not match the core".into()));
    }
    for (k, st) in ext.steps.iter().enumerate() {
        for w in st.ear.windows(2) {
            let (t, h) = if st.forward { (w[0], w[1]) } else { (w[1], w[0]) };
            o.set_arc(t, h)?;
        }
        let to = o.assigned_distances(&core_vs, true);
        let from = o.assigned_distances(&core_vs, false);
        let mut region = vec![false; g.n()];
        for &v in &core_vs {
            region[v] = true;
        }
        for s in &ext.steps[..=k] {
            for &v in &s.ear {
                region[v] = true;
            }
        }
        let mut trip = 0;
        for v in (0..g.n()).filter(|&v| region[v]) {
            match (to[v], from[v]) {
                (Some(a), Some(b)) => trip = trip.max(a + b),
                _ => return Ok((false, format!("step {k}: vertex {v} cut off from the core"))),
            }
        }
        if trip != st.round_trip {
            return Ok((false, format!("step {k}: round trip {trip}, recorded {}", st.round_trip)));
        }
    }
    for id in 0..g.m() {
        if o.direction(id).is_none() {
            let e = g.edge(id);
            o.set_arc(e.u, e.v)?;
        }
    }
    let diam = o.directed_diameter()?;
    let s = core.distances_to(g).iter().map(|d| d.unwrap_or(usize::MAX)).max().unwrap_or(0);
    let pass = diam == Some(ext.full_diameter)
        && s == ext.s
        && (ext.full_diameter as i128 - ext.core_diameter as i128) <= bounds::extension_allowance(s) as i128;
    Ok((pass, format!("replayed diameter {diam:?}, recorded {}; s = {s}", ext.full_diameter)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::triangle_chain;
    use crate::pipeline;

    #[test]
    fn round_trip_and_replay() {
        let g = triangle_chain(10).unwrap();
        let r = pipeline::run(&g, "2".parse().unwrap()).unwrap();
        let mut buf = Vec::new();
        write_trace(&mut buf, &r.growth, Some(&r.extension), Some(&r.bound)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().count() >= r.growth.iterations.len() + 3);
        let t = read_trace(&text).unwrap();
        assert_eq!(t.growth, r.growth);
        assert_eq!(t.extension.as_ref(), Some(&r.extension));
        assert_eq!(t.bound.as_ref(), Some(&r.bound));
        let rep = verify(&t, Some(&g)).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn tampered_trace_fails() {
        let g = triangle_chain(10).unwrap();
        let r = pipeline::run(&g, "2".parse().unwrap()).unwrap();
        let mut ext = r.extension.clone();
        ext.full_diameter += 1;
        let t = TraceFile {
            growth: r.growth.clone(),
            extension: Some(ext),
            bound: None,
        };
        assert!(!verify(&t, Some(&g)).unwrap().all_pass());
    }

    #[test]
    fn garbage_is_a_parse_error() {
        assert!(matches!(read_trace("{\"record\":\"nope\"}"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_trace("not json"), Err(Error::Parse { .. })));
    }
}
