use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use oriented_diameter::bounds::{fmt_rational, Epsilon};
use oriented_diameter::experiment::{self, ExperimentOptions};
use oriented_diameter::generators::{self, FamilySpec};
use oriented_diameter::oracle::{self, OracleOptions};
use oriented_diameter::trace;
use oriented_diameter::{pipeline, Error, Graph, Orientation};

/// Strong orientations with small directed diameter.
#[derive(Parser)]
#[command(name = "odiam", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print n, m, minimum degree, girth, bridgelessness and diameter.
    Analyze {
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build a strong orientation and report it against the bound.
    Orient {
        graph: PathBuf,
        /// Exact rational `p/q` or integer.
        #[arg(long, default_value = "1/2")]
        epsilon: Epsilon,
        /// Write the orientation here.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Write the JSON-lines trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Exact oriented diameter by exhaustive search.
    Oracle {
        graph: PathBuf,
        #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the optimal orientation here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Generate a graph family member, or a whole corpus with `--profile`.
    Gen {
        /// cycle | complete | circulant | petersen | triangle-chain | theta | random
        family: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated circulant offsets.
        #[arg(long, value_delimiter = ',')]
        offsets: Vec<usize>,
        #[arg(long)]
        triangles: Option<usize>,
        #[arg(long)]
        paths: Option<usize>,
        #[arg(long)]
        length: Option<usize>,
        #[arg(long)]
        min_degree: Option<usize>,
        #[arg(long, default_value_t = 3)]
        girth_floor: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corpus profile; writes one file per graph plus manifest.json.
        #[arg(long, conflicts_with = "family")]
        profile: Option<String>,
        /// Output file (single graph) or directory (profile).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run the construction over a corpus profile and write CSV.
    Experiment {
        profile: String,
        #[arg(long, default_value = "1/2")]
        epsilon: Epsilon,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
        budget: usize,
        /// Summary JSON path; defaults to the CSV path with `.json`.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Re-check every inequality in a trace file.
    Verify {
        trace: PathBuf,
        /// Graph the trace was produced on; enables full replay.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Orientation file to re-parse and re-check against the trace.
        #[arg(long, requires = "graph")]
        orientation: Option<PathBuf>,
    },
}

/// Failure classes and their exit codes.
enum Failure {
    Input(String),
    Precondition(String),
    Certified(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Precondition(_) => 3,
            Failure::Certified(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        if e.is_precondition() {
            Failure::Precondition(msg)
        } else {
            match e {
                Error::CertifiedFailure(_) | Error::InvalidState(_) | Error::OrientationConflict(_) => {
                    Failure::Certified(msg)
                }
                _ => Failure::Input(msg),
            }
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "none".into(), |x| x.to_string())
}

fn analyze(path: &Path, as_json: bool) -> Outcome {
    let g = load_graph(path)?;
    let report = json!({
        "n": g.n(),
        "m": g.m(),
        "delta": g.min_degree(),
        "girth": g.girth(),
        "bridgeless": g.is_bridgeless_connected(),
        "diameter": g.diameter(),
    });
    if as_json {
        print_json(&report);
    } else {
        println!("n: {}", g.n());
        println!("m: {}", g.m());
        println!("delta: {}", g.min_degree());
        println!("girth: {}", opt(g.girth()));
        println!("bridgeless: {}", g.is_bridgeless_connected());
        println!("diameter: {}", opt(g.diameter()));
    }
    Ok(())
}

fn orient(path: &Path, eps: Epsilon, emit: Option<&Path>, trace_path: Option<&Path>, as_json: bool) -> Outcome {
    let g = load_graph(path)?;
    let r = pipeline::run(&g, eps)?;
    let text = r.orientation.to_text()?;
    // The written file must re-parse to the same strong orientation.
    let back = Orientation::parse(&g, &text)?;
    if back != r.orientation || back.directed_diameter()? != Some(r.achieved()) {
        return Err(Failure::Certified("orientation file does not round-trip".into()));
    }
    if let Some(p) = emit {
        write_file(p, &text)?;
    }
    if let Some(p) = trace_path {
        let mut buf = Vec::new();
        trace::write_trace(&mut buf, &r.growth, Some(&r.extension), Some(&r.bound))?;
        write_file(p, std::str::from_utf8(&buf).expect("JSON is UTF-8"))?;
    }
    let b = &r.bound;
    if as_json {
        print_json(&json!({
            "summary": r.summary,
            "bound": b,
            "growth": {
                "k": r.growth.k,
                "core_order": r.growth.iterations.last().map(|it| it.h_order),
                "witnesses": r.growth.iterations.last().map(|it| it.b_size),
                "max_distance": r.growth.max_distance,
                "all_pass": r.growth.all_pass(),
            },
            "extension": {
                "s": r.extension.s,
                "core_diameter": r.extension.core_diameter,
                "full_diameter": r.extension.full_diameter,
                "increase": r.extension.increase,
                "allowance": r.extension.allowance,
                "within_4s": r.extension.within_4s,
            },
            "orientation": emit,
            "timings_ms": r.timings,
            "invariants_hold": r.invariants_hold(),
        }));
    } else {
        let s = &r.summary;
        println!("graph: n={} m={} delta={} girth={}", s.n, s.m, s.delta, s.girth);
        println!("epsilon: {}  h: {}  L: {}", b.epsilon, b.h_value, b.l_value);
        println!(
            "core: k={} |H_k|={} |B_k|={} max distance {}",
            r.growth.k,
            opt(r.growth.iterations.last().map(|it| it.h_order)),
            opt(r.growth.iterations.last().map(|it| it.b_size)),
            r.growth.max_distance
        );
        println!(
            "extension: s={} core diameter {} -> {} (increase {}, allowance {})",
            r.extension.s, r.extension.core_diameter, r.extension.full_diameter, r.extension.increase, r.extension.allowance
        );
        println!(
            "bound: {} + {} = {} (floor {})",
            fmt_rational(&b.core_bound),
            b.additive_constant,
            fmt_rational(&b.total_bound),
            b.total_floor()
        );
        println!("achieved diameter: {}", r.achieved());
        println!(
            "timings ms: grow {:.2} orient {:.2} extend {:.2} verify {:.2}",
            r.timings.grow_ms, r.timings.orient_core_ms, r.timings.extend_ms, r.timings.verify_ms
        );
        println!("invariants: {}", if r.invariants_hold() { "pass" } else { "FAIL" });
    }
    if r.invariants_hold() {
        Ok(())
    } else {
        Err(Failure::Certified("an invariant check failed".into()))
    }
}

fn run_oracle(path: &Path, budget: usize, jobs: usize, emit: Option<&Path>) -> Outcome {
    let g = load_graph(path)?;
    let r = oracle::exact_oriented_diameter(&g, OracleOptions { budget, jobs })?;
    let o = Orientation::from_arcs(&g, r.witness.iter().copied())?;
    if o.directed_diameter()? != Some(r.optimum) {
        return Err(Failure::Certified("witness does not achieve the optimum".into()));
    }
    if let Some(p) = emit {
        write_file(p, &o.to_text()?)?;
    }
    println!("optimum: {}", r.optimum);
    println!("examined: {}", r.orientations_examined);
    println!("pruned: {}", r.pruned);
    print!("{}", o.to_text()?);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn generate(
    family: Option<&str>,
    n: Option<usize>,
    offsets: Vec<usize>,
    triangles: Option<usize>,
    paths: Option<usize>,
    length: Option<usize>,
    min_degree: Option<usize>,
    girth_floor: usize,
    seed: u64,
    profile: Option<&str>,
    out: Option<&Path>,
) -> Outcome {
    if let Some(profile) = profile {
        let dir = out.ok_or_else(|| Failure::Input("--profile needs --out <directory>".into()))?;
        fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
        let entries = generators::corpus(profile, seed)?;
        let mut manifest = Vec::new();
        for (i, e) in entries.iter().enumerate() {
            let file = format!("{i:03}-{}.graph", e.name);
            write_file(&dir.join(&file), &e.graph.to_text())?;
            manifest.push(json!({ "index": i, "file": file, "spec": e.spec, "n": e.graph.n(), "m": e.graph.m() }));
        }
        let text = serde_json::to_string_pretty(&json!({ "profile": profile, "seed": seed, "graphs": manifest }))
            .expect("serializable");
        write_file(&dir.join("manifest.json"), &text)?;
        println!("wrote {} graphs to {}", entries.len(), dir.display());
        return Ok(());
    }
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure::Input(format!("missing --{flag}")));
    let family = family.ok_or_else(|| Failure::Input("give a family or --profile".into()))?;
    let spec = match family {
        "cycle" => FamilySpec::Cycle { n: need(n, "n")? },
        "complete" => FamilySpec::Complete { n: need(n, "n")? },
        "circulant" => FamilySpec::Circulant {
            n: need(n, "n")?,
            offsets,
        },
        "petersen" => FamilySpec::Petersen,
        "triangle-chain" => FamilySpec::TriangleChain {
            triangles: need(triangles, "triangles")?,
        },
        "theta" => FamilySpec::Theta {
            paths: need(paths, "paths")?,
            length: need(length, "length")?,
        },
        "random" => FamilySpec::RandomBridgeless {
            n: need(n, "n")?,
            min_degree: need(min_degree, "min-degree")?,
            girth_floor,
            seed,
        },
        other => return Err(Failure::Input(format!("unknown family `{other}`"))),
    };
    let text = generators::generate(&spec)?.to_text();
    match out {
        Some(p) => write_file(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_experiment(profile: &str, opts: ExperimentOptions, out: &Path, summary: Option<&Path>) -> Outcome {
    let (rows, s) = experiment::run_experiment(profile, opts)?;
    let mut buf = Vec::new();
    experiment::write_csv(&mut buf, &rows)?;
    write_file(out, std::str::from_utf8(&buf).expect("CSV is UTF-8"))?;
    let summary_path = summary.map(Path::to_path_buf).unwrap_or_else(|| out.with_extension("json"));
    write_file(&summary_path, &serde_json::to_string_pretty(&s).expect("serializable"))?;
    println!(
        "{}: {} graphs, {} passed, {} failed, {} oracle-checked, {} within 4s",
        profile, s.graphs, s.passed, s.failed, s.oracle_checked, s.within_4s
    );
    for r in rows.iter().filter(|r| !r.pass) {
        eprintln!("failed: {} ({})", r.graph, r.error);
    }
    if s.failed == 0 {
        Ok(())
    } else {
        Err(Failure::Certified(format!("{} rows failed", s.failed)))
    }
}

fn verify(trace_path: &Path, graph: Option<&Path>, orientation: Option<&Path>) -> Outcome {
    let t = trace::read_trace(&read(trace_path)?)?;
    let g = graph.map(load_graph).transpose()?;
    let mut report = trace::verify(&t, g.as_ref())?;
    if let (Some(g), Some(p)) = (g.as_ref(), orientation) {
        let o = Orientation::parse(g, &read(p)?)?;
        let d = o.directed_diameter()?;
        let want = t.extension.as_ref().map(|e| e.full_diameter);
        report.checks.push(trace::Check {
            name: "orientation file".into(),
            pass: d.is_some() && d == want,
            detail: format!("diameter {d:?}, trace says {want:?}"),
        });
    }
    let stdout = io::stdout();
    let mut w = stdout.lock();
    for c in &report.checks {
        let _ = writeln!(w, "{} {}: {}", if c.pass { "pass" } else { "FAIL" }, c.name, c.detail);
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Certified("trace verification failed".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Analyze { graph, json } => analyze(&graph, json),
        Cmd::Orient {
            graph,
            epsilon,
            emit,
            trace,
            json,
        } => orient(&graph, epsilon, emit.as_deref(), trace.as_deref(), json),
        Cmd::Oracle {
            graph,
            budget,
            jobs,
            emit,
        } => run_oracle(&graph, budget, jobs, emit.as_deref()),
        Cmd::Gen {
            family,
            n,
            offsets,
            triangles,
            paths,
            length,
            min_degree,
            girth_floor,
            seed,
            profile,
            out,
        } => generate(
            family.as_deref(),
            n,
            offsets,
            triangles,
            paths,
            length,
            min_degree,
            girth_floor,
            seed,
            profile.as_deref(),
            out.as_deref(),
        ),
        Cmd::Experiment {
            profile,
            epsilon,
            out,
            jobs,
            seed,
            budget,
            summary,
        } => run_experiment(
            &profile,
            ExperimentOptions {
                epsilon,
                seed,
                jobs,
                budget,
            },
            &out,
            summary.as_deref(),
        ),
        Cmd::Verify {
            trace,
            graph,
            orientation,
        } => verify(&trace, graph.as_deref(), orientation.as_deref()),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Input(m) | Failure::Precondition(m) | Failure::Certified(m)) = &f;
            eprintln!("odiam: {m}");
            ExitCode::from(f.code())
        }
    }
}
