//! Command-line front end: argument parsing, file I/O, manifests and SVG output.
//!
//! Exit codes: 0 on success or PASS, 1 on a FAIL verdict or a failed pipeline
//! stage, 2 on usage errors and unreadable input.

pub mod manifest;
pub mod svg;

use clap::{Args, Parser, Subcommand, ValueEnum};
use manifest::RunManifest;
use rydberg_mis::compile::{compile, Compiled, Targets};
use rydberg_mis::embed::{grid_embed, ingest_drawing, GridDrawing};
use rydberg_mis::energy::{decode, ground_state, region_energies, SampleOptions, SpinConfig, Strategy};
use rydberg_mis::graph::{mis_exact, Graph, MisOptions, PlanarGraph, RawGraph};
use rydberg_mis::layout::{arrange_atoms, AtomLayout, LayoutParams, WallPolicy};
use rydberg_mis::series::structure_constants;
use rydberg_mis::verify::{verify_instance, VerifyOptions};
use rydberg_mis::Error;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::{Path, PathBuf};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "RYDBERG_THREADS";

#[derive(Parser, Debug)]
#[command(name = "rydberg", version, about = "Compile maximum independent set instances to Rydberg atom arrays and verify ground states")]
struct Cli {
    /// Tolerance for series evaluation.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    /// Write the result to this file instead of stdout.
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct TargetArgs {
    /// Target effective pseudo-spin detuning.
    #[arg(long, default_value_t = 0.2)]
    delta_eff: f64,
    /// Detuning of segment atoms.
    #[arg(long, default_value_t = 0.52)]
    delta_b: f64,
    /// Base detuning of leg atoms.
    #[arg(long, default_value_t = 0.53)]
    delta_inf: f64,
    /// Interaction coefficient C in units of the closest-pair interaction.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
}

impl TargetArgs {
    fn targets(&self) -> Targets {
        Targets { delta_eff: self.delta_eff, delta_b: self.delta_b, delta_inf: self.delta_inf }
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct SolveArgs {
    /// Ground-state strategy: auto, full, is, is-enum or sample.
    #[arg(long, default_value = "auto", value_parser = parse_strategy)]
    strategy: Strategy,
    /// Number of samples for the sample strategy.
    #[arg(long, default_value_t = SampleOptions::default().samples)]
    samples: u64,
    /// Seed for the sample strategy.
    #[arg(long, default_value_t = SampleOptions::default().seed)]
    seed: u64,
}

impl SolveArgs {
    fn sample(&self) -> SampleOptions {
        SampleOptions { samples: self.samples, seed: self.seed }
    }
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse::<Strategy>().map_err(|e| e.to_string())
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum RenderKind {
    Layout,
    Instance,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of series constants with published digits side by side.
    Constants {
        /// Also evaluate finite-size structure values for this q.
        #[arg(long)]
        q: Option<u64>,
        /// Irregular-segment parameter for the finite-size values.
        #[arg(long)]
        phi: Option<u64>,
        /// Emit JSON instead of the text table.
        #[arg(long)]
        json: bool,
    },
    /// Orthogonal grid drawing of a planar graph of maximum degree 3.
    Embed { graph: PathBuf },
    /// Atom positions for a grid drawing.
    Arrange {
        drawing: PathBuf,
        #[arg(long, default_value_t = 8)]
        k: u32,
        #[arg(long, default_value_t = 7)]
        phi: u32,
    },
    /// Detunings and effective model for an atom layout.
    Compile {
        layout: PathBuf,
        #[command(flatten)]
        targets: TargetArgs,
        /// Emit the instance even when a window check fails.
        #[arg(long)]
        allow_infeasible: bool,
    },
    /// Exact or sampled ground state of a compiled instance.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Pseudo-spins, graph witness and diagnostics of an atom configuration.
    Decode {
        instance: PathBuf,
        /// A 0/1 string, or a file holding one or a solve result.
        config: String,
    },
    /// Whole pipeline on one graph with a PASS/FAIL verdict.
    Verify {
        graph: PathBuf,
        #[arg(long, default_value_t = 8)]
        k: u32,
        /// Defaults to the smallest value with open windows.
        #[arg(long)]
        phi: Option<u32>,
        #[command(flatten)]
        targets: TargetArgs,
        #[command(flatten)]
        solve: SolveArgs,
        /// Use this drawing instead of computing one.
        #[arg(long)]
        drawing: Option<PathBuf>,
        /// Report per-stage wall time (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// SVG figure of a layout or an instance.
    Render {
        kind: RenderKind,
        input: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Exact maximum independent set of a graph.
    OracleMis {
        graph: PathBuf,
        /// Also count the maximum independent sets.
        #[arg(long)]
        count: bool,
    },
}

enum Failure {
    Usage(String),
    Stage(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Stage(e)
    }
}

fn root(e: &Error) -> &Error {
    match e {
        Error::Stage { source, .. } => root(source),
        other => other,
    }
}

fn exit_code(e: &Error) -> i32 {
    match root(e) {
        Error::Parse { .. } | Error::Io(_) | Error::InvalidGraph(_) | Error::InvalidDrawing(_) | Error::ParameterWindow(_) => 2,
        _ => 1,
    }
}

struct Output {
    body: String,
    exit: i32,
}

fn read(path: &Path, m: &mut RunManifest) -> Result<String, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    m.add_input(path, &bytes);
    String::from_utf8(bytes).map_err(|e| Failure::Stage(Error::Io(format!("{}: {e}", path.display()))))
}

fn planar(text: &str) -> Result<PlanarGraph, Failure> {
    Ok(PlanarGraph::new(&RawGraph::parse(text)?)?)
}

/// Attaches the manifest and pretty-prints.
fn emit(mut v: Value, m: &RunManifest) -> String {
    if let Value::Object(map) = &mut v {
        map.insert("manifest".into(), m.to_value());
    }
    serde_json::to_string_pretty(&v).expect("output serializes") + "\n"
}

fn parse_value(text: &str) -> Value {
    serde_json::from_str(text).expect("library JSON parses")
}

fn read_config(arg: &str, m: &mut RunManifest) -> Result<Vec<bool>, Failure> {
    let path = Path::new(arg);
    let text = if path.is_file() { read(path, m)? } else { arg.to_string() };
    let t = text.trim();
    let s = if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(Error::from)?;
        let field = ["config", "ground_config"].iter().find_map(|k| v.get(*k).and_then(Value::as_str).map(str::to_string));
        field.ok_or_else(|| Failure::Usage("JSON configuration needs a \"config\" string".into()))?
    } else {
        t.to_string()
    };
    let cfg: SpinConfig = s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    Ok(cfg.0)
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    let out_paths: Vec<String> = cli.out.iter().map(|p| p.display().to_string()).collect();
    let ok = |body: String| Ok(Output { body, exit: 0 });
    match &cli.cmd {
        Command::Constants { q, phi, json } => {
            let mut m = RunManifest::new("constants", json!({"q": q, "phi": phi, "tol": cli.tol}));
            m.outputs = out_paths;
            let table = structure_constants(*q, *phi, cli.tol);
            if *json {
                ok(emit(serde_json::to_value(&table).expect("table serializes"), &m))
            } else {
                ok(format!("{}# manifest sha256 {}\n", table.to_text(), m.hash()))
            }
        }
        Command::Embed { graph } => {
            let mut m = RunManifest::new("embed", json!({}));
            m.outputs = out_paths;
            let g = planar(&read(graph, &mut m)?)?;
            let d = grid_embed(&g).map_err(|e| e.at_stage("embed"))?;
            ok(emit(parse_value(&d.to_json()), &m))
        }
        Command::Arrange { drawing, k, phi } => {
            let mut m = RunManifest::new("arrange", json!({"k": k, "phi": phi}));
            m.outputs = out_paths;
            let (d, g, _) = ingest_drawing(&read(drawing, &mut m)?)?;
            let params = LayoutParams::new(*k, *phi)?;
            let layout = arrange_atoms(&d, &g, params).map_err(|e| e.at_stage("arrange"))?;
            ok(emit(parse_value(&layout.to_json()), &m))
        }
        Command::Compile { layout, targets, allow_infeasible } => {
            let mut m = RunManifest::new(
                "compile",
                json!({"delta_eff": targets.delta_eff, "delta_b": targets.delta_b, "delta_inf": targets.delta_inf, "C": targets.c, "allow_infeasible": allow_infeasible}),
            );
            m.outputs = out_paths;
            let l = AtomLayout::from_json(&read(layout, &mut m)?)?;
            let c = compile(&l, targets.targets(), targets.c, *allow_infeasible).map_err(|e| e.at_stage("compile"))?;
            let mut v = parse_value(&c.to_json());
            v["feasibility"] = serde_json::to_value(&c.report).expect("report serializes");
            let exit = if c.report.feasible() { 0 } else { 1 };
            Ok(Output { body: emit(v, &m), exit })
        }
        Command::Solve { instance, solve } => {
            let mut m = RunManifest::new("solve", json!({"strategy": solve.strategy, "samples": solve.samples}));
            m.seed = Some(solve.seed);
            m.outputs = out_paths;
            let c = Compiled::from_json(&read(instance, &mut m)?)?;
            let l = &c.instance.layout;
            let mis = mis_exact(&l.graph, &MisOptions::default()).map_err(|e| e.at_stage("mis"))?;
            let hint = l.encode_reference_config(&mis.witness, WallPolicy::Centered)?;
            let gs = ground_state(&c.instance.model(), &l.unit_disk_graph(), solve.strategy, Some(&hint), solve.sample())
                .map_err(|e| e.at_stage("solve"))?;
            let v = json!({
                "atoms": l.len(),
                "config": SpinConfig(gs.config.clone()).to_string(),
                "energy": gs.energy,
                "certificate": gs.certificate,
            });
            ok(emit(v, &m))
        }
        Command::Decode { instance, config } => {
            let mut m = RunManifest::new("decode", json!({}));
            m.outputs = out_paths;
            let c = Compiled::from_json(&read(instance, &mut m)?)?;
            let cfg = read_config(config, &mut m)?;
            let l = &c.instance.layout;
            if cfg.len() != l.len() {
                return Err(Failure::Usage(format!("configuration has {} atoms, instance has {}", cfg.len(), l.len())));
            }
            let model = c.instance.model();
            let dec = decode(&cfg, l);
            let regions = region_energies(l, &model, &cfg);
            let v = json!({
                "energy": model.energy(&cfg),
                "pseudo_spins": SpinConfig(dec.pseudo_spins.clone()).to_string(),
                "witness": dec.witness,
                "independent": l.graph.check_independent(&dec.witness).is_ok(),
                "diagnostics": dec.diagnostics,
                "regions": regions,
            });
            ok(emit(v, &m))
        }
        Command::Verify { graph, k, phi, targets, solve, drawing, timings } => {
            let mut m = RunManifest::new(
                "verify",
                json!({"k": k, "phi": phi, "delta_eff": targets.delta_eff, "delta_b": targets.delta_b, "delta_inf": targets.delta_inf, "C": targets.c, "strategy": solve.strategy, "samples": solve.samples}),
            );
            m.seed = Some(solve.seed);
            m.outputs = out_paths;
            let g = planar(&read(graph, &mut m)?)?;
            let drawing = match drawing {
                Some(p) => Some(GridDrawing::from_json(&read(p, &mut m)?)?),
                None => None,
            };
            let opts = VerifyOptions {
                k: *k,
                phi: *phi,
                targets: targets.targets(),
                c: targets.c,
                strategy: solve.strategy,
                sample: solve.sample(),
                mis: MisOptions::default(),
                drawing,
                timings: *timings,
            };
            let (verdict, _) = verify_instance(&g, &opts)?;
            eprintln!("{}", if verdict.pass { "PASS" } else { "FAIL" });
            let exit = if verdict.pass { 0 } else { 1 };
            Ok(Output { body: emit(serde_json::to_value(&verdict).expect("verdict serializes"), &m), exit })
        }
        Command::Render { kind, input, svg: path } => {
            let mut m = RunManifest::new("render", json!({"kind": format!("{kind:?}").to_lowercase()}));
            m.outputs = vec![path.display().to_string()];
            let text = read(input, &mut m)?;
            let scene = match kind {
                RenderKind::Layout => svg::Scene::from_layout(&AtomLayout::from_json(&text)?),
                RenderKind::Instance => svg::Scene::from_instance(&Compiled::from_json(&text)?),
            };
            let provenance = format!("manifest sha256 {} {}", m.hash(), serde_json::to_string(&m).expect("manifest serializes"));
            let doc = svg::render_svg(&scene, &provenance);
            std::fs::write(path, doc).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            ok(emit(json!({"svg": path.display().to_string(), "circles": scene.points.len(), "segments": scene.edges.len()}), &m))
        }
        Command::OracleMis { graph, count } => {
            let mut m = RunManifest::new("oracle-mis", json!({"count": count}));
            m.outputs = out_paths;
            let raw = RawGraph::parse(&read(graph, &mut m)?)?;
            let edges: Vec<(usize, usize)> = raw.edges.iter().map(|e| (e[0], e[1])).collect();
            let g = Graph::from_edges(raw.n, &edges)?;
            let opts = MisOptions { count: *count, ..MisOptions::default() };
            let r = mis_exact(&g, &opts).map_err(|e| e.at_stage("mis"))?;
            ok(emit(serde_json::to_value(&r).expect("result serializes"), &m))
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|s| s.parse::<usize>().ok()) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match dispatch(&cli) {
        Ok(out) => {
            match &cli.out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, &out.body) {
                        eprintln!("error: {}: {e}", p.display());
                        return 2;
                    }
                }
                None => print!("{}", out.body),
            }
            out.exit
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(Failure::Stage(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
