//! `laman`: generate plane Laman graphs, draw them as L-contact
//! representations, inspect intermediate stages and validate drawings.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 not Laman, 3 unsupported
//! embedding, 4 internal invariant failure, 5 invalid representation.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use planar_laman::graph::GraphError;
use planar_laman::henneberg::{generate, replay, HennebergSequence};
use planar_laman::lcontact::{LContactRepresentation, Quadrant};
use planar_laman::pipeline::{run, run_with_sequence, PipelineArtifacts, PipelineError, Stage};
use planar_laman::{validate_laman, GraphJson, LamanVerdict, PlaneGraph};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "laman",
    version,
    about = "L-contact representations of plane Laman graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Random plane Laman graph from a seeded Henneberg sequence.
    Generate {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the whole construction and write the artifact bundle.
    Draw {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Use this Henneberg sequence instead of decomposing the graph.
        #[arg(long)]
        henneberg: Option<PathBuf>,
        /// Seed recorded in the bundle metadata.
        #[arg(long)]
        seed: Option<u64>,
        /// Include per-stage timings (makes the output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Check representations against their graphs.
    Validate {
        /// Representation files, or bundles written by `draw`.
        files: Vec<PathBuf>,
        /// Graph for files that are bare representations.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Dump a single intermediate stage.
    Stage {
        graph: PathBuf,
        #[arg(long)]
        stage: Stage,
        #[arg(long)]
        henneberg: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Laman verdict only.
    Check { graph: PathBuf },
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn parse(msg: impl Into<String>) -> Self {
        Failure {
            code: 1,
            msg: msg.into(),
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn graph_from(json: &GraphJson) -> Result<PlaneGraph, Failure> {
    PlaneGraph::from_json(json).map_err(|e| match e {
        GraphError::NotAFace(_) | GraphError::NotPlanar(_) => Failure {
            code: 3,
            msg: e.to_string(),
        },
        _ => Failure::parse(e.to_string()),
    })
}

fn load_graph(path: &Path) -> Result<PlaneGraph, Failure> {
    graph_from(&read_json(path)?)
}

fn not_laman(v: &LamanVerdict) -> Failure {
    let LamanVerdict::Rejected {
        witness,
        induced_edges,
        reason,
    } = v
    else {
        unreachable!("accepted verdict");
    };
    Failure {
        code: 2,
        msg: format!(
            "not Laman ({reason:?}): witness W = {witness:?} induces {induced_edges} edges, bound is {}",
            (2 * witness.len()).saturating_sub(3)
        ),
    }
}

fn pipeline(g: &PlaneGraph, henneberg: Option<&Path>) -> Result<PipelineArtifacts, Failure> {
    let result = match henneberg {
        None => run(g),
        Some(path) => {
            let seq: HennebergSequence = read_json(path)?;
            let verdict = validate_laman(g);
            if !verdict.is_accepted() {
                return Err(not_laman(&verdict));
            }
            if !g.is_two_connected() {
                return Err(Failure {
                    code: 3,
                    msg: "graph is not 2-connected".into(),
                });
            }
            let built =
                replay(&seq).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
            if built.to_json() != g.to_json() {
                return Err(Failure::parse(format!(
                    "{}: sequence does not build the input graph",
                    path.display()
                )));
            }
            run_with_sequence(g, seq)
        }
    };
    result.map_err(|e| match &e {
        PipelineError::NotLaman(v) => not_laman(v),
        PipelineError::Embedding(_) => Failure {
            code: 3,
            msg: e.to_string(),
        },
        PipelineError::Internal { .. } => Failure {
            code: 4,
            msg: e.to_string(),
        },
    })
}

fn emit(value: &impl serde::Serialize, out: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    write_text(&text, out)
}

fn write_text(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::parse(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::parse(e.to_string())),
    }
}

fn quadrant_color(q: Quadrant) -> &'static str {
    match q {
        Quadrant::I => "#d62728",
        Quadrant::II => "#1f77b4",
        Quadrant::III => "#2ca02c",
        Quadrant::IV => "#9467bd",
    }
}

fn svg(r: &LContactRepresentation) -> String {
    const CELL: i64 = 40;
    let max = r
        .shapes
        .iter()
        .flat_map(|s| [s.bend, s.h_end, s.v_end])
        .flatten()
        .max()
        .unwrap_or(1)
        + 1;
    let size = max * CELL;
    let px = |p: [i64; 2]| (p[0] * CELL, size - p[1] * CELL);
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    writeln!(
        s,
        r##"<rect width="{size}" height="{size}" fill="#ffffff"/>"##
    )
    .unwrap();
    for i in 0..=max {
        let c = i * CELL;
        writeln!(
            s,
            r##"<line x1="{c}" y1="0" x2="{c}" y2="{size}" stroke="#dddddd" stroke-width="1"/>"##
        )
        .unwrap();
        writeln!(
            s,
            r##"<line x1="0" y1="{c}" x2="{size}" y2="{c}" stroke="#dddddd" stroke-width="1"/>"##
        )
        .unwrap();
    }
    for shape in &r.shapes {
        let (hx, hy) = px(shape.h_end);
        let (bx, by) = px(shape.bend);
        let (vx, vy) = px(shape.v_end);
        writeln!(
            s,
            r#"<polyline points="{hx},{hy} {bx},{by} {vx},{vy}" fill="none" stroke="{}" stroke-width="4" stroke-linecap="square"/>"#,
            quadrant_color(shape.ty)
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
            bx + 4,
            by - 4,
            shape.v
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

/// Validates one file; returns a report line and whether it passed.
fn validate_file(path: &Path, graph: Option<&PlaneGraph>) -> Result<(String, bool), Failure> {
    let value: Value = read_json(path)?;
    let (g, repr) = match value.get("representation") {
        Some(repr) => {
            let gj: GraphJson = serde_json::from_value(value["graph"].clone())
                .map_err(|e| Failure::parse(format!("{}: graph: {e}", path.display())))?;
            (graph_from(&gj)?, repr.clone())
        }
        None => {
            let g = graph.ok_or_else(|| {
                Failure::parse(format!(
                    "{}: bare representation needs --graph",
                    path.display()
                ))
            })?;
            (g.clone(), value)
        }
    };
    let repr: LContactRepresentation = serde_json::from_value(repr)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    Ok(
        match planar_laman::lcontact::validate_representation(&g, &repr) {
            Ok(()) => (format!("{}: valid", path.display()), true),
            Err(v) => (
                format!(
                    "{}: invalid, clause ({:?}): {}",
                    path.display(),
                    v.clause,
                    v.witness
                ),
                false,
            ),
        },
    )
}

fn cmd_validate(files: &[PathBuf], graph: Option<&Path>, jobs: usize) -> Result<(), Failure> {
    if files.is_empty() {
        return Err(Failure::parse("no representation files given"));
    }
    let graph = graph.map(load_graph).transpose()?;
    let jobs = jobs.clamp(1, files.len());
    let chunk = files.len().div_ceil(jobs);
    let results: Vec<Result<(String, bool), Failure>> = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .chunks(chunk)
            .map(|part| {
                let graph = graph.as_ref();
                scope.spawn(move || {
                    part.iter()
                        .map(|p| validate_file(p, graph))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("validation thread panicked"))
            .collect()
    });
    let mut invalid = 0;
    for r in results {
        let (line, ok) = r?;
        println!("{line}");
        invalid += usize::from(!ok);
    }
    if invalid > 0 {
        return Err(Failure {
            code: 5,
            msg: format!("{invalid} invalid representation(s)"),
        });
    }
    Ok(())
}

fn execute(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Generate { n, seed, out } => {
            if n < 3 {
                return Err(Failure::parse("n must be at least 3"));
            }
            emit(&generate(n, seed).to_json(), out.as_deref())
        }
        Command::Draw {
            graph,
            out,
            svg: svg_path,
            henneberg,
            seed,
            timings,
        } => {
            let g = load_graph(&graph)?;
            let mut a = pipeline(&g, henneberg.as_deref())?;
            a.seed = seed;
            emit(&a.bundle_json(timings), out.as_deref())?;
            if let Some(p) = svg_path {
                write_text(&svg(&a.representation), Some(&p))?;
            }
            a.validate().map_err(|v| Failure {
                code: 5,
                msg: format!(
                    "representation invalid, clause ({:?}): {}",
                    v.clause, v.witness
                ),
            })
        }
        Command::Validate { files, graph, jobs } => cmd_validate(&files, graph.as_deref(), jobs),
        Command::Stage {
            graph,
            stage,
            henneberg,
            out,
        } => {
            let g = load_graph(&graph)?;
            let a = pipeline(&g, henneberg.as_deref())?;
            emit(&a.stage_json(stage), out.as_deref())
        }
        Command::Check { graph } => {
            let g = load_graph(&graph)?;
            let verdict = validate_laman(&g);
            let accepted = verdict.is_accepted();
            emit(&json!({ "laman": accepted, "verdict": verdict }), None)?;
            if accepted {
                Ok(())
            } else {
                Err(not_laman(&verdict))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("laman: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
