mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use gridobs::analysis::{component_obstacles, component_sizes, crossing_c4_check, obsnum_exact};
use gridobs::fixtures::{fixture, FixtureClass, FixtureSpec};
use gridobs::planar::{self, Mode};
use gridobs::reduction::{self, OepsAnswer, OepsCaps, Variant};
use gridobs::strip::compress_strip_stats;
use gridobs::{embed3d, par, visibility, Error, Graph, Representation};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gridobs", version, about = "Grid obstacle representations of graphs")]
struct Cli {
    /// Worker threads for the parallel kernels.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RepGraph {
    #[arg(long)]
    rep: PathBuf,
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Obstacle representation of a planar graph on Z^2.
    Embed2d {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "adaptive")]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        geometry: Option<PathBuf>,
    },
    /// Obstacle representation of any graph on Z^3.
    Embed3d {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "adaptive")]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        geometry: Option<PathBuf>,
    },
    /// Compare the visibility graph of a representation with a graph.
    Verify(RepGraph),
    /// Visibility graph of a representation.
    Visgraph {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compress a representation inside a horizontal strip.
    CompressStrip {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        height: i64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        stats: bool,
    },
    /// Build a fixture representation.
    Fixture {
        #[arg(long)]
        class: FixtureClass,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Count obstacle components.
    Components {
        #[arg(long)]
        rep: PathBuf,
        /// Print every component's points.
        #[arg(long)]
        list: bool,
    },
    /// Smallest obstacle count inside a small window.
    ObsnumExact {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "5x5", value_parser = parse_window)]
        window: (usize, usize),
        #[arg(long, default_value_t = 4)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that crossing witnesses of disjoint edges imply the spliced edges.
    CheckC4Invariant(RepGraph),
    /// Point sets for the restricted embeddability problems.
    ReduceGpse {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        #[arg(long, default_value = "gpse")]
        variant: Variant,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide obstacle embeddability on a fixed point set.
    OepsDecide {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Draw a 2D representation as SVG.
    RenderSvg {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

const LIST_LIMIT: usize = 1_000_000;

fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s.split_once('x').ok_or("expected WxH")?;
    Ok((w.parse().map_err(|_| "bad width")?, h.parse().map_err(|_| "bad height")?))
}

/// Failure with an exit code; domain failures exit 1, format errors exit 2.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(Error::Json(_) | Error::Invalid(_) | Error::UnknownVertex(_)) | None => 2,
            Some(_) => 1,
        };
        Failure { code, err }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        anyhow::Error::new(err).into()
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_graph(path: &Path) -> anyhow::Result<Graph> {
    Ok(Graph::from_json(&read(path)?)?)
}

fn load_rep(path: &Path) -> anyhow::Result<Representation> {
    Ok(Representation::from_json(&read(path)?)?)
}

fn value(json: &str) -> Value {
    serde_json::from_str(json).expect("library JSON parses")
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn emit(v: Value, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => write(p, &serde_json::to_string_pretty(&v)?),
        None => {
            print(&v);
            Ok(())
        }
    }
}

fn summary(rep: &Representation) -> Value {
    let b = rep.bounds().or_else(|| rep.extent());
    json!({
        "n": rep.n(),
        "dim": rep.dim(),
        "obstacles": rep.obstacle_count().to_string(),
        "extent": b.map(|b| (0..rep.dim()).map(|k| b.extent(k)).collect::<Vec<_>>()),
    })
}

fn embed(g: &Graph, mode: Mode, three_d: bool, out: &Path, geometry: Option<&Path>) -> Outcome {
    let (rep, geo) = if three_d { embed3d::embed3d(g, mode)? } else { planar::embed2d(g, mode)? };
    write(out, &rep.to_json())?;
    if let Some(p) = geometry {
        write(p, &geo.to_json())?;
    }
    let mut s = summary(&rep);
    s["mode"] = json!(mode.to_string());
    s["lattice_side"] = json!(geo.lattice_side());
    print(&s);
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Embed2d { graph, mode, out, geometry } => {
            embed(&load_graph(&graph)?, mode, false, &out, geometry.as_deref())
        }
        Command::Embed3d { graph, mode, out, geometry } => {
            embed(&load_graph(&graph)?, mode, true, &out, geometry.as_deref())
        }
        Command::Verify(RepGraph { rep, graph }) => {
            let report = visibility::verify(&load_rep(&rep)?, &load_graph(&graph)?)?;
            println!("{}", report.to_json());
            Ok(if report.matches { 0 } else { 1 })
        }
        Command::Visgraph { rep, out } => {
            let g = visibility::visibility_graph(&load_rep(&rep)?);
            emit(value(&g.to_json()), out.as_deref())?;
            Ok(0)
        }
        Command::CompressStrip { rep, height, out, stats } => {
            let rep = load_rep(&rep)?;
            let (compressed, st) = compress_strip_stats(&rep, height, rep.n(), Default::default())?;
            write(&out, &compressed.to_json())?;
            if stats {
                print(&serde_json::to_value(&st).map_err(anyhow::Error::from)?);
            }
            Ok(if st.within_bound { 0 } else { 1 })
        }
        Command::Fixture { class, n, m, k, h, out, graph_out } => {
            let (g, rep) = fixture(FixtureSpec::from_class(class, n, m, k, h)?)?;
            write(&out, &rep.to_json())?;
            match graph_out {
                Some(p) => {
                    write(&p, &g.to_json())?;
                    print(&summary(&rep));
                }
                None => print(&value(&g.to_json())),
            }
            Ok(0)
        }
        Command::Components { rep, list } => {
            let rep = load_rep(&rep)?;
            if list {
                let d = component_obstacles(&rep, LIST_LIMIT)?;
                print(&serde_json::to_value(&d).map_err(anyhow::Error::from)?);
            } else {
                let sizes = component_sizes(&rep)?;
                print(&json!({ "count": sizes.len(), "sizes": sizes }));
            }
            Ok(0)
        }
        Command::ObsnumExact { graph, window: (w, h), cap, out } => {
            let g = load_graph(&graph)?;
            let r = obsnum_exact(&g, w, h, cap)?;
            if let (Some(p), Some(rep)) = (&out, &r.witness) {
                write(p, &rep.to_json())?;
            }
            print(&json!({
                "value": r.value,
                "window": [w, h],
                "cap": cap,
                "placements": r.placements_searched,
                "witness": r.witness.as_ref().map(|rep| value(&rep.to_json())),
            }));
            Ok(0)
        }
        Command::CheckC4Invariant(RepGraph { rep, graph }) => {
            let report = crossing_c4_check(&load_rep(&rep)?, &load_graph(&graph)?)?;
            print(&serde_json::to_value(&report).map_err(anyhow::Error::from)?);
            Ok(if report.holds { 0 } else { 1 })
        }
        Command::ReduceGpse { n, k1, k2, variant, out } => {
            let inst = reduction::PointSetInstance::new(variant, n, k1, k2)?;
            match out {
                Some(p) => {
                    write(&p, &inst.to_json())?;
                    print(&json!({ "points": inst.len(), "variant": variant.to_string() }));
                }
                None => println!("{}", inst.to_json()),
            }
            Ok(0)
        }
        Command::OepsDecide { graph, points, out, budget } => {
            let g = load_graph(&graph)?;
            let s = reduction::parse_points(&read(&points)?)?;
            let mut caps = OepsCaps::default();
            if let Some(b) = budget {
                caps.node_budget = b;
            }
            let answer = reduction::oeps_decide(&g, &s, caps)?;
            let witness = match &answer {
                OepsAnswer::Yes(rep) => {
                    if let Some(p) = &out {
                        write(p, &rep.to_json())?;
                    }
                    Some(value(&rep.to_json()))
                }
                _ => None,
            };
            print(&json!({ "answer": answer.label(), "witness": witness }));
            Ok(0)
        }
        Command::RenderSvg { rep, out } => {
            let text = svg::render(&load_rep(&rep)?)?;
            write(&out, &text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        par::set_threads(t);
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, err }) => {
            eprintln!("error: {err:#}");
            ExitCode::from(code)
        }
    }
}
