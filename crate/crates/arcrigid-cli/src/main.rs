//! Command-line front end: build rigid sets, verify them against truncated
//! arc complexes, enumerate arcs, and export the combinatorial objects.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc as Shared;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use arcrigid::arcs::enumerate_arcs;
use arcrigid::complex::build_complex;
use arcrigid::farey::{farey_rigid_set, torus_base, FareyTruncation};
use arcrigid::io::{arc_set_to_json, ComplexJson, RigidSetJson, TriangulationJson};
use arcrigid::rigid::{build_x, exhaustion_step, provenance_summary, RigidSetReport};
use arcrigid::surface::Surface;
use arcrigid::triangulation::base_triangulation;
use arcrigid::verify::{check_rigidity, CheckOptions};
use arcrigid::Triangulation;

#[derive(Parser)]
#[command(
    name = "rigid",
    about = "Rigid sets in arc complexes of marked surfaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Args)]
struct SurfaceArg {
    /// Surface as genus,marked-points (for example 0,4).
    #[arg(long, value_parser = parse_surface)]
    surface: Surface,
}

fn parse_surface(s: &str) -> Result<Surface, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected genus,marked-points".into());
    }
    let g: usize = parts[0].trim().parse().map_err(|e| format!("genus: {e}"))?;
    let n: usize = parts[1]
        .trim()
        .parse()
        .map_err(|e| format!("marked points: {e}"))?;
    Surface::new(g, n).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Build the rigid set of a surface and write the bundle as JSON.
    Build {
        #[command(flatten)]
        surface: SurfaceArg,
        /// Build the once-marked torus rigid set around the infinity slope.
        #[arg(long)]
        farey: bool,
        /// Extend the set by this many enumerated arcs.
        #[arg(long, default_value_t = 0)]
        exhaust: usize,
        /// Coordinate-sum bound for the arcs used by --exhaust.
        #[arg(long, default_value_t = 4)]
        bound: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a rigid-set bundle against a truncated target complex.
    Verify {
        /// Rigid-set bundle produced by `rigid build`.
        #[arg(long)]
        rigid_set: PathBuf,
        /// Target: `farey:<bound>` or `surface:<g>,<n>:<sum-bound>`.
        #[arg(long)]
        target: String,
        /// Stop enumerating maps after this many.
        #[arg(long)]
        cap: Option<usize>,
        /// Verify maps on a thread pool (RIGID_THREADS controls its size).
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate arcs by coordinate sum against the base triangulation.
    Enumerate {
        #[command(flatten)]
        surface: SurfaceArg,
        #[arg(long, default_value_t = 6)]
        bound: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the base triangulation, its dual graph, or the arc complex.
    Export {
        #[command(flatten)]
        surface: SurfaceArg,
        /// What to export: triangulation | dual | complex.
        #[arg(long, default_value = "triangulation")]
        what: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Coordinate-sum bound when exporting the complex.
        #[arg(long, default_value_t = 4)]
        bound: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in consistency checks.
    Selftest,
}

fn main() {
    let cli = Cli::parse();
    configure_threads();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            // Machine-readable error envelope on stderr.
            let env = serde_json::json!({ "error": format!("{e:#}") });
            eprintln!("{env}");
            if let Some(code) = e.downcast_ref::<ExitCode>() {
                code.0
            } else {
                1
            }
        }
    };
    std::process::exit(code);
}

/// Error wrapper carrying a dedicated process exit code.
#[derive(Debug)]
struct ExitCode(i32);

impl std::fmt::Display for ExitCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exit code {}", self.0)
    }
}
impl std::error::Error for ExitCode {}

fn configure_threads() {
    if let Ok(v) = std::env::var("RIGID_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

fn emit(out: Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?;
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                println!();
            }
        }
    }
    Ok(())
}

fn base_of(surface: Surface) -> Result<Shared<Triangulation>> {
    if surface.is_empty_complex() {
        bail!("the arc complex of {surface} is empty (EmptyComplex)");
    }
    Ok(Shared::new(base_triangulation(surface)?))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Build {
            surface,
            farey,
            exhaust,
            bound,
            out,
        } => {
            let s = surface.surface;
            let mut report: RigidSetReport = if farey {
                if s != Surface::new(1, 1).unwrap() {
                    bail!("--farey builds the once-marked torus set; got {s}");
                }
                let (_, complex) = farey_rigid_set()?;
                RigidSetReport::assemble(torus_base(), complex, "farey")?
            } else {
                if s.invariants().dim_arc_complex <= 2 {
                    if s.is_empty_complex() {
                        bail!("the arc complex of {s} is empty (EmptyComplex)");
                    }
                    bail!(
                        "{s} has arc complex of dimension {} <= 2; use --farey for the torus",
                        s.invariants().dim_arc_complex
                    );
                }
                let base = base_of(s)?;
                build_x(&base)?
            };
            if exhaust > 0 {
                let arcs = enumerate_arcs(s, bound)?;
                for x in arcs.iter().take(exhaust) {
                    report = exhaustion_step(&report, x)?;
                }
            }
            let summary = provenance_summary(&report);
            eprintln!(
                "rigid set: {} vertices, dim {}, provenance {:?}",
                report.complex.vertex_count(),
                report.complex.dimension(),
                summary
            );
            let bundle = RigidSetJson::from_report(&report);
            emit(out, &serde_json::to_string_pretty(&bundle)?)
        }
        Command::Verify {
            rigid_set,
            target,
            cap,
            parallel,
            out,
        } => {
            let text = std::fs::read_to_string(&rigid_set)
                .with_context(|| format!("reading {}", rigid_set.display()))?;
            let bundle: RigidSetJson = serde_json::from_str(&text)?;
            let report = bundle.to_report()?;
            let target_complex = parse_target(&target)?;
            let result = check_rigidity(
                &report,
                &target_complex,
                CheckOptions {
                    map_cap: cap,
                    parallel,
                },
            );
            let doc = serde_json::to_string_pretty(&result)?;
            emit(out, &doc)?;
            if result.truncation_flag {
                return Err(anyhow!(ExitCode(2)).context("map cap exceeded; run truncated"));
            }
            if !result.counterexamples.is_empty() {
                return Err(anyhow!(ExitCode(1)).context(format!(
                    "{} of {} maps are not induced by a homeomorphism",
                    result.counterexamples.len(),
                    result.maps_examined
                )));
            }
            if result.not_applicable {
                eprintln!("note: rigid set contains no full triangulation; maps counted only");
            }
            Ok(())
        }
        Command::Enumerate {
            surface,
            bound,
            out,
        } => {
            let arcs = enumerate_arcs(surface.surface, bound)?;
            eprintln!("{} arcs with coordinate sum <= {bound}", arcs.len());
            emit(out, &arc_set_to_json(&arcs))
        }
        Command::Export {
            surface,
            what,
            format,
            bound,
            out,
        } => {
            let s = surface.surface;
            match (what.as_str(), format) {
                ("triangulation", Format::Json) => {
                    let t = base_of(s)?;
                    let doc = TriangulationJson::from_triangulation(&t);
                    emit(out, &serde_json::to_string_pretty(&doc)?)
                }
                ("triangulation", Format::Dot) | ("dual", Format::Dot) => {
                    let t = base_of(s)?;
                    emit(out, &t.dual_graph_dot())
                }
                ("dual", Format::Json) => bail!("the dual graph exports as DOT"),
                ("complex", fmt) => {
                    let arcs = enumerate_arcs(s, bound)?;
                    let complex = build_complex(&arcs)?;
                    match fmt {
                        Format::Json => {
                            let doc = ComplexJson::from_complex(&complex);
                            emit(out, &serde_json::to_string_pretty(&doc)?)
                        }
                        Format::Dot => emit(out, &complex.skeleton_dot()),
                    }
                }
                (other, _) => bail!("unknown export target {other:?}"),
            }
        }
        Command::Selftest => selftest(),
    }
}

fn parse_target(spec: &str) -> Result<Shared<arcrigid::FiniteComplex>> {
    if let Some(rest) = spec.strip_prefix("farey:") {
        let bound: i64 = rest.parse().context("farey bound")?;
        let truncation = FareyTruncation::new(bound)?;
        return Ok(truncation.complex);
    }
    if let Some(rest) = spec.strip_prefix("surface:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 2 {
            bail!("expected surface:<g>,<n>:<sum-bound>");
        }
        let s = parse_surface(parts[0]).map_err(|e| anyhow!(e))?;
        let bound: i64 = parts[1].parse().context("sum bound")?;
        let arcs = enumerate_arcs(s, bound)?;
        return Ok(Shared::new(build_complex(&arcs)?));
    }
    bail!("unknown target {spec:?}; use farey:<bound> or surface:<g>,<n>:<sum-bound>")
}

fn selftest() -> Result<()> {
    let mut failures = 0;
    let mut check = |name: &str, ok: bool| {
        println!("{}: {}", name, if ok { "PASS" } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    let s03 = Surface::new(0, 3).unwrap();
    let arcs = enumerate_arcs(s03, 8)?;
    check("sphere census has six arcs", arcs.len() == 6);
    let complex = build_complex(&arcs)?;
    check(
        "sphere complex is the four-triangle tessellation",
        complex.simplex_count_of_dim(1) == 9 && complex.simplex_count_of_dim(2) == 4,
    );

    let (slopes, rigid) = farey_rigid_set()?;
    let inf = slopes
        .iter()
        .position(|s| *s == arcrigid::farey::Slope::infinity())
        .unwrap();
    check("torus rigid set has six vertices", rigid.vertex_count() == 6);
    check(
        "infinity vertex has five neighbors",
        rigid.neighbors(inf).len() == 5,
    );

    let report = RigidSetReport::assemble(torus_base(), rigid, "farey")?;
    let target = FareyTruncation::new(5)?.complex;
    let out = check_rigidity(&report, &target, CheckOptions::default());
    check(
        "all maps into the small truncation are induced",
        out.maps_examined > 0 && out.maps_induced == out.maps_examined,
    );

    let base = base_of(Surface::new(0, 4).unwrap())?;
    let mut all_flips_involutive = true;
    for e in base.flippable_edges() {
        if base.flip(e)?.flip(e)? != *base {
            all_flips_involutive = false;
        }
    }
    check("flips are involutions", all_flips_involutive);

    if failures > 0 {
        bail!("{failures} selftest checks failed");
    }
    Ok(())
}
