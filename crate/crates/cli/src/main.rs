mod config;
mod curve_spec;
mod output;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use pegs_core::cyclohedron::{enumerate_faces, f_vector_csv};
use pegs_core::solver::{solve, SolveReport};
use pegs_core::testmaps::TestMapKind;
use pegs_core::verify::{run_case, CaseOutcome, ReferenceCase};
use serde::Serialize;

use config::{read_config_file, Overrides, RunConfig};

const EXIT_FAILED: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_NO_ZEROS: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "pegs", version, about = "Find polygons inscribed in closed curves")]
struct Cli {
    /// Flat key=value file with defaults for the flags below.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Worker threads for the grid scan (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search a curve for inscribed squares, affine-regular hexagons or rhombi.
    Find(FindArgs),
    /// Enumerate the face lattice of the cyclohedron W_n.
    Cyclohedron(CyclohedronArgs),
    /// Rerun the reference transversality and boundary checks.
    Verify(VerifyArgs),
}

#[derive(clap::Args, Debug)]
struct FindArgs {
    /// circle | ellipse:a,b | rounded-poly:x1,y1;x2,y2;...@rho | helix-chord[:rho] | file:path.csv
    #[arg(long)]
    curve: Option<String>,
    /// square | hexagon | rhombus
    #[arg(long)]
    kind: Option<TestMapKind>,
    /// Grid points per circle for the initial scan [default: 32]
    #[arg(long)]
    grid: Option<usize>,
    /// Newton residual tolerance [default: 1e-10]
    #[arg(long)]
    tol: Option<f64>,
    /// Cluster ratio below which a zero counts as a boundary point [default: 0.05]
    #[arg(long)]
    stratum_threshold: Option<f64>,
    /// Finite-difference step for Jacobians [default: 1e-6]
    #[arg(long)]
    fd_step: Option<f64>,
    /// Recorded in the output; the search itself is deterministic [default: 20080604]
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Plot file: SVG for planar curves, vertex CSV (same stem, .csv) for space curves.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args, Debug)]
struct CyclohedronArgs {
    /// Number of points, 3..=9.
    #[arg(long)]
    n: usize,
    /// Face lattice as JSON, or the f-vector as a CSV line `n,f0,f1,...`.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    /// ellipse-square | triangle-hexagon | helix-rhombus | boundary (default: all)
    #[arg(long)]
    case: Option<ReferenceCase>,
    /// Seed for boundary sampling [default: 20080604]
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// An error together with the exit code it maps to.
struct Failure(u8, anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(EXIT_FAILED, e.into())
    }
}

fn bad_input(e: impl Into<anyhow::Error>) -> Failure {
    Failure(EXIT_BAD_INPUT, e.into())
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct FindOutput<'a> {
    #[serde(flatten)]
    report: &'a SolveReport,
    config: &'a RunConfig,
}

fn cmd_find(args: FindArgs, threads: Option<usize>, file: &BTreeMap<String, String>) -> Result<u8, Failure> {
    let cli = Overrides {
        curve: args.curve,
        kind: args.kind,
        grid: args.grid,
        tol: args.tol,
        stratum_threshold: args.stratum_threshold,
        fd_step: args.fd_step,
        seed: args.seed,
        out: args.out,
        svg: args.svg,
        threads,
    };
    let rc = RunConfig::resolve("find", cli, file).map_err(bad_input)?;
    set_threads(rc.threads)?;
    let spec = rc.curve.clone().ok_or_else(|| bad_input(anyhow!("--curve is required")))?;
    let kind = rc.kind.ok_or_else(|| bad_input(anyhow!("--kind is required")))?;
    let curve = curve_spec::parse_curve(&spec).map_err(bad_input)?;

    let report = solve(&curve, kind, &rc.solve_options()).map_err(bad_input)?;
    log::info!("{} candidates, failures {:?}", report.candidates, report.failures);
    emit(&output::to_json(&FindOutput { report: &report, config: &rc })?, rc.out.as_deref())?;

    if let Some(path) = &rc.svg {
        if curve.dim() == 2 {
            std::fs::write(path, output::svg(&curve, &report)).with_context(|| format!("writing {}", path.display()))?;
        } else {
            let csv = path.with_extension("csv");
            std::fs::write(&csv, output::vertex_csv(&report)).with_context(|| format!("writing {}", csv.display()))?;
            log::info!("space curve: vertices written to {}", csv.display());
        }
    }
    eprintln!(
        "{} {}: {} orbit(s), mod2 {}, {} pseudo-solution(s) rejected",
        report.curve,
        report.kind,
        report.orbits.len(),
        report.mod2_count,
        report.rejected_pseudo
    );
    Ok(if report.orbits.is_empty() { EXIT_NO_ZEROS } else { 0 })
}

fn cmd_cyclohedron(args: CyclohedronArgs) -> Result<u8, Failure> {
    let lattice = enumerate_faces(args.n).map_err(bad_input)?;
    let text = match args.format {
        Format::Json => output::to_json(&lattice.to_json())?,
        Format::Csv => format!("{}\n", f_vector_csv(&lattice)),
    };
    emit(&text, args.out.as_deref())?;
    Ok(0)
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    passed: bool,
    cases: &'a [CaseOutcome],
    config: &'a RunConfig,
}

fn cmd_verify(args: VerifyArgs, threads: Option<usize>, file: &BTreeMap<String, String>) -> Result<u8, Failure> {
    let cli = Overrides { seed: args.seed, out: args.out, threads, ..Default::default() };
    let rc = RunConfig::resolve("verify", cli, file).map_err(bad_input)?;
    let cases: Vec<ReferenceCase> = match args.case {
        Some(c) => vec![c],
        None => ReferenceCase::ALL.to_vec(),
    };
    let mut outcomes = Vec::new();
    for case in cases {
        let o = run_case(case, rc.seed)?;
        eprintln!("{} {case}", if o.passed { "PASS" } else { "FAIL" });
        outcomes.push(o);
    }
    let passed = outcomes.iter().all(|o| o.passed);
    emit(&output::to_json(&VerifyOutput { passed, cases: &outcomes, config: &rc })?, rc.out.as_deref())?;
    Ok(if passed { 0 } else { EXIT_FAILED })
}

fn set_threads(threads: Option<usize>) -> Result<(), Failure> {
    if let Some(k) = threads {
        if k == 0 {
            return Err(bad_input(anyhow!("--threads must be positive")));
        }
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let file = match &cli.config {
        Some(p) => read_config_file(p).map_err(bad_input)?,
        None => BTreeMap::new(),
    };
    match cli.command {
        Command::Find(a) => cmd_find(a, cli.threads, &file),
        Command::Cyclohedron(a) => cmd_cyclohedron(a),
        Command::Verify(a) => cmd_verify(a, cli.threads, &file),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("PEGS_LOG", "warn"))
        .format_timestamp(None)
        .init();
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
