use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value as Json};

use lefdist::curvature::{self, FourierField, MetricGrid, Stencil, Topology};
use lefdist::lefschetz::{self, IndexConvention, ToralAutomorphism};
use lefdist::lie::{self, LieAlgebra};
use lefdist::models::{self, FlowSpec, HomogeneousSpec, Monodromy, SuspensionSpec};
use lefdist::verify::{self, Suite, VerifyOptions};
use lefdist::{Error, IntMatrix, MergeTolerance, Value};

mod render;

const MAX_TORUS_WINDOW: u64 = 10_000;
const DEFAULT_TORUS_WINDOW: u64 = 5;
const GRID_RANGE: std::ops::RangeInclusive<usize> = curvature::MIN_NODES..=4096;
const SEED_VAR: &str = "LEFSCHETZ_SEED";

#[derive(Parser)]
#[command(name = "lefdist", version, about = "Lefschetz distributions of Lie foliation model families")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Truncation window: |k| <= K for mapping tori, |t| <= T for flows.
    #[arg(long, global = true, value_name = "K")]
    window: Option<String>,
    /// Merge tolerance for inexact atom locations; error bound for
    /// Gauss–Bonnet checks.
    #[arg(long, global = true, value_name = "T")]
    tolerance: Option<f64>,
    /// Nodes per axis for sampled metrics (8..=4096).
    #[arg(long, global = true, value_name = "N")]
    grid: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Sign convention for fixed-point indices.
    #[arg(long, global = true, default_value = "paper")]
    convention: IndexConvention,
    /// Append a "run" block with version, seed and wall-clock time.
    #[arg(long, global = true)]
    run_info: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// χ(X)δ_0 + Σ L(F^k)δ_k for a toral automorphism or graded map.
    MappingTorus {
        /// Inline integer matrix, e.g. "[[2,1],[1,1]]".
        #[arg(long, conflicts_with_all = ["input", "json"])]
        matrix: Option<String>,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Atoms at multiples of closed-orbit periods.
    Flow(InputArgs),
    /// vol(G)·χ(X)·δ_e.
    Suspension {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, conflicts_with_all = ["input", "json"], requires = "chi_x")]
        vol_g: Option<String>,
        #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["input", "json"])]
        chi_x: Option<i64>,
    },
    /// Distributional traces of a genus-g surface suspension.
    SurfaceSuspension {
        #[arg(long, default_value_t = 2)]
        genus: u32,
    },
    /// Nilpotent homogeneous foliation: Tr^i = dim H^i(k), L = 0.
    Nilfoliation {
        /// JSON file with a bracket table, or a builtin name (heisenberg,
        /// sl2, free-2-3, free-3-2, abelianN, filiformN, heisenbergN).
        #[arg(long)]
        algebra: String,
    },
    /// Selberg-type formula over conjugacy classes.
    Selberg(InputArgs),
    /// (1/2π)∬ K dA for a sampled metric.
    GaussBonnet {
        /// Grid as JSON or CSV.
        #[arg(long, conflicts_with_all = ["metric", "constant_curvature"])]
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        metric: Option<MetricKind>,
        /// Closed surface of constant curvature K; needs --area.
        #[arg(long, allow_negative_numbers = true, requires = "area", conflicts_with = "metric")]
        constant_curvature: Option<f64>,
        #[arg(long)]
        area: Option<f64>,
        #[arg(long, default_value = "fourth")]
        stencil: Stencil,
        /// Include per-node K in the report.
        #[arg(long)]
        with_curvature: bool,
    },
    /// Run the cross-oracle battery.
    Verify {
        #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
        suite: String,
    },
    /// Fixed points of A^k on the torus with their indices.
    FixedPoints {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        k: i64,
    },
}

#[derive(Args)]
struct InputArgs {
    /// JSON input file ("-" for stdin).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline JSON input.
    #[arg(long, conflicts_with = "input")]
    json: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MetricKind {
    Flat,
    Sphere,
    Random,
    Conformal,
}

/// Domain failures exit 1; malformed input and I/O failures exit 2.
enum Failure {
    Domain(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Input(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

/// A report plus whether it represents a failed check.
struct Emitted {
    body: Json,
    ok: bool,
}

fn emit(body: impl Serialize) -> Outcome<Emitted> {
    Ok(Emitted { body: serde_json::to_value(body).map_err(|e| Failure::Input(e.to_string()))?, ok: true })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = seed().and_then(|seed| run(&cli, seed).map(|e| (e, seed)));
    match result {
        Ok((mut emitted, seed)) => {
            if cli.global.run_info {
                if let Json::Object(map) = &mut emitted.body {
                    map.insert("run".into(), run_info(seed));
                }
            }
            let text = match cli.global.format {
                Format::Json => serde_json::to_string_pretty(&emitted.body).expect("JSON values serialize") + "\n",
                Format::Table => render::table(&emitted.body),
            };
            if let Err(e) = write_output(cli.global.output.as_deref(), &text) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if emitted.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run_info(seed: u64) -> Json {
    let now = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    json!({ "version": env!("CARGO_PKG_VERSION"), "seed": seed, "unix_time": now })
}

fn seed() -> Outcome<u64> {
    match std::env::var(SEED_VAR) {
        Err(_) => Ok(verify::DEFAULT_SEED),
        Ok(s) => {
            let s = s.trim();
            let parsed = match s.strip_prefix("0x") {
                Some(hex) => u64::from_str_radix(hex, 16),
                None => s.parse(),
            };
            parsed.map_err(|_| Failure::Input(format!("{SEED_VAR} must be an unsigned integer, got {s:?}")))
        }
    }
}

fn read_input(args: &InputArgs) -> Outcome<String> {
    match (&args.input, &args.json) {
        (_, Some(text)) => Ok(text.clone()),
        (Some(p), None) if p.as_os_str() == "-" => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
        (Some(p), None) => fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        (None, None) => Err(Failure::Input("no input: pass --input PATH or --json TEXT".into())),
    }
}

/// Splits an optional top-level "window" field off a JSON object.
fn take_window(text: &str) -> Outcome<(Option<Json>, String)> {
    let mut v: Json = serde_json::from_str(text).map_err(|e| Failure::Input(format!("malformed JSON: {e}")))?;
    let window = v.as_object_mut().and_then(|m| m.remove("window"));
    Ok((window, v.to_string()))
}

fn json_scalar_string(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn tolerance(g: &Global) -> Outcome<Option<f64>> {
    match g.tolerance {
        Some(t) if !(t.is_finite() && t > 0.0) => Err(Failure::Input(format!("--tolerance must be a positive number, got {t}"))),
        t => Ok(t),
    }
}

fn grid(g: &Global, default: usize) -> Outcome<usize> {
    let n = g.grid.unwrap_or(default);
    if GRID_RANGE.contains(&n) {
        Ok(n)
    } else {
        Err(Failure::Input(format!("--grid must be in {}..={}, got {n}", GRID_RANGE.start(), GRID_RANGE.end())))
    }
}

fn parse_int_matrix(text: &str) -> Outcome<IntMatrix> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("malformed matrix {text:?}: {e}")))
}

fn run(cli: &Cli, seed: u64) -> Outcome<Emitted> {
    let g = &cli.global;
    match &cli.command {
        Command::MappingTorus { matrix, input } => {
            let (monodromy, file_window) = match matrix {
                Some(m) => (Monodromy::Toral(ToralAutomorphism::new(parse_int_matrix(m)?)?), None),
                None => {
                    let (w, rest) = take_window(&read_input(input)?)?;
                    (Monodromy::from_json(&rest)?, w)
                }
            };
            let window = match (&g.window, file_window) {
                (Some(w), _) => w.trim().to_string(),
                (None, Some(w)) => json_scalar_string(&w),
                (None, None) => DEFAULT_TORUS_WINDOW.to_string(),
            };
            let window: u64 = window
                .parse()
                .ok()
                .filter(|w| *w <= MAX_TORUS_WINDOW)
                .ok_or_else(|| Failure::Input(format!("window must be an integer in 0..={MAX_TORUS_WINDOW}, got {window:?}")))?;
            emit(models::mapping_torus_report(&monodromy, window)?)
        }
        Command::Flow(input) => {
            let spec = FlowSpec::from_json(&read_input(input)?)?;
            let window = match (&g.window, spec.window) {
                (Some(w), _) => w.parse::<Value>()?,
                (None, Some(w)) => w,
                (None, None) => return Err(Failure::Input("flow needs a window: pass --window T or a \"window\" field".into())),
            };
            let tol = tolerance(g)?.map_or(MergeTolerance::Default, MergeTolerance::Explicit);
            emit(models::flow_report(&spec.orbits, &window, g.convention, tol)?)
        }
        Command::Suspension { input, vol_g, chi_x } => {
            let spec = match (vol_g, chi_x) {
                (_, Some(chi)) => SuspensionSpec {
                    vol_g: vol_g.as_deref().unwrap_or("1").parse()?,
                    chi_x: (*chi).into(),
                    betti: None,
                },
                _ => serde_json::from_str(&read_input(input)?).map_err(Error::from)?,
            };
            let d = models::suspension(&spec)?;
            emit(json!({
                "model": "suspension",
                "metadata": { "vol_G": spec.vol_g.to_string(), "chi_X": spec.chi_x.to_string(), "support": "identity of G" },
                "distribution": d,
            }))
        }
        Command::SurfaceSuspension { genus } => emit(models::surface_suspension_report(*genus)?),
        Command::Nilfoliation { algebra } => {
            let l = load_algebra(algebra)?;
            emit(models::nil_foliation_report(&l)?)
        }
        Command::Selberg(input) => {
            let spec: HomogeneousSpec = serde_json::from_str(&read_input(input)?).map_err(Error::from)?;
            emit(models::selberg_model_report(&spec)?)
        }
        Command::GaussBonnet { input, metric, constant_curvature, area, stencil, with_curvature } => {
            if let Some(k) = constant_curvature {
                let area = area.expect("clap enforces --area");
                let chi = curvature::const_curvature_chi(*k, area)?;
                return emit(json!({ "model": "gauss-bonnet", "mode": "constant-curvature", "K": k, "area": area, "chi": chi }));
            }
            let (m, source) = match (input, metric) {
                (Some(p), _) => (load_grid(p)?, p.display().to_string()),
                (None, kind) => {
                    let kind = kind.unwrap_or(MetricKind::Sphere);
                    (builtin_metric(kind, grid(g, 256)?, seed)?, format!("{:?}", kind).to_lowercase())
                }
            };
            gauss_bonnet_report(&m, &source, *stencil, tolerance(g)?.unwrap_or(1e-3), *with_curvature)
        }
        Command::Verify { suite } => {
            let defaults = VerifyOptions::default();
            let opts = VerifyOptions {
                seed,
                grid: grid(g, defaults.grid)?,
                tolerance: tolerance(g)?.unwrap_or(defaults.tolerance),
                ..defaults
            };
            let checks = verify::run_suite(suite.parse()?, &opts);
            let ok = checks.iter().all(|c| c.passed);
            Ok(Emitted {
                body: json!({ "suite": suite, "seed": seed, "grid": opts.grid, "passed": ok, "checks": checks }),
                ok,
            })
        }
        Command::FixedPoints { matrix, k } => {
            let t = ToralAutomorphism::new(parse_int_matrix(matrix)?)?;
            let report = lefschetz::fixed_points_toral(&t, *k)?;
            let lefschetz_number = lefschetz::toral_lefschetz(&t, *k)?;
            let smith = lefschetz::fixed_point_count_smith(&t, *k)?;
            emit(json!({
                "matrix": t,
                "k": k,
                "lefschetz": lefschetz_number.to_string(),
                "smith_count": smith.to_string(),
                "index_sum": report.index_sum(g.convention),
                "convention": g.convention.to_string(),
                "fixed_points": report,
            }))
        }
    }
}

fn load_algebra(spec: &str) -> Outcome<LieAlgebra> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{spec}: {e}")))?;
        return Ok(LieAlgebra::from_json(&text)?);
    }
    lie::builtin(spec).ok_or_else(|| {
        Failure::Input(format!(
            "{spec:?} is neither a file nor a builtin algebra (heisenberg, sl2, free-2-3, free-3-2, abelianN, filiformN, heisenbergN)"
        ))
    })
}

fn load_grid(path: &Path) -> Outcome<MetricGrid> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        grid_from_json(serde_json::from_str(&text).map_err(Error::from)?)
    } else {
        Ok(MetricGrid::from_csv(text.as_bytes())?)
    }
}

fn grid_from_json(raw: Json) -> Outcome<MetricGrid> {
    let obj = raw.as_object().ok_or_else(|| Failure::Input("metric JSON must be an object".into()))?;
    let field = |name: &str| obj.get(name).ok_or_else(|| Failure::Input(format!("metric JSON lacks {name:?}")));
    let usize_field = |name: &str| {
        field(name)?.as_u64().map(|x| x as usize).ok_or_else(|| Failure::Input(format!("{name} must be a non-negative integer")))
    };
    let f64_field = |name: &str| field(name)?.as_f64().ok_or_else(|| Failure::Input(format!("{name} must be a number")));
    let values = |name: &str| -> Outcome<Vec<f64>> {
        serde_json::from_value(field(name)?.clone()).map_err(|e| Failure::Input(format!("{name}: {e}")))
    };
    let topology: Topology = field("topology")?.as_str().unwrap_or_default().parse()?;
    if let Some(extra) = obj.keys().find(|k| !["nu", "nv", "du", "dv", "topology", "E", "F", "G"].contains(&k.as_str())) {
        return Err(Failure::Input(format!("unknown metric field {extra:?}")));
    }
    Ok(MetricGrid::new(
        usize_field("nu")?,
        usize_field("nv")?,
        f64_field("du")?,
        f64_field("dv")?,
        topology,
        values("E")?,
        values("F")?,
        values("G")?,
    )?)
}

fn builtin_metric(kind: MetricKind, n: usize, seed: u64) -> Outcome<MetricGrid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match kind {
        MetricKind::Flat => curvature::flat_torus(n)?,
        MetricKind::Sphere => curvature::unit_sphere(n, n)?,
        MetricKind::Random => curvature::random_torus_metric(&mut rng, n)?,
        MetricKind::Conformal => curvature::conformal_torus_metric(&FourierField::random(&mut rng, 3, 0.5), n)?,
    })
}

fn gauss_bonnet_report(m: &MetricGrid, source: &str, stencil: Stencil, tol: f64, with_curvature: bool) -> Outcome<Emitted> {
    let integral = curvature::integrate_curvature_with(m, stencil)?;
    let expected = match m.topology() {
        Topology::Torus => 0.0,
        Topology::Revolution => 2.0,
        Topology::Patch => unreachable!("integration rejects open patches"),
    };
    let mut body = json!({
        "model": "gauss-bonnet",
        "metadata": {
            "source": source,
            "topology": m.topology().to_string(),
            "nu": m.nu(),
            "nv": m.nv(),
            "stencil": format!("{stencil:?}").to_lowercase(),
        },
        "integral": integral,
        "expected_chi": expected,
        "abs_error": (integral - expected).abs(),
        "tolerance": tol,
        "within_tolerance": (integral - expected).abs() <= tol,
    });
    if with_curvature {
        body["curvature"] = json!(curvature::gaussian_curvature_with(m, stencil));
    }
    Ok(Emitted { body, ok: true })
}
