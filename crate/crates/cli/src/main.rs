//! `cmc`: classify, sample, verify, mesh, and sweep the CMC rotation and
//! translation families of H^n x R from the command line.
//!
//! Exit codes: 0 for any valid run (including a `NoSolution` classification),
//! 1 when a requested verification fails, 2 for usage errors.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cmc_core::curve::{GridSpec, SampledCurve};
use cmc_core::geometry::{self, export};
use cmc_core::params::SurfaceParams;
use cmc_core::rotation::{self, RotationClass};
use cmc_core::translation;
use cmc_core::verify;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

#[derive(Parser)]
#[command(
    name = "cmc",
    version,
    about = "CMC rotation and translation hypersurfaces in H^n x R"
)]
struct Cli {
    /// Output directory for generated files.
    #[arg(long, global = true, env = "CMC_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Rotation,
    Translation,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Rotation => "rotation",
            Family::Translation => "translation",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputKind {
    Json,
    Csv,
    Obj,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Flux,
    Mc,
    Convexity,
    Asymptote,
}

#[derive(Args)]
struct ParamArgs {
    /// Ambient hyperbolic dimension (n >= 2).
    #[arg(long)]
    n: u32,
    /// Mean curvature: a positive decimal, or the literal `critical` for
    /// (n-1)/n exactly.
    #[arg(long = "H")]
    h: String,
    /// Flux constant: a decimal, or the literal `dH` for the subcritical
    /// complete-graph constant.
    #[arg(long = "d", allow_hyphen_values = true)]
    d: String,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a parameter triple and print the report as JSON.
    Classify {
        family: Family,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Sample the generating curve and write it to files.
    Curve {
        family: Family,
        #[command(flatten)]
        params: ParamArgs,
        /// Truncation radius for unbounded curves (default 30).
        #[arg(long)]
        rho_max: Option<f64>,
        /// Nodes along the fundamental arc.
        #[arg(long, default_value_t = 400)]
        samples: usize,
        /// Which files to write.
        #[arg(long, value_delimiter = ',', default_value = "csv,json")]
        outputs: Vec<OutputKind>,
    },
    /// Build a triangle mesh (n = 2 only; higher n exports the curve).
    Mesh {
        family: Family,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        rho_max: Option<f64>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Rotation meshes: points per ring.
        #[arg(long, default_value_t = 64)]
        angular_samples: usize,
        /// Translation meshes: points across the strip.
        #[arg(long, default_value_t = 33)]
        transverse_samples: usize,
        /// Translation meshes: half-width of the strip parameter.
        #[arg(long, default_value_t = 1.5)]
        transverse_span: f64,
        /// Extend the fundamental arc to the complete curve before meshing.
        #[arg(long)]
        extend: bool,
        /// Periods for unduloid/nodoid extension.
        #[arg(long, default_value_t = 2)]
        periods: usize,
    },
    /// Run verification checks and exit nonzero if any fail.
    Verify {
        family: Family,
        #[command(flatten)]
        params: ParamArgs,
        /// Verification window: curves are sampled to min(rho_max, natural
        /// right endpoint); default left endpoint + 2.
        #[arg(long)]
        rho_max: Option<f64>,
        #[arg(long, default_value_t = 600)]
        samples: usize,
        #[arg(long, value_delimiter = ',', default_value = "flux,mc")]
        checks: Vec<CheckKind>,
    },
    /// Classify a whole (H, d) grid, one JSON per point plus an index.
    Sweep {
        family: Family,
        #[arg(long)]
        n: u32,
        /// Range `start:stop:step` (or a single value) for H.
        #[arg(long = "H", allow_hyphen_values = true)]
        h: String,
        /// Range `start:stop:step` (or a single value) for d.
        #[arg(long = "d", allow_hyphen_values = true)]
        d: String,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Classify { family, params } => {
            let p = resolve_params(family, &params)?;
            let report = classification_report(family, &p);
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Curve {
            family,
            params,
            rho_max,
            samples,
            outputs,
        } => {
            let p = resolve_params(family, &params)?;
            cmd_curve(&cli.out_dir, family, &p, rho_max, samples, &outputs)
        }
        Command::Mesh {
            family,
            params,
            rho_max,
            samples,
            angular_samples,
            transverse_samples,
            transverse_span,
            extend,
            periods,
        } => {
            let p = resolve_params(family, &params)?;
            cmd_mesh(
                &cli.out_dir,
                family,
                &p,
                rho_max,
                samples,
                angular_samples,
                transverse_samples,
                transverse_span,
                extend,
                periods,
            )
        }
        Command::Verify {
            family,
            params,
            rho_max,
            samples,
            checks,
        } => {
            let p = resolve_params(family, &params)?;
            cmd_verify(family, &p, rho_max, samples, &checks)
        }
        Command::Sweep {
            family,
            n,
            h,
            d,
            jobs,
        } => cmd_sweep(&cli.out_dir, family, n, &h, &d, jobs),
    }
}

/// Resolve the `--H`/`--d` literals against the dimension. `critical` maps
/// to (n-1)/n exactly (decimal rounding would change the regime); `dH` maps
/// to the subcritical complete-graph flux constant.
fn resolve_params(family: Family, args: &ParamArgs) -> Result<SurfaceParams> {
    let h = match args.h.as_str() {
        "critical" => cmc_core::params::critical_value(args.n),
        other => other
            .parse::<f64>()
            .with_context(|| format!("invalid H value `{other}`"))?,
    };
    if !(h.is_finite() && h > 0.0) {
        bail!("mean curvature H must be positive and finite, got {h}");
    }
    let d = match args.d.as_str() {
        "dH" => {
            if family != Family::Translation {
                bail!("the literal `dH` is defined for the translation family only");
            }
            translation::graph_flux_constant(args.n, h)
                .map_err(|e| anyhow!("cannot resolve `dH`: {e}"))?
        }
        other => other
            .parse::<f64>()
            .with_context(|| format!("invalid d value `{other}`"))?,
    };
    SurfaceParams::new(args.n, h, d).map_err(|e| anyhow!(e))
}

#[derive(Serialize)]
struct ClassificationReport {
    schema: u32,
    family: &'static str,
    n: u32,
    #[serde(rename = "H")]
    h: f64,
    d: f64,
    regime: cmc_core::params::Regime,
    class: String,
    breakpoints: serde_json::Value,
    asymptote: serde_json::Value,
}

fn class_tag(value: &impl Serialize) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn classification_report(family: Family, p: &SurfaceParams) -> ClassificationReport {
    match family {
        Family::Rotation => {
            let s = rotation::classify(p);
            ClassificationReport {
                schema: 1,
                family: family.name(),
                n: p.n,
                h: p.h,
                d: p.d,
                regime: p.regime(),
                class: class_tag(&s.class),
                breakpoints: serde_json::to_value(s.breakpoints).unwrap_or_default(),
                asymptote: serde_json::to_value(s.growth_law()).unwrap_or_default(),
            }
        }
        Family::Translation => {
            let s = translation::classify(p);
            ClassificationReport {
                schema: 1,
                family: family.name(),
                n: p.n,
                h: p.h,
                d: p.d,
                regime: p.regime(),
                class: class_tag(&s.class),
                breakpoints: serde_json::to_value(s.breakpoints).unwrap_or_default(),
                asymptote: serde_json::Value::Null,
            }
        }
    }
}

/// Sample a fundamental arc for either family, with the class tag.
fn sample_curve(
    family: Family,
    p: &SurfaceParams,
    grid: &GridSpec,
) -> Result<(SampledCurve, String)> {
    match family {
        Family::Rotation => {
            let s = rotation::classify(p);
            let curve = s.sample(grid).map_err(|e| anyhow!("{e}"))?;
            Ok((curve, class_tag(&s.class)))
        }
        Family::Translation => {
            let s = translation::classify(p);
            let curve = s.sample(grid).map_err(|e| anyhow!("{e}"))?;
            Ok((curve, class_tag(&s.class)))
        }
    }
}

fn slug(family: Family, p: &SurfaceParams) -> String {
    format!("{}_n{}_H{}_d{}", family.name(), p.n, p.h, p.d)
}

fn cmd_curve(
    out_dir: &Path,
    family: Family,
    p: &SurfaceParams,
    rho_max: Option<f64>,
    samples: usize,
    outputs: &[OutputKind],
) -> Result<ExitCode> {
    let grid = GridSpec {
        samples,
        rho_max: Some(rho_max.unwrap_or(30.0)),
    };
    let (curve, tag) = sample_curve(family, p, &grid)?;
    std::fs::create_dir_all(out_dir)?;
    let base = slug(family, p);
    let mut written = Vec::new();
    for output in dedup(outputs) {
        match output {
            OutputKind::Csv => {
                let path = out_dir.join(format!("{base}.csv"));
                export::write_curve_csv_file(&path, &curve)?;
                written.push(path);
            }
            OutputKind::Json => {
                let path = out_dir.join(format!("{base}.json"));
                let report = classification_report(family, p);
                std::fs::write(&path, serde_json::to_string_pretty(&report)?)?;
                written.push(path);
            }
            OutputKind::Svg => {
                let path = out_dir.join(format!("{base}.svg"));
                export::write_plot_svg_file(&path, &tag, &[(tag.as_str(), &curve)])?;
                written.push(path);
            }
            OutputKind::Obj => {
                eprintln!("note: `obj` applies to the mesh command; skipped");
            }
        }
    }
    for path in written {
        println!("{}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_mesh(
    out_dir: &Path,
    family: Family,
    p: &SurfaceParams,
    rho_max: Option<f64>,
    samples: usize,
    angular_samples: usize,
    transverse_samples: usize,
    transverse_span: f64,
    extend: bool,
    periods: usize,
) -> Result<ExitCode> {
    let grid = GridSpec {
        samples,
        rho_max: Some(rho_max.unwrap_or(30.0)),
    };
    std::fs::create_dir_all(out_dir)?;
    let base = slug(family, p);

    if p.n != 2 {
        // The geometric content in higher dimensions is the profile itself.
        let (curve, _) = sample_curve(family, p, &grid)?;
        let path = out_dir.join(format!("{base}.csv"));
        export::write_curve_csv_file(&path, &curve)?;
        eprintln!(
            "note: n = {} has no 3-d mesh; exported the generating curve",
            p.n
        );
        println!("{}", path.display());
        return Ok(ExitCode::SUCCESS);
    }

    let mesh = match family {
        Family::Rotation => {
            let s = rotation::classify(p);
            let curve = s.sample(&grid).map_err(|e| anyhow!("{e}"))?;
            let tag = class_tag(&s.class);
            let meshed = match s.class {
                RotationClass::Sphere => {
                    let closed =
                        rotation::extend_curve(&curve, s.class, 1).map_err(|e| anyhow!("{e}"))?;
                    geometry::nonnegative_meridian(&closed)
                }
                _ if extend => {
                    rotation::extend_curve(&curve, s.class, periods).map_err(|e| anyhow!("{e}"))?
                }
                _ => curve,
            };
            geometry::embed_rotation_mesh(&meshed, &tag, angular_samples)
                .map_err(|e| anyhow!("{e}"))?
        }
        Family::Translation => {
            let s = translation::classify(p);
            let curve = s.sample(&grid).map_err(|e| anyhow!("{e}"))?;
            let tag = class_tag(&s.class);
            geometry::embed_translation_mesh(&curve, &tag, transverse_samples, transverse_span)
                .map_err(|e| anyhow!("{e}"))?
        }
    };
    let path = out_dir.join(format!("{base}.obj"));
    export::write_obj_file(&path, &mesh)?;
    println!("{}", path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    family: Family,
    p: &SurfaceParams,
    rho_max: Option<f64>,
    samples: usize,
    checks: &[CheckKind],
) -> Result<ExitCode> {
    // Verification wants a window where f64 supports the tolerances: the
    // conserved quantity grows exponentially, and with it the rounding floor
    // of the checks. Default to two units past the left endpoint.
    let left = match family {
        Family::Rotation => rotation::classify(p).breakpoints.left_end.unwrap_or(0.0),
        Family::Translation => translation::classify(p).breakpoints.left_end.unwrap_or(0.0),
    };
    let grid = GridSpec {
        samples,
        rho_max: Some(rho_max.unwrap_or(left + 2.0)),
    };
    let (curve, _) = sample_curve(family, p, &grid)?;

    let mut reports = Vec::new();
    for check in dedup(checks) {
        let report = match check {
            CheckKind::Flux => verify::flux_residual(&curve).map_err(|e| anyhow!("{e}"))?,
            CheckKind::Mc => verify::mean_curvature_residual(&curve).map_err(|e| anyhow!("{e}"))?,
            CheckKind::Convexity => verify::convexity_check(&curve).map_err(|e| anyhow!("{e}"))?,
            CheckKind::Asymptote => {
                if family != Family::Rotation {
                    bail!("asymptote checks are available for the rotation family");
                }
                let s = rotation::classify(p);
                let law = s
                    .growth_law()
                    .ok_or_else(|| anyhow!("no growth law for this class"))?;
                verify::asymptote_check(&curve, &law).map_err(|e| anyhow!("{e}"))?
            }
        };
        eprintln!("{}", report.summary_line());
        reports.push(report.to_json());
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&serde_json::json!({
            "schema": 1,
            "family": family.name(),
            "n": p.n,
            "H": p.h,
            "d": p.d,
            "checks": reports,
        }))?
    );
    let all_passed = reports
        .iter()
        .all(|r| r["pass"] == serde_json::Value::Bool(true));
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Parse `start:stop:step` (inclusive, with rounding slack) or a single
/// value.
fn parse_range(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [single] => Ok(vec![single
            .parse()
            .with_context(|| format!("invalid value `{single}`"))?]),
        [start, stop, step] => {
            let start: f64 = start.parse().context("invalid range start")?;
            let stop: f64 = stop.parse().context("invalid range stop")?;
            let step: f64 = step.parse().context("invalid range step")?;
            if step <= 0.0 || stop < start {
                bail!("range must satisfy start <= stop with positive step");
            }
            let count = ((stop - start) / step + 1.0 + 1e-9).floor() as usize;
            Ok((0..count).map(|i| start + step * i as f64).collect())
        }
        _ => bail!("range must be `value` or `start:stop:step`, got `{text}`"),
    }
}

#[derive(Serialize)]
struct SweepIndexEntry {
    #[serde(rename = "H")]
    h: f64,
    d: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn cmd_sweep(
    out_dir: &Path,
    family: Family,
    n: u32,
    h_range: &str,
    d_range: &str,
    jobs: usize,
) -> Result<ExitCode> {
    let hs = parse_range(h_range)?;
    let ds = parse_range(d_range)?;
    std::fs::create_dir_all(out_dir)?;

    let points: Vec<(usize, f64, f64)> = hs
        .iter()
        .flat_map(|&h| ds.iter().map(move |&d| (h, d)))
        .enumerate()
        .map(|(i, (h, d))| (i, h, d))
        .collect();

    let entries: Mutex<Vec<Option<SweepIndexEntry>>> =
        Mutex::new((0..points.len()).map(|_| None).collect());
    let cursor = AtomicUsize::new(0);
    let worker = || loop {
        let i = cursor.fetch_add(1, Ordering::Relaxed);
        if i >= points.len() {
            break;
        }
        let (index, h, d) = points[i];
        let entry = match SurfaceParams::new(n, h, d) {
            Ok(p) => {
                let report = classification_report(family, &p);
                let file = format!("point_{index:05}.json");
                match serde_json::to_string_pretty(&report)
                    .map_err(anyhow::Error::from)
                    .and_then(|text| std::fs::write(out_dir.join(&file), text).map_err(Into::into))
                {
                    Ok(()) => SweepIndexEntry {
                        h,
                        d,
                        class: Some(report.class),
                        file: Some(file),
                        error: None,
                    },
                    Err(e) => SweepIndexEntry {
                        h,
                        d,
                        class: None,
                        file: None,
                        error: Some(format!("{e:#}")),
                    },
                }
            }
            Err(e) => SweepIndexEntry {
                h,
                d,
                class: None,
                file: None,
                error: Some(e.to_string()),
            },
        };
        entries.lock().unwrap()[index] = Some(entry);
    };

    let jobs = jobs.max(1).min(points.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(worker);
        }
    });

    let entries: Vec<SweepIndexEntry> = entries
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|e| e.expect("all points visited"))
        .collect();
    let classified = entries.iter().filter(|e| e.class.is_some()).count();
    let index = serde_json::json!({
        "schema": 1,
        "family": family.name(),
        "n": n,
        "points": entries,
    });
    let index_path = out_dir.join("index.json");
    std::fs::write(&index_path, serde_json::to_string_pretty(&index)?)?;
    println!(
        "{} ({} points, {} classified)",
        index_path.display(),
        entries.len(),
        classified
    );
    Ok(ExitCode::SUCCESS)
}

fn dedup<T: Copy + PartialEq>(items: &[T]) -> Vec<T> {
    let mut out = Vec::new();
    for &item in items {
        if !out.contains(&item) {
            out.push(item);
        }
    }
    out
}
