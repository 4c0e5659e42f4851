//! `ncda`: run simulations, fit and apply classifiers, render figures.
//!
//! Exit status is 0 on success, 1 on usage errors (bad flags, invalid
//! configuration, wrong dimension for a figure) and 2 on runtime errors.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ncda::classifiers::{calibrate_sign, fit, load_model, save_model, Model, NccModel};
use ncda::geometry::{CavityStack, Panel};
use ncda::report::{emit_csv, read_summary_csv, render_curves, render_parcoords, render_regions_2d, RegionBounds, RunConfigFile};
use ncda::simulation::{run_experiment, run_experiment_with_threads};
use ncda::{load_dataset, load_features, ClassId, Classifier, ClassifierKind, Error, FitConfig, NccConfig, SurfaceMode};

#[derive(Parser)]
#[command(name = "ncda", version, about = "Nested cavity classifiers and their Monte-Carlo benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte-Carlo experiment described by a JSON config and write the summary CSV.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Summary CSV; overrides `output.csv` in the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Error-curve SVG; overrides `output.curves_svg` in the config.
        #[arg(long)]
        curves: Option<PathBuf>,
        /// Worker threads; overrides `threads` in the config.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Fit a classifier to a labelled CSV dataset and save it as JSON.
    Fit {
        /// Labelled CSV with header `f1,...,fp,label`.
        #[arg(long)]
        data: PathBuf,
        /// NCC, NCDA, LDA or QDA.
        #[arg(long, default_value = "NCC")]
        kind: ClassifierKind,
        /// Surface approximation: box, adjacent_pair_hull or all_pair_hull.
        #[arg(long, default_value = "adjacent_pair_hull")]
        mode: SurfaceMode,
        /// Maximum number of nested surfaces.
        #[arg(long, default_value_t = 8)]
        max_depth: usize,
        /// Class wrapped by the outer surface (1 or 2).
        #[arg(long, default_value = "1", value_parser = parse_class)]
        outer_owner: ClassId,
        /// Choose the NCC sign by k-fold cross-validation (NCC only).
        #[arg(long)]
        calibrate_folds: Option<usize>,
        /// Model JSON to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply a saved model to every row of a CSV file; writes one label per row.
    Predict {
        #[arg(long)]
        model: PathBuf,
        /// CSV with header `f1,...,fp`; a trailing `label` column is ignored.
        #[arg(long)]
        data: PathBuf,
        /// CSV with a `label` header and one predicted class per input row.
        #[arg(long)]
        out: PathBuf,
    },
    /// Parallel-coordinates figure of a dataset, optionally with a model's surfaces.
    RenderParcoords {
        #[arg(long)]
        data: PathBuf,
        /// NCC or NCDA model whose surfaces are drawn.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decision regions of a two-dimensional model.
    RenderRegions {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// `x_min,x_max,y_min,y_max`; defaults to the data or outer surface extent.
        #[arg(long, value_parser = parse_bounds, allow_hyphen_values = true)]
        bounds: Option<RegionBounds>,
        /// Grid cells per axis.
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        /// Training points to overplot.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Mean and standard deviation error curves from a summary CSV.
    RenderCurves {
        /// Summary CSV written by `simulate`, one experiment only.
        #[arg(long)]
        results: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(_) | Error::Version { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn parse_class(s: &str) -> Result<ClassId, String> {
    s.parse::<u8>()
        .ok()
        .and_then(ClassId::from_code)
        .ok_or_else(|| format!("class must be 1 or 2, got {s:?}"))
}

fn parse_bounds(s: &str) -> Result<RegionBounds, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let [x_min, x_max, y_min, y_max] = v[..] else {
        return Err("expected x_min,x_max,y_min,y_max".into());
    };
    if !(x_min < x_max && y_min < y_max) {
        return Err("bounds need min < max on both axes".into());
    }
    Ok(RegionBounds { x_min, x_max, y_min, y_max })
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn simulate(config: &Path, out: Option<PathBuf>, curves: Option<PathBuf>, threads: Option<usize>) -> Result<(), Failure> {
    let file = RunConfigFile::load(config)?;
    let threads = threads.or(file.threads);
    if threads == Some(0) {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let csv = out.or(file.output.csv.clone());
    let curves = curves.or(file.output.curves_svg.clone());
    if csv.is_none() && curves.is_none() {
        return Err(Failure::Usage("no output: pass --out or set output.csv in the config".into()));
    }
    let cfg = file.experiment_config();
    let result = match threads {
        Some(t) => run_experiment_with_threads::<f64>(&cfg, t)?,
        None => run_experiment::<f64>(&cfg)?,
    };
    for d in &result.diagnostics {
        eprintln!("{}: {d}", cfg.experiment);
    }
    if let Some(path) = csv {
        emit_csv(&result.rows, path)?;
    }
    if let Some(path) = curves {
        render_curves(&result.rows, path)?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn fit_cmd(
    data: &Path,
    kind: ClassifierKind,
    mode: SurfaceMode,
    max_depth: usize,
    outer_owner: ClassId,
    calibrate_folds: Option<usize>,
    out: &Path,
) -> Result<(), Failure> {
    if max_depth == 0 {
        return Err(Failure::Usage("--max-depth must be at least 1".into()));
    }
    if calibrate_folds.is_some() && kind != ClassifierKind::Ncc {
        return Err(Failure::Usage("--calibrate-folds applies to NCC only".into()));
    }
    let d = load_dataset::<f64>(data)?;
    let cfg = FitConfig {
        ncc: NccConfig {
            mode,
            outer_owner,
            max_depth,
        },
        ..FitConfig::default()
    };
    let mut model = fit(kind, &d, &cfg)?;
    if let (Some(k), Model::Ncc(m)) = (calibrate_folds, &model) {
        let flipped = calibrate_sign(&d, k, &cfg.ncc)?;
        if flipped {
            eprintln!("cross-validated error above 0.5: NCC rule flipped");
        }
        model = Model::Ncc(NccModel::clone(m).with_flipped(flipped));
    }
    save_model(&model, out)?;
    Ok(())
}

fn predict(model: &Path, data: &Path, out: &Path) -> Result<(), Failure> {
    let model = load_model::<f64>(model)?;
    let (dim, rows) = load_features::<f64>(data)?;
    if dim != model.dim() {
        return Err(Failure::Runtime(format!(
            "{}: {dim} features but the model expects {}",
            data.display(),
            model.dim()
        )));
    }
    let mut w = create(out)?;
    let io = |e: std::io::Error| Failure::Runtime(format!("{}: {e}", out.display()));
    writeln!(w, "label").map_err(io)?;
    for x in &rows {
        writeln!(w, "{}", model.predict(x)).map_err(io)?;
    }
    w.flush().map_err(io)
}

fn stack_of(model: &Model<f64>) -> Result<&CavityStack<f64>, Failure> {
    model
        .stack()
        .ok_or_else(|| Failure::Usage(format!("{} models have no cavity surfaces", model.kind().name())))
}

fn render_parcoords_cmd(data: &Path, model: Option<&Path>, out: &Path) -> Result<(), Failure> {
    let d = load_dataset::<f64>(data)?;
    if d.dim() < 2 {
        return Err(Failure::Usage("parallel coordinates need p >= 2".into()));
    }
    let model = model.map(load_model::<f64>).transpose()?;
    let stack = model.as_ref().map(stack_of).transpose()?;
    render_parcoords(&d, stack, out)?;
    Ok(())
}

/// Extent of the data, or of the outer surface when no data is given,
/// padded by a quarter on every side.
fn default_bounds(model: &Model<f64>, data: Option<&ncda::Dataset>) -> Result<RegionBounds, Failure> {
    let mut pts: Vec<[f64; 2]> = Vec::new();
    if let Some(d) = data {
        pts.extend(d.observations().iter().map(|o| [o.features()[0], o.features()[1]]));
    } else if let Some(st) = model.stack() {
        let panels = &st.outer().panels;
        match panels.as_slice() {
            [Panel::Interval { lo: x0, hi: x1, .. }, Panel::Interval { lo: y0, hi: y1, .. }] => {
                pts.extend([[*x0, *y0], [*x1, *y1]]);
            }
            [Panel::Hull { hull, .. }] => pts.extend(hull.vertices().iter().map(|v| [v.x, v.y])),
            _ => {}
        }
    }
    if pts.is_empty() {
        return Err(Failure::Usage(format!(
            "{} model without --data: pass --bounds",
            model.kind().name()
        )));
    }
    let (mut b, mut pad) = (
        RegionBounds {
            x_min: f64::INFINITY,
            x_max: f64::NEG_INFINITY,
            y_min: f64::INFINITY,
            y_max: f64::NEG_INFINITY,
        },
        [0.0; 2],
    );
    for [x, y] in pts {
        b.x_min = b.x_min.min(x);
        b.x_max = b.x_max.max(x);
        b.y_min = b.y_min.min(y);
        b.y_max = b.y_max.max(y);
    }
    pad[0] = ((b.x_max - b.x_min) * 0.25).max(1.0);
    pad[1] = ((b.y_max - b.y_min) * 0.25).max(1.0);
    b.x_min -= pad[0];
    b.x_max += pad[0];
    b.y_min -= pad[1];
    b.y_max += pad[1];
    Ok(b)
}

fn render_regions_cmd(
    model: &Path,
    out: &Path,
    bounds: Option<RegionBounds>,
    resolution: usize,
    data: Option<&Path>,
) -> Result<(), Failure> {
    let model = load_model::<f64>(model)?;
    if model.dim() != 2 {
        return Err(Failure::Usage("REGION2D requires p=2".into()));
    }
    if resolution == 0 {
        return Err(Failure::Usage("--resolution must be at least 1".into()));
    }
    let data = data.map(load_dataset::<f64>).transpose()?;
    if data.as_ref().is_some_and(|d| d.dim() != 2) {
        return Err(Failure::Usage("REGION2D requires p=2".into()));
    }
    let bounds = match bounds {
        Some(b) => b,
        None => default_bounds(&model, data.as_ref())?,
    };
    render_regions_2d(&model, bounds, resolution, data.as_ref(), out)?;
    Ok(())
}

fn render_curves_cmd(results: &Path, out: &Path) -> Result<(), Failure> {
    let file = File::open(results).map_err(|e| Failure::Runtime(format!("{}: {e}", results.display())))?;
    let rows = read_summary_csv(file)?;
    if rows.is_empty() {
        return Err(Failure::Usage(format!("{}: no result rows", results.display())));
    }
    if rows.iter().any(|r| r.experiment != rows[0].experiment) {
        return Err(Failure::Usage(format!("{}: rows mix several experiments", results.display())));
    }
    render_curves(&rows, out)?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Simulate {
            config,
            out,
            curves,
            threads,
        } => simulate(&config, out, curves, threads),
        Command::Fit {
            data,
            kind,
            mode,
            max_depth,
            outer_owner,
            calibrate_folds,
            out,
        } => fit_cmd(&data, kind, mode, max_depth, outer_owner, calibrate_folds, &out),
        Command::Predict { model, data, out } => predict(&model, &data, &out),
        Command::RenderParcoords { data, model, out } => render_parcoords_cmd(&data, model.as_deref(), &out),
        Command::RenderRegions {
            model,
            out,
            bounds,
            resolution,
            data,
        } => render_regions_cmd(&model, &out, bounds, resolution, data.as_deref()),
        Command::RenderCurves { results, out } => render_curves_cmd(&results, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
