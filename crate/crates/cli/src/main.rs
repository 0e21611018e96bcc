use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use iregress::estimation::{fit, predict, FitOutcome};
use iregress::io::{
    emit_plot_data, format_g17, load_dataset, load_predictors, read_headers, study_to_json, write_comparison_csv,
    write_parameter_csv, ColumnSpec, FitReport, FitStatus, Layout, StudyFile, StudyKind, StudyPlan,
};
use iregress::simulation::{
    preset, run_comparison_study, run_parameter_study, Execution, Method, SimulationConfig, DEFAULT_SPLIT,
};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_NO_SOLUTION: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "iregress",
    version,
    about = "Least-squares regression for interval-valued data"
)]
struct Cli {
    /// Column layout of CSV files
    #[arg(long, global = true, value_enum, default_value = "bounds")]
    layout: LayoutArg,

    /// Master seed for simulations
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output file (fit, predict) or directory (simulate, plot-data)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum LayoutArg {
    Bounds,
    CenterRadius,
}

impl From<LayoutArg> for Layout {
    fn from(l: LayoutArg) -> Self {
        match l {
            LayoutArg::Bounds => Layout::Bounds,
            LayoutArg::CenterRadius => Layout::CenterRadius,
        }
    }
}

#[derive(Args, Debug)]
struct Columns {
    /// Response variable name
    #[arg(long, default_value = "y")]
    response: String,

    /// Predictor names, comma separated (default: every other variable in the header)
    #[arg(long, value_delimiter = ',')]
    predictors: Option<Vec<String>>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Baseline {
    Ccrm,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fit the model and write a JSON report
    Fit {
        data: PathBuf,
        #[command(flatten)]
        columns: Columns,
    },
    /// Predict intervals for new predictor values from a fit report
    Predict {
        /// JSON report written by `fit`
        #[arg(long)]
        fit: PathBuf,
        data: PathBuf,
        /// Keep negative predicted radii instead of rounding them up to 0
        #[arg(long)]
        no_clamp: bool,
    },
    /// Run a Monte-Carlo study
    Simulate {
        /// Model presets, comma separated (model1..model6)
        #[arg(long, value_delimiter = ',', conflicts_with = "config")]
        preset: Vec<String>,
        /// Sample sizes, comma separated
        #[arg(long, value_delimiter = ',', conflicts_with = "config")]
        n: Vec<usize>,
        /// Replications per cell
        #[arg(long, default_value_t = 1000, conflicts_with = "config")]
        reps: usize,
        /// Run the out-of-sample comparison against a baseline
        #[arg(long, value_enum, conflicts_with = "config")]
        compare: Option<Baseline>,
        /// Training fraction of the comparison split
        #[arg(long, default_value_t = DEFAULT_SPLIT, conflicts_with = "config")]
        split: f64,
        /// TOML study description
        #[arg(long)]
        config: Option<PathBuf>,
        /// Run replications on one thread
        #[arg(long)]
        sequential: bool,
    },
    /// Write CSV data for rectangle, line and residual plots
    PlotData {
        data: PathBuf,
        #[command(flatten)]
        columns: Columns,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let layout = Layout::from(cli.layout);
    match cli.command {
        Command::Fit { data, columns } => cmd_fit(&data, layout, &columns, cli.out.as_deref()),
        Command::Predict { fit, data, no_clamp } => cmd_predict(&fit, &data, layout, !no_clamp, cli.out.as_deref()),
        Command::Simulate {
            preset,
            n,
            reps,
            compare,
            split,
            config,
            sequential,
        } => {
            let plan = match config {
                Some(path) => plan_from_file(&path, cli.seed)?,
                None => plan_from_flags(&preset, &n, reps, compare, split, cli.seed)?,
            };
            let exec = if sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            cmd_simulate(&plan, exec, cli.out.as_deref())
        }
        Command::PlotData { data, columns } => cmd_plot_data(&data, layout, &columns, cli.out.as_deref()),
    }
}

fn column_spec(path: &Path, layout: Layout, columns: &Columns) -> Result<ColumnSpec, String> {
    match &columns.predictors {
        Some(names) => Ok(ColumnSpec::new(layout, columns.response.clone(), names.clone())),
        None => {
            let headers = read_headers(path).map_err(|e| e.to_string())?;
            ColumnSpec::infer(&headers, layout, &columns.response).map_err(|e| e.to_string())
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn cmd_fit(path: &Path, layout: Layout, columns: &Columns, out: Option<&Path>) -> Result<u8, String> {
    let spec = column_spec(path, layout, columns)?;
    let data = load_dataset(path, &spec).map_err(|e| e.to_string())?;
    let outcome = fit(&data).map_err(|e| e.to_string())?;
    let report = FitReport::build(&data, &outcome);
    write_output(out, &report.to_json().map_err(|e| e.to_string())?)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    Ok(match report.status {
        FitStatus::Ok => EXIT_OK,
        FitStatus::NoSolution => EXIT_NO_SOLUTION,
    })
}

fn cmd_predict(fit_path: &Path, path: &Path, layout: Layout, clamp: bool, out: Option<&Path>) -> Result<u8, String> {
    let text = fs::read_to_string(fit_path).map_err(|e| format!("{}: {e}", fit_path.display()))?;
    let report = FitReport::from_json(&text).map_err(|e| e.to_string())?;
    let model = report
        .fit_result()
        .ok_or_else(|| "fit report contains no coefficients (status no_solution)".to_string())?;
    let rows = load_predictors(path, layout, &report.variables.predictors).map_err(|e| e.to_string())?;

    let mut w = csv::Writer::from_writer(Vec::new());
    let (first, second) = layout.columns(&report.variables.response);
    w.write_record([
        first.as_str(),
        second.as_str(),
        "raw_radius",
        "negative_radius",
        "clamped",
    ])
    .map_err(|e| e.to_string())?;
    for x in &rows {
        let p = predict(&model, x, clamp).map_err(|e| e.to_string())?;
        let (a, b) = match layout {
            Layout::Bounds => (p.center - p.radius, p.center + p.radius),
            Layout::CenterRadius => (p.center, p.radius),
        };
        w.write_record([
            format_g17(a),
            format_g17(b),
            format_g17(p.raw_radius),
            u8::from(p.negative_radius).to_string(),
            u8::from(p.clamped).to_string(),
        ])
        .map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    write_output(out, &String::from_utf8(bytes).map_err(|e| e.to_string())?)?;
    Ok(EXIT_OK)
}

fn plan_from_file(path: &Path, seed: Option<u64>) -> Result<StudyPlan, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut file = StudyFile::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if let Some(seed) = seed {
        file.seed = seed;
    }
    file.plan().map_err(|e| format!("{}: {e}", path.display()))
}

fn plan_from_flags(
    presets: &[String],
    ns: &[usize],
    reps: usize,
    compare: Option<Baseline>,
    split: f64,
    seed: Option<u64>,
) -> Result<StudyPlan, String> {
    let seed = seed.ok_or("simulate needs --seed (or a --config file)")?;
    if presets.is_empty() {
        return Err("simulate needs --preset (or a --config file)".into());
    }
    let ns = if ns.is_empty() { vec![100] } else { ns.to_vec() };
    let mut configs = Vec::new();
    for name in presets {
        let model = preset(name).ok_or_else(|| format!("unknown preset {name:?}"))?;
        for &n in &ns {
            let cfg = SimulationConfig::new(model.clone(), n, seed, reps);
            cfg.validate().map_err(|e| e.to_string())?;
            configs.push(cfg);
        }
    }
    let (kind, methods) = match compare {
        Some(Baseline::Ccrm) => (StudyKind::Comparison, vec![Method::LeastSquares, Method::Ccrm]),
        None => (StudyKind::Parameter, Vec::new()),
    };
    Ok(StudyPlan {
        kind,
        configs,
        split,
        methods,
    })
}

fn cmd_simulate(plan: &StudyPlan, exec: Execution, out: Option<&Path>) -> Result<u8, String> {
    let dir = out.unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let (report, stem) = match plan.kind {
        StudyKind::Parameter => (run_parameter_study(&plan.configs, exec), "parameter_study"),
        StudyKind::Comparison => (
            run_comparison_study(&plan.configs, plan.split, &plan.methods, exec),
            "comparison_study",
        ),
    };
    let report = report.map_err(|e| e.to_string())?;

    let mut csv = Vec::new();
    match plan.kind {
        StudyKind::Parameter => write_parameter_csv(&mut csv, &report),
        StudyKind::Comparison => write_comparison_csv(&mut csv, &report),
    }
    .map_err(|e| e.to_string())?;
    let csv_path = dir.join(format!("{stem}.csv"));
    let json_path = dir.join(format!("{stem}.json"));
    fs::write(&csv_path, csv).map_err(|e| format!("{}: {e}", csv_path.display()))?;
    fs::write(&json_path, study_to_json(&report).map_err(|e| e.to_string())?)
        .map_err(|e| format!("{}: {e}", json_path.display()))?;
    eprintln!("wrote {} and {}", csv_path.display(), json_path.display());
    Ok(EXIT_OK)
}

fn cmd_plot_data(path: &Path, layout: Layout, columns: &Columns, out: Option<&Path>) -> Result<u8, String> {
    let spec = column_spec(path, layout, columns)?;
    let data = load_dataset(path, &spec).map_err(|e| e.to_string())?;
    let model = match fit(&data).map_err(|e| e.to_string())? {
        FitOutcome::Fitted(f) => f,
        FitOutcome::NoSolution(reason) => {
            eprintln!("no least-squares solution: {reason}");
            return Ok(EXIT_NO_SOLUTION);
        }
    };
    let dir = out.unwrap_or(Path::new("."));
    let files = emit_plot_data(&data, &model, dir).map_err(|e| e.to_string())?;
    for f in &files.written {
        eprintln!("wrote {}", f.display());
    }
    if let Some(notice) = files.notice {
        eprintln!("note: {notice}");
    }
    Ok(EXIT_OK)
}
