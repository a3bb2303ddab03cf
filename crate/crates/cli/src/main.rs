//! `apercut`: file-based runs of the model-set, growth, cover and bounds
//! experiments.
//!
//! Exit codes: 0 ok, 2 usage or invalid input, 3 irregular window,
//! 4 analysis domain (erosion, insufficient data), 5 provenance (hash
//! mismatch), 6 element budget exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use apercut::analysis::{analyze, AnalysisConfig};
use apercut::bounds::{bounds_report, checklist, hull_dim_bound, BoundInput};
use apercut::cutproject::{check_window_regular, default_region, default_window, generate_model_set};
use apercut::exactnum::{format_rational, parse_rational};
use apercut::growth::{
    budget_from_env, cover_experiment, fit_growth_exponent, parse_group, GenSet, WordBalls,
};
use apercut::io::{float_csv, load_model_set, model_set_file, to_json};
use apercut::{AxisBox, Error, GroupKind, Rational, RingSpec, RingVariant, Scheme};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "apercut", version, about = "Cut-and-project model sets in Heisenberg groups")]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Element budget for word-ball enumeration (default: APERCUT_BUDGET or 5e7).
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a model set into a JSON file.
    Generate(GenerateArgs),
    /// Delone, complexity, repetitivity and period report for a model-set file.
    Analyze(AnalyzeArgs),
    /// Word-ball growth table and exponent fit.
    Growth(GrowthArgs),
    /// Greedy packing and cover experiment on word balls.
    Cover(CoverArgs),
    /// Dimension bounds.
    Bounds(BoundsArgs),
    /// Boundary and stabilizer checks for a window.
    CheckWindow(CheckWindowArgs),
}

#[derive(Args)]
struct SchemeArgs {
    #[arg(long, value_parser = ["euclidean", "heisenberg"], default_value = "heisenberg")]
    kind: String,
    /// Heisenberg rank, H_n has dimension 2n+1.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Euclidean dimension.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Square-free d of the field Q(sqrt d).
    #[arg(long, default_value_t = 2)]
    d: u64,
    #[arg(long, value_parser = ["zsqrt", "full", "int"], default_value = "zsqrt")]
    ring: String,
    /// Internal window, "lo,hi;lo,hi;..." per coordinate (one pair broadcasts).
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
}

impl SchemeArgs {
    fn group(&self) -> Result<GroupKind, Error> {
        match self.kind.as_str() {
            "euclidean" => GroupKind::euclidean(self.m),
            _ => GroupKind::heisenberg(self.n),
        }
    }

    fn scheme(&self) -> Result<Scheme, Error> {
        let ring = RingSpec::new(self.d, RingVariant::from_tag(&self.ring)?)?;
        Ok(Scheme::new(self.group()?, ring))
    }

    fn window(&self) -> Result<AxisBox, Error> {
        let kind = self.group()?;
        match &self.window {
            Some(s) => AxisBox::parse(kind, s),
            None => Ok(default_window(kind)),
        }
    }

    fn config(&self, scheme: &Scheme, window: &AxisBox) -> Value {
        json!({
            "kind": self.kind,
            "n": self.n,
            "m": self.m,
            "d": scheme.d(),
            "ring": self.ring,
            "window": window.to_string(),
        })
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    scheme: SchemeArgs,
    /// Physical truncation region, same syntax as --window.
    #[arg(long, allow_hyphen_values = true)]
    region: Option<String>,
    /// Gauge bound for the window-regularity search.
    #[arg(long, default_value = "2")]
    regularity_bound: String,
    /// Write the file even when a boundary witness is found.
    #[arg(long)]
    allow_irregular: bool,
    #[arg(long)]
    out: PathBuf,
    /// Also export float coordinates as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Patch radii, comma separated.
    #[arg(long = "K", value_delimiter = ',')]
    radii: Option<Vec<String>>,
    #[arg(long)]
    erosion: Option<String>,
    #[arg(long)]
    grid_step: Option<String>,
    #[arg(long)]
    period_bound: Option<String>,
    /// Integer growth degree d(G); adds the hypothesis checklist.
    #[arg(long)]
    dg: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Complexity table (K, p(K)) as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct GrowthArgs {
    /// z<m> or h<n>z.
    #[arg(long)]
    group: String,
    #[arg(long, default_value_t = 10)]
    kmax: usize,
    #[arg(long, default_value_t = 1)]
    kmin: usize,
    /// Degree used for the |B_k|/k^d column (default: homogeneous dimension).
    #[arg(long)]
    dg: Option<u32>,
    /// Ball table CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fit report JSON.
    #[arg(long)]
    fit_out: Option<PathBuf>,
}

#[derive(Args)]
struct CoverArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    a: usize,
    /// A single n or an inclusive range "lo..hi".
    #[arg(long)]
    n: String,
    /// Degree d in the bound (a+1)^d (default: homogeneous dimension).
    #[arg(long)]
    dg: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    dg: u32,
    /// Space dimension; defaults to dim G when --group is given.
    #[arg(long)]
    dimx: Option<u64>,
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckWindowArgs {
    #[command(flatten)]
    scheme: SchemeArgs,
    #[arg(long, default_value = "2")]
    bound: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure with its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Erosion(_) | Error::InsufficientData(_) => 4,
            Error::Provenance { .. } => 5,
            Error::BudgetExceeded { .. } => 6,
            _ => 2,
        };
        Fail(code, e.to_string())
    }
}

type Run = Result<(), Fail>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Analyze(a) => analyze_cmd(a),
        Command::Growth(a) => growth(a, cli.budget),
        Command::Cover(a) => cover(a, cli.budget),
        Command::Bounds(a) => bounds(a),
        Command::CheckWindow(a) => check_window(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn rational(flag: &str, s: &str) -> Result<Rational, Fail> {
    parse_rational(s).map_err(|e| Fail(2, format!("--{flag}: {e}")))
}

fn write(path: &Path, contents: &str) -> Run {
    fs::write(path, contents).map_err(|e| Fail(2, format!("cannot write {}: {e}", path.display())))
}

fn emit(path: Option<&PathBuf>, contents: &str) -> Run {
    match path {
        Some(p) => write(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn budget(flag: Option<usize>) -> Result<usize, Fail> {
    match flag {
        Some(b) => Ok(b),
        None => Ok(budget_from_env()?),
    }
}

fn generate(a: &GenerateArgs) -> Run {
    let scheme = a.scheme.scheme()?;
    let kind = scheme.group();
    let window = a.scheme.window()?;
    let region = match &a.region {
        Some(s) => AxisBox::parse(kind, s)?,
        None => default_region(kind),
    };
    let bound = rational("regularity-bound", &a.regularity_bound)?;
    let regularity = check_window_regular(&scheme, &window, &bound)?;
    let ms = generate_model_set(&scheme, &window, &region)?;
    println!("points: {}", ms.len());
    println!(
        "window: boundary clear {}, witnesses {}, stabilizer found {}",
        regularity.boundary_clear,
        regularity.boundary_witnesses.len(),
        regularity.stabilizer_found
    );
    if !regularity.boundary_clear && !a.allow_irregular {
        return Err(Fail(
            3,
            "window boundary meets the projected lattice; pass --allow-irregular to keep it".into(),
        ));
    }
    let mut config = a.scheme.config(&scheme, &window);
    config["region"] = json!(region.to_string());
    config["regularity_bound"] = json!(format_rational(&bound));
    config["allow_irregular"] = json!(a.allow_irregular);
    let regularity = serde_json::to_value(&regularity).map_err(Error::from)?;
    let file = model_set_file(&ms, config, regularity);
    write(&a.out, &to_json(&file)?)?;
    if let Some(csv) = &a.csv {
        write(csv, &float_csv(&ms))?;
    }
    Ok(())
}

fn analyze_cmd(a: &AnalyzeArgs) -> Run {
    let text = fs::read_to_string(&a.input)
        .map_err(|e| Fail(2, format!("cannot read {}: {e}", a.input.display())))?;
    let (ms, hash) = load_model_set(&text)?;
    let mut config = AnalysisConfig::defaults(ms.scheme().group());
    if let Some(r) = &a.radii {
        config.radii = r.iter().map(|s| rational("K", s)).collect::<Result<_, _>>()?;
    }
    if let Some(s) = &a.erosion {
        config.erosion = rational("erosion", s)?;
    }
    if let Some(s) = &a.grid_step {
        config.grid_step = rational("grid-step", s)?;
    }
    if let Some(s) = &a.period_bound {
        config.period_bound = rational("period-bound", s)?;
    }
    let report = analyze(&ms, &config, &hash)?;
    let list = checklist_value(&report, a.dg)?;
    let out = json!({
        "format": 1,
        "input": a.input.file_name().map(|f| f.to_string_lossy().into_owned()),
        "input_hash": hash,
        "config": {
            "K": config.radii.iter().map(format_rational).collect::<Vec<_>>(),
            "erosion": format_rational(&config.erosion),
            "grid_step": format_rational(&config.grid_step),
            "period_bound": format_rational(&config.period_bound),
            "regularity_bound": format_rational(&config.regularity_bound),
            "dg": a.dg,
        },
        "report": report,
        "checklist": list,
    });
    println!("points: {}", report.points);
    for row in &report.complexity.rows {
        println!("K={} classes={} centers={}", row.radius, row.classes, row.centers_sampled);
    }
    println!("periods found: {}", report.periods.nontrivial_periods.len());
    if let Some(csv) = &a.csv {
        write(csv, &report.complexity.to_csv())?;
    }
    emit(a.out.as_ref(), &pretty(&out))
}

fn checklist_value(report: &apercut::AnalysisReport, dg: Option<u32>) -> Result<Value, Fail> {
    let Some(dg) = dg else { return Ok(Value::Null) };
    let list = checklist(report, (&report.input_hash, &report.regularity), dg)?;
    println!("verdict: {}", list.verdict);
    Ok(serde_json::to_value(list).map_err(Error::from)?)
}

fn default_degree(kind: GroupKind) -> u32 {
    kind.homogeneous_dim() as u32
}

fn growth(a: &GrowthArgs, budget_flag: Option<usize>) -> Run {
    let kind = parse_group(&a.group)?;
    let gens = GenSet::standard(kind);
    let balls = WordBalls::compute(&gens, a.kmax, budget(budget_flag)?)?;
    let table = balls.table();
    emit(a.out.as_ref(), &table.to_csv())?;
    let d = a.dg.unwrap_or(default_degree(kind));
    match fit_growth_exponent(&table, a.kmin, Some(d)) {
        Ok(fit) => {
            eprintln!(
                "fitted exponent {:.4} (k >= {}), integer degree used {}",
                fit.exponent, a.kmin, d
            );
            if let Some(p) = &a.fit_out {
                let v = json!({
                    "group": a.group,
                    "generators": table.generators,
                    "kmax": a.kmax,
                    "fit": fit,
                });
                write(p, &pretty(&v))?;
            }
        }
        Err(e @ (Error::InsufficientData(_) | Error::InvalidParameter(_))) => {
            eprintln!("no fit: {e}");
            if a.fit_out.is_some() {
                return Err(e.into());
            }
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn parse_range(s: &str) -> Result<(usize, usize), Fail> {
    let bad = || Fail(2, format!("--n: expected N or LO..HI, got {s:?}"));
    match s.split_once("..") {
        Some((lo, hi)) => {
            let lo = lo.trim().parse().map_err(|_| bad())?;
            let hi = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            Ok((lo, hi))
        }
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            Ok((n, n))
        }
    }
}

fn cover(a: &CoverArgs, budget_flag: Option<usize>) -> Run {
    let kind = parse_group(&a.group)?;
    let gens = GenSet::standard(kind);
    let d = a.dg.unwrap_or(default_degree(kind));
    let (lo, hi) = parse_range(&a.n)?;
    let budget = budget(budget_flag)?;
    let mut reports = Vec::new();
    for n in lo..=hi {
        let (_, rep) = cover_experiment(&gens, a.a, n, d, budget)?;
        println!(
            "n={} |S|={} bound={} covered={} disjoint={} volume_check={}",
            n, rep.packing_size, rep.bound, rep.covered, rep.disjoint, rep.volume_check
        );
        if !(rep.covered && rep.disjoint && rep.volume_check) {
            return Err(Fail(1, format!("cover invariant violated at n={n}")));
        }
        reports.push(rep);
    }
    let first_within = reports.iter().find(|r| r.within_bound).map(|r| r.n);
    let v = json!({
        "group": a.group,
        "a": a.a,
        "n": a.n,
        "d_used": d,
        "first_n_within_bound": first_within,
        "reports": reports,
    });
    emit(a.out.as_ref(), &pretty(&v))
}

fn bounds(a: &BoundsArgs) -> Run {
    let dim_x = match (a.dimx, &a.group) {
        (Some(x), _) => x,
        (None, Some(g)) => hull_dim_bound(parse_group(g)?),
        (None, None) => return Err(Fail(2, "give --dimx or --group".into())),
    };
    let rep = bounds_report(BoundInput { d_g: a.dg, dim_x });
    println!("{}", rep.nuclear_dim_bound);
    eprintln!("tube dimension bound {}", rep.tube_dim_bound);
    if let Some(p) = &a.out {
        write(p, &pretty(&serde_json::to_value(&rep).map_err(Error::from)?))?;
    }
    Ok(())
}

fn check_window(a: &CheckWindowArgs) -> Run {
    let scheme = a.scheme.scheme()?;
    let window = a.scheme.window()?;
    let bound = rational("bound", &a.bound)?;
    let rep = check_window_regular(&scheme, &window, &bound)?;
    let v = json!({
        "config": a.scheme.config(&scheme, &window),
        "search_bound": format_rational(&bound),
        "report": rep,
        "regular": rep.is_regular(),
    });
    emit(a.out.as_ref(), &pretty(&v))?;
    if !rep.boundary_clear {
        return Err(Fail(3, "window boundary meets the projected lattice".into()));
    }
    Ok(())
}
