//! The `crestimate` command line.
//!
//! Exit codes: 0 on success, 1 for invalid input or arguments, 2 when a
//! quadrature fails to converge.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{
    build_grid, comb_example, crest_lower_bound_refined, default_grid, detect_comb, BoundCertificate, GridSpec,
    QContext, QReport,
};
use crate::crests::{decompose, CrestReport};
use crate::error::{Error, Result};
use crate::hardy::check_corollary2;
use crate::io::{load_function, parse_function, to_json};
use crate::piecewise::{Function, SampleMode, StepFunction};
use crate::rearrange::rearrangement;
use crate::verify::{run_suite, Family, SuiteConfig};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "CRESTIMATE_THREADS";

pub const CSV_HEADER: &str = "z,abs_fhat,tail_integral,bound,q";

#[derive(Debug, Parser)]
#[command(name = "crestimate", version)]
#[command(about = "Crest-count certificates from Fourier magnitudes of piecewise functions")]
#[command(after_help = "\
INPUT is a path or inline JSON. JSON functions look like
  {\"type\":\"step\",\"breakpoints\":[0,1,2],\"values\":[1,0.5]}
  {\"type\":\"linear\",\"nodes\":[0,1,2],\"node_values\":[0,1,0]}
Any other file is read as x,y samples (header optional). In left-step mode
each sample holds until the next abscissa and the last box is as wide as the
previous gap.

The number of worker threads can be capped with CRESTIMATE_THREADS.
Exit codes: 0 success, 1 validation error, 2 quadrature did not converge.")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Samples {
    LeftStep,
    Linear,
}

impl From<Samples> for SampleMode {
    fn from(s: Samples) -> Self {
        match s {
            Samples::LeftStep => SampleMode::LeftStep,
            Samples::Linear => SampleMode::Linear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Step,
    Decreasing,
    OneCrest,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Step => Family::Step,
            FamilyArg::Decreasing => Family::Decreasing,
            FamilyArg::OneCrest => Family::OneCrest,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct GridArgs {
    /// Frequency grid `min:max:count:log|lin`. Without it: 512 log points on
    /// [1e-2, 1e3] plus every odd multiple of pi up to 1e3.
    #[arg(long)]
    pub grid: Option<String>,
    /// Additional frequencies, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub extra_z: Vec<f64>,
    /// Rounds of local refinement around the best grid point.
    #[arg(long, default_value_t = 0)]
    pub refine: usize,
}

#[derive(Debug, clap::Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Q sweep, crest certificate and true crest count of a function.
    Analyze {
        input: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// How CSV samples become a function.
        #[arg(long, value_enum, default_value_t = Samples::LeftStep)]
        samples: Samples,
    },
    /// Transform of the comb of 5N unit boxes at 0, 2, 4, ...
    Comb {
        n: u32,
        /// Frequencies to evaluate, comma separated.
        #[arg(long, value_delimiter = ',')]
        z: Vec<f64>,
        /// Indices l for the points 2l*pi and (2l+1)*pi, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3, 50])]
        l: Vec<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Randomized inequality suites.
    Verify {
        #[arg(value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Frequencies per function.
        #[arg(long, default_value_t = 50)]
        frequencies: usize,
        #[arg(long, default_value_t = 20)]
        max_pieces: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weighted Fourier norm, Hardy quantity and Lorentz norm of a
    /// nonincreasing function. Weights must be step functions.
    Hardy {
        f: String,
        u: String,
        v: String,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decreasing rearrangement, in the input JSON format.
    Rearrange {
        input: String,
        #[arg(long, value_enum, default_value_t = Samples::LeftStep)]
        samples: Samples,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower bound on the number of real roots of f'.
    ///
    /// Needs a piecewise-linear input, standing in for a smooth function
    /// whose critical points are nondegenerate (f'(x) = 0 implies
    /// f''(x) != 0). That hypothesis is not checked; the bound is reported
    /// conditional on it.
    BoundRoots {
        input: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_enum, default_value_t = Samples::Linear)]
        samples: Samples,
    },
}

fn read_input(input: &str, mode: SampleMode) -> Result<Function> {
    if input.trim_start().starts_with('{') {
        parse_function(input, mode)
    } else {
        load_function(Path::new(input), mode)
    }
}

fn read_weight(input: &str, name: &str) -> Result<StepFunction> {
    match read_input(input, SampleMode::LeftStep)? {
        Function::Step(s) => Ok(s),
        Function::Linear(_) => Err(Error::Unsupported(format!(
            "weight {name} must be a step function"
        ))),
    }
}

fn grid_points(args: &GridArgs) -> Result<Vec<f64>> {
    for &z in &args.extra_z {
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "extra frequencies must be positive and finite, got {z}"
            )));
        }
    }
    Ok(match &args.grid {
        Some(s) => build_grid(&GridSpec::parse(s)?, &args.extra_z, false),
        None => {
            let mut zs = default_grid();
            zs.extend_from_slice(&args.extra_z);
            zs.sort_by(f64::total_cmp);
            zs.dedup();
            zs
        }
    })
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_rows(reports: &[QReport]) -> String {
    let mut s = String::with_capacity(reports.len() * 120 + 40);
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in reports {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            fmt17(r.z),
            fmt17(r.transform_magnitude),
            fmt17(r.tail_integral),
            fmt17(r.theorem1_bound),
            fmt17(r.q_value)
        );
    }
    s
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

#[derive(Debug, Serialize)]
struct CombPoint {
    l: u32,
    z: f64,
    abs_fhat: f64,
    q: f64,
}

/// Comb resonances: the vanishing points `2l pi` and the peaks `(2l+1) pi`.
#[derive(Debug, Serialize)]
struct CombNotes {
    n: u32,
    stated_points: Vec<CombPoint>,
    corrected_points: Vec<CombPoint>,
    expected_peak_q: f64,
    note: String,
}

fn comb_notes(ctx: &QContext, n: u32, ls: &[u32]) -> Result<CombNotes> {
    let point = |l: u32, z: f64| -> Result<CombPoint> {
        let r = ctx.report(z)?;
        Ok(CombPoint {
            l,
            z,
            abs_fhat: r.transform_magnitude,
            q: r.q_value,
        })
    };
    let stated = ls
        .iter()
        .filter(|&&l| l >= 1)
        .map(|&l| point(l, 2.0 * l as f64 * PI))
        .collect::<Result<Vec<_>>>()?;
    let corrected = ls
        .iter()
        .map(|&l| point(l, (2 * l + 1) as f64 * PI))
        .collect::<Result<Vec<_>>>()?;
    Ok(CombNotes {
        n,
        stated_points: stated,
        corrected_points: corrected,
        expected_peak_q: 10f64.sqrt() * n as f64 / PI,
        note: "the comb transform vanishes at z = 2l*pi; the resonances that give \
               Q = sqrt(10) N / pi > N sit at the odd multiples z = (2l+1)*pi"
            .into(),
    })
}

#[derive(Debug, Serialize)]
struct AnalyzeReport<'a> {
    function_type: &'static str,
    crest_count: usize,
    crests: &'a CrestReport,
    certificate: &'a BoundCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    comb: Option<CombNotes>,
}

fn kind(f: &Function) -> &'static str {
    match f {
        Function::Step(_) => "step",
        Function::Linear(_) => "linear",
    }
}

fn analyze(input: &str, grid: &GridArgs, output: &OutputArgs, samples: Samples) -> Result<()> {
    let f = read_input(input, samples.into())?;
    let zs = grid_points(grid)?;
    let cert = crest_lower_bound_refined(&f, &zs, grid.refine)?;
    let text = match output.format {
        Format::Csv => csv_rows(&cert.grid),
        Format::Json => {
            let crests = decompose(&f)?;
            let comb = match detect_comb(&f) {
                Some(n) => Some(comb_notes(&QContext::new(&f)?, n, &[1, 2, 3, 50])?),
                None => None,
            };
            json(&AnalyzeReport {
                function_type: kind(&f),
                crest_count: crests.count,
                crests: &crests,
                certificate: &cert,
                comb,
            })
        }
    };
    emit(&text, output.out.as_deref())
}

#[derive(Debug, Serialize)]
struct CombReport {
    n: u32,
    crest_count: usize,
    requested: Vec<QReport>,
    #[serde(flatten)]
    notes: CombNotes,
}

fn comb(n: u32, zs: &[f64], ls: &[u32], output: &OutputArgs) -> Result<()> {
    let f: Function = comb_example(n)?.into();
    let ctx = QContext::new(&f)?;
    let requested = zs.iter().map(|&z| ctx.report(z)).collect::<Result<Vec<_>>>()?;
    let text = match output.format {
        Format::Csv => {
            let mut all = requested;
            for &l in ls {
                if l >= 1 {
                    all.push(ctx.report(2.0 * l as f64 * PI)?);
                }
                all.push(ctx.report((2 * l + 1) as f64 * PI)?);
            }
            all.sort_by(|a, b| a.z.total_cmp(&b.z));
            all.dedup_by(|a, b| a.z == b.z);
            csv_rows(&all)
        }
        Format::Json => json(&CombReport {
            n,
            crest_count: ctx.crest_count(),
            requested,
            notes: comb_notes(&ctx, n, ls)?,
        }),
    };
    emit(&text, output.out.as_deref())
}

fn verify(family: FamilyArg, cfg: SuiteConfig, out: Option<&Path>) -> Result<()> {
    let report = run_suite(family.into(), &cfg)?;
    for c in &report.checks {
        eprintln!(
            "{}: {} evaluations, {} violations, max ratio {:.6}",
            c.name, c.evaluations, c.violations, c.max_ratio
        );
    }
    emit(&json(&report), out)
}

fn hardy(f: &str, u: &str, v: &str, p: f64, q: f64, out: Option<&Path>) -> Result<()> {
    let f = read_input(f, SampleMode::LeftStep)?;
    let u = read_weight(u, "u")?;
    let v = read_weight(v, "v")?;
    let report = check_corollary2(&f, &u, &v, p, q)?;
    emit(&json(&report), out)
}

fn rearrange(input: &str, samples: Samples, out: Option<&Path>) -> Result<()> {
    let f = read_input(input, samples.into())?;
    let mut text = to_json(rearrangement(&f).star());
    text.push('\n');
    emit(&text, out)
}

#[derive(Debug, Serialize)]
struct RootsReport {
    best_z: f64,
    best_q: f64,
    crest_lower_bound: u64,
    root_lower_bound: u64,
    derived_root_bound: u64,
    nontrivial: bool,
    statement: String,
    hypothesis: &'static str,
}

fn bound_roots(input: &str, grid: &GridArgs, output: &OutputArgs, samples: Samples) -> Result<()> {
    let f = read_input(input, samples.into())?;
    if let Function::Step(_) = f {
        return Err(Error::Unsupported(
            "bound-roots needs a piecewise-linear function (derivative roots of a step \
             function are undefined); pass linear JSON or samples with --samples linear"
                .into(),
        ));
    }
    let zs = grid_points(grid)?;
    let cert = crest_lower_bound_refined(&f, &zs, grid.refine)?;
    if output.format == Format::Csv {
        return emit(&csv_rows(&cert.grid), output.out.as_deref());
    }
    let statement = if cert.nontrivial {
        format!(
            "Q({}) = {} exceeds {}: f' has at least {} real roots (derived chain: {})",
            cert.best_z,
            cert.best_q,
            cert.crest_lower_bound - 1,
            cert.root_lower_bound,
            cert.derived_root_bound
        )
    } else {
        format!("no nontrivial certificate (best Q = {} at z = {})", cert.best_q, cert.best_z)
    };
    let report = RootsReport {
        best_z: cert.best_z,
        best_q: cert.best_q,
        crest_lower_bound: cert.crest_lower_bound,
        root_lower_bound: cert.root_lower_bound,
        derived_root_bound: cert.derived_root_bound,
        nontrivial: cert.nontrivial,
        statement,
        hypothesis: "valid for smooth f whose critical points are nondegenerate \
                     (f'(x) = 0 implies f''(x) != 0); the piecewise-linear input stands \
                     in for such an f and the hypothesis is not checked",
    };
    emit(&json(&report), output.out.as_deref())
}

/// Reads [`THREADS_ENV`]; `None` when unset or empty.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(s) if s.trim().is_empty() => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Error::InvalidArgument(format!(
                "{THREADS_ENV} must be a positive integer, got {s:?}"
            ))),
        },
        Err(_) => Ok(None),
    }
}

pub fn execute(cli: Cli) -> Result<()> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap()? {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| match cli.command {
        Command::Analyze {
            input,
            grid,
            output,
            samples,
        } => analyze(&input, &grid, &output, samples),
        Command::Comb { n, z, l, output } => comb(n, &z, &l, &output),
        Command::Verify {
            family,
            trials,
            seed,
            frequencies,
            max_pieces,
            out,
        } => verify(
            family,
            SuiteConfig {
                seed,
                trials,
                frequencies,
                max_pieces,
                ..SuiteConfig::default()
            },
            out.as_deref(),
        ),
        Command::Hardy { f, u, v, p, q, out } => hardy(&f, &u, &v, p, q, out.as_deref()),
        Command::Rearrange { input, samples, out } => rearrange(&input, samples, out.as_deref()),
        Command::BoundRoots {
            input,
            grid,
            output,
            samples,
        } => bound_roots(&input, &grid, &output, samples),
    })
}

/// Parses arguments, runs, prints any error and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
