//! `gbf`: evaluate Gamma-ratio families and kernels, verify identities and
//! function-class statements over parameter grids, and dump kernel tables.
//!
//! Exit codes: 0 all checks passed, 1 some check failed, 2 usage or domain
//! error, 3 I/O error.

mod exit;
mod output;
mod parse;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gbf::identities::IdentityId;
use gbf::quadrature::QuadratureSpec;
use gbf::registry::{evaluate, format_float, kernel_csv, FunctionName};
use gbf::{OmegaParams, ParamPair};
use serde_json::json;

use exit::{CliError, CHECK_FAILED, PASS};
use output::{emit, json_text, Format};
use verify::{report_csv, run_sweep, summary, Report, SweepConfig};

const DEFAULT_GRID: &str = "0.3,1,5,20";

#[derive(Parser)]
#[command(name = "gbf", version, about = "Gamma-ratio families, kernels and class checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function or kernel at one point or over a grid.
    Eval(EvalArgs),
    /// Run identity checks and class suites; exit 0 iff everything passed.
    Verify(VerifyArgs),
    /// Write s, xi, eta at uniform nodes plus every kink point.
    DumpKernels(DumpArgs),
    /// Summarize a JSON report written by `verify`.
    Report(ReportArgs),
}

#[derive(Args)]
struct Pair {
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
}

impl Pair {
    fn pair(&self) -> Result<ParamPair, CliError> {
        Ok(ParamPair::new(self.a, self.b)?)
    }
}

#[derive(Args)]
struct EvalArgs {
    /// One of M, logM, dlogM, L, F, beta_f, Phi, PhiPrime, xi, eta, Theta, w,
    /// wPrime, W, varphi, q, p, g_lambda (g_lambda takes lambda = a and ignores b).
    function: String,
    #[command(flatten)]
    pair: Pair,
    /// Single argument.
    #[arg(long, conflicts_with = "grid")]
    x: Option<f64>,
    /// Comma list "x1,x2,..." or linspace "start:stop:count".
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identities, e.g. "R4,R5,R6" or "all".
    #[arg(long)]
    identities: Option<String>,
    /// Any of cm, bernstein, stieltjes, logconvex, logcm, closure, witness.
    #[arg(long)]
    suites: Option<String>,
    /// Witness target: M, L, F, beta_f or remark.
    #[arg(long)]
    target: Option<String>,
    /// Witness class: B<lambda> or S<rho>, e.g. B1 or S2.
    #[arg(long)]
    class: Option<String>,
    /// Parameter pairs "a:b[,a:b...]".
    #[arg(long)]
    params: String,
    /// Argument grid for identities: comma list or "start:stop:count".
    #[arg(long, default_value = DEFAULT_GRID)]
    grid: String,
    /// Worker threads; output order does not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Jitters the witness search grid.
    #[arg(long)]
    seed: Option<u64>,
    /// Relative tolerance overriding each identity's default.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct DumpArgs {
    #[command(flatten)]
    pair: Pair,
    #[arg(long, default_value_t = 10.0)]
    smax: f64,
    /// Number of uniform nodes on [0, smax].
    #[arg(long, default_value_t = 1001)]
    n: usize,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ReportArgs {
    /// JSON report written by `verify --format json`.
    file: String,
}

fn eval(args: &EvalArgs) -> Result<u8, CliError> {
    let name: FunctionName = args.function.parse()?;
    let pair = args.pair.pair()?;
    let xs = match (&args.x, &args.grid) {
        (Some(x), _) => vec![*x],
        (None, Some(g)) => parse::grid(g)?,
        (None, None) => return Err(CliError::usage("give --x or --grid")),
    };
    let values = evaluate(name, &pair, &xs, &QuadratureSpec::default())?;
    let text = match args.format {
        Format::Csv => {
            let mut out = format!(
                "# eval {name} a={} b={} x={}\nx,value\n",
                pair.a(),
                pair.b(),
                args.grid.clone().unwrap_or_else(|| xs[0].to_string())
            );
            for (x, v) in xs.iter().zip(&values) {
                out.push_str(&format!("{},{}\n", format_float(*x), format_float(*v)));
            }
            out
        }
        Format::Json => json_text(&json!({
            "function": name.name(),
            "params": { "a": pair.a(), "b": pair.b() },
            "x": xs,
            "values": values,
        })),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(PASS)
}

fn identities(s: &str) -> Result<Vec<IdentityId>, CliError> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(IdentityId::ALL.to_vec());
    }
    parse::list(s)
        .iter()
        .map(|id| id.parse::<IdentityId>().map_err(CliError::from))
        .collect()
}

fn verify(args: &VerifyArgs) -> Result<u8, CliError> {
    let witness = match (&args.target, &args.class) {
        (Some(t), Some(c)) => {
            let (class, order) = parse::class_spec(c)?;
            Some((t.clone(), class, order))
        }
        (None, None) => None,
        _ => return Err(CliError::usage("--target and --class go together")),
    };
    let config = SweepConfig {
        params: parse::params_list(&args.params)?,
        grid: parse::grid(&args.grid)?,
        identities: args.identities.as_deref().map(identities).transpose()?.unwrap_or_default(),
        suites: args.suites.as_deref().map(parse::list).unwrap_or_default(),
        tolerance: args.tol,
        witness,
        seed: args.seed,
    };
    let report = run_sweep(&config, args.jobs)?;
    let text = match args.format {
        Format::Json => json_text(&serde_json::to_value(&report).expect("serializable")),
        Format::Csv => report_csv(
            &report,
            &format!(
                "# verify params={} grid={} identities={} suites={}\n",
                args.params,
                args.grid,
                args.identities.as_deref().unwrap_or(""),
                args.suites.as_deref().unwrap_or("")
            ),
        ),
    };
    emit(args.out.as_deref(), &text)?;
    if args.out.as_deref().is_some_and(|p| p != "-") {
        eprint!("{}", summary(&report));
    }
    Ok(if report.all_passed() { PASS } else { CHECK_FAILED })
}

fn dump(args: &DumpArgs) -> Result<u8, CliError> {
    let params = OmegaParams::try_from(args.pair.pair()?)?;
    let csv = kernel_csv(&params, args.smax, args.n)?;
    emit(args.out.as_deref(), &csv)?;
    Ok(PASS)
}

fn report(args: &ReportArgs) -> Result<u8, CliError> {
    let text = std::fs::read_to_string(&args.file).map_err(|e| CliError::io(&args.file, e))?;
    let report: Report = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{}: not a verify report: {e}", args.file)))?;
    if report.version != verify::SCHEMA_VERSION {
        return Err(CliError::usage(format!("unsupported report version {}", report.version)));
    }
    emit(None, &summary(&report))?;
    Ok(if report.all_passed() { PASS } else { CHECK_FAILED })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => eval(a),
        Command::Verify(a) => verify(a),
        Command::DumpKernels(a) => dump(a),
        Command::Report(a) => report(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            e.code()
        }
    }
}
