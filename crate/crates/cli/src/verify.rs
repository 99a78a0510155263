use gbf::families::{beta_bernstein_function, f_function, l_function, m_function};
use gbf::identities::{check_identity, IdentityId};
use gbf::monotone::{
    class_suite, closure_suite, jittered, non_membership_witness, remark_function,
    standard_closure_instances, witness_search_spec, CMCheckSpec, ClassId, ClassReport,
};
use gbf::quadrature::QuadratureSpec;
use gbf::registry::format_float;
use gbf::{ParamPair, ScalarFunction};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::exit::CliError;
use crate::output::csv_cell;

pub const SCHEMA_VERSION: u32 = 1;

pub const SUITES: [&str; 7] = ["cm", "bernstein", "stieltjes", "logconvex", "logcm", "closure", "witness"];

pub const TARGETS: [&str; 5] = ["M", "L", "F", "beta_f", "remark"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub a: f64,
    pub b: f64,
}

/// One entry of the `checks` array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub params: Option<Params>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_rel_err: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub worst_violation: Option<f64>,
    pub worst_point: Option<f64>,
    pub details: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub params: Vec<ParamPair>,
    pub grid: Vec<f64>,
    pub identities: Vec<IdentityId>,
    pub suites: Vec<String>,
    pub tolerance: Option<f64>,
    pub witness: Option<(String, ClassId, f64)>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
enum Task {
    Identity(IdentityId, ParamPair),
    Classes(ParamPair, Vec<ClassId>),
    Closure,
    Witness(String, ParamPair, ClassId, f64),
}

fn suite_class(suite: &str) -> Option<ClassId> {
    match suite {
        "cm" => Some(ClassId::Cm),
        "bernstein" => Some(ClassId::BLambda),
        "stieltjes" => Some(ClassId::SRhoNecessary),
        "logconvex" => Some(ClassId::LogConvex),
        "logcm" => Some(ClassId::LogCm),
        _ => None,
    }
}

fn target_function(name: &str, pair: &ParamPair) -> Result<ScalarFunction, CliError> {
    Ok(match name {
        "M" => m_function(pair),
        "L" => l_function(pair),
        "F" => f_function(pair)?,
        "beta_f" => beta_bernstein_function(pair),
        "remark" => remark_function(pair),
        other => {
            return Err(CliError::usage(format!(
                "unknown witness target `{other}` (expected one of {})",
                TARGETS.join(", ")
            )))
        }
    })
}

impl SweepConfig {
    /// Validates the selection and expands it into tasks in config order.
    fn tasks(&self) -> Result<Vec<Task>, CliError> {
        if self.identities.is_empty() && self.suites.is_empty() {
            return Err(CliError::usage("select at least one of --identities or --suites"));
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0) {
                return Err(CliError::usage("--tol must be positive"));
            }
        }
        let mut tasks = Vec::new();
        for &id in &self.identities {
            for pair in &self.params {
                id.admits(pair)?;
                tasks.push(Task::Identity(id, *pair));
            }
        }
        for s in &self.suites {
            if !SUITES.contains(&s.as_str()) {
                return Err(CliError::usage(format!(
                    "unknown suite `{s}` (expected one of {})",
                    SUITES.join(", ")
                )));
            }
        }
        let classes: Vec<ClassId> = self.suites.iter().filter_map(|s| suite_class(s)).collect();
        if !classes.is_empty() {
            for pair in &self.params {
                tasks.push(Task::Classes(*pair, classes.clone()));
            }
        }
        if self.suites.iter().any(|s| s == "closure") {
            tasks.push(Task::Closure);
        }
        if self.suites.iter().any(|s| s == "witness") {
            let (target, class, order) = self
                .witness
                .clone()
                .ok_or_else(|| CliError::usage("the witness suite needs --target and --class"))?;
            for pair in &self.params {
                target_function(&target, pair)?;
                tasks.push(Task::Witness(target.clone(), *pair, class, order));
            }
        }
        Ok(tasks)
    }
}

fn params_of(pair: &ParamPair) -> Option<Params> {
    Some(Params {
        a: pair.a(),
        b: pair.b(),
    })
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn error_check(id: String, params: Option<Params>, err: gbf::Error) -> Check {
    Check {
        id,
        params,
        passed: false,
        max_rel_err: None,
        worst_violation: None,
        worst_point: None,
        details: json!({ "error": err.to_string() }),
    }
}

fn class_check(prefix: &str, params: Option<Params>, r: ClassReport) -> Check {
    Check {
        id: format!("{prefix}:{}", r.label),
        params,
        passed: r.passed,
        max_rel_err: None,
        worst_violation: finite(r.worst_violation),
        worst_point: r.witness.as_ref().map(|w| w.x),
        details: serde_json::to_value(&r).expect("serializable"),
    }
}

fn run(task: &Task, config: &SweepConfig) -> Vec<Check> {
    let spec = QuadratureSpec::default();
    match task {
        Task::Identity(id, pair) => {
            let name = id.to_string();
            match check_identity(*id, pair, &config.grid, &spec) {
                Ok(r) => {
                    let tolerance = config.tolerance.unwrap_or(r.tolerance);
                    vec![Check {
                        id: name,
                        params: params_of(pair),
                        passed: r.max_rel_err <= tolerance,
                        max_rel_err: Some(r.max_rel_err),
                        worst_violation: None,
                        worst_point: Some(r.worst_point),
                        details: json!({
                            "statement": id.statement(),
                            "tolerance": tolerance,
                            "grid": r.grid,
                            "lhs": r.lhs,
                            "rhs": r.rhs,
                        }),
                    }]
                }
                Err(e) => vec![error_check(name, params_of(pair), e)],
            }
        }
        Task::Classes(pair, classes) => match class_suite(pair, &CMCheckSpec::standard()) {
            Ok(reports) => reports
                .into_iter()
                .filter(|r| classes.contains(&r.class_id))
                .map(|r| class_check(&r.class_id.to_string(), params_of(pair), r))
                .collect(),
            Err(e) => vec![error_check(format!("classes{pair}"), params_of(pair), e)],
        },
        Task::Closure => {
            let reports = standard_closure_instances()
                .and_then(|inst| closure_suite(&inst, &CMCheckSpec::standard()));
            match reports {
                Ok(rs) => rs.into_iter().map(|r| class_check("closure", None, r)).collect(),
                Err(e) => vec![error_check("closure".into(), None, e)],
            }
        }
        Task::Witness(target, pair, class, order) => {
            let id = format!("witness:{target}{pair}:{class}({order})");
            let mut search = witness_search_spec(8);
            if let Some(seed) = config.seed {
                search.grid = jittered(&search.grid, 0.02, seed);
            }
            let found = target_function(target, pair)
                .map_err(|e| gbf::Error::Domain {
                    function: "witness",
                    detail: e.to_string(),
                })
                .and_then(|f| non_membership_witness(&f, *class, *order, &search));
            vec![match found {
                Ok(w) => Check {
                    id,
                    params: params_of(pair),
                    passed: w.is_some(),
                    max_rel_err: None,
                    worst_violation: w.as_ref().map(|w| w.violation),
                    worst_point: w.as_ref().map(|w| w.x),
                    details: json!({ "target": target, "class": class, "order": order, "witness": w }),
                },
                Err(e) => error_check(id, params_of(pair), e),
            }]
        }
    }
}

/// Runs every selected check on `jobs` threads; the report keeps config order.
pub fn run_sweep(config: &SweepConfig, jobs: usize) -> Result<Report, CliError> {
    let tasks = config.tasks()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::usage(e.to_string()))?;
    let checks: Vec<Vec<Check>> = pool.install(|| tasks.par_iter().map(|t| run(t, config)).collect());
    Ok(Report {
        version: SCHEMA_VERSION,
        checks: checks.into_iter().flatten().collect(),
    })
}

fn opt(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

pub fn report_csv(report: &Report, header: &str) -> String {
    let mut out = format!("{header}id,a,b,passed,max_rel_err,worst_violation,worst_point\n");
    for c in &report.checks {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            csv_cell(&c.id),
            opt(c.params.map(|p| p.a)),
            opt(c.params.map(|p| p.b)),
            c.passed,
            opt(c.max_rel_err),
            opt(c.worst_violation),
            opt(c.worst_point),
        ));
    }
    out
}

/// Human-readable summary of a report.
pub fn summary(report: &Report) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let params = c
            .params
            .map(|p| format!("({}, {})", p.a, p.b))
            .unwrap_or_else(|| "-".into());
        let metric = match (c.max_rel_err, c.worst_violation) {
            (Some(e), _) => format!("max_rel_err={e:.3e}"),
            (None, Some(v)) => format!("worst_violation={v:+.3e}"),
            _ => String::new(),
        };
        let tag = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{tag} {} {params} {metric}\n", c.id));
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    out.push_str(&format!(
        "{} checks, {} passed, {failed} failed\n",
        report.checks.len(),
        report.checks.len() - failed
    ));
    out
}
