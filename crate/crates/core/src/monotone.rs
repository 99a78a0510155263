//! Membership tests for completely monotonic, generalized Bernstein and
//! generalized Stieltjes classes, log-convexity and logarithmic complete
//! monotonicity.
//!
//! A completely monotonic f satisfies (−1)^n Δ_h^n f(x) ≥ 0 exactly for every
//! h > 0, so only rounding can produce a negative sign. Each report compares
//! the worst sign violation with a rounding budget of 2^n·noise·max|f| over the
//! stencil.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::families::{
    beta_bernstein_function, f_function, gamma_ratio_function, inverse_x_digamma_gap_function,
    l_function, m_function, neg_log_m_function, scaled_l_function, scaled_m_deriv_function,
    x_digamma_gap_function, x_log_m_deriv_function,
};
use crate::function::ScalarFunction;
use crate::kernels::{log_w, p_of_t, phi, phi_prime, varphi, w_prime, W_kernel};
use crate::params::ParamPair;
use crate::quadrature::compensated_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassId {
    #[serde(rename = "CM")]
    Cm,
    #[serde(rename = "B_lambda")]
    BLambda,
    #[serde(rename = "S_rho_necessary")]
    SRhoNecessary,
    #[serde(rename = "LOGCM")]
    LogCm,
    #[serde(rename = "LOGCONVEX")]
    LogConvex,
}

impl std::fmt::Display for ClassId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClassId::Cm => "CM",
            ClassId::BLambda => "B_lambda",
            ClassId::SRhoNecessary => "S_rho_necessary",
            ClassId::LogCm => "LOGCM",
            ClassId::LogConvex => "LOGCONVEX",
        })
    }
}

/// Step h(x) used for the forward differences at x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum StepRule {
    /// h = x·factor / N.
    Proportional(f64),
    Fixed(f64),
}

impl StepRule {
    fn step(&self, x: f64, order: usize) -> f64 {
        match *self {
            StepRule::Proportional(c) => x * c / order.max(1) as f64,
            StepRule::Fixed(h) => h,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CMCheckSpec {
    pub max_order: usize,
    pub grid: Vec<f64>,
    pub step: StepRule,
    /// Relative evaluation noise of the function under test.
    pub noise: f64,
}

impl CMCheckSpec {
    pub fn new(max_order: usize, grid: Vec<f64>) -> Result<Self> {
        if max_order == 0 {
            return Err(domain("CMCheckSpec", "max_order must be at least 1"));
        }
        if grid.is_empty() || grid.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(domain("CMCheckSpec", "grid must be nonempty and positive"));
        }
        Ok(Self {
            max_order,
            grid,
            step: StepRule::Proportional(0.5),
            noise: 1e-12,
        })
    }

    pub fn with_step(mut self, step: StepRule) -> Self {
        self.step = step;
        self
    }

    pub fn with_noise(mut self, noise: f64) -> Self {
        self.noise = noise;
        self
    }

    /// Order 8 on 33 log-spaced points in [0.05, 50].
    pub fn standard() -> Self {
        Self::new(8, log_grid(0.05, 50.0, 33)).expect("static grid")
    }
}

/// `count` log-spaced points from `lo` to `hi`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![lo];
    }
    let (l, h) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (l + (h - l) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Replaces each grid point x by x·(1 + amount·u), u uniform in [−1, 1].
pub fn jittered(grid: &[f64], amount: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    grid.iter()
        .map(|&x| x * (1.0 + amount * rng.gen_range(-1.0..=1.0)))
        .collect()
}

/// Where and how a condition failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: f64,
    /// Difference order (0 for conditions that are not difference tests).
    pub n: usize,
    pub h: f64,
    pub condition: String,
    /// Signed violation relative to the local function scale.
    pub violation: f64,
}

/// Result of one necessary condition inside a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: String,
    pub passed: bool,
    pub worst_violation: f64,
    pub within_noise: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class_id: ClassId,
    pub label: String,
    /// λ for B_λ, ρ for S_ρ.
    pub order: Option<f64>,
    pub orders_tested: usize,
    /// Largest sign violation relative to the local function scale; negative
    /// means every sign held strictly.
    pub worst_violation: f64,
    /// Some violation was positive but inside the rounding budget.
    pub within_noise: bool,
    pub witness: Option<Witness>,
    pub passed: bool,
    pub conditions: Vec<ConditionReport>,
}

impl ClassReport {
    fn from_conditions(
        class_id: ClassId,
        label: String,
        order: Option<f64>,
        orders_tested: usize,
        conditions: Vec<ConditionReport>,
    ) -> Self {
        let worst_violation = conditions
            .iter()
            .map(|c| c.worst_violation)
            .fold(f64::NEG_INFINITY, f64::max);
        let witness = conditions.iter().find_map(|c| c.witness.clone());
        Self {
            class_id,
            label,
            order,
            orders_tested,
            worst_violation,
            within_noise: conditions.iter().any(|c| c.within_noise),
            passed: witness.is_none(),
            witness,
            conditions,
        }
    }
}

struct Tracker {
    condition: &'static str,
    worst: f64,
    within_noise: bool,
    witness: Option<Witness>,
}

impl Tracker {
    fn new(condition: &'static str) -> Self {
        Self {
            condition,
            worst: f64::NEG_INFINITY,
            within_noise: false,
            witness: None,
        }
    }

    /// `violation` and `budget` are both relative to the local scale.
    fn record(&mut self, x: f64, n: usize, h: f64, violation: f64, budget: f64) {
        let violation = if violation.is_nan() { f64::INFINITY } else { violation };
        self.worst = self.worst.max(violation);
        if violation > budget {
            if self.witness.is_none() {
                self.witness = Some(Witness {
                    x,
                    n,
                    h,
                    condition: self.condition.to_string(),
                    violation,
                });
            }
        } else if violation > 0.0 {
            self.within_noise = true;
        }
    }

    fn finish(self) -> ConditionReport {
        ConditionReport {
            condition: self.condition.to_string(),
            passed: self.witness.is_none(),
            worst_violation: self.worst,
            within_noise: self.within_noise,
            witness: self.witness,
        }
    }
}

fn binomials(n: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for k in 1..=n {
        let next = row[k - 1] * (n - k + 1) as f64 / k as f64;
        row.push(next);
    }
    row
}

fn alternating_differences<F>(eval: F, spec: &CMCheckSpec, name: &'static str) -> Result<ConditionReport>
where
    F: Fn(f64) -> Result<f64>,
{
    let n_max = spec.max_order;
    let rows: Vec<Vec<f64>> = (0..=n_max).map(binomials).collect();
    let mut tracker = Tracker::new(name);
    let mut values = vec![0.0; n_max + 1];
    for &x in &spec.grid {
        let h = spec.step.step(x, n_max);
        if !(h > 0.0) {
            return Err(domain("cm_check", format!("step {h} at x = {x}")));
        }
        for (k, v) in values.iter_mut().enumerate() {
            *v = eval(x + k as f64 * h)?;
        }
        for (n, row) in rows.iter().enumerate() {
            // (−1)^n Δ_h^n f(x) = Σ_k (−1)^k C(n,k) f(x + k h)
            let signed = compensated_sum(
                row.iter()
                    .enumerate()
                    .map(|(k, c)| if k % 2 == 0 { c * values[k] } else { -c * values[k] }),
            );
            let scale = values[..=n].iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let scale = if scale > 0.0 { scale } else { f64::MIN_POSITIVE };
            let budget = 2f64.powi(n as i32) * spec.noise;
            tracker.record(x, n, h, -signed / scale, budget);
        }
    }
    Ok(tracker.finish())
}

/// (−1)^n Δ_h^n f(x) ≥ 0 for n = 0..N on the grid.
pub fn cm_check(f: &ScalarFunction, spec: &CMCheckSpec) -> Result<ClassReport> {
    let c = alternating_differences(|x| f.eval(x), spec, "completely monotonic")?;
    Ok(ClassReport::from_conditions(
        ClassId::Cm,
        f.label().to_string(),
        None,
        spec.max_order,
        vec![c],
    ))
}

/// f ∈ B_λ: x^{1−λ} f′(x) completely monotonic.
pub fn bernstein_check(f: &ScalarFunction, lambda: f64, spec: &CMCheckSpec) -> Result<ClassReport> {
    if !f.has_derivative() {
        return Err(crate::Error::MissingDerivative(f.label().to_string()));
    }
    let c = alternating_differences(
        |x| Ok(x.powf(1.0 - lambda) * f.deriv(x)?),
        spec,
        "x^(1-lambda) f' completely monotonic",
    )?;
    Ok(ClassReport::from_conditions(
        ClassId::BLambda,
        f.label().to_string(),
        Some(lambda),
        spec.max_order,
        vec![c],
    ))
}

/// Necessary conditions for f ∈ S_ρ: f completely monotonic, x^ρ f(x)
/// nondecreasing, and −f′(x) ≤ ρ f(x)/x.
pub fn stieltjes_necessary_check(
    f: &ScalarFunction,
    rho: f64,
    spec: &CMCheckSpec,
) -> Result<ClassReport> {
    if !f.has_derivative() {
        return Err(crate::Error::MissingDerivative(f.label().to_string()));
    }
    let cm = alternating_differences(|x| f.eval(x), spec, "completely monotonic")?;

    let mut grid = spec.grid.clone();
    grid.sort_by(f64::total_cmp);
    let mut monotone = Tracker::new("x^rho f nondecreasing");
    let mut bound = Tracker::new("-f' <= rho f/x");
    let mut prev: Option<(f64, f64)> = None;
    for &x in &grid {
        let v = f.eval(x)?;
        let g = rho * x.ln() + v.abs().ln();
        if let Some((px, pg)) = prev {
            // compare logarithms so the scale is the magnitude of x^ρ f
            let drop = if v > 0.0 { pg - g } else { f64::INFINITY };
            monotone.record(px, 0, x - px, drop, 4.0 * spec.noise);
        }
        prev = Some((x, if v > 0.0 { g } else { f64::NEG_INFINITY }));
        let d = f.deriv(x)?;
        let lhs = -d;
        let rhs = rho * v / x;
        let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
        bound.record(x, 1, 0.0, (lhs - rhs) / scale, 4.0 * spec.noise);
    }
    Ok(ClassReport::from_conditions(
        ClassId::SRhoNecessary,
        f.label().to_string(),
        Some(rho),
        spec.max_order,
        vec![cm, monotone.finish(), bound.finish()],
    ))
}

/// f(x)f(y) ≥ f((x+y)/2)² for all grid pairs, and f nonincreasing on the grid.
pub fn log_convexity_check(f: &ScalarFunction, grid: &[f64], noise: f64) -> Result<ClassReport> {
    let mut grid = grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let logs = grid
        .iter()
        .map(|&x| positive_log(f, x))
        .collect::<Result<Vec<_>>>()?;
    let mut convex = Tracker::new("log-convex");
    let mut decreasing = Tracker::new("nonincreasing");
    for i in 0..grid.len() {
        if i > 0 {
            let scale = 1.0 + logs[i].abs().max(logs[i - 1].abs());
            decreasing.record(
                grid[i - 1],
                0,
                grid[i] - grid[i - 1],
                (logs[i] - logs[i - 1]) / scale,
                2.0 * noise,
            );
        }
        for j in i + 1..grid.len() {
            let mid = positive_log(f, 0.5 * (grid[i] + grid[j]))?;
            let scale = 1.0 + logs[i].abs().max(logs[j].abs()).max(mid.abs());
            let gap = logs[i] + logs[j] - 2.0 * mid;
            convex.record(grid[i], 2, 0.5 * (grid[j] - grid[i]), -gap / scale, 4.0 * noise);
        }
    }
    Ok(ClassReport::from_conditions(
        ClassId::LogConvex,
        f.label().to_string(),
        None,
        2,
        vec![convex.finish(), decreasing.finish()],
    ))
}

fn positive_log(f: &ScalarFunction, x: f64) -> Result<f64> {
    let v = f.eval(x)?;
    if v > 0.0 && v.is_finite() {
        Ok(v.ln())
    } else {
        Err(domain(
            "log_convexity_check",
            format!("{} is not positive at {x}: {v}", f.label()),
        ))
    }
}

/// −f′/f completely monotonic.
pub fn log_cm_check(f: &ScalarFunction, spec: &CMCheckSpec) -> Result<ClassReport> {
    if !f.has_derivative() {
        return Err(crate::Error::MissingDerivative(f.label().to_string()));
    }
    let c = alternating_differences(
        |x| {
            let v = f.eval(x)?;
            if v > 0.0 {
                Ok(-f.deriv(x)? / v)
            } else {
                Err(domain("log_cm_check", format!("{} is not positive at {x}", f.label())))
            }
        },
        spec,
        "-f'/f completely monotonic",
    )?;
    Ok(ClassReport::from_conditions(
        ClassId::LogCm,
        f.label().to_string(),
        None,
        spec.max_order,
        vec![c],
    ))
}

/// Scans `search` for a point where the class's exact sign condition fails
/// beyond the rounding budget. `None` means inconclusive, not membership.
pub fn non_membership_witness(
    f: &ScalarFunction,
    class_id: ClassId,
    order: f64,
    search: &CMCheckSpec,
) -> Result<Option<Witness>> {
    let report = match class_id {
        ClassId::BLambda => bernstein_check(f, order, search)?,
        ClassId::SRhoNecessary => stieltjes_necessary_check(f, order, search)?,
        other => {
            return Err(domain(
                "non_membership_witness",
                format!("class {other} is not searchable"),
            ))
        }
    };
    Ok(report.witness)
}

/// Default search grid for witnesses: 41 log-spaced points in [0.01, 100].
pub fn witness_search_spec(max_order: usize) -> CMCheckSpec {
    CMCheckSpec::new(max_order, log_grid(1e-2, 1e2, 41)).expect("static grid")
}

/// h(x) = x^{−⌊a−b⌋} e^{−bx} (1 − e^{−x})^{a−b−1} with its derivative. It is
/// completely monotonic, but x^μ h(x) → 0 as x → ∞ for every μ > 0, so h lies
/// in no S_μ.
pub fn remark_function(pair: &ParamPair) -> ScalarFunction {
    let (b, lambda) = (pair.b(), pair.lambda());
    let e = -pair.lambda_floor();
    let log_value = move |x: f64| e * x.ln() - b * x + (lambda - 1.0) * (-(-x).exp_m1()).ln();
    ScalarFunction::new(format!("x^-[a-b] e^-bx (1-e^-x)^(a-b-1){pair}"), move |x| {
        Ok(log_value(x).exp())
    })
    .with_derivative(move |x| Ok(log_value(x).exp() * (e / x - b + (lambda - 1.0) / x.exp_m1())))
}

/// One instance of a closure property: a function expected in B_λ, and
/// optionally a companion expected to be completely monotonic.
#[derive(Debug, Clone)]
pub struct ClosureInstance {
    pub name: String,
    pub function: ScalarFunction,
    pub lambda: f64,
    pub companion_cm: Option<ScalarFunction>,
}

/// The five standard closure instances.
pub fn standard_closure_instances() -> Result<Vec<ClosureInstance>> {
    let p1 = ParamPair::new(2.5, 0.5)?;
    let p2 = ParamPair::new(1.7, 1.6)?;
    let beta_pair = ParamPair::new(3.2, 1.1)?;
    let f_pair = ParamPair::new(3.0, 1.0)?;
    let power = ScalarFunction::from_fns(
        "(1-e^-x)^2.5",
        |x: f64| (-(-x).exp_m1()).powf(2.5),
        |x: f64| 2.5 * (-(-x).exp_m1()).powf(1.5) * (-x).exp(),
    );
    Ok(vec![
        ClosureInstance {
            name: "product M(2.5,0.5)*M(1.7,1.6)".into(),
            function: m_function(&p1).product(&m_function(&p2)),
            lambda: p1.lambda() + p2.lambda(),
            companion_cm: None,
        },
        ClosureInstance {
            name: "power (1-e^-x)^2.5".into(),
            function: power,
            lambda: 3.0,
            companion_cm: None,
        },
        ClosureInstance {
            name: "incomplete beta (3.2,1.1)".into(),
            function: beta_bernstein_function(&beta_pair),
            lambda: beta_pair.lambda_floor() + 1.0,
            companion_cm: None,
        },
        ClosureInstance {
            name: "F(3,1)".into(),
            function: f_function(&f_pair)?,
            lambda: f_pair.lambda(),
            companion_cm: None,
        },
        ClosureInstance {
            name: "x(psi(x+3)-psi(x+1))".into(),
            function: x_digamma_gap_function(&f_pair),
            lambda: 1.0,
            companion_cm: Some(inverse_x_digamma_gap_function(&f_pair)),
        },
    ])
}

/// Runs `bernstein_check` on each instance; a companion adds a CM report.
pub fn closure_suite(
    instances: &[ClosureInstance],
    spec: &CMCheckSpec,
) -> Result<Vec<ClassReport>> {
    let mut out = Vec::new();
    for inst in instances {
        let mut r = bernstein_check(&inst.function, inst.lambda, spec)?;
        r.label = inst.name.clone();
        out.push(r);
        if let Some(c) = &inst.companion_cm {
            out.push(cm_check(c, spec)?);
        }
    }
    Ok(out)
}

fn kernel_fn<F>(label: String, pair: &ParamPair, f: F) -> ScalarFunction
where
    F: Fn(&ParamPair, f64) -> Result<f64> + Send + Sync + 'static,
{
    let p = *pair;
    ScalarFunction::new(label, move |t| f(&p, t))
}

/// Every class statement applicable to `pair`, in a fixed order.
pub fn class_suite(pair: &ParamPair, spec: &CMCheckSpec) -> Result<Vec<ClassReport>> {
    let lambda = pair.lambda();
    let mut out = Vec::new();
    let mut named = |label: &str, mut r: ClassReport| {
        r.label = format!("{label}{pair}");
        out.push(r);
    };

    if pair.in_omega() {
        named(
            "-Phi(t)/t^2",
            cm_check(
                &kernel_fn(String::new(), pair, |p, t| Ok(-phi(p, t)? / (t * t))),
                spec,
            )?,
        );
        named(
            "-Phi'(t)/t^2",
            cm_check(
                &kernel_fn(String::new(), pair, |p, t| Ok(-phi_prime(p, t)? / (t * t))),
                spec,
            )?,
        );
    }
    if pair.gap_exceeds_one() {
        named(
            "-w'(t)/t^3",
            cm_check(
                &kernel_fn(String::new(), pair, |p, t| Ok(-w_prime(p, t)? / (t * t * t))),
                spec,
            )?,
        );
    }
    named("W", cm_check(&kernel_fn(String::new(), pair, W_kernel), spec)?);
    named(
        "p(t)/t^4",
        cm_check(
            &kernel_fn(String::new(), pair, |p, t| Ok(p_of_t(p, t)? / t.powi(4))),
            spec,
        )?,
    );

    if pair.in_omega() {
        named("M in B_(a-b)", bernstein_check(&m_function(pair), lambda, spec)?);
    }
    if pair.gap_exceeds_one() {
        named("L in B_(a-b)", bernstein_check(&l_function(pair), lambda, spec)?);
        named("F in B_(a-b)", bernstein_check(&f_function(pair)?, lambda, spec)?);
    }
    named(
        "beta_f in B_([a-b]+1)",
        bernstein_check(&beta_bernstein_function(pair), pair.lambda_floor() + 1.0, spec)?,
    );
    named(
        "x(psi(x+a)-psi(x+b)) in B_1",
        bernstein_check(&x_digamma_gap_function(pair), 1.0, spec)?,
    );

    if pair.in_omega() {
        named("-log M log-CM", log_cm_check(&neg_log_m_function(pair), spec)?);
    }
    if pair.gap_exceeds_one() {
        let w = kernel_fn(String::new(), pair, |p, t| Ok(log_w(p, t)?.exp()));
        named("w log-convex", log_convexity_check(&w, &spec.grid, spec.noise)?);
        named(
            "varphi log-convex",
            log_convexity_check(&kernel_fn(String::new(), pair, varphi), &spec.grid, spec.noise)?,
        );
    }

    if pair.in_omega() {
        named(
            "-log M in S_2",
            stieltjes_necessary_check(&neg_log_m_function(pair), 2.0, spec)?,
        );
        named(
            "x(log M)' in S_3",
            stieltjes_necessary_check(&x_log_m_deriv_function(pair), 3.0, spec)?,
        );
    }
    named(
        "Gamma ratio in S_([a-b]+1)",
        stieltjes_necessary_check(&gamma_ratio_function(pair), pair.lambda_floor() + 1.0, spec)?,
    );
    if pair.in_omega() {
        named(
            "x^(1-(a-b)) M' in S_(a-b+4)",
            stieltjes_necessary_check(&scaled_m_deriv_function(pair), lambda + 4.0, spec)?,
        );
    }
    named(
        "L/x^(a-b+1) in S_(a-b+4)",
        stieltjes_necessary_check(&scaled_l_function(pair), lambda + 4.0, spec)?,
    );
    Ok(out)
}

/// 1/(1 − e^{−x}), logarithmically completely monotonic.
pub fn inverse_one_minus_exp() -> ScalarFunction {
    ScalarFunction::from_fns(
        "1/(1-e^-x)",
        |x: f64| -1.0 / (-x).exp_m1(),
        |x: f64| {
            let d = (-x).exp_m1();
            -(-x).exp() / (d * d)
        },
    )
}
