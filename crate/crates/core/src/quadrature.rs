//! Adaptive Gauss–Kronrod quadrature on finite and semi-infinite intervals.
//!
//! Every integral is split into panels at caller-supplied breakpoints and
//! refined globally: the panel with the largest error estimate is bisected
//! until the summed estimate meets the requested [`Precision`]. Semi-infinite
//! integrals are truncated at a finite upper limit whose tail is either bounded
//! analytically from the integrand's declared [`Growth`] or, for periodic
//! structure, summed exactly with Hurwitz zeta weights.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, require_above, require_at_least, Error, Result};
use crate::function::ScalarFunction;
use crate::special::{hurwitz_zeta, Precision};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Strictly increasing list of points where an integrand may have kinks.
#[derive(Debug, Clone, Default, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Breakpoints(Vec<f64>);

impl Breakpoints {
    pub fn new(mut points: Vec<f64>) -> Result<Self> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(domain("Breakpoints", "non-finite breakpoint"));
        }
        points.sort_by(f64::total_cmp);
        points.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs().max(1.0));
        Ok(Self(points))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Union with `extra`, re-sorted.
    pub fn merged(&self, extra: &[f64]) -> Result<Self> {
        let mut v = self.0.clone();
        v.extend_from_slice(extra);
        Self::new(v)
    }

    /// Points strictly inside `(lo, hi)`.
    pub fn inside(&self, lo: f64, hi: f64) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().copied().filter(move |&p| p > lo && p < hi)
    }

    pub fn last(&self) -> Option<f64> {
        self.0.last().copied()
    }
}

/// How far a semi-infinite integral may be truncated.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TruncationPolicy {
    /// Minimum truncation point, in units of the decay scale 1/x.
    pub decay_multiple: f64,
    /// Hard cap on the truncation point.
    pub max_upper: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            decay_multiple: 40.0,
            max_upper: 1e6,
        }
    }
}

impl TruncationPolicy {
    /// Smallest T ≥ max(cover, decay_multiple/rate) whose tail bound meets
    /// `tolerance`, and that bound. Fails when `max_upper` is reached first.
    pub fn upper_limit(
        &self,
        rate: f64,
        cover: f64,
        tolerance: f64,
        tail: impl Fn(f64) -> f64,
    ) -> Result<(f64, f64)> {
        let mut upper = (self.decay_multiple / rate).max(cover).max(f64::MIN_POSITIVE);
        loop {
            let bound = tail(upper);
            if bound <= tolerance {
                return Ok((upper, bound));
            }
            if upper >= self.max_upper {
                return Err(Error::NonConvergence {
                    routine: "semi-infinite truncation",
                    estimate: bound,
                });
            }
            upper = (upper * 1.5).min(self.max_upper);
        }
    }
}

/// Tolerances, breakpoints and truncation rule for one integral.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuadratureSpec {
    pub precision: Precision,
    pub max_subdivisions: usize,
    pub breakpoints: Breakpoints,
    pub truncation: TruncationPolicy,
}

impl Default for QuadratureSpec {
    /// Relative accuracy 1e-12; the absolute floor is set so low that
    /// exponentially small integrals are still resolved to full relative accuracy.
    fn default() -> Self {
        Self {
            precision: Precision {
                abs_tol: 1e-300,
                rel_tol: 1e-12,
            },
            max_subdivisions: 200_000,
            breakpoints: Breakpoints::empty(),
            truncation: TruncationPolicy::default(),
        }
    }
}

impl QuadratureSpec {
    pub fn with_breakpoints(mut self, breakpoints: Breakpoints) -> Self {
        self.breakpoints = breakpoints;
        self
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }
}

/// Value and error estimate of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

/// Declared behaviour of an integrand `f` on [0, ∞). Tail bounds are derived
/// from this and nothing else.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Growth {
    /// |f(t)| ≤ bound.
    Bounded(f64),
    /// |f(t)| ≤ slope·t + offset.
    Linear { slope: f64, offset: f64 },
    /// f is 1-periodic on [start, ∞) and |f| ≤ bound.
    Periodic { start: f64, bound: f64 },
    /// f(t+1) − f(t) is 1-periodic on [start, ∞) and |f(t)| ≤ slope·t + offset.
    PeriodicIncrement { start: f64, slope: f64, offset: f64 },
}

impl Growth {
    /// (slope, offset) of an affine majorant.
    fn affine_bound(&self) -> (f64, f64) {
        match *self {
            Growth::Bounded(b) | Growth::Periodic { bound: b, .. } => (0.0, b.abs()),
            Growth::Linear { slope, offset } | Growth::PeriodicIncrement { slope, offset, .. } => {
                (slope.abs(), offset.abs())
            }
        }
    }
}

/// A function handed to the semi-infinite routines: `t^{p−1}·f(t)` where the
/// power `p` (1 when absent) describes the behaviour at the origin.
#[derive(Debug, Clone)]
pub struct Integrand {
    pub function: ScalarFunction,
    pub growth: Growth,
    pub zero_power: Option<f64>,
}

impl Integrand {
    pub fn new(function: ScalarFunction, growth: Growth) -> Self {
        Self {
            function,
            growth,
            zero_power: None,
        }
    }

    /// Declare an extra factor `t^{p−1}` (p > 0) multiplying the function.
    pub fn with_zero_power(mut self, p: f64) -> Self {
        self.zero_power = Some(p);
        self
    }

    fn power(&self) -> f64 {
        self.zero_power.unwrap_or(1.0)
    }
}

// ---------------------------------------------------------------------------
// Gauss–Kronrod kernel and the global adaptive driver
// ---------------------------------------------------------------------------

struct Rule {
    value: f64,
    error: f64,
    /// Kronrod estimate of ∫|f|.
    l1: f64,
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gk21<F: Fn(f64) -> Result<f64>>(f: &F, lo: f64, hi: f64) -> Result<Rule> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center)?;
    let mut res_g = 0.0;
    let mut res_k = fc * WGK[10];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..5 {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let (f1, f2) = (f(center - dx)?, f(center + dx)?);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        res_g += WG[j] * (f1 + f2);
        res_k += WGK[jtw] * (f1 + f2);
        res_abs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let (f1, f2) = (f(center - dx)?, f(center + dx)?);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        res_k += WGK[jtwm1] * (f1 + f2);
        res_abs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let err = (res_k - res_g) * half;
    let value = res_k * half;
    let error = rescale_error(err, res_abs * half.abs(), res_asc * half.abs());
    if !value.is_finite() {
        return Err(domain("quadrature", format!("non-finite integrand on [{lo}, {hi}]")));
    }
    Ok(Rule {
        value,
        error,
        l1: res_abs * half.abs(),
    })
}

const ROUNDOFF_FLOOR: f64 = 200.0 * f64::EPSILON;

#[derive(Clone, Copy)]
enum Map {
    Identity,
    /// Integrate in v = t^p on a panel starting at the origin.
    Power(f64),
}

struct Segment {
    lo: f64,
    hi: f64,
    map: Map,
    value: f64,
    error: f64,
    l1: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Integrand `t^{p−1}·g(t)` with a possibly mapped first panel.
struct Weighted<'a, G: Fn(f64) -> Result<f64>> {
    g: &'a G,
    power: f64,
}

impl<G: Fn(f64) -> Result<f64>> Weighted<'_, G> {
    fn at(&self, t: f64) -> Result<f64> {
        let g = (self.g)(t)?;
        if self.power == 1.0 || g == 0.0 {
            Ok(g)
        } else {
            Ok(t.powf(self.power - 1.0) * g)
        }
    }

    fn mapped(&self, v: f64) -> Result<f64> {
        Ok((self.g)(v.powf(1.0 / self.power))? / self.power)
    }

    fn rule(&self, lo: f64, hi: f64, map: Map) -> Result<Rule> {
        match map {
            Map::Identity => gk21(&|t| self.at(t), lo, hi),
            Map::Power(_) => gk21(&|v| self.mapped(v), lo, hi),
        }
    }
}

/// Global adaptive integration of `t^{p−1} g(t)` over consecutive panels.
fn adaptive_panels<G: Fn(f64) -> Result<f64>>(
    g: &G,
    power: f64,
    edges: &[f64],
    precision: &Precision,
    max_subdivisions: usize,
    error_floor: f64,
) -> Result<QuadResult> {
    let w = Weighted { g, power };
    let mut heap = BinaryHeap::with_capacity(edges.len() * 2);
    let mut evaluations = 0usize;
    for pair in edges.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        if hi <= lo {
            continue;
        }
        // an integrable t^{p-1} singularity is removed by v = t^p
        let map = if lo == 0.0 && power < 1.0 {
            Map::Power(power)
        } else {
            Map::Identity
        };
        let (mlo, mhi) = match map {
            Map::Identity => (lo, hi),
            Map::Power(p) => (0.0, hi.powf(p)),
        };
        let r = w.rule(mlo, mhi, map)?;
        evaluations += 21;
        heap.push(Segment {
            lo: mlo,
            hi: mhi,
            map,
            value: r.value,
            error: r.error,
            l1: r.l1,
        });
    }
    let mut subdivisions = 0usize;
    let mut since_resum = 0usize;
    let mut total = compensated_sum(heap.iter().map(|s| s.value));
    let mut error = heap.iter().map(|s| s.error).sum::<f64>();
    let mut l1 = heap.iter().map(|s| s.l1).sum::<f64>();
    loop {
        // cancellation below the roundoff level of ∫|f| cannot be resolved
        let target = precision.target(total).max(ROUNDOFF_FLOOR * l1);
        if error + error_floor <= target {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.lo + worst.hi);
        if subdivisions >= max_subdivisions || !(mid > worst.lo && mid < worst.hi) {
            return Err(Error::NonConvergence {
                routine: "adaptive Gauss-Kronrod",
                estimate: error + error_floor,
            });
        }
        let left = w.rule(worst.lo, mid, worst.map)?;
        let right = w.rule(mid, worst.hi, worst.map)?;
        evaluations += 42;
        subdivisions += 1;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push(Segment {
            lo: worst.lo,
            hi: mid,
            map: worst.map,
            value: left.value,
            error: left.error,
            l1: left.l1,
        });
        heap.push(Segment {
            lo: mid,
            hi: worst.hi,
            map: worst.map,
            value: right.value,
            error: right.error,
            l1: right.l1,
        });
        since_resum += 1;
        if since_resum >= 512 {
            total = compensated_sum(heap.iter().map(|s| s.value));
            error = heap.iter().map(|s| s.error).sum();
            l1 = heap.iter().map(|s| s.l1).sum();
            since_resum = 0;
        }
    }
    Ok(QuadResult {
        value: compensated_sum(heap.iter().map(|s| s.value)),
        abs_error: heap.iter().map(|s| s.error).sum::<f64>(),
        evaluations,
    })
}

fn panel_edges(lo: f64, hi: f64, breakpoints: &Breakpoints, extra: &[f64]) -> Vec<f64> {
    let mut edges = vec![lo];
    edges.extend(breakpoints.inside(lo, hi));
    edges.extend(extra.iter().copied().filter(|&p| p > lo && p < hi));
    edges.push(hi);
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    edges
}

/// ∫_lo^hi f(t) dt, split at `spec.breakpoints`.
pub fn integrate<F>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64>,
{
    integrate_weighted(f, 1.0, lo, hi, spec)
}

/// ∫_lo^hi t^{p−1} g(t) dt; when `lo = 0` and `p < 1` the first panel is
/// integrated in the variable v = t^p, which removes the endpoint singularity.
pub fn integrate_weighted<G>(
    g: G,
    power: f64,
    lo: f64,
    hi: f64,
    spec: &QuadratureSpec,
) -> Result<QuadResult>
where
    G: Fn(f64) -> Result<f64>,
{
    require_above("integrate", "power", power, 0.0)?;
    if !(lo.is_finite() && hi.is_finite()) || hi < lo || (power != 1.0 && lo < 0.0) {
        return Err(domain("integrate", format!("invalid interval [{lo}, {hi}]")));
    }
    if hi == lo {
        return Ok(QuadResult {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
        });
    }
    let edges = panel_edges(lo, hi, &spec.breakpoints, &[]);
    adaptive_panels(&g, power, &edges, &spec.precision, spec.max_subdivisions, 0.0)
}

/// ∫_T^∞ t^k e^{−xt} dt bound for real k.
fn exp_power_tail(k: f64, x: f64, upper: f64) -> f64 {
    let head = upper.powf(k) * (-x * upper).exp();
    if k <= 0.0 {
        head / x
    } else if x * upper > 2.0 * k {
        head / (x - k / upper)
    } else {
        f64::INFINITY
    }
}

/// Laplace transform ∫_0^∞ e^{−xt} t^{p−1} f(t) dt.
///
/// The integrand is split at `spec.breakpoints` and at the scale points
/// 1/x and 10/x; the truncation tail is bounded from the declared growth and
/// added to the reported error.
pub fn laplace(f: &Integrand, x: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    require_above("laplace", "x", x, 0.0)?;
    let p = f.power();
    require_above("laplace", "zero power", p, 0.0)?;
    let (slope, offset) = f.growth.affine_bound();
    let tail = |upper: f64| {
        offset * exp_power_tail(p - 1.0, x, upper) + slope * exp_power_tail(p, x, upper)
    };
    let integrand = |t: f64| Ok((-x * t).exp() * f.function.eval(t)?);

    let scale_points = [1.0 / x, 10.0 / x];
    let mut upper = (spec.truncation.decay_multiple / x).min(spec.truncation.max_upper);
    let edges = panel_edges(0.0, upper, &spec.breakpoints, &scale_points);
    let mut result = adaptive_panels(
        &integrand,
        p,
        &edges,
        &spec.precision,
        spec.max_subdivisions,
        0.0,
    )?;
    // the tail only has to be small next to the value found so far
    for _ in 0..8 {
        let wanted = 1e-2 * spec.precision.target(result.value);
        let bound = tail(upper);
        if bound <= wanted {
            result.abs_error += bound;
            return Ok(result);
        }
        let (next, _) = spec.truncation.upper_limit(x, upper, wanted, tail)?;
        let floor = Precision {
            abs_tol: spec.precision.abs_tol.max(wanted),
            ..spec.precision
        };
        let edges = panel_edges(upper, next, &spec.breakpoints, &scale_points);
        let part = adaptive_panels(&integrand, p, &edges, &floor, spec.max_subdivisions, 0.0)?;
        result.value += part.value;
        result.abs_error += part.abs_error;
        result.evaluations += part.evaluations;
        upper = next;
    }
    result.abs_error += tail(upper);
    Ok(result)
}

/// ∫_0^∞ u(t) / (x+t)^ρ dt for x > 0.
pub fn stieltjes_integral(
    u: &Integrand,
    rho: f64,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    require_above("stieltjes_integral", "x", x, 0.0)?;
    algebraic_integral(u, rho, x, 0.0, spec)
}

/// ∫_lo^∞ u(t) / (x+t)^ρ dt with x ≥ 0 (x = 0 requires lo > 0 or u
/// vanishing near the origin).
pub(crate) fn algebraic_integral(
    u: &Integrand,
    rho: f64,
    x: f64,
    lo: f64,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    require_above("stieltjes_integral", "rho", rho, 1.0)?;
    require_at_least("stieltjes_integral", "x", x, 0.0)?;
    let p = u.power();
    let kernel = |t: f64| (x + t).powf(-rho);
    let integrand = |t: f64| Ok(u.function.eval(t)? * kernel(t));
    match u.growth {
        Growth::Periodic { start, .. } | Growth::PeriodicIncrement { start, .. } => {
            let increment = matches!(u.growth, Growth::PeriodicIncrement { .. });
            if increment && rho <= 2.0 {
                return Err(domain(
                    "stieltjes_integral",
                    format!("linear growth needs rho > 2, got {rho}"),
                ));
            }
            let upper = start.max(lo).max(1.0);
            let edges = panel_edges(lo, upper, &spec.breakpoints, &[]);
            let head = adaptive_panels(
                &integrand,
                p,
                &edges,
                &spec.precision.scaled(0.5),
                spec.max_subdivisions,
                0.0,
            )?;
            if p != 1.0 {
                return Err(domain(
                    "stieltjes_integral",
                    "periodic tails do not combine with a power weight",
                ));
            }
            // Σ_n ∫_0^1 [u(T+v) + n P(T+v)] (x+T+v+n)^{−ρ} dv, P(t) = u(t+1) − u(t)
            let tail_integrand = |v: f64| {
                let t = upper + v;
                let c = x + t;
                let base = u.function.eval(t)?;
                let z = hurwitz_zeta(rho, c)?;
                let mut total = base * z;
                if increment {
                    let step = u.function.eval(t + 1.0)? - base;
                    total += step * (hurwitz_zeta(rho - 1.0, c)? - c * z);
                }
                Ok(total)
            };
            let shifted: Vec<f64> = spec
                .breakpoints
                .inside(upper, upper + 1.0)
                .map(|b| b - upper)
                .collect();
            let mut tail_edges = vec![0.0];
            tail_edges.extend(shifted);
            tail_edges.push(1.0);
            let tail = adaptive_panels(
                &tail_integrand,
                1.0,
                &tail_edges,
                &spec.precision.scaled(0.5),
                spec.max_subdivisions,
                0.0,
            )?;
            Ok(QuadResult {
                value: head.value + tail.value,
                abs_error: head.abs_error + tail.abs_error,
                evaluations: head.evaluations + tail.evaluations,
            })
        }
        Growth::Bounded(_) | Growth::Linear { .. } => {
            let (slope, offset) = u.growth.affine_bound();
            if slope > 0.0 && rho <= 2.0 + (p - 1.0).max(0.0) {
                return Err(domain(
                    "stieltjes_integral",
                    format!("linear growth needs rho > 2, got {rho}"),
                ));
            }
            // slope·t + offset ≤ slope·(x+t) + offset, and t^{p-1} ≤ (x+t)^{p-1} for p ≥ 1
            let q = (p - 1.0).max(0.0);
            let tail = |upper: f64| {
                let c = x + upper;
                let mut bound = offset * c.powf(1.0 + q - rho) / (rho - 1.0 - q);
                if slope > 0.0 {
                    bound += slope * c.powf(2.0 + q - rho) / (rho - 2.0 - q);
                }
                bound
            };
            let cover = spec.breakpoints.last().unwrap_or(0.0).max(lo + 1.0);
            let rough = tail(cover).max(spec.precision.abs_tol);
            let (upper, bound) = spec.truncation.upper_limit(
                1.0,
                cover,
                spec.precision.target(rough).max(spec.precision.abs_tol),
                tail,
            )?;
            let edges = panel_edges(lo, upper, &spec.breakpoints, &[x.max(1e-300)]);
            let mut r = adaptive_panels(
                &integrand,
                p,
                &edges,
                &spec.precision,
                spec.max_subdivisions,
                0.0,
            )?;
            r.abs_error += bound;
            Ok(r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn polynomial_exact() {
        let r = integrate(|t| Ok(t * t), 0.0, 3.0, &spec()).unwrap();
        assert!((r.value - 9.0).abs() < 1e-14);
    }

    #[test]
    fn endpoint_singularity_removed() {
        // ∫_0^1 t^{-0.9} dt = 10
        let r = integrate_weighted(|_| Ok(1.0), 0.1, 0.0, 1.0, &spec()).unwrap();
        assert!((r.value - 10.0).abs() < 1e-12, "{}", r.value);
        // ∫_0^2 t^{-1/2} e^{-t} dt = √π·erf(√2)
        let r = integrate_weighted(|t| Ok((-t).exp()), 0.5, 0.0, 2.0, &spec()).unwrap();
        let expected = crate::special::lower_incomplete_gamma(0.5, 2.0).unwrap();
        assert!((r.value - expected).abs() < 1e-13);
    }

    #[test]
    fn laplace_constant() {
        let one = Integrand::new(ScalarFunction::new("1", |_| Ok(1.0)), Growth::Bounded(1.0));
        let r = laplace(&one, 2.0, &spec()).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn laplace_kinked() {
        let bp = Breakpoints::new(vec![1.0]).unwrap();
        let s = spec().with_breakpoints(bp);
        let ramp = Integrand::new(
            ScalarFunction::new("min(t,1)", |t: f64| Ok(t.min(1.0))),
            Growth::Bounded(1.0),
        );
        let r = laplace(&ramp, 1.0, &s).unwrap();
        assert!((r.value - (1.0 - (-1f64).exp())).abs() < 1e-14);
        let hinge = Integrand::new(
            ScalarFunction::new("max(0,t-1)", |t: f64| Ok((t - 1.0).max(0.0))),
            Growth::Linear {
                slope: 1.0,
                offset: 0.0,
            },
        );
        let r = laplace(&hinge, 1.0, &s).unwrap();
        assert!((r.value - (-1f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn laplace_power_weight() {
        // ∫ t^{λ-1} e^{-xt} dt = Γ(λ)/x^λ
        let f = Integrand::new(ScalarFunction::new("1", |_| Ok(1.0)), Growth::Bounded(1.0))
            .with_zero_power(0.1);
        let r = laplace(&f, 3.0, &spec()).unwrap();
        let expected = crate::special::gamma(0.1).unwrap() / 3f64.powf(0.1);
        assert!(((r.value - expected) / expected).abs() < 1e-12);
    }

    #[test]
    fn stieltjes_examples() {
        let s = spec().with_breakpoints(Breakpoints::new(vec![1.0, 2.0, 3.0]).unwrap());
        let hinge = Integrand::new(
            ScalarFunction::new("max(0,t-1)", |t: f64| Ok((t - 1.0).max(0.0))),
            Growth::PeriodicIncrement {
                start: 1.0,
                slope: 1.0,
                offset: 0.0,
            },
        );
        let r = stieltjes_integral(&hinge, 3.0, 1.0, &s).unwrap();
        assert!((r.value - 0.25).abs() < 1e-14, "{}", r.value);

        let one = Integrand::new(
            ScalarFunction::new("1", |_| Ok(1.0)),
            Growth::Periodic {
                start: 0.0,
                bound: 1.0,
            },
        );
        let r = stieltjes_integral(&one, 2.0, 1.0, &spec()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);

        // bound-only route: ∫ (1+t)^{-4} = 1/3
        let one_b = Integrand::new(ScalarFunction::new("1", |_| Ok(1.0)), Growth::Bounded(1.0));
        let r = stieltjes_integral(&one_b, 4.0, 1.0, &spec()).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn linear_growth_needs_rho_above_two() {
        let hinge = Integrand::new(
            ScalarFunction::new("t", Ok),
            Growth::Linear {
                slope: 1.0,
                offset: 0.0,
            },
        );
        assert!(stieltjes_integral(&hinge, 2.0, 1.0, &spec()).is_err());
    }

    #[test]
    fn breakpoints_sorted_and_deduplicated() {
        let b = Breakpoints::new(vec![3.0, 1.0, 2.0, 1.0]).unwrap();
        assert_eq!(b.as_slice(), &[1.0, 2.0, 3.0]);
        assert!(Breakpoints::new(vec![f64::NAN]).is_err());
    }
}
