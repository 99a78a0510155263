//! Kernel functions attached to a parameter pair: Φ, Φ′, φ, ξ, η, Θ, the
//! weight w with its derivatives, W, p and q.
//!
//! The quotient forms of Φ, Φ′ and of the logarithm of w lose every
//! significant digit as t → 0, so below [`SERIES_SWITCH`] they are replaced by
//! truncated Taylor series.

use crate::error::{domain, require_above, require_at_least, Result};
use crate::function::ScalarFunction;
use crate::params::{OmegaParams, ParamPair};
use crate::quadrature::{
    algebraic_integral, integrate, Breakpoints, Growth, Integrand, QuadratureSpec,
};
use crate::special::gamma;

/// Below this t the Taylor forms are used.
pub const SERIES_SWITCH: f64 = 1e-2;

const SERIES_TERMS: usize = 13;

// B_0 .. B_12
const BERNOULLI: [f64; SERIES_TERMS] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
];

/// c_n = (B_n(1−b) − B_n(1−a)) / n!, so that φ(t) = Σ_{n≥1} c_n t^{n−1}.
fn phi_coefficients(pair: &ParamPair) -> [f64; SERIES_TERMS] {
    let (u, v) = (1.0 - pair.b(), 1.0 - pair.a());
    let mut c = [0.0; SERIES_TERMS];
    let mut factorial = 1.0;
    for (n, slot) in c.iter_mut().enumerate() {
        if n > 0 {
            factorial *= n as f64;
        }
        let mut total = 0.0;
        let mut binom = 1.0;
        for (k, bk) in BERNOULLI.iter().enumerate().take(n + 1) {
            if k > 0 {
                binom = binom * (n - k + 1) as f64 / k as f64;
            }
            let m = (n - k) as i32;
            total += binom * bk * (u.powi(m) - v.powi(m));
        }
        *slot = total / factorial;
    }
    c
}

pub(crate) fn phi_series(pair: &ParamPair, t: f64) -> f64 {
    let c = phi_coefficients(pair);
    let mut acc = 0.0;
    for n in (2..SERIES_TERMS).rev() {
        acc = acc * t + c[n];
    }
    acc * t
}

pub(crate) fn phi_prime_series(pair: &ParamPair, t: f64) -> f64 {
    let c = phi_coefficients(pair);
    let mut acc = 0.0;
    for n in (2..SERIES_TERMS).rev() {
        acc = acc * t + (n - 1) as f64 * c[n];
    }
    acc
}

fn quotient(pair: &ParamPair, t: f64) -> f64 {
    // e^{-bt}(1 - e^{-λt}) / (1 - e^{-t})
    (-pair.b() * t).exp() * (-pair.lambda() * t).exp_m1() / (-t).exp_m1()
}

pub(crate) fn phi_direct(pair: &ParamPair, t: f64) -> f64 {
    -pair.lambda() + quotient(pair, t)
}

pub(crate) fn phi_prime_direct(pair: &ParamPair, t: f64) -> f64 {
    let (a, b) = (pair.a(), pair.b());
    let n = (-b * t).exp() * -(-pair.lambda() * t).exp_m1();
    let dn = -b * (-b * t).exp() + a * (-a * t).exp();
    let d = -(-t).exp_m1();
    (dn * d - n * (-t).exp()) / (d * d)
}

fn check_t(function: &'static str, t: f64) -> Result<()> {
    require_above(function, "t", t, 0.0)
}

fn check_s(function: &'static str, s: f64) -> Result<()> {
    require_at_least(function, "s", s, 0.0)
}

/// Φ(t) = (b − a) + (e^{−bt} − e^{−at}) / (1 − e^{−t}).
pub fn phi(pair: &ParamPair, t: f64) -> Result<f64> {
    check_t("phi", t)?;
    Ok(if t < SERIES_SWITCH {
        phi_series(pair, t)
    } else {
        phi_direct(pair, t)
    })
}

/// Φ′(t).
pub fn phi_prime(pair: &ParamPair, t: f64) -> Result<f64> {
    check_t("phi_prime", t)?;
    Ok(if t < SERIES_SWITCH {
        phi_prime_series(pair, t)
    } else {
        phi_prime_direct(pair, t)
    })
}

/// φ(t) = (e^{−bt} − e^{−at}) / (1 − e^{−t}) = Φ(t) + a − b.
pub fn varphi(pair: &ParamPair, t: f64) -> Result<f64> {
    check_t("varphi", t)?;
    Ok(if t < SERIES_SWITCH {
        pair.lambda() + phi_series(pair, t)
    } else {
        quotient(pair, t)
    })
}

/// Number of active terms ⌊s − c⌋ + 1 for s ≥ c, else 0.
fn active(s: f64, c: f64) -> f64 {
    if s >= c {
        (s - c).floor() + 1.0
    } else {
        0.0
    }
}

/// ξ(s), the piecewise linear density of −Φ(t)/t².
pub fn xi(params: &OmegaParams, s: f64) -> Result<f64> {
    check_s("xi", s)?;
    Ok(xi_unchecked(&params.pair(), s))
}

fn xi_unchecked(pair: &ParamPair, s: f64) -> f64 {
    let (a, b, lambda) = (pair.a(), pair.b(), pair.lambda());
    let na = active(s, a);
    let nb = active(s, b);
    // pairing the k-th a- and b-terms leaves −λ each; only the excess b-terms remain
    let mut value = lambda * (s - na);
    let mut k = na;
    while k < nb {
        value -= s - b - k;
        k += 1.0;
    }
    value
}

/// η(s), the piecewise linear density of −Φ′(t)/t².
pub fn eta(params: &OmegaParams, s: f64) -> Result<f64> {
    check_s("eta", s)?;
    Ok(eta_unchecked(&params.pair(), s))
}

fn eta_unchecked(pair: &ParamPair, s: f64) -> f64 {
    let (a, b, lambda) = (pair.a(), pair.b(), pair.lambda());
    let na = active(s, a);
    let nb = active(s, b);
    let mut value = 0.0;
    if na > 0.0 {
        let ra = s - a - (na - 1.0);
        value = lambda * na * (b - ra);
    }
    let mut k = na;
    while k < nb {
        value += (b + k) * (s - b - k);
        k += 1.0;
    }
    value
}

/// Θ(s) = ξ(s+1) − ξ(s).
pub fn theta(params: &OmegaParams, s: f64) -> Result<f64> {
    check_s("theta", s)?;
    let (a, b) = (params.a(), params.b());
    // λ + 1_{s≥a−1}(s+1−a) − 1_{s≥b−1}(s+1−b), with the cancellations done exactly
    Ok(if s >= a - 1.0 {
        0.0
    } else if s >= b - 1.0 {
        a - 1.0 - s
    } else {
        params.lambda()
    })
}

/// Naive truncated sums for ξ and η, linear in s. Test oracle only.
pub fn xi_eta_by_sums(params: &OmegaParams, s: f64) -> (f64, f64) {
    let (a, b) = (params.a(), params.b());
    let mut xi = params.lambda() * s;
    let mut eta = 0.0;
    let mut k = 0.0;
    while k + b <= s {
        if s >= k + a {
            xi += s - k - a;
            eta -= (a + k) * (s - k - a);
        }
        xi -= s - k - b;
        eta += (b + k) * (s - k - b);
        k += 1.0;
    }
    (xi, eta)
}

/// The kink points {k + b, k + a : k ≥ 0} of ξ and η up to `upper`.
pub fn kink_breakpoints(pair: &ParamPair, upper: f64) -> Result<Breakpoints> {
    require_at_least("kink_breakpoints", "upper", upper, 0.0)?;
    if upper > 1e7 {
        return Err(domain("kink_breakpoints", format!("upper {upper} too large")));
    }
    let mut points = Vec::new();
    let mut k = 0.0;
    while k + pair.b() <= upper {
        points.push(k + pair.b());
        if k + pair.a() <= upper {
            points.push(k + pair.a());
        }
        k += 1.0;
    }
    Breakpoints::new(points)
}

/// Linear growth constant C with η(s) ≤ C·s.
pub fn eta_growth_constant(params: &OmegaParams) -> f64 {
    let (a, b) = (params.a(), params.b());
    params.lambda() * (a - 1.0).max(b) + eta_unchecked(&params.pair(), a.ceil() + 1.0)
}

/// Upper bound for ξ: ξ(s) ≤ λ·a.
pub fn xi_bound(params: &OmegaParams) -> f64 {
    params.lambda() * params.a()
}

/// ξ as a quadrature integrand: 1-periodic from a − 1 on.
pub fn xi_integrand(params: &OmegaParams) -> Integrand {
    let p = *params;
    Integrand::new(
        ScalarFunction::new(format!("xi{params}"), move |s| xi(&p, s)),
        Growth::Periodic {
            start: (params.a() - 1.0).max(0.0),
            bound: xi_bound(params),
        },
    )
}

/// η as a quadrature integrand: its unit increments are periodic from a on.
pub fn eta_integrand(params: &OmegaParams) -> Integrand {
    let p = *params;
    Integrand::new(
        ScalarFunction::new(format!("eta{params}"), move |s| eta(&p, s)),
        Growth::PeriodicIncrement {
            start: params.a(),
            slope: eta_growth_constant(params),
            offset: 0.0,
        },
    )
}

/// ln((1 − e^{−t})/t).
fn log_sinc_ratio(t: f64) -> f64 {
    if t < SERIES_SWITCH {
        let t2 = t * t;
        -t / 2.0
            + t2 * (1.0 / 24.0
                + t2 * (-1.0 / 2880.0
                    + t2 * (1.0 / 181_440.0
                        + t2 * (-1.0 / 9_676_800.0 + t2 / 479_001_600.0))))
    } else {
        (-(-t).exp_m1()).ln() - t.ln()
    }
}

/// 1/(e^t − 1) − 1/t.
fn bose_minus_pole(t: f64) -> f64 {
    if t < SERIES_SWITCH {
        let t2 = t * t;
        -0.5 + t
            * (1.0 / 12.0
                + t2 * (-1.0 / 720.0
                    + t2 * (1.0 / 30_240.0
                        + t2 * (-1.0 / 1_209_600.0 + t2 / 47_900_160.0))))
    } else {
        1.0 / t.exp_m1() - 1.0 / t
    }
}

/// 1/t² − e^t/(e^t − 1)².
fn inverse_square_gap(t: f64) -> f64 {
    if t < 0.25 {
        let t2 = t * t;
        1.0 / 12.0
            + t2 * (-1.0 / 240.0
                + t2 * (1.0 / 6048.0
                    + t2 * (-1.0 / 172_800.0
                        + t2 * (1.0 / 5_322_240.0 - 691.0 * t2 / 118_879_488_000.0))))
    } else {
        1.0 / (t * t) - 1.0 / (t.exp_m1() * -(-t).exp_m1())
    }
}

/// ln w(t) = (a−b−1)·ln((1−e^{−t})/t) − b t.
pub fn log_w(pair: &ParamPair, t: f64) -> Result<f64> {
    check_t("log_w", t)?;
    Ok((pair.lambda() - 1.0) * log_sinc_ratio(t) - pair.b() * t)
}

/// w(t) = ((1 − e^{−t})/t)^{a−b−1} e^{−bt}.
pub fn w_kernel(pair: &ParamPair, t: f64) -> Result<f64> {
    Ok(log_w(pair, t)?.exp())
}

/// 1 − w(t), accurate as t → 0.
pub fn one_minus_w(pair: &ParamPair, t: f64) -> Result<f64> {
    Ok(-log_w(pair, t)?.exp_m1())
}

/// w′(t) = w(t)·[(a−b−1)(1/(e^t−1) − 1/t) − b].
pub fn w_prime(pair: &ParamPair, t: f64) -> Result<f64> {
    let w = w_kernel(pair, t)?;
    Ok(w * ((pair.lambda() - 1.0) * bose_minus_pole(t) - pair.b()))
}

/// (log w)″(t) = (a−b−1)(1/t² − e^t/(e^t−1)²).
pub fn log_w_second(pair: &ParamPair, t: f64) -> Result<f64> {
    check_t("log_w_second", t)?;
    Ok((pair.lambda() - 1.0) * inverse_square_gap(t))
}

/// W(t) = t^{λ−⌊λ⌋−1} w(t).
#[allow(non_snake_case)]
pub fn W_kernel(pair: &ParamPair, t: f64) -> Result<f64> {
    let exponent = pair.lambda() - pair.lambda_floor() - 1.0;
    Ok((exponent * t.ln() + log_w(pair, t)?).exp())
}

/// p(t) = (1 − w(t))/Γ(a−b).
pub fn p_of_t(pair: &ParamPair, t: f64) -> Result<f64> {
    Ok(one_minus_w(pair, t)? / gamma(pair.lambda())?)
}

/// q(t) = ∫_0^t η(s)/s³ ds; the integrand vanishes on [0, b).
pub fn q_of_t(params: &OmegaParams, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_s("q_of_t", t)?;
    let b = params.b();
    if t <= b {
        return Ok(0.0);
    }
    let p = *params;
    let bp = kink_breakpoints(&params.pair(), t)?;
    let local = spec.clone().with_breakpoints(spec.breakpoints.merged(bp.as_slice())?);
    let r = integrate(|s| Ok(eta(&p, s)? / (s * s * s)), b, t, &local)?;
    Ok(r.value)
}

/// q(∞), with the tail beyond the first periods summed exactly.
pub fn q_infinity(params: &OmegaParams, spec: &QuadratureSpec) -> Result<f64> {
    let bp = kink_breakpoints(&params.pair(), params.a().ceil() + 4.0)?;
    let local = spec.clone().with_breakpoints(spec.breakpoints.merged(bp.as_slice())?);
    Ok(algebraic_integral(&eta_integrand(params), 3.0, 0.0, params.b(), &local)?.value)
}

/// Cumulative values of q at the kink points up to a cover, so that q(t) needs
/// only a single short quadrature from the nearest node.
#[derive(Debug, Clone)]
pub struct QTable {
    params: OmegaParams,
    nodes: Vec<f64>,
    cumulative: Vec<f64>,
    limit: f64,
    spec: QuadratureSpec,
}

impl QTable {
    pub fn new(params: &OmegaParams, cover: f64, spec: &QuadratureSpec) -> Result<Self> {
        let b = params.b();
        let mut nodes = vec![b];
        nodes.extend(kink_breakpoints(&params.pair(), cover.max(b))?.inside(b, f64::INFINITY));
        let p = *params;
        let piece = QuadratureSpec {
            breakpoints: Breakpoints::empty(),
            ..spec.clone()
        };
        let mut cumulative = Vec::with_capacity(nodes.len());
        let mut running = 0.0;
        cumulative.push(0.0);
        for pair in nodes.windows(2) {
            running += integrate(|s| Ok(eta(&p, s)? / (s * s * s)), pair[0], pair[1], &piece)?.value;
            cumulative.push(running);
        }
        Ok(Self {
            params: *params,
            nodes,
            cumulative,
            limit: q_infinity(params, spec)?,
            spec: piece,
        })
    }

    /// q(∞).
    pub fn limit(&self) -> f64 {
        self.limit
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        check_s("QTable::eval", t)?;
        if t <= self.nodes[0] {
            return Ok(0.0);
        }
        let idx = self.nodes.partition_point(|&n| n <= t) - 1;
        let start = self.nodes[idx];
        let p = self.params;
        let rest = if idx + 1 == self.nodes.len() {
            // beyond the cover: still exact piecewise, split at kinks
            let bp = kink_breakpoints(&p.pair(), t)?;
            let local = self.spec.clone().with_breakpoints(bp);
            integrate(|s| Ok(eta(&p, s)? / (s * s * s)), start, t, &local)?.value
        } else {
            integrate(|s| Ok(eta(&p, s)? / (s * s * s)), start, t, &self.spec)?.value
        };
        Ok(self.cumulative[idx] + rest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega(a: f64, b: f64) -> OmegaParams {
        OmegaParams::new(a, b).unwrap()
    }

    fn pair(a: f64, b: f64) -> ParamPair {
        ParamPair::new(a, b).unwrap()
    }

    fn richardson(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
        (4.0 * d(h / 2.0) - d(h)) / 3.0
    }

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * y.abs().max(1e-300)
    }

    #[test]
    fn phi_examples() {
        let p = pair(2.0, 1.0);
        let e1 = (-1f64).exp();
        assert!((phi(&p, 1.0).unwrap() - (e1 - 1.0)).abs() < 1e-15);
        assert!(phi(&p, 1e-8).unwrap().abs() < 1e-7);
        let q = pair(1.7, 1.6);
        assert!((phi(&q, 50.0).unwrap() + 0.1).abs() < 1e-15);
        assert!(phi(&p, 0.0).is_err());
    }

    #[test]
    fn phi_prime_examples() {
        let p = pair(2.0, 1.0);
        assert!((phi_prime(&p, 1.0).unwrap() + (-1f64).exp()).abs() < 1e-15);
        assert!(phi_prime(&p, 50.0).unwrap().abs() < 1e-15);
        let q = pair(1.7, 1.6);
        let fd = richardson(|t| phi(&q, t).unwrap(), 1.0, 1e-3);
        assert!(close(phi_prime(&q, 1.0).unwrap(), fd, 1e-8));
    }

    #[test]
    fn series_and_direct_overlap() {
        for &(a, b) in &[(1.7, 1.6), (2.5, 0.5), (3.2, 1.1), (1.05, 1.0), (5.5, 0.25)] {
            let p = pair(a, b);
            for i in 0..=20 {
                let t = 3e-3 * (100f64 / 3.0).powf(i as f64 / 20.0);
                assert!(
                    close(phi_series(&p, t), phi_direct(&p, t), 1e-11),
                    "phi ({a},{b}) t={t}"
                );
                assert!(
                    close(phi_prime_series(&p, t), phi_prime_direct(&p, t), 1e-11),
                    "phi' ({a},{b}) t={t}"
                );
            }
        }
    }

    #[test]
    fn xi_examples() {
        let p = omega(1.7, 1.6);
        assert_eq!(xi(&p, 0.0).unwrap(), 0.0);
        assert!((xi(&p, 0.5).unwrap() - 0.05).abs() < 1e-15);
        let q = omega(2.0, 1.0);
        assert!((xi(&q, 0.4).unwrap() - 0.4).abs() < 1e-15);
        assert!((xi(&q, 3.7).unwrap() - 1.0).abs() < 1e-15);
        assert!(xi(&q, -0.1).is_err());
    }

    #[test]
    fn eta_examples() {
        let p = omega(1.7, 1.6);
        assert_eq!(eta(&p, 0.0).unwrap(), 0.0);
        for (s, v) in [(1.6, 0.0), (2.6, 0.07), (3.6, 0.14), (1.7, 0.16), (2.7, 0.32)] {
            assert!((eta(&p, s).unwrap() - v).abs() < 1e-13, "eta({s})");
        }
        let q = omega(2.0, 1.0);
        assert!((eta(&q, 2.5).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn closed_forms_match_sums() {
        for &(a, b) in &[(1.7, 1.6), (2.5, 0.5), (3.2, 1.1), (1.05, 1.0), (5.5, 0.25), (9.3, 0.4)] {
            let p = omega(a, b);
            for i in 0..4000 {
                let s = i as f64 * 0.01;
                let (x, e) = xi_eta_by_sums(&p, s);
                assert!((xi(&p, s).unwrap() - x).abs() < 1e-11 * (1.0 + x.abs()));
                assert!((eta(&p, s).unwrap() - e).abs() < 1e-11 * (1.0 + s * s));
            }
        }
    }

    #[test]
    fn theta_examples() {
        let p = omega(1.7, 1.6);
        assert_eq!(theta(&p, 2.0).unwrap(), 0.0);
        assert!((theta(&p, 0.0).unwrap() - 0.1).abs() < 1e-15);
        for &(a, b) in &[(1.7, 1.6), (2.5, 0.5), (5.5, 0.25)] {
            let p = omega(a, b);
            for s in [0.0, 0.3, 0.9, 2.2] {
                let r = xi(&p, s + 1.0).unwrap() - xi(&p, s).unwrap() - theta(&p, s).unwrap();
                assert!(r.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn eta_increments_periodic() {
        for &(a, b) in &[(1.7, 1.6), (2.5, 0.5), (3.2, 1.1), (5.5, 0.25)] {
            let p = omega(a, b);
            for i in 0..300 {
                let s = a + i as f64 * 0.0173;
                let d1 = eta(&p, s + 1.0).unwrap() - eta(&p, s).unwrap();
                let d2 = eta(&p, s + 2.0).unwrap() - eta(&p, s + 1.0).unwrap();
                assert!((d1 - d2).abs() < 1e-11, "({a},{b}) s={s}");
            }
        }
    }

    #[test]
    fn growth_constant_bounds_eta() {
        for &(a, b) in &[(1.7, 1.6), (2.5, 0.5), (3.2, 1.1), (1.05, 1.0), (5.5, 0.25)] {
            let p = omega(a, b);
            let c = eta_growth_constant(&p);
            for i in 1..4000 {
                let s = i as f64 * 0.01;
                assert!(eta(&p, s).unwrap() <= c * s + 1e-12);
                assert!(xi(&p, s).unwrap() <= xi_bound(&p) + 1e-12);
            }
        }
    }

    #[test]
    fn w_examples() {
        let e1 = (-1f64).exp();
        let p = pair(2.0, 1.0);
        assert!((w_kernel(&p, 1.0).unwrap() - e1).abs() < 1e-15);
        assert!((w_kernel(&p, 1e-8).unwrap() - 1.0).abs() < 1e-7);
        let q = pair(3.0, 1.0);
        // exponent a - b - 1 = 1
        let expected = (1.0 - e1) * e1;
        assert!(close(w_kernel(&q, 1.0).unwrap(), expected, 1e-14));
        assert!(close(w_kernel(&q, 1.0).unwrap(), 0.232_544_157_934_829_6, 1e-14));
    }

    #[test]
    fn w_prime_examples() {
        let p = pair(2.0, 1.0);
        assert!((w_prime(&p, 1.0).unwrap() + (-1f64).exp()).abs() < 1e-15);
        let q = pair(3.0, 1.0);
        let fd = richardson(|t| w_kernel(&q, t).unwrap(), 0.7, 1e-3);
        assert!(close(w_prime(&q, 0.7).unwrap(), fd, 1e-8));
        // -(a-b-1)/2 - b
        assert!((w_prime(&q, 1e-9).unwrap() + 1.5).abs() < 1e-8);
    }

    #[test]
    fn log_w_second_examples() {
        let p = pair(2.0, 1.0);
        assert_eq!(log_w_second(&p, 1.3).unwrap(), 0.0);
        let q = pair(3.0, 1.0);
        let e = 1f64.exp();
        let expected = 1.0 - e / ((e - 1.0) * (e - 1.0));
        assert!(close(log_w_second(&q, 1.0).unwrap(), expected, 1e-13));
        let r = pair(3.5, 1.0);
        for t in [0.01, 0.1, 1.0, 10.0, 50.0] {
            assert!(log_w_second(&r, t).unwrap() > 0.0);
        }
        // series and direct agree near the switch
        for t in [0.2, 0.24, 0.26, 0.3] {
            let fd = richardson(|t| log_w(&q, t).unwrap(), t, 1e-3);
            let d = richardson(|u| richardson(|v| log_w(&q, v).unwrap(), u, 1e-3), t, 1e-3);
            assert!(close(log_w_second(&q, t).unwrap(), d, 1e-5), "t={t} {fd}");
        }
    }

    #[test]
    fn big_w_examples() {
        let p = pair(2.5, 1.0);
        assert_eq!(W_kernel(&p, 1.0).unwrap(), w_kernel(&p, 1.0).unwrap());
        let q = pair(2.0, 1.0);
        assert!(close(W_kernel(&q, 2.0).unwrap(), (-2f64).exp() / 2.0, 1e-14));
        for t in [0.1, 0.7, 3.0] {
            let lhs = W_kernel(&p, t).unwrap() * t.powf(1.0 + 1.0 - 1.5);
            assert!(close(lhs, w_kernel(&p, t).unwrap(), 1e-14));
        }
    }

    #[test]
    fn varphi_examples() {
        let p = pair(2.0, 1.0);
        assert!((varphi(&p, 1.0).unwrap() - (-1f64).exp()).abs() < 1e-15);
        let q = pair(3.2, 1.1);
        for t in [1e-3, 0.5, 4.0] {
            let r = varphi(&q, t).unwrap() - phi(&q, t).unwrap() - q.lambda();
            assert!(r.abs() < 1e-14);
        }
        assert!((varphi(&q, 1e-8).unwrap() - 2.1).abs() < 1e-7);
    }

    #[test]
    fn p_examples() {
        let p = pair(2.0, 1.0);
        assert!((p_of_t(&p, 1.0).unwrap() - (1.0 - (-1f64).exp())).abs() < 1e-15);
        assert!(p_of_t(&p, 1e-12).unwrap() < 1e-11);
        let q = pair(2.5, 1.0);
        let limit = 2.0 / std::f64::consts::PI.sqrt();
        assert!((p_of_t(&q, 100.0).unwrap() - limit).abs() < 1e-10);
    }

    #[test]
    fn q_examples() {
        let p = omega(2.0, 1.0);
        let spec = QuadratureSpec::default();
        assert!((q_of_t(&p, 2.0, &spec).unwrap() - 0.125).abs() < 1e-13);
        assert_eq!(q_of_t(&p, 0.8, &spec).unwrap(), 0.0);
        assert!((q_infinity(&p, &spec).unwrap() - 0.5).abs() < 1e-12);
        for t in [1.5, 3.0, 7.25] {
            let exact = 1.0 / (2.0 * t * t) - 1.0 / t + 0.5;
            assert!((q_of_t(&p, t, &spec).unwrap() - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn q_limit_is_half_gap() {
        let spec = QuadratureSpec::default();
        for &(a, b) in &[(1.7, 1.6), (2.5, 0.5), (3.2, 1.1), (5.5, 0.25)] {
            let p = omega(a, b);
            let q = q_infinity(&p, &spec).unwrap();
            assert!(close(q, (a - b) / 2.0, 1e-11), "({a},{b}) {q}");
            let table = QTable::new(&p, 30.0, &spec).unwrap();
            for t in [0.3, 1.9, 7.3, 29.0, 45.0] {
                let direct = q_of_t(&p, t, &spec).unwrap();
                assert!((table.eval(t).unwrap() - direct).abs() < 1e-13);
            }
        }
    }
}
