//! Catalog of integral representations, each evaluated along two independent
//! paths: a closed form from the special functions, and a quadrature of the
//! corresponding kernel.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, require_above, Error, Result};
use crate::families::{
    beta_bernstein, l_deriv, l_value, log_m, log_m_deriv, m_value,
};
use crate::function::ScalarFunction;
use crate::kernels::{
    eta_integrand, kink_breakpoints, one_minus_w, p_of_t, phi, phi_prime, w_kernel, w_prime,
    xi_integrand, QTable,
};
use crate::params::{OmegaParams, ParamPair};
use crate::quadrature::{
    integrate_weighted, laplace, stieltjes_integral, Growth, Integrand, QuadratureSpec,
};
use crate::special::{gamma, gamma_ratio, lower_incomplete_gamma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdentityId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    R13,
}

/// What an identity needs from the parameter pair beyond 0 < b < a.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Requirement {
    Pair,
    Omega,
    GapAboveOne,
}

impl IdentityId {
    pub const ALL: [IdentityId; 13] = [
        IdentityId::R1,
        IdentityId::R2,
        IdentityId::R3,
        IdentityId::R4,
        IdentityId::R5,
        IdentityId::R6,
        IdentityId::R7,
        IdentityId::R8,
        IdentityId::R9,
        IdentityId::R10,
        IdentityId::R11,
        IdentityId::R12,
        IdentityId::R13,
    ];

    pub fn tolerance(self) -> f64 {
        match self {
            IdentityId::R10 => 1e-6,
            _ => 1e-8,
        }
    }

    pub fn requirement(self) -> Requirement {
        match self {
            IdentityId::R4 | IdentityId::R5 | IdentityId::R6 | IdentityId::R10 => {
                Requirement::Omega
            }
            IdentityId::R12 => Requirement::GapAboveOne,
            _ => Requirement::Pair,
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            IdentityId::R1 => "-(log M)'(x) = L[Phi](x)",
            IdentityId::R2 => "-x (log M)'(x) = L[Phi'](x)",
            IdentityId::R3 => "log M(x) = L[Phi(u)/u](x)",
            IdentityId::R4 => "-Phi(t)/t^2 = L[xi](t)",
            IdentityId::R5 => "-Phi'(t)/t^2 = L[eta](t)",
            IdentityId::R6 => "x (log M)'(x) = 2 int eta(t)/(x+t)^3 dt",
            IdentityId::R7 => "Gamma(x+b)/Gamma(x+a) = L[t^(l-1) w](x)/Gamma(l)",
            IdentityId::R8 => "L(x) = x^(l+1) L[t^(l-1)(1-w)](x)/Gamma(l)",
            IdentityId::R9 => "M(x) = -int gamma(l,xt) w'(t) dt/Gamma(l)",
            IdentityId::R10 => "-Phi(x) = 2q(inf) - x^3 int q(v) v^2 e^(-xv) dv",
            IdentityId::R11 => "B(b,l) - B(b,l,e^-x) = int_0^x e^(-bt)(1-e^-t)^(l-1) dt",
            IdentityId::R12 => "Gamma(l) L'(x) x^(1-l) = x L[t^(l-1)(1-w+tw')](x)",
            IdentityId::R13 => "M(x) = 1 - x^l L[p(t) t^(l-1)](x)",
        }
    }

    /// Rejects parameters outside the identity's domain.
    pub fn admits(self, pair: &ParamPair) -> Result<()> {
        let (ok, requirement) = match self.requirement() {
            Requirement::Pair => (true, ""),
            Requirement::Omega => (pair.in_omega(), "a > 1"),
            Requirement::GapAboveOne => (pair.gap_exceeds_one(), "a - b > 1"),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IdentityDomain {
                identity: self.name(),
                requirement,
            })
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::R1 => "R1",
            IdentityId::R2 => "R2",
            IdentityId::R3 => "R3",
            IdentityId::R4 => "R4",
            IdentityId::R5 => "R5",
            IdentityId::R6 => "R6",
            IdentityId::R7 => "R7",
            IdentityId::R8 => "R8",
            IdentityId::R9 => "R9",
            IdentityId::R10 => "R10",
            IdentityId::R11 => "R11",
            IdentityId::R12 => "R12",
            IdentityId::R13 => "R13",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(t))
            .ok_or_else(|| domain("IdentityId", format!("unknown identity '{s}'")))
    }
}

/// Outcome of comparing both sides of one identity over a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheckReport {
    pub identity_id: IdentityId,
    pub params: ParamPair,
    pub grid: Vec<f64>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub max_rel_err: f64,
    pub worst_point: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Both sides of an identity at one point. The left side is the closed form.
pub fn identity_sides(
    id: IdentityId,
    pair: &ParamPair,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    id.admits(pair)?;
    require_above("identity_sides", "x", x, 0.0)?;
    let p = *pair;
    let (a, b, lambda) = (pair.a(), pair.b(), pair.lambda());
    // a cover for the kink points reached by an e^{-xt} weight
    let kinked = |x: f64| -> Result<QuadratureSpec> {
        let bp = kink_breakpoints(pair, 80.0 / x + a + 2.0)?;
        Ok(spec.clone().with_breakpoints(spec.breakpoints.merged(bp.as_slice())?))
    };
    let omega = || OmegaParams::try_from(p);
    match id {
        IdentityId::R1 => {
            let f = Integrand::new(
                ScalarFunction::new("Phi", move |t| phi(&p, t)),
                Growth::Bounded(phi_bound(pair)),
            );
            Ok((-log_m_deriv(pair, x)?, laplace(&f, x, spec)?.value))
        }
        IdentityId::R2 => {
            let f = Integrand::new(
                ScalarFunction::new("Phi'", move |t| phi_prime(&p, t)),
                Growth::Bounded(phi_prime_bound(pair)),
            );
            Ok((-x * log_m_deriv(pair, x)?, laplace(&f, x, spec)?.value))
        }
        IdentityId::R3 => {
            // |Phi(u)/u| ≤ |Phi(u)| once u ≥ 1, which covers every truncation point
            let f = Integrand::new(
                ScalarFunction::new("Phi/u", move |u| Ok(phi(&p, u)? / u)),
                Growth::Bounded(phi_bound(pair)),
            );
            Ok((log_m(pair, x)?, laplace(&f, x, spec)?.value))
        }
        IdentityId::R4 => {
            let o = omega()?;
            let lhs = -phi(pair, x)? / (x * x);
            Ok((lhs, laplace(&xi_integrand(&o), x, &kinked(x)?)?.value))
        }
        IdentityId::R5 => {
            let o = omega()?;
            let lhs = -phi_prime(pair, x)? / (x * x);
            Ok((lhs, laplace(&eta_integrand(&o), x, &kinked(x)?)?.value))
        }
        IdentityId::R6 => {
            let o = omega()?;
            let local = {
                let bp = kink_breakpoints(pair, a.ceil() + 4.0)?;
                spec.clone().with_breakpoints(spec.breakpoints.merged(bp.as_slice())?)
            };
            let rhs = 2.0 * stieltjes_integral(&eta_integrand(&o), 3.0, x, &local)?.value;
            Ok((x * log_m_deriv(pair, x)?, rhs))
        }
        IdentityId::R7 => {
            let f = Integrand::new(
                ScalarFunction::new("w", move |t| w_kernel(&p, t)),
                Growth::Bounded(w_bound(pair)),
            )
            .with_zero_power(lambda);
            let rhs = laplace(&f, x, spec)?.value / gamma(lambda)?;
            Ok((gamma_ratio(x, b, a)?, rhs))
        }
        IdentityId::R8 => {
            let f = Integrand::new(
                ScalarFunction::new("1-w", move |t| one_minus_w(&p, t)),
                Growth::Bounded(1.0 + w_bound(pair)),
            )
            .with_zero_power(lambda);
            let rhs = x.powf(lambda + 1.0) * laplace(&f, x, spec)?.value / gamma(lambda)?;
            Ok((l_value(pair, x)?, rhs))
        }
        IdentityId::R9 => {
            // written as ∫ e^{-bt} t^λ g(t) dt, g = γ(λ,xt) t^{-λ} w'(t) e^{bt}
            let k = w_prime_envelope(pair);
            let scale = x.powf(lambda) / lambda;
            let growth = if lambda >= 1.0 {
                Growth::Bounded(scale * k)
            } else {
                Growth::Linear {
                    slope: scale * k * W_LOWER.powf(lambda - 1.0),
                    offset: scale * k * 2f64.powf(1.0 - lambda),
                }
            };
            let g = ScalarFunction::new("gamma(l,xt) w'(t)", move |t: f64| {
                let lower = lower_incomplete_gamma(lambda, x * t)? * t.powf(-lambda);
                Ok(lower * w_prime(&p, t)? * (b * t).exp())
            });
            let f = Integrand::new(g, growth).with_zero_power(lambda + 1.0);
            let rhs = -laplace(&f, b, spec)?.value / gamma(lambda)?;
            Ok((m_value(pair, x)?, rhs))
        }
        IdentityId::R10 => {
            let o = omega()?;
            let table = QTable::new(&o, 80.0 / x + a + 2.0, spec)?;
            let limit = table.limit();
            let f = Integrand::new(
                ScalarFunction::new("q", move |v| table.eval(v)),
                Growth::Bounded(limit.abs()),
            )
            .with_zero_power(3.0);
            let rhs = 2.0 * limit - x.powi(3) * laplace(&f, x, &kinked(x)?)?.value;
            Ok((-phi(pair, x)?, rhs))
        }
        IdentityId::R11 => {
            let rhs = integrate_weighted(|t| w_kernel(&p, t), lambda, 0.0, x, spec)?.value;
            Ok((beta_bernstein(pair, x)?, rhs))
        }
        IdentityId::R12 => {
            let k = w_prime_envelope(pair);
            let f = Integrand::new(
                ScalarFunction::new("1-w+tw'", move |t| {
                    Ok(one_minus_w(&p, t)? + t * w_prime(&p, t)?)
                }),
                Growth::Linear {
                    slope: k,
                    offset: 1.0,
                },
            )
            .with_zero_power(lambda);
            let lhs = gamma(lambda)? * l_deriv(pair, x)? * x.powf(1.0 - lambda);
            Ok((lhs, x * laplace(&f, x, spec)?.value))
        }
        IdentityId::R13 => {
            let g = gamma(lambda)?;
            let f = Integrand::new(
                ScalarFunction::new("p", move |t| p_of_t(&p, t)),
                Growth::Bounded((1.0 + w_bound(pair)) / g),
            )
            .with_zero_power(lambda);
            let rhs = 1.0 - x.powf(lambda) * laplace(&f, x, spec)?.value;
            Ok((m_value(pair, x)?, rhs))
        }
    }
}

// (1 - e^{-t})/t ≥ W_LOWER/t for t ≥ 1, and ≥ 1/2 for t ≤ 1
const W_LOWER: f64 = 0.632_120_558_828_557_7;

/// sup |Φ|: Φ = φ − λ with 0 < φ ≤ max(1, λ).
fn phi_bound(pair: &ParamPair) -> f64 {
    pair.lambda() + pair.lambda().max(1.0)
}

/// Bound on |Φ′(t)| for t ≥ 1.
fn phi_prime_bound(pair: &ParamPair) -> f64 {
    let d = W_LOWER;
    (pair.a() + pair.b()) / d + 1.0 / (d * d)
}

/// sup w.
fn w_bound(pair: &ParamPair) -> f64 {
    let c = 1.0 - pair.lambda();
    if c <= 0.0 {
        1.0
    } else {
        // t ≤ 1: ratio ≥ 1/2; t ≥ 1: ratio ≥ W_LOWER/t and t^c e^{-bt} ≤ (c/(be))^c
        let far = W_LOWER.powf(-c) * (c / (pair.b() * std::f64::consts::E)).powf(c);
        2f64.powf(c).max(far)
    }
}

/// |w′(t)| ≤ K·e^{−bt}·max(2^{1−λ}, (t/W_LOWER)^{1−λ}), using |1/(e^t−1) − 1/t| ≤ 1/2.
fn w_prime_envelope(pair: &ParamPair) -> f64 {
    (pair.lambda() - 1.0).abs() / 2.0 + pair.b()
}

/// Evaluates both sides over `grid` and reports the worst relative error.
pub fn check_identity(
    id: IdentityId,
    pair: &ParamPair,
    grid: &[f64],
    spec: &QuadratureSpec,
) -> Result<IdentityCheckReport> {
    id.admits(pair)?;
    if grid.is_empty() {
        return Err(domain("check_identity", "empty grid"));
    }
    let mut lhs = Vec::with_capacity(grid.len());
    let mut rhs = Vec::with_capacity(grid.len());
    let mut max_rel_err = 0.0f64;
    let mut worst_point = grid[0];
    for &x in grid {
        let (l, r) = identity_sides(id, pair, x, spec)?;
        let err = if l == 0.0 { r.abs() } else { ((l - r) / l).abs() };
        if err > max_rel_err || err.is_nan() {
            max_rel_err = err;
            worst_point = x;
        }
        lhs.push(l);
        rhs.push(r);
    }
    let tolerance = id.tolerance();
    Ok(IdentityCheckReport {
        identity_id: id,
        params: *pair,
        grid: grid.to_vec(),
        lhs,
        rhs,
        max_rel_err,
        worst_point,
        tolerance,
        passed: max_rel_err <= tolerance,
    })
}
