//! Scalar special functions: log Γ, ψ, ψ′, lower incomplete γ, incomplete
//! Beta, the Hurwitz zeta function and stable Gamma ratios.
//!
//! Everything here is real-argument only and rejects non-finite input with a
//! domain error. Small arguments are shifted upward with the recurrences until
//! the Stirling/asymptotic series is accurate (argument ≥ [`ASYMPTOTIC_FROM`]).

use crate::error::{domain, require_above, require_at_least, Error, Result};

/// Arguments at or above this use the asymptotic series directly.
const ASYMPTOTIC_FROM: f64 = 10.0;

const MAX_ITER: usize = 1000;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_405_62;

/// Bernoulli numbers B_2, B_4, ..., B_20.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Absolute and relative tolerances for numerical routines.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Precision {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Precision {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        require_above("Precision", "abs_tol", abs_tol, 0.0)?;
        require_at_least("Precision", "rel_tol", rel_tol, f64::EPSILON)?;
        Ok(Self { abs_tol, rel_tol })
    }

    /// Target absolute error for a result of magnitude `value`.
    pub fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }

    /// Both tolerances scaled by `factor` (clamped to machine epsilon).
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: (self.rel_tol * factor).max(f64::EPSILON),
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            abs_tol: 1e-15,
            rel_tol: 1e-12,
        }
    }
}

/// Remainder of the Stirling series: log Γ(z) − [(z−½)ln z − z + ½ln 2π].
fn stirling_remainder(z: f64) -> f64 {
    let z2 = z * z;
    let mut zpow = z;
    let mut sum = 0.0;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate().take(8) {
        let n = 2.0 * (k as f64 + 1.0);
        sum += b / (n * (n - 1.0) * zpow);
        zpow *= z2;
    }
    sum
}

/// Number of unit shifts needed to bring `x` up to the asymptotic region.
fn shifts_for(x: f64) -> usize {
    if x >= ASYMPTOTIC_FROM {
        0
    } else {
        (ASYMPTOTIC_FROM - x).ceil() as usize
    }
}

/// log Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    require_above("log_gamma", "x", x, 0.0)?;
    // exact (n-1)! for small integers; 22! is the last exactly representable
    if x.fract() == 0.0 && x <= 23.0 {
        let n = x as u32;
        let fact: f64 = (1..n).map(f64::from).product();
        return Ok(fact.ln());
    }
    let n = shifts_for(x);
    let mut prod = 1.0;
    for k in 0..n {
        prod *= x + k as f64;
    }
    let z = x + n as f64;
    let stirling = (z - 0.5) * z.ln() - z + HALF_LN_2PI + stirling_remainder(z);
    Ok(stirling - prod.ln())
}

/// Γ(x) via `exp(log_gamma(x))`; only meaningful for moderate x.
pub fn gamma(x: f64) -> Result<f64> {
    Ok(log_gamma(x)?.exp())
}

/// log Γ(x + b) − log Γ(x + a), computed without forming either log Γ when
/// the arguments are large.
pub fn log_gamma_ratio(x: f64, b: f64, a: f64) -> Result<f64> {
    if !(x.is_finite() && a.is_finite() && b.is_finite()) {
        return Err(domain("log_gamma_ratio", "non-finite argument"));
    }
    let zb = x + b;
    let za = x + a;
    require_above("log_gamma_ratio", "x + b", zb, 0.0)?;
    require_above("log_gamma_ratio", "x + a", za, 0.0)?;
    let d = a - b;
    let lo = zb.min(za);
    let n = shifts_for(lo);
    // Γ(z) = Γ(z+n) / Π(z+k)
    let mut shift = 0.0;
    for k in 0..n {
        shift += (d / (zb + k as f64)).ln_1p();
    }
    let zb = zb + n as f64;
    let za = za + n as f64;
    let ratio = -(zb - 0.5) * (d / zb).ln_1p() - d * za.ln() + d + stirling_remainder(zb)
        - stirling_remainder(za);
    Ok(ratio + shift)
}

/// Γ(x+b)/Γ(x+a), i.e. `exp(log Γ(x+b) − log Γ(x+a))`.
pub fn gamma_ratio(x: f64, b: f64, a: f64) -> Result<f64> {
    require_above("gamma_ratio", "x", x, 0.0)?;
    Ok(log_gamma_ratio(x, b, a)?.exp())
}

/// (a−b)·ln x + log Γ(x+b) − log Γ(x+a).
///
/// For large x the three terms nearly cancel; this form keeps the result
/// relative-accurate as it tends to zero.
pub fn log_scaled_gamma_ratio(x: f64, b: f64, a: f64) -> Result<f64> {
    require_above("log_scaled_gamma_ratio", "x", x, 0.0)?;
    let d = a - b;
    let zb = x + b;
    if zb.min(x + a) < ASYMPTOTIC_FROM {
        return Ok(d * x.ln() + log_gamma_ratio(x, b, a)?);
    }
    let za = x + a;
    // (zb − ½)·ln(1 + u) − d with u = d/zb, without the O(1) cancellation
    let u = d / zb;
    Ok(-zb * ln_1p_minus_x(u) + 0.5 * u.ln_1p() - d * (a / x).ln_1p() + stirling_remainder(zb)
        - stirling_remainder(za))
}

/// ln(1 + u) − u.
fn ln_1p_minus_x(u: f64) -> f64 {
    if u.abs() > 0.1 {
        return u.ln_1p() - u;
    }
    let mut term = -u * u / 2.0;
    let mut sum = term;
    let mut k = 2.0;
    while term.abs() > 1e-17 * sum.abs() {
        term *= -u * k / (k + 1.0);
        sum += term;
        k += 1.0;
    }
    sum
}

/// Digamma ψ(x) = (log Γ)′(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    require_above("digamma", "x", x, 0.0)?;
    let n = shifts_for(x);
    let mut shift = 0.0;
    for k in 0..n {
        shift += 1.0 / (x + k as f64);
    }
    let z = x + n as f64;
    let z2 = z * z;
    let mut zpow = z2;
    let mut series = 0.0;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate().take(8) {
        let n2 = 2.0 * (k as f64 + 1.0);
        series += b / (n2 * zpow);
        zpow *= z2;
    }
    Ok(z.ln() - 0.5 / z - series - shift)
}

/// Trigamma ψ′(x) for x > 0.
pub fn trigamma(x: f64) -> Result<f64> {
    require_above("trigamma", "x", x, 0.0)?;
    let n = shifts_for(x);
    let mut shift = 0.0;
    for k in 0..n {
        let y = x + k as f64;
        shift += 1.0 / (y * y);
    }
    let z = x + n as f64;
    let z2 = z * z;
    let mut zpow = z2 * z;
    let mut series = 0.0;
    for b in BERNOULLI_EVEN.iter().take(8) {
        series += b / zpow;
        zpow *= z2;
    }
    Ok(1.0 / z + 0.5 / z2 + series + shift)
}

/// Hurwitz zeta ζ(s, c) = Σ_{n≥0} (c+n)^{−s} for s > 1, c > 0.
pub fn hurwitz_zeta(s: f64, c: f64) -> Result<f64> {
    require_above("hurwitz_zeta", "s", s, 1.0)?;
    require_above("hurwitz_zeta", "c", c, 0.0)?;
    let target = 12.0 + s;
    let n = if c >= target {
        0
    } else {
        (target - c).ceil() as usize
    };
    let mut direct = 0.0;
    for k in 0..n {
        direct += (c + k as f64).powf(-s);
    }
    let z = c + n as f64;
    let zs = z.powf(-s);
    let mut tail = z * zs / (s - 1.0) + 0.5 * zs;
    // Euler–Maclaurin: B_2k/(2k)! · s(s+1)…(s+2k−2) · z^{−s−2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut zpow = zs / z;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = b / fact * rising * zpow;
        tail += term;
        let m = 2.0 * k as f64 + 2.0;
        rising *= (s + m - 1.0) * (s + m);
        fact *= (m + 1.0) * (m + 2.0);
        zpow /= z * z;
    }
    Ok(direct + tail)
}

/// Lower incomplete Gamma γ(λ, x) = ∫_0^x t^{λ−1} e^{−t} dt.
pub fn lower_incomplete_gamma(lambda: f64, x: f64) -> Result<f64> {
    require_above("lower_incomplete_gamma", "lambda", lambda, 0.0)?;
    require_at_least("lower_incomplete_gamma", "x", x, 0.0)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x <= lambda + 1.0 {
        let prefactor = (lambda * x.ln() - x).exp();
        Ok(prefactor * lower_gamma_series(lambda, x)?)
    } else {
        let upper = upper_gamma_fraction(lambda, x)?;
        Ok(gamma(lambda)? - upper)
    }
}

/// Σ_n x^n / (λ(λ+1)…(λ+n)).
fn lower_gamma_series(lambda: f64, x: f64) -> Result<f64> {
    let mut term = 1.0 / lambda;
    let mut sum = term;
    let mut denom = lambda;
    for _ in 0..MAX_ITER {
        denom += 1.0;
        term *= x / denom;
        sum += term;
        if term.abs() <= sum.abs() * f64::EPSILON {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        routine: "lower_incomplete_gamma series",
        estimate: term.abs(),
    })
}

/// Γ(λ, x) by the modified Lentz continued fraction.
fn upper_gamma_fraction(lambda: f64, x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - lambda;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - lambda);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() <= f64::EPSILON {
            return Ok((lambda * x.ln() - x).exp() * h);
        }
    }
    Err(Error::NonConvergence {
        routine: "upper incomplete gamma continued fraction",
        estimate: h.abs() * f64::EPSILON,
    })
}

/// Complete Beta B(p, q).
pub fn beta(p: f64, q: f64) -> Result<f64> {
    require_above("beta", "p", p, 0.0)?;
    require_above("beta", "q", q, 0.0)?;
    Ok((log_gamma(p)? + log_gamma(q)? - log_gamma(p + q)?).exp())
}

/// Incomplete Beta B(p, q, x) = ∫_0^x t^{p−1}(1−t)^{q−1} dt (not regularized).
pub fn incomplete_beta(p: f64, q: f64, x: f64) -> Result<f64> {
    require_above("incomplete_beta", "p", p, 0.0)?;
    require_above("incomplete_beta", "q", q, 0.0)?;
    require_at_least("incomplete_beta", "x", x, 0.0)?;
    if x > 1.0 {
        return Err(domain("incomplete_beta", format!("x = {x} exceeds 1")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return beta(p, q);
    }
    if x > p / (p + q) {
        return Ok(beta(p, q)? - incomplete_beta_fraction(q, p, 1.0 - x)?);
    }
    incomplete_beta_fraction(p, q, x)
}

/// x^p (1−x)^q / p times the standard continued fraction.
fn incomplete_beta_fraction(p: f64, q: f64, x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let front = (p * x.ln() + q * (-x).ln_1p()).exp() / p;
    let qab = p + q;
    let qap = p + 1.0;
    let qam = p - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (q - m) * x / ((qam + m2) * (p + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(p + m) * (qab + m) * x / ((p + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() <= f64::EPSILON {
            return Ok(front * h);
        }
    }
    Err(Error::NonConvergence {
        routine: "incomplete beta continued fraction",
        estimate: (front * h).abs() * 1e-10,
    })
}
