//! The Gamma-ratio families M, log M, L, F, the incomplete-Beta Bernstein
//! function, and their analytic first derivatives.

use crate::error::{domain, require_above, Result};
pub use crate::function::ScalarFunction;
use crate::params::ParamPair;
use crate::special::{digamma, gamma_ratio, incomplete_beta, log_scaled_gamma_ratio, trigamma};

fn check_x(function: &'static str, x: f64) -> Result<()> {
    require_above(function, "x", x, 0.0)
}

/// log M(x) = (a−b) log x + log Γ(x+b) − log Γ(x+a), assembled from log-gamma
/// values so that it stays accurate as M → 1.
pub fn log_m(pair: &ParamPair, x: f64) -> Result<f64> {
    check_x("log_m", x)?;
    log_scaled_gamma_ratio(x, pair.b(), pair.a())
}

/// M(x) = x^{a−b} Γ(x+b)/Γ(x+a).
pub fn m_value(pair: &ParamPair, x: f64) -> Result<f64> {
    Ok(log_m(pair, x)?.exp())
}

/// g_λ(x) = M_{λ,1}(x).
pub fn g_lambda(lambda: f64, x: f64) -> Result<f64> {
    m_value(&ParamPair::new(lambda, 1.0)?, x)
}

/// ψ(x+a) − ψ(x+b).
pub fn digamma_gap(pair: &ParamPair, x: f64) -> Result<f64> {
    check_x("digamma_gap", x)?;
    Ok(digamma(x + pair.a())? - digamma(x + pair.b())?)
}

fn trigamma_gap(pair: &ParamPair, x: f64) -> Result<f64> {
    Ok(trigamma(x + pair.a())? - trigamma(x + pair.b())?)
}

/// (log M)′(x) = (a−b)/x + ψ(x+b) − ψ(x+a).
pub fn log_m_deriv(pair: &ParamPair, x: f64) -> Result<f64> {
    Ok(pair.lambda() / x - digamma_gap(pair, x)?)
}

/// (log M)″(x) = −(a−b)/x² + ψ′(x+b) − ψ′(x+a).
pub fn log_m_second(pair: &ParamPair, x: f64) -> Result<f64> {
    check_x("log_m_second", x)?;
    Ok(-pair.lambda() / (x * x) - trigamma_gap(pair, x)?)
}

/// M′ = M·(log M)′.
pub fn m_deriv(pair: &ParamPair, x: f64) -> Result<f64> {
    Ok(m_value(pair, x)? * log_m_deriv(pair, x)?)
}

/// L(x) = x(1 − M(x)).
pub fn l_value(pair: &ParamPair, x: f64) -> Result<f64> {
    Ok(-x * log_m(pair, x)?.exp_m1())
}

/// L′ = 1 − M − x M′.
pub fn l_deriv(pair: &ParamPair, x: f64) -> Result<f64> {
    let lm = log_m(pair, x)?;
    let m = lm.exp();
    Ok(-lm.exp_m1() - x * m * log_m_deriv(pair, x)?)
}

fn require_gap_above_one(function: &'static str, pair: &ParamPair) -> Result<()> {
    if pair.gap_exceeds_one() {
        Ok(())
    } else {
        Err(domain(function, format!("needs a - b > 1, got {pair}")))
    }
}

/// F(x) = x^{a−b−1}/(ψ(x+a) − ψ(x+b)), defined for 0 < b < a − 1.
pub fn f_value(pair: &ParamPair, x: f64) -> Result<f64> {
    require_gap_above_one("f_value", pair)?;
    Ok(x.powf(pair.lambda() - 1.0) / digamma_gap(pair, x)?)
}

/// F′ by the quotient rule.
pub fn f_deriv(pair: &ParamPair, x: f64) -> Result<f64> {
    require_gap_above_one("f_deriv", pair)?;
    let e = pair.lambda() - 1.0;
    let d = digamma_gap(pair, x)?;
    let dd = trigamma_gap(pair, x)?;
    Ok(x.powf(e - 1.0) * (e * d - x * dd) / (d * d))
}

/// f(x) = B(b, a−b) − B(b, a−b, e^{−x}) = ∫_0^x e^{−bt}(1 − e^{−t})^{a−b−1} dt.
pub fn beta_bernstein(pair: &ParamPair, x: f64) -> Result<f64> {
    check_x("beta_bernstein", x)?;
    // reflected: ∫_0^{1-e^{-x}} u^{a-b-1}(1-u)^{b-1} du
    incomplete_beta(pair.lambda(), pair.b(), -(-x).exp_m1())
}

/// f′(x) = e^{−bx}(1 − e^{−x})^{a−b−1}.
pub fn beta_bernstein_deriv(pair: &ParamPair, x: f64) -> Result<f64> {
    check_x("beta_bernstein_deriv", x)?;
    Ok((-pair.b() * x + (pair.lambda() - 1.0) * (-(-x).exp_m1()).ln()).exp())
}

fn handle<F, D>(label: String, pair: &ParamPair, f: F, d: D) -> ScalarFunction
where
    F: Fn(&ParamPair, f64) -> Result<f64> + Send + Sync + 'static,
    D: Fn(&ParamPair, f64) -> Result<f64> + Send + Sync + 'static,
{
    let (p, q) = (*pair, *pair);
    ScalarFunction::new(label, move |x| f(&p, x)).with_derivative(move |x| d(&q, x))
}

pub fn m_function(pair: &ParamPair) -> ScalarFunction {
    handle(format!("M{pair}"), pair, m_value, m_deriv)
}

pub fn log_m_function(pair: &ParamPair) -> ScalarFunction {
    handle(format!("logM{pair}"), pair, log_m, log_m_deriv)
}

/// −log M.
pub fn neg_log_m_function(pair: &ParamPair) -> ScalarFunction {
    handle(
        format!("-logM{pair}"),
        pair,
        |p, x| Ok(-log_m(p, x)?),
        |p, x| Ok(-log_m_deriv(p, x)?),
    )
}

/// x·(log M)′(x).
pub fn x_log_m_deriv_function(pair: &ParamPair) -> ScalarFunction {
    handle(
        format!("x*dlogM{pair}"),
        pair,
        |p, x| Ok(x * log_m_deriv(p, x)?),
        |p, x| Ok(log_m_deriv(p, x)? + x * log_m_second(p, x)?),
    )
}

pub fn l_function(pair: &ParamPair) -> ScalarFunction {
    handle(format!("L{pair}"), pair, l_value, l_deriv)
}

pub fn f_function(pair: &ParamPair) -> Result<ScalarFunction> {
    require_gap_above_one("f_function", pair)?;
    Ok(handle(format!("F{pair}"), pair, f_value, f_deriv))
}

pub fn beta_bernstein_function(pair: &ParamPair) -> ScalarFunction {
    handle(
        format!("beta_f{pair}"),
        pair,
        beta_bernstein,
        beta_bernstein_deriv,
    )
}

/// Γ(x+b)/Γ(x+a).
pub fn gamma_ratio_function(pair: &ParamPair) -> ScalarFunction {
    handle(
        format!("GammaRatio{pair}"),
        pair,
        |p, x| gamma_ratio(x, p.b(), p.a()),
        |p, x| Ok(-gamma_ratio(x, p.b(), p.a())? * digamma_gap(p, x)?),
    )
}

/// x^{1−(a−b)} M′(x).
pub fn scaled_m_deriv_function(pair: &ParamPair) -> ScalarFunction {
    fn value(p: &ParamPair, x: f64) -> Result<f64> {
        Ok(((1.0 - p.lambda()) * x.ln() + log_m(p, x)?).exp() * log_m_deriv(p, x)?)
    }
    handle(format!("x^(1-l)*M'{pair}"), pair, value, |p, x| {
        let d1 = log_m_deriv(p, x)?;
        let d2 = log_m_second(p, x)?;
        let h = ((1.0 - p.lambda()) * x.ln() + log_m(p, x)?).exp();
        Ok(h * (((1.0 - p.lambda()) / x + d1) * d1 + d2))
    })
}

/// L(x)/x^{a−b+1}.
pub fn scaled_l_function(pair: &ParamPair) -> ScalarFunction {
    handle(
        format!("L/x^(l+1){pair}"),
        pair,
        |p, x| Ok(l_value(p, x)? * x.powf(-p.lambda() - 1.0)),
        |p, x| {
            let k = -p.lambda() - 1.0;
            Ok(x.powf(k - 1.0) * (x * l_deriv(p, x)? + k * l_value(p, x)?))
        },
    )
}

/// x·(ψ(x+a) − ψ(x+b)).
pub fn x_digamma_gap_function(pair: &ParamPair) -> ScalarFunction {
    handle(
        format!("x*(psi(x+a)-psi(x+b)){pair}"),
        pair,
        |p, x| Ok(x * digamma_gap(p, x)?),
        |p, x| Ok(digamma_gap(p, x)? + x * trigamma_gap(p, x)?),
    )
}

/// 1/(x·(ψ(x+a) − ψ(x+b))).
pub fn inverse_x_digamma_gap_function(pair: &ParamPair) -> ScalarFunction {
    handle(
        format!("1/(x*(psi(x+a)-psi(x+b))){pair}"),
        pair,
        |p, x| Ok(1.0 / (x * digamma_gap(p, x)?)),
        |p, x| {
            let g = x * digamma_gap(p, x)?;
            let dg = digamma_gap(p, x)? + x * trigamma_gap(p, x)?;
            Ok(-dg / (g * g))
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: f64, b: f64) -> ParamPair {
        ParamPair::new(a, b).unwrap()
    }

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol * y.abs()
    }

    fn richardson(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
        (4.0 * d(h / 2.0) - d(h)) / 3.0
    }

    #[test]
    fn m_examples() {
        assert!(close(m_value(&pair(2.0, 1.0), 1.0).unwrap(), 0.5, 1e-15));
        assert!(close(m_value(&pair(3.0, 1.0), 1.0).unwrap(), 1.0 / 6.0, 1e-14));
        assert!(close(
            m_value(&pair(1.7, 1.6), 1.0).unwrap(),
            0.925_511_528_898_013_7,
            1e-14
        ));
        for x in [0.01, 0.3, 2.0, 77.0] {
            assert!(close(m_value(&pair(2.0, 1.0), x).unwrap(), x / (x + 1.0), 1e-14));
        }
    }

    #[test]
    fn g_lambda_examples() {
        assert!(close(g_lambda(2.0, 1.0).unwrap(), 0.5, 1e-15));
        assert!(close(g_lambda(3.0, 2.0).unwrap(), 1.0 / 3.0, 1e-14));
        for x in [0.2, 1.5, 9.0] {
            assert_eq!(g_lambda(2.7, x).unwrap(), m_value(&pair(2.7, 1.0), x).unwrap());
        }
    }

    #[test]
    fn log_m_examples() {
        let p = pair(2.0, 1.0);
        assert!(close(log_m(&p, 1.0).unwrap(), -std::f64::consts::LN_2, 1e-15));
        let q = pair(1.7, 1.6);
        for x in [0.1, 1.0, 3.0, 50.0] {
            assert!(close(log_m(&q, x).unwrap().exp(), m_value(&q, x).unwrap(), 1e-13));
        }
        let far = log_m(&q, 1e4).unwrap();
        assert!(far < 0.0 && far.abs() < 1e-4);
    }

    #[test]
    fn derivative_examples() {
        let p = pair(2.0, 1.0);
        assert!(close(log_m_deriv(&p, 1.0).unwrap(), 0.5, 1e-14));
        assert!(close(m_deriv(&p, 1.0).unwrap(), 0.25, 1e-14));
        assert!(m_deriv(&pair(1.7, 1.6), 1e4).unwrap().abs() < 1e-4);
        let q = pair(1.7, 1.6);
        let fd = richardson(|x| log_m(&q, x).unwrap(), 2.0, 1e-3);
        assert!(close(log_m_deriv(&q, 2.0).unwrap(), fd, 1e-8));
        let fd = richardson(|x| m_value(&q, x).unwrap(), 3.0, 1e-3);
        assert!(close(m_deriv(&q, 3.0).unwrap(), fd, 1e-8));
    }

    #[test]
    fn l_examples() {
        assert!(close(l_value(&pair(2.0, 1.0), 1.0).unwrap(), 0.5, 1e-15));
        assert!(close(l_value(&pair(3.0, 1.0), 1.0).unwrap(), 5.0 / 6.0, 1e-14));
        let q = pair(3.5, 1.0);
        let fd = richardson(|x| l_value(&q, x).unwrap(), 2.0, 1e-3);
        assert!(close(l_deriv(&q, 2.0).unwrap(), fd, 1e-8));
    }

    #[test]
    fn f_examples() {
        let p = pair(3.0, 1.0);
        assert!(close(f_value(&p, 1.0).unwrap(), 1.2, 1e-14));
        assert!(close(f_deriv(&p, 1.0).unwrap(), 1.72, 1e-13));
        let q = pair(4.2, 1.5);
        let fd = richardson(|x| f_value(&q, x).unwrap(), 0.7, 1e-3);
        assert!(close(f_deriv(&q, 0.7).unwrap(), fd, 1e-8));
        assert!(f_value(&pair(2.0, 1.0), 1.0).is_err());
        assert!(f_function(&pair(1.7, 1.6)).is_err());
    }

    #[test]
    fn beta_bernstein_examples() {
        let e1 = (-1f64).exp();
        assert!(close(beta_bernstein(&pair(2.0, 1.0), 1.0).unwrap(), 1.0 - e1, 1e-14));
        let expected = (1.0 - e1) - (1.0 - e1 * e1) / 2.0;
        let p = pair(3.0, 1.0);
        assert!(close(beta_bernstein(&p, 1.0).unwrap(), expected, 1e-13));
        assert!(close(beta_bernstein(&p, 50.0).unwrap(), 0.5, 1e-14));
        let q = pair(3.2, 1.1);
        for x in [0.2, 1.0, 4.0] {
            let fd = richardson(|x| beta_bernstein(&q, x).unwrap(), x, 1e-3);
            assert!(close(beta_bernstein_deriv(&q, x).unwrap(), fd, 1e-10));
        }
    }

    #[test]
    fn handles_carry_matching_derivatives() {
        let p = pair(3.2, 1.1);
        let handles = [
            m_function(&p),
            log_m_function(&p),
            neg_log_m_function(&p),
            x_log_m_deriv_function(&p),
            l_function(&p),
            f_function(&p).unwrap(),
            beta_bernstein_function(&p),
            gamma_ratio_function(&p),
            scaled_m_deriv_function(&p),
            scaled_l_function(&p),
            x_digamma_gap_function(&p),
            inverse_x_digamma_gap_function(&p),
        ];
        for h in &handles {
            for x in [0.3, 1.0, 2.5, 8.0] {
                let fd = richardson(|x| h.eval(x).unwrap(), x, 1e-3 * x);
                let d = h.deriv(x).unwrap();
                assert!((d - fd).abs() <= 1e-6 * d.abs().max(1e-12), "{} at {x}", h.label());
            }
        }
    }
}
