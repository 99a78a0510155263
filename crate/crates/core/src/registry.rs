//! Named functions and kernels for the command line and the browser demo,
//! plus the fixed float format and kernel tables they write.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::families::{beta_bernstein, f_value, g_lambda, l_value, log_m, log_m_deriv, m_value};
use crate::kernels::{
    eta, kink_breakpoints, p_of_t, phi, phi_prime, theta, varphi, w_kernel, w_prime, xi, QTable,
    W_kernel,
};
use crate::params::{OmegaParams, ParamPair};
use crate::quadrature::QuadratureSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionName {
    M,
    LogM,
    DLogM,
    L,
    F,
    BetaF,
    Phi,
    PhiPrime,
    Xi,
    Eta,
    Theta,
    W,
    WPrime,
    BigW,
    Varphi,
    Q,
    P,
    GLambda,
}

impl FunctionName {
    pub const ALL: [FunctionName; 18] = [
        FunctionName::M,
        FunctionName::LogM,
        FunctionName::DLogM,
        FunctionName::L,
        FunctionName::F,
        FunctionName::BetaF,
        FunctionName::Phi,
        FunctionName::PhiPrime,
        FunctionName::Xi,
        FunctionName::Eta,
        FunctionName::Theta,
        FunctionName::W,
        FunctionName::WPrime,
        FunctionName::BigW,
        FunctionName::Varphi,
        FunctionName::Q,
        FunctionName::P,
        FunctionName::GLambda,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctionName::M => "M",
            FunctionName::LogM => "logM",
            FunctionName::DLogM => "dlogM",
            FunctionName::L => "L",
            FunctionName::F => "F",
            FunctionName::BetaF => "beta_f",
            FunctionName::Phi => "Phi",
            FunctionName::PhiPrime => "PhiPrime",
            FunctionName::Xi => "xi",
            FunctionName::Eta => "eta",
            FunctionName::Theta => "Theta",
            FunctionName::W => "w",
            FunctionName::WPrime => "wPrime",
            FunctionName::BigW => "W",
            FunctionName::Varphi => "varphi",
            FunctionName::Q => "q",
            FunctionName::P => "p",
            FunctionName::GLambda => "g_lambda",
        }
    }

    /// Kernels built from ξ and η need a > 1.
    pub fn requires_omega(self) -> bool {
        matches!(
            self,
            FunctionName::Xi | FunctionName::Eta | FunctionName::Theta | FunctionName::Q
        )
    }
}

impl fmt::Display for FunctionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| domain("FunctionName", format!("unknown function `{s}`")))
    }
}

/// Evaluates `name` at every point of `xs`. `g_lambda` takes λ = a and ignores b.
pub fn evaluate(
    name: FunctionName,
    pair: &ParamPair,
    xs: &[f64],
    spec: &QuadratureSpec,
) -> Result<Vec<f64>> {
    let omega = if name.requires_omega() {
        Some(OmegaParams::try_from(*pair)?)
    } else {
        None
    };
    if name == FunctionName::Q {
        let cover = xs.iter().copied().fold(0.0, f64::max) + 1.0;
        let table = QTable::new(&omega.expect("checked"), cover, spec)?;
        return xs.iter().map(|&t| table.eval(t)).collect();
    }
    xs.iter()
        .map(|&x| match name {
            FunctionName::M => m_value(pair, x),
            FunctionName::LogM => log_m(pair, x),
            FunctionName::DLogM => log_m_deriv(pair, x),
            FunctionName::L => l_value(pair, x),
            FunctionName::F => f_value(pair, x),
            FunctionName::BetaF => beta_bernstein(pair, x),
            FunctionName::Phi => phi(pair, x),
            FunctionName::PhiPrime => phi_prime(pair, x),
            FunctionName::Xi => xi(omega.as_ref().expect("checked"), x),
            FunctionName::Eta => eta(omega.as_ref().expect("checked"), x),
            FunctionName::Theta => theta(omega.as_ref().expect("checked"), x),
            FunctionName::W => w_kernel(pair, x),
            FunctionName::WPrime => w_prime(pair, x),
            FunctionName::BigW => W_kernel(pair, x),
            FunctionName::Varphi => varphi(pair, x),
            FunctionName::P => p_of_t(pair, x),
            FunctionName::GLambda => g_lambda(pair.a(), x),
            FunctionName::Q => unreachable!(),
        })
        .collect()
}

/// 17 significant digits in scientific notation.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Rows (s, ξ(s), η(s)) at `n` uniform nodes on [0, s_max] merged with every
/// kink point up to s_max.
pub fn kernel_table(params: &OmegaParams, s_max: f64, n: usize) -> Result<Vec<[f64; 3]>> {
    if !(s_max.is_finite() && s_max > 0.0) {
        return Err(domain("kernel_table", format!("s_max = {s_max} must be positive")));
    }
    if n < 2 {
        return Err(domain("kernel_table", "need at least two nodes"));
    }
    let last = (n - 1) as f64;
    let mut nodes: Vec<f64> = (0..n).map(|i| i as f64 * s_max / last).collect();
    nodes.extend_from_slice(kink_breakpoints(&params.pair(), s_max)?.as_slice());
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();
    nodes
        .into_iter()
        .map(|s| Ok([s, xi(params, s)?, eta(params, s)?]))
        .collect()
}

/// The kernel table as CSV with a '#' comment header.
pub fn kernel_csv(params: &OmegaParams, s_max: f64, n: usize) -> Result<String> {
    let mut out = format!(
        "# dump-kernels a={} b={} smax={} n={}\ns,xi,eta\n",
        params.a(),
        params.b(),
        s_max,
        n
    );
    for row in kernel_table(params, s_max, n)? {
        let cells: Vec<String> = row.iter().map(|&v| format_float(v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in FunctionName::ALL {
            assert_eq!(f.name().parse::<FunctionName>().unwrap(), f);
        }
        assert!("Gamma".parse::<FunctionName>().is_err());
    }

    #[test]
    fn simple_values() {
        let spec = QuadratureSpec::default();
        let two_one = ParamPair::new(2.0, 1.0).unwrap();
        let m = evaluate(FunctionName::M, &two_one, &[1.0], &spec).unwrap();
        assert!((m[0] - 0.5).abs() < 1e-15);
        let x = evaluate(FunctionName::Xi, &two_one, &[3.7], &spec).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15);
        let fig = ParamPair::new(1.7, 1.6).unwrap();
        let e = evaluate(FunctionName::Eta, &fig, &[2.6], &spec).unwrap();
        assert!((e[0] - 0.07).abs() < 1e-13);
        let off = ParamPair::new(1.0, 0.5).unwrap();
        assert!(evaluate(FunctionName::Eta, &off, &[1.0], &spec).is_err());
    }

    #[test]
    fn q_table_matches_limit_far_out() {
        let pair = ParamPair::new(2.5, 0.5).unwrap();
        let spec = QuadratureSpec::default();
        let q = evaluate(FunctionName::Q, &pair, &[0.1, 1.0, 5000.0], &spec).unwrap();
        assert_eq!(q[0], 0.0);
        assert!(q[1] > 0.0 && q[2] <= pair.lambda() / 2.0 + 1e-12);
    }

    #[test]
    fn table_contains_kinks_and_nodes() {
        let p = OmegaParams::new(1.7, 1.6).unwrap();
        let rows = kernel_table(&p, 10.0, 1001).unwrap();
        assert!(rows.iter().any(|r| r[0] == 1.0));
        let row = rows.iter().find(|r| r[0] == 1.7).unwrap();
        assert!((row[2] - 0.16).abs() < 1e-13);
        assert!(rows.windows(2).all(|w| w[0][0] < w[1][0]));
    }

    #[test]
    fn float_format_is_fixed() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(0.0), "0.0000000000000000e0");
    }
}
