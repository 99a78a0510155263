//! Parameter pairs `(a, b)` for the Gamma-ratio families.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// A validated pair with `0 < b < a`.
///
/// The case `a == b` is rejected: `M_{a,a}` is the constant 1 and the
/// kernels degenerate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamPair {
    a: f64,
    b: f64,
}

impl ParamPair {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(domain("ParamPair", format!("non-finite parameters ({a}, {b})")));
        }
        if !(b > 0.0 && b < a) {
            return Err(domain("ParamPair", format!("need 0 < b < a, got a = {a}, b = {b}")));
        }
        Ok(Self { a, b })
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    /// The gap `a - b`, written λ in most formulas.
    #[inline]
    pub fn lambda(&self) -> f64 {
        self.a - self.b
    }

    /// Integer part of `a - b`.
    #[inline]
    pub fn lambda_floor(&self) -> f64 {
        self.lambda().floor()
    }

    pub fn in_omega(&self) -> bool {
        self.a > 1.0
    }

    /// True when `0 < b < a - 1`, i.e. the gap exceeds one.
    pub fn gap_exceeds_one(&self) -> bool {
        self.lambda() > 1.0
    }
}

impl std::fmt::Display for ParamPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// A pair in the region `0 < b < a, a > 1` where ξ and η are non-negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmegaParams(ParamPair);

impl OmegaParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        Self::try_from(ParamPair::new(a, b)?)
    }

    #[inline]
    pub fn pair(&self) -> ParamPair {
        self.0
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.0.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.0.b
    }

    #[inline]
    pub fn lambda(&self) -> f64 {
        self.0.lambda()
    }
}

impl TryFrom<ParamPair> for OmegaParams {
    type Error = crate::Error;

    fn try_from(pair: ParamPair) -> Result<Self> {
        if !pair.in_omega() {
            return Err(domain("OmegaParams", format!("a = {} must exceed 1", pair.a)));
        }
        Ok(Self(pair))
    }
}

impl std::fmt::Display for OmegaParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_pairs() {
        assert!(ParamPair::new(1.0, 1.0).is_err());
        assert!(ParamPair::new(1.0, 2.0).is_err());
        assert!(ParamPair::new(1.0, 0.0).is_err());
        assert!(ParamPair::new(f64::NAN, 0.5).is_err());
        assert!(ParamPair::new(f64::INFINITY, 0.5).is_err());
    }

    #[test]
    fn omega_requires_a_above_one() {
        assert!(OmegaParams::new(1.0, 0.5).is_err());
        assert!(OmegaParams::new(1.05, 1.0).is_ok());
        let p = OmegaParams::new(1.7, 1.6).unwrap();
        assert!((p.lambda() - 0.1).abs() < 1e-15);
    }
}
