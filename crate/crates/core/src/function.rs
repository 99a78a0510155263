use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type Eval = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;

/// A real function on (0, ∞), optionally carrying its analytic derivative.
///
/// Handles are cheap to clone and immutable once built.
#[derive(Clone)]
pub struct ScalarFunction {
    label: String,
    eval: Eval,
    deriv: Option<Eval>,
}

impl ScalarFunction {
    pub fn new<F>(label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            eval: Arc::new(eval),
            deriv: None,
        }
    }

    pub fn with_derivative<D>(mut self, deriv: D) -> Self
    where
        D: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        self.deriv = Some(Arc::new(deriv));
        self
    }

    /// Build from infallible closures.
    pub fn from_fns<F, D>(label: impl Into<String>, eval: F, deriv: D) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(label, move |x| Ok(eval(x))).with_derivative(move |x| Ok(deriv(x)))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn eval(&self, x: f64) -> Result<f64> {
        (self.eval)(x)
    }

    pub fn has_derivative(&self) -> bool {
        self.deriv.is_some()
    }

    pub fn deriv(&self, x: f64) -> Result<f64> {
        match &self.deriv {
            Some(d) => d(x),
            None => Err(Error::MissingDerivative(self.label.clone())),
        }
    }

    /// `c·f`, with the derivative scaled alongside.
    pub fn scaled(&self, c: f64) -> Self {
        let eval = Arc::clone(&self.eval);
        let mut out = Self::new(format!("{c}*{}", self.label), move |x| Ok(c * eval(x)?));
        if let Some(d) = &self.deriv {
            let d = Arc::clone(d);
            out = out.with_derivative(move |x| Ok(c * d(x)?));
        }
        out
    }

    /// Pointwise product, derivative by the product rule.
    pub fn product(&self, other: &ScalarFunction) -> Self {
        let (f, g) = (Arc::clone(&self.eval), Arc::clone(&other.eval));
        let mut out = Self::new(format!("({})*({})", self.label, other.label), move |x| {
            Ok(f(x)? * g(x)?)
        });
        if let (Some(df), Some(dg)) = (&self.deriv, &other.deriv) {
            let (f, g) = (Arc::clone(&self.eval), Arc::clone(&other.eval));
            let (df, dg) = (Arc::clone(df), Arc::clone(dg));
            out = out.with_derivative(move |x| Ok(df(x)? * g(x)? + f(x)? * dg(x)?));
        }
        out
    }
}

impl fmt::Debug for ScalarFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarFunction")
            .field("label", &self.label)
            .field("has_derivative", &self.deriv.is_some())
            .finish()
    }
}
