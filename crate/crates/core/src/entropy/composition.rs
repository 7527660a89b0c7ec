use std::fmt;
use std::sync::Arc;

use super::lambert_w0;
use crate::classes::ComplexityClass;
use crate::error::Result;

type BiFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A composition law `Φ(x,y)`: the entropy of a product distribution in
/// terms of the entropies of its factors.
#[derive(Clone)]
pub struct CompositionLaw {
    phi: BiFn,
    label: String,
}

impl fmt::Debug for CompositionLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CompositionLaw").field("label", &self.label).finish()
    }
}

impl CompositionLaw {
    pub fn new(phi: impl Fn(f64, f64) -> f64 + Send + Sync + 'static, label: impl Into<String>) -> Self {
        Self {
            phi: Arc::new(phi),
            label: label.into(),
        }
    }

    pub fn apply(&self, x: f64, y: f64) -> f64 {
        (self.phi)(x, y)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `x + y`.
    pub fn additive() -> Self {
        Self::new(|x, y| x + y, "additive")
    }

    /// `x + y + a·x·y`.
    pub fn multiplicative(a: f64) -> Self {
        Self::new(move |x, y| x + y + a * x * y, format!("multiplicative(a={a})"))
    }

    /// `(x + y)/(1 + x·y)`, on `(-1, 1)`.
    pub fn hyperbolic() -> Self {
        Self::new(|x, y| (x + y) / (1.0 + x * y), "hyperbolic")
    }

    /// `e^{W[(x+1)ln(x+1) + (y+1)ln(y+1)]} - 1`, shared by the factorial and
    /// sub-factorial classes.
    pub fn factorial() -> Self {
        Self::new(
            |x, y| {
                let s = (x + 1.0) * x.ln_1p() + (y + 1.0) * y.ln_1p();
                lambert_w0(s).map(|w| w.exp() - 1.0).unwrap_or(f64::NAN)
            },
            "factorial",
        )
    }
}

/// `Φ(x,y) = g⁻¹[g(x + g⁻¹(0)) + g(y + g⁻¹(0))] - g⁻¹(0)` for class `g`.
///
/// Built-in classes get their closed forms; a custom class is checked for
/// invertibility first.
pub fn composition_law_for(class: &ComplexityClass) -> Result<CompositionLaw> {
    match class {
        ComplexityClass::Exponential { .. } => Ok(CompositionLaw::additive()),
        ComplexityClass::Factorial | ComplexityClass::SubFactorial { .. } => Ok(CompositionLaw::factorial()),
        ComplexityClass::Custom(_) => {
            class.check_invertible()?;
            let c = class.clone();
            let base = class.g_inverse(0.0)?;
            Ok(CompositionLaw::new(
                move |x, y| {
                    let gx = c.g_eval(x + base).unwrap_or(f64::NAN);
                    let gy = c.g_eval(y + base).unwrap_or(f64::NAN);
                    c.g_inverse(gx + gy).unwrap_or(f64::NAN) - base
                },
                format!("custom({})", class.label()),
            ))
        }
    }
}
