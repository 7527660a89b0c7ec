use std::fmt;
use std::sync::Arc;

use super::near_one;
use crate::error::{domain, invalid_arg, Result};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A group logarithm `log_G(x) = G(ln x)` together with its exponential
/// `exp_G(y) = e^{G⁻¹(y)}`.
#[derive(Clone)]
pub struct GroupLogarithm {
    g: RealFn,
    g_inv: RealFn,
    label: String,
}

impl fmt::Debug for GroupLogarithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupLogarithm").field("label", &self.label).finish()
    }
}

impl GroupLogarithm {
    pub fn custom(
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
        g_inv: impl Fn(f64) -> f64 + Send + Sync + 'static,
        label: impl Into<String>,
    ) -> Self {
        Self {
            g: Arc::new(g),
            g_inv: Arc::new(g_inv),
            label: label.into(),
        }
    }

    /// `G(t) = t`: the natural logarithm.
    pub fn identity() -> Self {
        Self::custom(|t| t, |s| s, "ln")
    }

    /// Tsallis q-logarithm, `G(t) = (e^{(1-q)t} - 1)/(1-q)`.
    pub fn q_log(q: f64) -> Result<Self> {
        if !(q.is_finite() && q > 0.0) {
            return Err(invalid_arg(format!("q must be positive, got {q}")));
        }
        if near_one(q) {
            return Ok(Self::identity());
        }
        let k = 1.0 - q;
        Ok(Self::custom(
            move |t| (k * t).exp_m1() / k,
            move |s| (k * s).ln_1p() / k,
            format!("q-log(q={q})"),
        ))
    }

    /// The group logarithm induced by a state-space growth function `W`
    /// at entropic index `alpha`, without the `λ` normalization:
    /// `G(t) = (1-α)(W⁻¹(e^{t/(1-α)}) - W⁻¹(1))`.
    pub fn from_growth(
        w: impl Fn(f64) -> f64 + Send + Sync + 'static,
        w_inv: impl Fn(f64) -> f64 + Send + Sync + 'static,
        alpha: f64,
    ) -> Result<Self> {
        if !(alpha > 0.0) || near_one(alpha) {
            return Err(invalid_arg("growth-induced group logarithm needs alpha > 0, alpha != 1"));
        }
        let k = 1.0 - alpha;
        let w = Arc::new(w);
        let w_inv = Arc::new(w_inv);
        let w_inv_one = w_inv(1.0);
        let wi = Arc::clone(&w_inv);
        Ok(Self::custom(
            move |t| k * (wi((t / k).exp()) - w_inv_one),
            move |s| k * w(s / k + w_inv_one).ln(),
            format!("growth(alpha={alpha})"),
        ))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `G(t)`.
    pub fn apply(&self, t: f64) -> Result<f64> {
        let v = (self.g)(t);
        if v.is_nan() {
            return Err(domain(format!("{}: G({t}) undefined", self.label)));
        }
        Ok(v)
    }

    /// `G⁻¹(s)`.
    pub fn inverse(&self, s: f64) -> Result<f64> {
        let v = (self.g_inv)(s);
        if v.is_nan() {
            return Err(domain(format!("{}: G⁻¹({s}) undefined", self.label)));
        }
        Ok(v)
    }

    /// `log_G(x) = G(ln x)` for `x > 0`.
    pub fn log(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(domain(format!("group logarithm of non-positive {x}")));
        }
        self.apply(x.ln())
    }

    /// `exp_G(y) = e^{G⁻¹(y)}`.
    pub fn exp(&self, y: f64) -> Result<f64> {
        Ok(self.inverse(y)?.exp())
    }
}

/// `(x^{1-q} - 1)/(1-q)`, the natural log at `q = 1`.
pub fn q_log(x: f64, q: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(invalid_arg(format!("q must be positive, got {q}")));
    }
    if !(x > 0.0) {
        return Err(domain(format!("q-log of non-positive {x}")));
    }
    if near_one(q) {
        return Ok(x.ln());
    }
    let k = 1.0 - q;
    Ok((k * x.ln()).exp_m1() / k)
}

/// `[1 + (1-q)x]_+^{1/(1-q)}`, the natural exponential at `q = 1`.
pub fn q_exp(x: f64, q: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(invalid_arg(format!("q must be positive, got {q}")));
    }
    if near_one(q) {
        return Ok(x.exp());
    }
    let k = 1.0 - q;
    let base = 1.0 + k * x;
    if base <= 0.0 {
        // cut-off: 0 for q < 1, divergence for q > 1
        return Ok(if k > 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok(((k * x).ln_1p() / k).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn q_log_values() {
        for q in [0.2, 0.5, 1.0, 1.7, 3.0] {
            assert_eq!(q_log(1.0, q).unwrap(), 0.0);
        }
        assert!((q_log(4.0, 0.5).unwrap() - 2.0).abs() < 1e-15);
        for x in [0.1, 2.0, 50.0] {
            assert!((q_log(x, 1.0 + 1e-8).unwrap() - x.ln()).abs() < 1e-6);
            assert!((q_log(x, 1.0 - 1e-8).unwrap() - x.ln()).abs() < 1e-6);
        }
        assert!(q_log(0.0, 0.5).is_err());
        assert!(q_log(-1.0, 0.5).is_err());
        assert!(q_log(1.0, 0.0).is_err());
    }

    #[test]
    fn q_exp_cutoff() {
        assert_eq!(q_exp(-10.0, 0.5).unwrap(), 0.0);
        assert_eq!(q_exp(10.0, 2.0).unwrap(), f64::INFINITY);
        assert!((q_exp(1.0, 1.0).unwrap() - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn group_log_basics() {
        for g in [
            GroupLogarithm::identity(),
            GroupLogarithm::q_log(0.3).unwrap(),
            GroupLogarithm::q_log(2.5).unwrap(),
        ] {
            assert_eq!(g.log(1.0).unwrap(), 0.0);
            let mut prev = f64::NEG_INFINITY;
            for i in 1..2000 {
                let x = i as f64 * 0.05;
                let v = g.log(x).unwrap();
                assert!(v > prev, "{} not increasing at {x}", g.label());
                prev = v;
            }
            for i in -40..=40 {
                let t = i as f64 * 0.1;
                assert!((g.inverse(g.apply(t).unwrap()).unwrap() - t).abs() < 1e-10);
            }
        }
        assert!(GroupLogarithm::identity().log(0.0).is_err());
        assert!(GroupLogarithm::q_log(-1.0).is_err());
    }

    proptest! {
        #[test]
        fn exp_log_round_trip(x in 1e-6f64..1e3, q in 0.1f64..0.99) {
            for g in [GroupLogarithm::identity(), GroupLogarithm::q_log(q).unwrap()] {
                let y = g.exp(g.log(x).unwrap()).unwrap();
                prop_assert!((y - x).abs() <= 1e-10 * x.max(1.0));
            }
            let via_fn = q_exp(q_log(x, q).unwrap(), q).unwrap();
            prop_assert!((via_fn - x).abs() <= 1e-10 * x.max(1.0));
        }
    }
}
