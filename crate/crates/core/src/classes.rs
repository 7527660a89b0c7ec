//! Permutation-complexity classes and the permutation entropies tailored to them.
//!
//! A class is a strictly increasing function `g` with `ln A_L ~ g(L)`, where
//! `A_L` counts allowed patterns of length `L`. The order-`L` entropy of class
//! `g` is `g⁻¹(R_α(p)) - g⁻¹(0)` (metric, `α > 0`) or `g⁻¹(ln A_L) - g⁻¹(0)`
//! (topological, `α = 0`); divided by `L` it tends to at most 1.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::census::{census, PatternDistribution};
use crate::entropy::{lambert_w0, renyi, Distribution};
use crate::error::{domain, invalid_arg, Result};
use crate::ordinal::{factorial, ln_factorial, MAX_PATTERN_LEN};
use crate::process::{generate, ProcessSpec};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// User-supplied class function with its inverse.
#[derive(Clone)]
pub struct CustomClass {
    g: RealFn,
    g_inv: RealFn,
    domain_min: f64,
    label: String,
}

#[derive(Clone)]
pub enum ComplexityClass {
    /// `g(t) = c·t`, deterministic (noiseless) processes.
    Exponential { c: f64 },
    /// `g(t) = t ln t`, forbidden-pattern-free processes.
    Factorial,
    /// `g(t) = c·t ln t` with `0 < c < 1`.
    SubFactorial { c: f64 },
    Custom(CustomClass),
}

impl fmt::Debug for ComplexityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl ComplexityClass {
    pub fn exponential(c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(invalid_arg(format!("exponential class needs c > 0, got {c}")));
        }
        Ok(Self::Exponential { c })
    }

    pub fn sub_factorial(c: f64) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return Err(invalid_arg(format!("sub-factorial class needs 0 < c < 1, got {c}")));
        }
        Ok(Self::SubFactorial { c })
    }

    /// A class from an arbitrary increasing `g` on `[domain_min, ∞)` and its inverse.
    pub fn custom(
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
        g_inv: impl Fn(f64) -> f64 + Send + Sync + 'static,
        domain_min: f64,
        label: impl Into<String>,
    ) -> Self {
        Self::Custom(CustomClass {
            g: Arc::new(g),
            g_inv: Arc::new(g_inv),
            domain_min,
            label: label.into(),
        })
    }

    pub fn label(&self) -> String {
        match self {
            Self::Exponential { c } => format!("exp(c={c})"),
            Self::Factorial => "fac".to_string(),
            Self::SubFactorial { c } => format!("sub(c={c})"),
            Self::Custom(cc) => cc.label.clone(),
        }
    }

    /// Left end of the domain of `g`; factorial-type classes use the
    /// increasing branch `t >= 1` of `t ln t`.
    pub fn domain_min(&self) -> f64 {
        match self {
            Self::Exponential { .. } => 0.0,
            Self::Factorial | Self::SubFactorial { .. } => 1.0,
            Self::Custom(cc) => cc.domain_min,
        }
    }

    pub fn g_eval(&self, t: f64) -> Result<f64> {
        if !(t >= self.domain_min()) {
            return Err(domain(format!("{}: t = {t} outside the domain of g", self.label())));
        }
        Ok(match self {
            Self::Exponential { c } => c * t,
            Self::Factorial => t * t.ln(),
            Self::SubFactorial { c } => c * t * t.ln(),
            Self::Custom(cc) => (cc.g)(t),
        })
    }

    pub fn g_inverse(&self, s: f64) -> Result<f64> {
        if !(s >= 0.0) {
            return Err(domain(format!("{}: g⁻¹ needs s >= 0, got {s}", self.label())));
        }
        let v = match self {
            Self::Exponential { c } => s / c,
            Self::Factorial => lambert_w0(s)?.exp(),
            Self::SubFactorial { c } => lambert_w0(s / c)?.exp(),
            Self::Custom(cc) => (cc.g_inv)(s),
        };
        if v.is_nan() {
            return Err(domain(format!("{}: g⁻¹({s}) undefined", self.label())));
        }
        Ok(v)
    }

    /// `g⁻¹(r) - g⁻¹(0)`, using the closed forms `r/c` and `e^{W(r/c)} - 1`.
    pub fn z_from_renyi(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            // round-off can make an entropy of a near-degenerate distribution -0.0
            if r > -1e-12 {
                return Ok(0.0);
            }
            return Err(domain(format!("entropy value {r} is negative")));
        }
        match self {
            Self::Exponential { c } => Ok(r / c),
            Self::Factorial => Ok(lambert_w0(r)?.exp_m1()),
            Self::SubFactorial { c } => Ok(lambert_w0(r / c)?.exp_m1()),
            Self::Custom(_) => Ok(self.g_inverse(r)? - self.g_inverse(0.0)?),
        }
    }

    /// Class-tailored metric entropy of a distribution.
    pub fn metric_entropy(&self, p: &Distribution, alpha: f64) -> Result<f64> {
        self.z_from_renyi(renyi(p, alpha)?)
    }

    /// Checks strict monotonicity of `g` and `g⁻¹(g(t)) = t` on a grid.
    pub fn check_invertible(&self) -> Result<()> {
        let t0 = self.domain_min();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=400 {
            let t = t0 + i as f64 * 0.125;
            let g = self.g_eval(t)?;
            if !(g > prev) {
                return Err(invalid_arg(format!("{}: g is not strictly increasing near t = {t}", self.label())));
            }
            prev = g;
            if g >= 0.0 {
                let back = self.g_inverse(g)?;
                if (back - t).abs() > 1e-10 * t.abs().max(1.0) {
                    return Err(invalid_arg(format!(
                        "{}: g⁻¹(g({t})) = {back}, g_inverse does not invert g",
                        self.label()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Pattern length and entropic index; `alpha = 0` selects the topological entropy.
#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct EntropyOrder {
    pub len: usize,
    pub alpha: f64,
}

impl EntropyOrder {
    pub fn new(len: usize, alpha: f64) -> Result<Self> {
        if !(2..=MAX_PATTERN_LEN).contains(&len) {
            return Err(invalid_arg(format!("pattern length {len} outside 2..={MAX_PATTERN_LEN}")));
        }
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(invalid_arg(format!("alpha must be >= 0, got {alpha}")));
        }
        Ok(Self { len, alpha })
    }

    pub fn is_topological(&self) -> bool {
        self.alpha == 0.0
    }

    /// Entropy of order `L` of a census taken at this length.
    pub fn evaluate(&self, d: &PatternDistribution, class: &ComplexityClass) -> Result<f64> {
        if d.length() != self.len {
            return Err(invalid_arg(format!(
                "distribution has L = {}, order expects {}",
                d.length(),
                self.len
            )));
        }
        if self.is_topological() {
            topological_perm_entropy(d.allowed_count() as u64, class)
        } else {
            metric_perm_entropy(d, class, self.alpha)
        }
    }
}

/// `g⁻¹(R_α(p)) - g⁻¹(0)` for the pattern distribution `p`.
pub fn metric_perm_entropy(p: &PatternDistribution, class: &ComplexityClass, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(invalid_arg(format!("metric entropy needs alpha > 0, got {alpha}")));
    }
    class.metric_entropy(&p.to_distribution(), alpha)
}

/// `g⁻¹(ln A) - g⁻¹(0)` for `A` allowed patterns.
pub fn topological_perm_entropy(allowed_count: u64, class: &ComplexityClass) -> Result<f64> {
    if allowed_count < 1 {
        return Err(invalid_arg("allowed pattern count must be at least 1"));
    }
    class.z_from_renyi((allowed_count as f64).ln())
}

/// Order-`L` entropy per symbol, averaged over realizations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatePoint {
    pub len: usize,
    pub mean_entropy: f64,
    pub mean_rate: f64,
    pub std_rate: f64,
}

/// Finite-`L` sequence of `Z(L)/L`. No limit is extrapolated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateEstimate {
    pub class: String,
    pub alpha: f64,
    pub series_len: usize,
    pub realizations: usize,
    pub points: Vec<RatePoint>,
    pub warnings: Vec<String>,
}

impl RateEstimate {
    /// Value at the largest `L`.
    pub fn final_value(&self) -> f64 {
        self.points.last().map_or(f64::NAN, |p| p.mean_rate)
    }

    pub fn rates(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.mean_rate).collect()
    }
}

/// `Z_{g,α}(L)/L` for each requested `L`, averaged over `realizations`
/// independent series of `spec`. Realization `r` uses seed `seed + r`.
pub fn entropy_rate(
    spec: &ProcessSpec,
    class: &ComplexityClass,
    alpha: f64,
    lens: &[usize],
    realizations: usize,
    seed: u64,
) -> Result<RateEstimate> {
    if lens.is_empty() {
        return Err(invalid_arg("no pattern lengths requested"));
    }
    if realizations == 0 {
        return Err(invalid_arg("need at least one realization"));
    }
    let orders = lens
        .iter()
        .map(|&l| EntropyOrder::new(l, alpha))
        .collect::<Result<Vec<_>>>()?;
    if let Some(&l) = lens.iter().find(|&&l| l > spec.len) {
        return Err(invalid_arg(format!("series length {} shorter than L = {l}", spec.len)));
    }
    spec.validate()?;

    let mut warnings = Vec::new();
    for &l in lens {
        let windows = (spec.len - l + 1) as u128;
        if l <= 12 && windows < 10 * factorial(l) as u128 {
            warnings.push(format!(
                "L = {l}: {windows} windows < 10·L! = {}; pattern frequencies are undersampled",
                10 * factorial(l)
            ));
        }
    }

    // per realization: Z(L) for each L
    let per_run: Vec<Vec<f64>> = (0..realizations)
        .into_par_iter()
        .map(|r| -> Result<Vec<f64>> {
            let ts = generate(&spec.clone().with_seed(seed.wrapping_add(r as u64)))?;
            orders
                .iter()
                .map(|o| o.evaluate(&census(&ts, o.len)?, class))
                .collect()
        })
        .collect::<Result<_>>()?;

    let n = realizations as f64;
    let points = orders
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let zs: Vec<f64> = per_run.iter().map(|run| run[i]).collect();
            let l = o.len as f64;
            let mean_z = zs.iter().sum::<f64>() / n;
            let mean_rate = mean_z / l;
            let var = if realizations > 1 {
                zs.iter().map(|z| (z / l - mean_rate).powi(2)).sum::<f64>() / (n - 1.0)
            } else {
                0.0
            };
            RatePoint {
                len: o.len,
                mean_entropy: mean_z,
                mean_rate,
                std_rate: var.sqrt(),
            }
        })
        .collect();

    Ok(RateEstimate {
        class: class.label(),
        alpha,
        series_len: spec.len,
        realizations,
        points,
        warnings,
    })
}

/// Upper bound `(g⁻¹(ln L!) - g⁻¹(0))/L` of any order-`L` rate in class `g`.
pub fn rate_upper_bound(len: usize, class: &ComplexityClass) -> Result<f64> {
    Ok(class.z_from_renyi(ln_factorial(len))? / len as f64)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GrowthModel {
    /// `ln A_L = c·L`
    Linear,
    /// `ln A_L = c·L ln L`
    LinLog,
    /// `ln A_L = c·ln L!`, the finite-`L` form of `L ln L`
    LnFactorial,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct ModelFit {
    pub model: GrowthModel,
    pub c: f64,
    pub rss: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub enum GrowthClass {
    Exponential { c: f64 },
    Factorial { c: f64 },
    SubFactorial { c: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthFit {
    pub class: GrowthClass,
    pub best: GrowthModel,
    pub fits: Vec<ModelFit>,
}

fn regressor(model: GrowthModel, l: f64) -> f64 {
    match model {
        GrowthModel::Linear => l,
        GrowthModel::LinLog => l * l.ln(),
        GrowthModel::LnFactorial => ln_factorial(l as usize),
    }
}

/// Least-squares fit of `ln A_L` against `cL`, `cL ln L` and `c ln L!`
/// (all through the origin); the smallest residual sum of squares wins, ties
/// going to the simpler model.
///
/// Factorial is reported when a factorial-type model wins with `ĉ >= 0.9`,
/// sub-factorial when `0 < ĉ < 0.9` for the `cL ln L` fit.
pub fn classify_growth(points: &[(usize, f64)]) -> Result<GrowthFit> {
    let mut lens: Vec<usize> = points.iter().map(|p| p.0).collect();
    lens.sort_unstable();
    lens.dedup();
    if lens.len() < 3 {
        return Err(invalid_arg("growth classification needs at least 3 distinct L values"));
    }
    if points.iter().any(|&(l, y)| l < 2 || !y.is_finite()) {
        return Err(invalid_arg("growth points need L >= 2 and finite ln A_L"));
    }

    let fits: Vec<ModelFit> = [GrowthModel::Linear, GrowthModel::LinLog, GrowthModel::LnFactorial]
        .into_iter()
        .map(|model| {
            let (sxy, sxx) = points.iter().fold((0.0, 0.0), |(sxy, sxx), &(l, y)| {
                let x = regressor(model, l as f64);
                (sxy + x * y, sxx + x * x)
            });
            let c = sxy / sxx;
            let rss = points
                .iter()
                .map(|&(l, y)| (y - c * regressor(model, l as f64)).powi(2))
                .sum();
            ModelFit { model, c, rss }
        })
        .collect();

    let scale: f64 = points.iter().map(|p| p.1 * p.1).sum::<f64>().max(1.0);
    let best = fits
        .iter()
        .copied()
        .reduce(|a, b| if b.rss < a.rss - 1e-12 * scale { b } else { a })
        .expect("three models");
    let linlog_c = fits[1].c;
    let class = match best.model {
        GrowthModel::Linear => GrowthClass::Exponential { c: best.c },
        _ if best.c >= 0.9 => GrowthClass::Factorial { c: best.c },
        _ if linlog_c > 0.0 => GrowthClass::SubFactorial { c: linlog_c },
        _ => GrowthClass::Exponential { c: fits[0].c },
    };
    Ok(GrowthFit {
        class,
        best: best.model,
        fits,
    })
}

/// `(L, ln A_L)` pairs counted from a series, ready for [`classify_growth`].
pub fn growth_points(ts: &crate::ordinal::TimeSeries, lens: &[usize]) -> Result<Vec<(usize, f64)>> {
    lens.iter()
        .map(|&l| Ok((l, (census(ts, l)?.allowed_count() as f64).ln())))
        .collect()
}
