//! Generalized entropies of discrete distributions.
//!
//! Conventions used throughout: `0·ln 0 = 0` and `0^α = 0`, so zero-probability
//! entries never change a value. Parameters within `1e-9` of `α = 1` are routed
//! to the Shannon limit instead of evaluating `1/(1-α)`.

mod composition;
mod group_log;
mod lambert;

pub use composition::{composition_law_for, CompositionLaw};
pub use group_log::{q_exp, q_log, GroupLogarithm};
pub use lambert::{lambert_w0, EXP_NEG1};

use crate::error::{invalid_arg, Result};

pub(crate) const ALPHA_ONE_WINDOW: f64 = 1e-9;

/// A validated probability vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(invalid_arg("distribution must have at least one entry"));
        }
        if let Some(p) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(invalid_arg(format!("probability {p} outside [0,1]")));
        }
        let sum: f64 = probs.iter().sum();
        let tol = 1e-12 + probs.len() as f64 * f64::EPSILON;
        if (sum - 1.0).abs() > tol {
            return Err(invalid_arg(format!("probabilities sum to {sum}, not 1")));
        }
        Ok(Self { probs })
    }

    /// Normalizes non-negative weights.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(invalid_arg("weights must be finite and non-negative"));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(invalid_arg("weights sum to zero"));
        }
        Self::new(weights.iter().map(|w| w / total).collect())
    }

    pub fn uniform(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(invalid_arg("uniform distribution needs at least one outcome"));
        }
        Ok(Self {
            probs: vec![1.0 / size as f64; size],
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Number of strictly positive entries.
    pub fn support_size(&self) -> usize {
        self.probs.iter().filter(|&&p| p > 0.0).count()
    }

    /// The joint distribution of two independent variables, row-major.
    pub fn product(&self, other: &Distribution) -> Distribution {
        let probs = self
            .probs
            .iter()
            .flat_map(|&p| other.probs.iter().map(move |&q| p * q))
            .collect();
        Distribution { probs }
    }

    /// Copy with one extra zero-probability outcome.
    pub fn expanded(&self) -> Distribution {
        let mut probs = self.probs.clone();
        probs.push(0.0);
        Distribution { probs }
    }

    /// `Σ p_i^α` over positive entries.
    pub fn power_sum(&self, alpha: f64) -> f64 {
        self.probs
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p.powf(alpha))
            .sum()
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(invalid_arg(format!("alpha must be positive, got {alpha}")));
    }
    Ok(())
}

pub(crate) fn near_one(alpha: f64) -> bool {
    (alpha - 1.0).abs() < ALPHA_ONE_WINDOW
}

/// Boltzmann–Gibbs–Shannon entropy in nats.
pub fn shannon(p: &Distribution) -> f64 {
    -p.probs
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.ln())
        .sum::<f64>()
}

/// Rényi entropy `ln(Σ p^α)/(1-α)`; Shannon at `α = 1`.
pub fn renyi(p: &Distribution, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if near_one(alpha) {
        return Ok(shannon(p));
    }
    Ok(p.power_sum(alpha).ln() / (1.0 - alpha))
}

/// Tsallis entropy `(Σ p^α - 1)/(1-α)`; Shannon at `α = 1`.
pub fn tsallis(p: &Distribution, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if near_one(alpha) {
        return Ok(shannon(p));
    }
    Ok((p.power_sum(alpha) - 1.0) / (1.0 - alpha))
}

/// Two-parameter entropy `β((Σ p^α)^{1/(β(1-α))} - 1)`, the Z-entropy of the
/// growth function `W(N) = N^β`. Tsallis is the case `β = 1/(1-α)`.
pub fn two_param_entropy(p: &Distribution, alpha: f64, beta: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if near_one(alpha) {
        return Err(invalid_arg("two-parameter entropy is undefined at alpha = 1"));
    }
    if beta == 0.0 || !beta.is_finite() {
        return Err(invalid_arg("beta must be finite and non-zero"));
    }
    let s = p.power_sum(alpha);
    Ok(beta * (s.powf(1.0 / (beta * (1.0 - alpha))) - 1.0))
}

/// `Z_{a,b}` entropy `[(Σp^α)^a - (Σp^α)^b] / ((a-b)(1-α))` for `0 < α < 1`.
/// `b = 0` gives Sharma–Mittal.
pub fn z_ab_entropy(p: &Distribution, alpha: f64, a: f64, b: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(invalid_arg(format!("alpha must lie in (0,1), got {alpha}")));
    }
    if a == b {
        return Err(invalid_arg("a and b must differ"));
    }
    if !(a > 0.0 || b > 0.0) {
        return Err(invalid_arg("at least one of a, b must be positive"));
    }
    let s = p.power_sum(alpha);
    Ok((s.powf(a) - s.powf(b)) / ((a - b) * (1.0 - alpha)))
}

/// Generic Z-entropy `log_G(Σ p^α)/(1-α)`.
pub fn z_entropy_general(p: &Distribution, g: &GroupLogarithm, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if near_one(alpha) {
        return Err(invalid_arg(
            "alpha = 1 has no generic Z-entropy form; use a class-specific limit",
        ));
    }
    Ok(g.log(p.power_sum(alpha))? / (1.0 - alpha))
}

/// Relative Z-entropy `log_G[(Σ p^α q^{1-α})^{1/(α-1)}]`.
///
/// Evaluated exactly as written. With `G` the identity this is the Rényi
/// divergence `D_α(p‖q)`, which is non-negative; other `G` inherit the sign
/// of `G` on the argument.
pub fn relative_z(p: &Distribution, q: &Distribution, g: &GroupLogarithm, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if near_one(alpha) {
        return Err(invalid_arg("relative Z-entropy requires alpha != 1"));
    }
    if p.len() != q.len() {
        return Err(invalid_arg(format!(
            "length mismatch: {} vs {}",
            p.len(),
            q.len()
        )));
    }
    if p.probs.iter().chain(&q.probs).any(|&x| x <= 0.0) {
        return Err(invalid_arg("relative Z-entropy requires strictly positive entries"));
    }
    let s: f64 = p
        .probs
        .iter()
        .zip(&q.probs)
        .map(|(&pi, &qi)| pi.powf(alpha) * qi.powf(1.0 - alpha))
        .sum();
    // log_G(s^{1/(α-1)}) = G(ln s / (α-1))
    g.apply(s.ln() / (alpha - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_dist(rng: &mut impl Rng, n: usize) -> Distribution {
        let w: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 1e-3).collect();
        Distribution::from_weights(&w).unwrap()
    }

    #[test]
    fn distribution_validation() {
        assert!(Distribution::new(vec![0.5, 0.4]).is_err());
        assert!(Distribution::new(vec![1.2, -0.2]).is_err());
        assert!(Distribution::new(vec![]).is_err());
        assert!(Distribution::new(vec![1.0]).is_ok());
    }

    #[test]
    fn shannon_values() {
        let u = Distribution::uniform(5).unwrap();
        assert!((shannon(&u) - 5f64.ln()).abs() < 1e-15);
        let d = Distribution::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(shannon(&d), 0.0);
        let p = Distribution::new(vec![0.5, 0.1, 0.4]).unwrap();
        // Oracle: term-by-term with log2 then converted, summed in reverse.
        let oracle: f64 = [0.4f64, 0.1, 0.5]
            .iter()
            .map(|&x| -x * x.log2() * std::f64::consts::LN_2)
            .sum();
        assert!((shannon(&p) - oracle).abs() < 1e-14);
        assert!((shannon(&p) - 0.9433).abs() < 5e-5);
    }

    #[test]
    fn renyi_values_and_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for w in [2usize, 5, 17] {
            let u = Distribution::uniform(w).unwrap();
            for a in [0.3, 0.5, 2.0, 7.0] {
                assert!((renyi(&u, a).unwrap() - (w as f64).ln()).abs() < 1e-12);
            }
        }
        let coin = Distribution::new(vec![0.5, 0.5]).unwrap();
        assert!((renyi(&coin, 2.0).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!(renyi(&coin, 0.0).is_err());
        assert!(renyi(&coin, -1.0).is_err());
        for _ in 0..20 {
            let p = random_dist(&mut rng, 6);
            let h = shannon(&p);
            // just outside the routing window so the power-sum path is exercised
            for a in [1.0 + 2e-8, 1.0 - 2e-8] {
                assert!((renyi(&p, a).unwrap() - h).abs() < 1e-6);
                assert!((tsallis(&p, a).unwrap() - h).abs() < 1e-6);
            }
            assert_eq!(renyi(&p, 1.0 + 1e-10).unwrap(), h);
        }
    }

    #[test]
    fn tsallis_values() {
        let d = Distribution::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(tsallis(&d, 0.7).unwrap(), 0.0);
        for w in [2usize, 3, 10] {
            let u = Distribution::uniform(w).unwrap();
            assert!((tsallis(&u, 2.0).unwrap() - (1.0 - 1.0 / w as f64)).abs() < 1e-14);
        }
    }

    #[test]
    fn two_param_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let p = random_dist(&mut rng, 5);
            let a = 0.5;
            let t = tsallis(&p, a).unwrap();
            let z = two_param_entropy(&p, a, 1.0 / (1.0 - a)).unwrap();
            assert!((t - z).abs() < 1e-10);
        }
        let d = Distribution::new(vec![1.0, 0.0]).unwrap();
        assert_eq!(two_param_entropy(&d, 0.3, 2.0).unwrap(), 0.0);
        let u4 = Distribution::uniform(4).unwrap();
        // Σp² = 1/4, exponent 1/(2·(1-2)) = -1/2, (1/4)^{-1/2} = 2
        assert!((two_param_entropy(&u4, 2.0, 2.0).unwrap() - 2.0).abs() < 1e-14);
        assert!(two_param_entropy(&u4, 1.0, 2.0).is_err());
        assert!(two_param_entropy(&u4, 0.5, 0.0).is_err());
    }

    #[test]
    fn z_ab_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = random_dist(&mut rng, 7);
        let alpha = 0.4;
        let s = p.power_sum(alpha);
        let sharma_mittal = (s.powf(1.7) - 1.0) / (1.7 * (1.0 - alpha));
        assert!((z_ab_entropy(&p, alpha, 1.7, 0.0).unwrap() - sharma_mittal).abs() < 1e-14);

        let d = Distribution::new(vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(z_ab_entropy(&d, 0.5, 2.0, 0.5).unwrap(), 0.0);

        let t = tsallis(&p, 0.5).unwrap();
        let z = z_ab_entropy(&p, 0.5, 1.0 + 1e-6, 1e-6).unwrap();
        assert!((z - t).abs() < 1e-4);

        assert!(z_ab_entropy(&p, 0.5, 1.0, 1.0).is_err());
        assert!(z_ab_entropy(&p, 1.0, 1.0, 0.0).is_err());
        assert!(z_ab_entropy(&p, 0.5, -1.0, -2.0).is_err());
    }

    #[test]
    fn z_general_identity_is_renyi() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let id = GroupLogarithm::identity();
        for _ in 0..20 {
            let p = random_dist(&mut rng, 4);
            for a in [0.5, 2.0, 3.5] {
                let z = z_entropy_general(&p, &id, a).unwrap();
                assert!((z - renyi(&p, a).unwrap()).abs() < 1e-13);
            }
        }
        let d = Distribution::new(vec![1.0]).unwrap();
        assert_eq!(z_entropy_general(&d, &GroupLogarithm::q_log(0.4).unwrap(), 2.0).unwrap(), 0.0);
        assert!(z_entropy_general(&d, &id, 1.0).is_err());
    }

    #[test]
    fn z_general_power_growth_matches_two_param() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (alpha, beta) = (0.5, 2.0);
        let g = GroupLogarithm::from_growth(
            move |x: f64| x.powf(beta),
            move |s: f64| s.powf(1.0 / beta),
            alpha,
        )
        .unwrap();
        for _ in 0..20 {
            let p = random_dist(&mut rng, 6);
            let z = z_entropy_general(&p, &g, alpha).unwrap();
            // λ = 1/(W⁻¹)'(1) = β is the dropped normalization
            let two = two_param_entropy(&p, alpha, beta).unwrap();
            assert!((beta * z - two).abs() < 1e-12, "{z} {two}");
        }
    }

    // Independent Rényi divergence evaluator: Σ q (p/q)^α.
    fn renyi_divergence(p: &[f64], q: &[f64], alpha: f64) -> f64 {
        let s: f64 = p.iter().zip(q).map(|(pi, qi)| qi * (pi / qi).powf(alpha)).sum();
        s.ln() / (alpha - 1.0)
    }

    #[test]
    fn relative_z_values() {
        let id = GroupLogarithm::identity();
        let p = Distribution::new(vec![0.5, 0.5]).unwrap();
        let q = Distribution::new(vec![0.9, 0.1]).unwrap();
        let v = relative_z(&p, &q, &id, 2.0).unwrap();
        // Σ p²/q = 0.25/0.9 + 0.25/0.1 = 25/9
        assert!((v - (25.0f64 / 9.0).ln()).abs() < 1e-14);
        assert!((v - 1.0217).abs() < 1e-4);
        assert!(relative_z(&p, &p, &id, 0.5).unwrap().abs() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let p = random_dist(&mut rng, 5);
            let q = random_dist(&mut rng, 5);
            for a in [0.3, 2.5] {
                let v = relative_z(&p, &q, &id, a).unwrap();
                assert!((v - renyi_divergence(p.probs(), q.probs(), a)).abs() < 1e-12);
                assert!(v >= 0.0);
            }
        }
    }

    #[test]
    fn relative_z_errors() {
        let id = GroupLogarithm::identity();
        let p = Distribution::new(vec![0.5, 0.5]).unwrap();
        let q3 = Distribution::uniform(3).unwrap();
        let z = Distribution::new(vec![1.0, 0.0]).unwrap();
        assert!(relative_z(&p, &q3, &id, 2.0).is_err());
        assert!(relative_z(&p, &z, &id, 2.0).is_err());
        assert!(relative_z(&p, &p, &id, 1.0).is_err());
    }

    #[test]
    fn renyi_additivity_and_monotonicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let p = random_dist(&mut rng, 3);
            let q = random_dist(&mut rng, 4);
            let pq = p.product(&q);
            for a in [0.25, 0.5, 1.0, 2.0, 4.0] {
                let lhs = renyi(&pq, a).unwrap();
                let rhs = renyi(&p, a).unwrap() + renyi(&q, a).unwrap();
                assert!((lhs - rhs).abs() < 1e-10);
            }
            let vals: Vec<f64> = [0.25, 0.5, 1.0, 2.0, 4.0]
                .iter()
                .map(|&a| renyi(&pq, a).unwrap())
                .collect();
            assert!(vals.windows(2).all(|w| w[0] >= w[1] - 1e-12));
        }
    }

    #[test]
    fn uniform_is_maximal() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let w = 6;
        let u = Distribution::uniform(w).unwrap();
        let q = GroupLogarithm::q_log(0.7).unwrap();
        type F = Box<dyn Fn(&Distribution) -> f64>;
        let family: Vec<F> = vec![
            Box::new(shannon),
            Box::new(|p| renyi(p, 0.5).unwrap()),
            Box::new(|p| renyi(p, 3.0).unwrap()),
            Box::new(|p| tsallis(p, 2.0).unwrap()),
            Box::new(|p| two_param_entropy(p, 0.5, 3.0).unwrap()),
            Box::new(|p| z_ab_entropy(p, 0.5, 2.0, 0.5).unwrap()),
            Box::new(move |p| z_entropy_general(p, &q, 0.5).unwrap()),
        ];
        for _ in 0..100 {
            let noise: Vec<f64> = (0..w).map(|_| 1.0 + 0.5 * (rng.random::<f64>() - 0.5)).collect();
            let p = Distribution::from_weights(&noise).unwrap();
            for f in &family {
                assert!(f(&u) >= f(&p) - 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn expansibility(weights in proptest::collection::vec(0.01f64..1.0, 1..8), alpha in 0.1f64..0.95) {
            let p = Distribution::from_weights(&weights).unwrap();
            let e = p.expanded();
            prop_assert!((shannon(&p) - shannon(&e)).abs() < 1e-12);
            prop_assert!((renyi(&p, alpha).unwrap() - renyi(&e, alpha).unwrap()).abs() < 1e-12);
            prop_assert!((tsallis(&p, alpha).unwrap() - tsallis(&e, alpha).unwrap()).abs() < 1e-12);
            prop_assert!((two_param_entropy(&p, alpha, 1.5).unwrap() - two_param_entropy(&e, alpha, 1.5).unwrap()).abs() < 1e-12);
            prop_assert!((z_ab_entropy(&p, alpha, 2.0, 0.0).unwrap() - z_ab_entropy(&e, alpha, 2.0, 0.0).unwrap()).abs() < 1e-12);
        }
    }
}
