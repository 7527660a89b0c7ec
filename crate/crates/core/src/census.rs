//! Pattern counting: empirical distributions, missing patterns, transition
//! matrices and the finite permutation-complexity function `g(L,T)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::entropy::Distribution;
use crate::error::{invalid_arg, Result};
use crate::ordinal::{factorial, ln_factorial, sliding_codes, PatternCode, TimeSeries, WindowEncoder};
use crate::process::{generate, ProcessSpec};

/// Largest `L` whose counts are kept in a dense `L!` array.
pub const DENSE_MAX_LEN: usize = 10;

#[derive(Clone, Debug, PartialEq)]
enum Counts {
    Dense(Vec<u64>),
    Sparse(HashMap<u64, u64>),
}

/// Counts of ordinal patterns of one length.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternDistribution {
    length: usize,
    counts: Counts,
    total: u64,
}

impl PatternDistribution {
    pub fn from_codes(length: usize, codes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut counts = if length <= DENSE_MAX_LEN {
            Counts::Dense(vec![0; factorial(length) as usize])
        } else {
            Counts::Sparse(HashMap::new())
        };
        let mut total = 0u64;
        for c in codes {
            match &mut counts {
                Counts::Dense(v) => v[c as usize] += 1,
                Counts::Sparse(m) => *m.entry(c).or_insert(0) += 1,
            }
            total += 1;
        }
        if total == 0 {
            return Err(invalid_arg("no windows to count"));
        }
        Ok(Self { length, counts, total })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, code: PatternCode) -> u64 {
        match &self.counts {
            Counts::Dense(v) => v.get(code.code() as usize).copied().unwrap_or(0),
            Counts::Sparse(m) => m.get(&code.code()).copied().unwrap_or(0),
        }
    }

    pub fn probability(&self, code: PatternCode) -> f64 {
        self.count(code) as f64 / self.total as f64
    }

    /// Number of patterns observed at least once.
    pub fn allowed_count(&self) -> usize {
        match &self.counts {
            Counts::Dense(v) => v.iter().filter(|&&c| c > 0).count(),
            Counts::Sparse(m) => m.len(),
        }
    }

    /// Observed patterns with their counts, ordered by code.
    pub fn observed(&self) -> Vec<(PatternCode, u64)> {
        let mut out: Vec<(PatternCode, u64)> = match &self.counts {
            Counts::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| (PatternCode::new_unchecked(i as u64, self.length), c))
                .collect(),
            Counts::Sparse(m) => m
                .iter()
                .map(|(&k, &c)| (PatternCode::new_unchecked(k, self.length), c))
                .collect(),
        };
        out.sort_unstable_by_key(|(code, _)| *code);
        out
    }

    /// Probabilities of observed patterns, ordered by code.
    pub fn probs(&self) -> Vec<(PatternCode, f64)> {
        let n = self.total as f64;
        self.observed()
            .into_iter()
            .map(|(c, k)| (c, k as f64 / n))
            .collect()
    }

    /// Observed probabilities as an entropy input; unobserved patterns are
    /// omitted, which no entropy distinguishes from explicit zeros.
    pub fn to_distribution(&self) -> Distribution {
        let probs: Vec<f64> = self.probs().into_iter().map(|(_, p)| p).collect();
        Distribution::new(probs).expect("census frequencies form a distribution")
    }

    /// Codes never observed. A missing pattern is not necessarily forbidden:
    /// it may simply not have shown up in a finite sample.
    pub fn missing(&self) -> impl Iterator<Item = PatternCode> + '_ {
        (0..factorial(self.length))
            .map(move |c| PatternCode::new_unchecked(c, self.length))
            .filter(move |&c| self.count(c) == 0)
    }
}

/// Counts of every step-1 window of length `len`.
pub fn census(ts: &TimeSeries, len: usize) -> Result<PatternDistribution> {
    let codes = sliding_codes(ts.samples(), len)?;
    PatternDistribution::from_codes(len, codes)
}

/// All patterns with zero count.
pub fn forbidden_patterns(d: &PatternDistribution) -> BTreeSet<PatternCode> {
    d.missing().collect()
}

/// Empirical `p(r' | r)` over consecutive windows.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMatrix {
    length: usize,
    rows: BTreeMap<u64, BTreeMap<u64, f64>>,
}

impl TransitionMatrix {
    pub(crate) fn from_rows(length: usize, rows: BTreeMap<u64, BTreeMap<u64, f64>>) -> Self {
        Self { length, rows }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Conditional probability of `to` following `from`; zero for unseen pairs.
    pub fn get(&self, from: PatternCode, to: PatternCode) -> f64 {
        self.rows
            .get(&from.code())
            .and_then(|r| r.get(&to.code()))
            .copied()
            .unwrap_or(0.0)
    }

    /// Non-zero entries of the row of `from`, ordered by code.
    pub fn row(&self, from: PatternCode) -> Vec<(PatternCode, f64)> {
        self.rows
            .get(&from.code())
            .map(|r| {
                r.iter()
                    .map(|(&k, &p)| (PatternCode::new_unchecked(k, self.length), p))
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Codes that have a row.
    pub fn sources(&self) -> Vec<PatternCode> {
        self.rows
            .keys()
            .map(|&k| PatternCode::new_unchecked(k, self.length))
            .collect()
    }
}

pub fn transition_matrix(ts: &TimeSeries, len: usize) -> Result<TransitionMatrix> {
    if ts.len() < len + 1 {
        return Err(invalid_arg(format!(
            "transition matrix needs at least L+1 = {} samples, got {}",
            len + 1,
            ts.len()
        )));
    }
    let codes = sliding_codes(ts.samples(), len)?;
    let mut counts: BTreeMap<u64, BTreeMap<u64, u64>> = BTreeMap::new();
    for w in codes.windows(2) {
        *counts.entry(w[0]).or_default().entry(w[1]).or_insert(0) += 1;
    }
    let rows = counts
        .into_iter()
        .map(|(from, row)| {
            let n: u64 = row.values().sum();
            let probs = row.into_iter().map(|(to, k)| (to, k as f64 / n as f64)).collect();
            (from, probs)
        })
        .collect();
    Ok(TransitionMatrix { length: len, rows })
}

/// Averaged finite permutation-complexity function over a grid of lengths.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusCurve {
    pub length: usize,
    pub t_grid: Vec<usize>,
    pub mean: Vec<f64>,
    pub stddev: Vec<f64>,
    /// `ln(#distinct patterns)` per realization and grid point.
    pub runs: Vec<Vec<f64>>,
}

impl CensusCurve {
    /// `ln L!`, the value every forbidden-pattern-free process approaches.
    pub fn ceiling(&self) -> f64 {
        ln_factorial(self.length)
    }
}

/// When a realization may stop scanning before the end of the grid.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct StopRule {
    /// Stop once the distinct-pattern count has not changed over this fraction
    /// of the grid points. `None` scans to the end unless all `L!` patterns
    /// have appeared.
    pub plateau_fraction: Option<f64>,
}

impl Default for StopRule {
    fn default() -> Self {
        Self {
            plateau_fraction: Some(0.1),
        }
    }
}

/// `g(L,T)` for every `T` in `t_grid`, averaged over `realizations` series
/// of `spec` with seeds `seed, seed+1, ..`. The series length in `spec` is
/// replaced by `max(t_grid)`.
pub fn finite_pc_curve(
    spec: &ProcessSpec,
    len: usize,
    t_grid: &[usize],
    realizations: usize,
    seed: u64,
) -> Result<CensusCurve> {
    finite_pc_curve_with(spec, len, t_grid, realizations, seed, StopRule::default())
}

pub fn finite_pc_curve_with(
    spec: &ProcessSpec,
    len: usize,
    t_grid: &[usize],
    realizations: usize,
    seed: u64,
    stop: StopRule,
) -> Result<CensusCurve> {
    WindowEncoder::new(len)?;
    if realizations == 0 {
        return Err(invalid_arg("need at least one realization"));
    }
    let t_max = *t_grid.last().ok_or_else(|| invalid_arg("empty T grid"))?;
    if t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid_arg("T grid must be strictly increasing"));
    }
    if t_max < len {
        return Err(invalid_arg(format!("largest T = {t_max} is below L = {len}")));
    }
    if let Some(f) = stop.plateau_fraction {
        if !(f > 0.0 && f <= 1.0) {
            return Err(invalid_arg("plateau fraction must lie in (0,1]"));
        }
    }
    let base = spec.clone().with_len(t_max.max(2));
    base.validate()?;

    let runs: Vec<Vec<f64>> = (0..realizations)
        .into_par_iter()
        .map(|r| {
            let ts = generate(&base.clone().with_seed(seed.wrapping_add(r as u64)))?;
            Ok(distinct_counts(ts.samples(), len, t_grid, stop)
                .into_iter()
                .map(|k| (k.max(1) as f64).ln())
                .collect())
        })
        .collect::<Result<_>>()?;

    let n = realizations as f64;
    let mut mean = vec![0.0; t_grid.len()];
    let mut stddev = vec![0.0; t_grid.len()];
    for i in 0..t_grid.len() {
        let m = runs.iter().map(|r| r[i]).sum::<f64>() / n;
        mean[i] = m;
        if realizations > 1 {
            stddev[i] = (runs.iter().map(|r| (r[i] - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
        }
    }
    Ok(CensusCurve {
        length: len,
        t_grid: t_grid.to_vec(),
        mean,
        stddev,
        runs,
    })
}

/// Distinct patterns among the windows of `samples[..T]` for each grid `T`.
fn distinct_counts(samples: &[f64], len: usize, t_grid: &[usize], stop: StopRule) -> Vec<usize> {
    let all = factorial(len);
    let mut enc = WindowEncoder::new(len).expect("length checked by caller");
    let mut dense = (len <= DENSE_MAX_LEN).then(|| vec![false; all as usize]);
    let mut sparse: HashSet<u64> = HashSet::new();
    let mut distinct = 0usize;
    let mut next_window = 0usize;
    let plateau = stop
        .plateau_fraction
        .map(|f| ((f * t_grid.len() as f64).ceil() as usize).max(1));

    let mut out = Vec::with_capacity(t_grid.len());
    for (i, &t) in t_grid.iter().enumerate() {
        // windows fully inside samples[..t]
        let end = (t + 1).saturating_sub(len);
        while next_window < end {
            let c = enc.code(&samples[next_window..next_window + len]);
            let fresh = match &mut dense {
                Some(seen) => !std::mem::replace(&mut seen[c as usize], true),
                None => sparse.insert(c),
            };
            distinct += fresh as usize;
            next_window += 1;
        }
        out.push(distinct);

        let saturated = distinct as u64 == all;
        let flat = plateau.is_some_and(|w| i >= w && out[i - w] == distinct);
        if saturated || flat {
            out.resize(t_grid.len(), distinct);
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::{encode, pattern_of, OrdinalPattern};
    use crate::process::ProcessKind;
    use proptest::prelude::*;

    fn code(r: &[usize]) -> PatternCode {
        encode(&OrdinalPattern::new(r.to_vec()).unwrap())
    }

    fn white(len: usize, seed: u64) -> TimeSeries {
        generate(&ProcessSpec::new(ProcessKind::WhiteNoise, len, seed)).unwrap()
    }

    #[test]
    fn white_noise_l3_is_uniform() {
        let d = census(&white(100_000, 5), 3).unwrap();
        assert_eq!(d.allowed_count(), 6);
        for (_, p) in d.probs() {
            assert!((p - 1.0 / 6.0).abs() < 0.01);
        }
        let s: f64 = d.probs().iter().map(|x| x.1).sum();
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn logistic_l3_misses_descending() {
        let ts = generate(&ProcessSpec::new(ProcessKind::Logistic { a: 4.0, x0: 0.3 }, 100_000, 0)).unwrap();
        let d = census(&ts, 3).unwrap();
        assert_eq!(d.allowed_count(), 5);
        assert_eq!(d.count(code(&[2, 1, 0])), 0);
        assert_eq!(forbidden_patterns(&d), BTreeSet::from([code(&[2, 1, 0])]));
    }

    #[test]
    fn ramp_has_one_pattern() {
        let ts = TimeSeries::new((0..50).map(|i| i as f64).collect()).unwrap();
        for l in 2..=6 {
            assert_eq!(census(&ts, l).unwrap().allowed_count(), 1);
        }
    }

    #[test]
    fn white_noise_has_no_missing_patterns() {
        let ts = white(400_000, 9);
        for l in 2..=5 {
            assert!(forbidden_patterns(&census(&ts, l).unwrap()).is_empty(), "L={l}");
        }
    }

    #[test]
    fn sparse_counts_above_dense_limit() {
        let ts = white(2_000, 3);
        let d = census(&ts, 11).unwrap();
        assert_eq!(d.total(), 1990);
        let s: f64 = d.probs().iter().map(|x| x.1).sum();
        assert!((s - 1.0).abs() < 1e-12);
        assert!(d.allowed_count() <= 1990);
    }

    #[test]
    fn census_errors() {
        let ts = TimeSeries::new(vec![1.0, 2.0]).unwrap();
        assert!(census(&ts, 3).is_err());
        assert!(transition_matrix(&ts, 2).is_err());
    }

    #[test]
    fn alternating_transitions_are_deterministic() {
        let ts = TimeSeries::new((0..40).map(|i| (i % 2) as f64).collect()).unwrap();
        let m = transition_matrix(&ts, 2).unwrap();
        for src in m.sources() {
            let row = m.row(src);
            assert_eq!(row.len(), 1);
            assert_eq!(row[0].1, 1.0);
        }
        assert_eq!(m.get(code(&[0, 1]), code(&[1, 0])), 1.0);
    }

    #[test]
    fn white_noise_l2_transitions() {
        // Oracle by symmetry over i.i.d. triples: after an up-step (x0<x1), the
        // next step is up iff x1 is not the max of three, probability 1/3.
        let m = transition_matrix(&white(400_000, 4), 2).unwrap();
        let (up, down) = (code(&[0, 1]), code(&[1, 0]));
        assert!((m.get(up, up) - 1.0 / 3.0).abs() < 0.01);
        assert!((m.get(up, down) - 2.0 / 3.0).abs() < 0.01);
        assert!((m.get(down, down) - 1.0 / 3.0).abs() < 0.01);
        assert!((m.get(down, up) - 2.0 / 3.0).abs() < 0.01);
    }

    #[test]
    fn logistic_stationary_frequencies_are_invariant() {
        let ts = generate(&ProcessSpec::new(ProcessKind::Logistic { a: 4.0, x0: 0.3 }, 400_000, 0)).unwrap();
        let d = census(&ts, 3).unwrap();
        let m = transition_matrix(&ts, 3).unwrap();
        for (to, p_to) in d.probs() {
            let pushed: f64 = d.probs().iter().map(|&(from, p)| p * m.get(from, to)).sum();
            assert!((pushed - p_to).abs() < 1e-3);
        }
    }

    #[test]
    fn pc_curve_white_noise_saturates() {
        let spec = ProcessSpec::new(ProcessKind::WhiteNoise, 2, 0);
        let grid: Vec<usize> = (1..=40).map(|k| k * 2_500).collect();
        let c = finite_pc_curve(&spec, 6, &grid, 3, 17).unwrap();
        assert!((c.mean.last().unwrap() - 6.5793).abs() < 1e-3);
        assert!((c.ceiling() - 720f64.ln()).abs() < 1e-12);
        for run in &c.runs {
            assert!(run.windows(2).all(|w| w[0] <= w[1]));
            assert!(run.iter().all(|&g| g <= c.ceiling() + 1e-12));
        }
    }

    #[test]
    fn pc_curve_single_window_is_zero() {
        let spec = ProcessSpec::new(ProcessKind::WhiteNoise, 2, 0);
        let c = finite_pc_curve(&spec, 4, &[4], 2, 0).unwrap();
        assert_eq!(c.mean, vec![0.0]);
        assert!(finite_pc_curve(&spec, 4, &[3], 1, 0).is_err());
        assert!(finite_pc_curve(&spec, 4, &[10, 5], 1, 0).is_err());
        assert!(finite_pc_curve(&spec, 4, &[10], 0, 0).is_err());
    }

    #[test]
    fn pc_curve_is_seed_deterministic() {
        let spec = ProcessSpec::new(ProcessKind::NoisySkewTent { amp: 0.2, y0: 0.3 }, 2, 0);
        let grid = [100, 1000, 5000];
        let a = finite_pc_curve(&spec, 5, &grid, 4, 99).unwrap();
        let b = finite_pc_curve(&spec, 5, &grid, 4, 99).unwrap();
        assert_eq!(a, b);
    }

    // O(T·L²) reference: pairwise comparisons per window, no sorting.
    fn brute_code(w: &[f64]) -> u64 {
        let l = w.len();
        let mut rank_pos: Vec<(usize, usize)> = (0..l)
            .map(|i| (i, (0..l).filter(|&j| w[j] < w[i] || (w[j] == w[i] && j < i)).count()))
            .collect();
        rank_pos.sort_by_key(|&(_, r)| r);
        let ranks: Vec<usize> = rank_pos.into_iter().map(|(i, _)| i).collect();
        encode(&OrdinalPattern::new(ranks).unwrap()).code()
    }

    proptest! {
        #[test]
        fn census_matches_brute_force(xs in proptest::collection::vec(-1e3f64..1e3, 8..200), len in 2usize..6) {
            let ts = TimeSeries::new(xs.clone()).unwrap();
            let d = census(&ts, len).unwrap();
            let brute = PatternDistribution::from_codes(len, xs.windows(len).map(brute_code)).unwrap();
            prop_assert_eq!(d, brute);
            for w in xs.windows(len) {
                prop_assert_eq!(encode(&pattern_of(w).unwrap()).code(), brute_code(w));
            }
        }
    }
}
