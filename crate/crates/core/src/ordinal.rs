//! Ordinal patterns of real-valued windows.
//!
//! The pattern of a window `x_0..x_{L-1}` is the permutation `(ρ_0,..,ρ_{L-1})`
//! of indices with `x_{ρ_0} < x_{ρ_1} < ... < x_{ρ_{L-1}}`. Equal values are
//! ordered by position: the earlier entry counts as the smaller one, so the
//! pattern is the stable argsort of the window.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid_arg, Error, Result};

/// Longest supported pattern; `21!` no longer fits in a `u64`.
pub const MAX_PATTERN_LEN: usize = 20;

/// `n!` for `n <= 20`.
pub const fn factorial(n: usize) -> u64 {
    let mut acc = 1u64;
    let mut i = 2;
    while i <= n {
        acc *= i as u64;
        i += 1;
    }
    acc
}

/// `ln n!`, summed directly for the small `n` used here.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

fn check_length(len: usize) -> Result<()> {
    if len < 2 {
        return Err(invalid_arg(format!("pattern length must be at least 2, got {len}")));
    }
    if len > MAX_PATTERN_LEN {
        return Err(invalid_arg(format!(
            "pattern length {len} exceeds the supported maximum of {MAX_PATTERN_LEN}"
        )));
    }
    Ok(())
}

/// A rank permutation of `{0,..,L-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrdinalPattern {
    ranks: Vec<u8>,
}

impl OrdinalPattern {
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        check_length(ranks.len())?;
        let mut seen = [false; MAX_PATTERN_LEN];
        for &r in &ranks {
            if r >= ranks.len() || seen[r] {
                return Err(invalid_arg(format!("{ranks:?} is not a permutation")));
            }
            seen[r] = true;
        }
        Ok(Self {
            ranks: ranks.into_iter().map(|r| r as u8).collect(),
        })
    }

    pub fn identity(len: usize) -> Result<Self> {
        Self::new((0..len).collect())
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn ranks(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.ranks.iter().map(|&r| r as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.ranks().collect()
    }

    /// Dash-joined ranks, e.g. `1-0-3-2`.
    pub fn dashed(&self) -> String {
        self.ranks()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("-")
    }
}

impl fmt::Display for OrdinalPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.ranks().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// Lehmer rank of a pattern among the `L!` permutations in lexicographic order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternCode {
    code: u64,
    length: u8,
}

impl PatternCode {
    pub fn new(code: u64, length: usize) -> Result<Self> {
        check_length(length)?;
        if code >= factorial(length) {
            return Err(invalid_arg(format!("code {code} out of range for L={length}")));
        }
        Ok(Self {
            code,
            length: length as u8,
        })
    }

    pub(crate) fn new_unchecked(code: u64, length: usize) -> Self {
        Self {
            code,
            length: length as u8,
        }
    }

    pub fn code(self) -> u64 {
        self.code
    }

    pub fn length(self) -> usize {
        self.length as usize
    }

    pub fn pattern(self) -> OrdinalPattern {
        decode(self)
    }
}

/// A finite-valued real sequence with optional provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    samples: Vec<f64>,
    meta: Option<String>,
}

impl TimeSeries {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if let Some(i) = samples.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidData(format!(
                "sample {i} is not finite ({})",
                samples[i]
            )));
        }
        Ok(Self {
            samples,
            meta: None,
        })
    }

    pub fn with_meta(mut self, meta: impl Into<String>) -> Self {
        self.meta = Some(meta.into());
        self
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn meta(&self) -> Option<&str> {
        self.meta.as_deref()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }
}

/// Ordinal pattern of a window, ties broken by position.
pub fn pattern_of(window: &[f64]) -> Result<OrdinalPattern> {
    check_length(window.len())?;
    if let Some(i) = window.iter().position(|x| !x.is_finite()) {
        return Err(Error::InvalidData(format!("window entry {i} is not finite")));
    }
    let mut idx = [0u8; MAX_PATTERN_LEN];
    let n = window.len();
    argsort_into(window, &mut idx[..n]);
    Ok(OrdinalPattern {
        ranks: idx[..n].to_vec(),
    })
}

/// Stable insertion argsort; for the tiny windows used here this beats a
/// general sort and keeps ties in index order.
#[inline]
fn argsort_into(window: &[f64], idx: &mut [u8]) {
    for (i, slot) in idx.iter_mut().enumerate() {
        *slot = i as u8;
    }
    for i in 1..idx.len() {
        let cur = idx[i];
        let v = window[cur as usize];
        let mut j = i;
        while j > 0 && window[idx[j - 1] as usize] > v {
            idx[j] = idx[j - 1];
            j -= 1;
        }
        idx[j] = cur;
    }
}

#[inline]
fn lehmer_rank(perm: &[u8]) -> u64 {
    let n = perm.len();
    let mut code = 0u64;
    for i in 0..n {
        let smaller_after = perm[i + 1..].iter().filter(|&&p| p < perm[i]).count() as u64;
        code += smaller_after * factorial(n - 1 - i);
    }
    code
}

pub fn encode(p: &OrdinalPattern) -> PatternCode {
    PatternCode::new_unchecked(lehmer_rank(&p.ranks), p.len())
}

pub fn decode(c: PatternCode) -> OrdinalPattern {
    let n = c.length();
    let mut remaining: Vec<u8> = (0..n as u8).collect();
    let mut rest = c.code;
    let mut ranks = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i);
        let digit = (rest / f) as usize;
        rest %= f;
        ranks.push(remaining.remove(digit));
    }
    OrdinalPattern { ranks }
}

/// Reusable scratch space for encoding many windows of one length.
#[derive(Clone, Debug)]
pub(crate) struct WindowEncoder {
    len: usize,
    idx: [u8; MAX_PATTERN_LEN],
}

impl WindowEncoder {
    pub(crate) fn new(len: usize) -> Result<Self> {
        check_length(len)?;
        Ok(Self {
            len,
            idx: [0; MAX_PATTERN_LEN],
        })
    }

    /// Code of `window`, which must hold exactly `len` finite values.
    #[inline]
    pub(crate) fn code(&mut self, window: &[f64]) -> u64 {
        debug_assert_eq!(window.len(), self.len);
        let idx = &mut self.idx[..self.len];
        argsort_into(window, idx);
        lehmer_rank(idx)
    }
}

/// Codes of the windows `samples[k*step .. k*step+L]` for `k = 0, 1, ..`.
pub fn extract_patterns(ts: &TimeSeries, len: usize, step: usize) -> Result<Vec<PatternCode>> {
    let mut enc = WindowEncoder::new(len)?;
    if step == 0 {
        return Err(invalid_arg("step must be at least 1"));
    }
    if ts.len() < len {
        return Err(invalid_arg(format!(
            "series of length {} is shorter than the pattern length {len}",
            ts.len()
        )));
    }
    let n = (ts.len() - len) / step + 1;
    Ok((0..n)
        .map(|k| {
            let start = k * step;
            PatternCode::new_unchecked(enc.code(&ts.samples[start..start + len]), len)
        })
        .collect())
}

/// Codes of every step-1 window as raw integers.
pub(crate) fn sliding_codes(samples: &[f64], len: usize) -> Result<Vec<u64>> {
    let mut enc = WindowEncoder::new(len)?;
    if samples.len() < len {
        return Err(invalid_arg(format!(
            "series of length {} is shorter than the pattern length {len}",
            samples.len()
        )));
    }
    Ok(samples.windows(len).map(|w| enc.code(w)).collect())
}
