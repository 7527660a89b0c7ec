//! Seeded generators for the reference processes and series file formats.
//!
//! Every generator draws from a `ChaCha8Rng` seeded with the `ProcessSpec`'s 64-bit
//! seed, so a `(spec, seed)` pair always yields the same series. Gaussian
//! variates come from `rand_distr::StandardNormal` (ziggurat).

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{invalid_arg, Error, Result};
use crate::ordinal::TimeSeries;

/// Samples discarded before recording, for the deterministic maps.
pub const DEFAULT_TRANSIENT: usize = 1000;

/// Half-width of the cubic map's invariant interval, `2/√3`.
const CUBIC_BOUND: f64 = 1.154_700_538_379_251_5;

#[derive(Clone, Debug, PartialEq)]
pub enum ProcessKind {
    /// i.i.d. uniform on `[0,1]`.
    WhiteNoise,
    /// Unit-variance fractional Gaussian noise.
    FGn { hurst: f64 },
    /// Fractional Brownian motion: cumulative fGn starting at 0.
    FBm { hurst: f64 },
    /// `x_{t+1} = a·x_t(1-x_t)`.
    Logistic { a: f64, x0: f64 },
    /// Logistic map with additive noise uniform on `[-eps, eps]`, clamped to
    /// `[0,1]`. With `a_window`, `a` is drawn uniformly from the window once
    /// per series.
    NoisyLogisticDynamical {
        a: f64,
        eps: f64,
        x0: f64,
        a_window: Option<(f64, f64)>,
    },
    /// `y_t = 3y_{t-1}(1-y_{t-1}²)` observed with noise `|z_t| <= amp/2`.
    NoisyCubic { amp: f64, y0: f64 },
    /// Skew tent with break at 0.25 observed with noise `|z_t| <= amp/2`.
    NoisySkewTent { amp: f64, y0: f64 },
}

impl ProcessKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::WhiteNoise => "white-noise",
            Self::FGn { .. } => "fgn",
            Self::FBm { .. } => "fbm",
            Self::Logistic { .. } => "logistic",
            Self::NoisyLogisticDynamical { .. } => "noisy-logistic",
            Self::NoisyCubic { .. } => "noisy-cubic",
            Self::NoisySkewTent { .. } => "noisy-skew-tent",
        }
    }

    pub fn is_map(&self) -> bool {
        matches!(
            self,
            Self::Logistic { .. }
                | Self::NoisyLogisticDynamical { .. }
                | Self::NoisyCubic { .. }
                | Self::NoisySkewTent { .. }
        )
    }

    pub fn default_transient(&self) -> usize {
        if self.is_map() {
            DEFAULT_TRANSIENT
        } else {
            0
        }
    }

    /// Default parameters for a process name.
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "white-noise" | "wn" => Self::WhiteNoise,
            "fgn" => Self::FGn { hurst: 0.75 },
            "fbm" => Self::FBm { hurst: 0.5 },
            "logistic" => Self::Logistic { a: 4.0, x0: 0.3 },
            "noisy-logistic" => Self::NoisyLogisticDynamical {
                a: 3.835,
                eps: 0.001,
                x0: 0.3,
                a_window: None,
            },
            "noisy-cubic" => Self::NoisyCubic { amp: 0.15, y0: 0.1 },
            "noisy-skew-tent" => Self::NoisySkewTent { amp: 0.2, y0: 0.3 },
            other => return Err(invalid_arg(format!("unknown process `{other}`"))),
        })
    }

    /// Overrides one named parameter.
    pub fn set_param(&mut self, key: &str, value: f64) -> Result<()> {
        let slot = match (self, key) {
            (Self::FGn { hurst } | Self::FBm { hurst }, "hurst" | "h") => hurst,
            (Self::Logistic { a, .. } | Self::NoisyLogisticDynamical { a, .. }, "a") => a,
            (Self::Logistic { x0, .. } | Self::NoisyLogisticDynamical { x0, .. }, "x0") => x0,
            (Self::NoisyLogisticDynamical { eps, .. }, "eps") => eps,
            (Self::NoisyLogisticDynamical { a_window, .. }, "a-lo" | "a-hi") => {
                let (lo, hi) = a_window.get_or_insert((3.83, 3.84));
                if key == "a-lo" {
                    *lo = value;
                } else {
                    *hi = value;
                }
                return Ok(());
            }
            (Self::NoisyCubic { amp, .. } | Self::NoisySkewTent { amp, .. }, "amp") => amp,
            (Self::NoisyCubic { y0, .. } | Self::NoisySkewTent { y0, .. }, "y0") => y0,
            (kind, key) => {
                return Err(invalid_arg(format!(
                    "process `{}` has no parameter `{key}`",
                    kind.name()
                )))
            }
        };
        *slot = value;
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, v: f64| -> Result<()> {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(invalid_arg(format!("{name} must lie in (0,1), got {v}")))
            }
        };
        let in_closed = |name: &str, v: f64, lo: f64, hi: f64| -> Result<()> {
            if v >= lo && v <= hi {
                Ok(())
            } else {
                Err(invalid_arg(format!("{name} must lie in [{lo},{hi}], got {v}")))
            }
        };
        let non_neg = |name: &str, v: f64| -> Result<()> {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(invalid_arg(format!("{name} must be finite and >= 0, got {v}")))
            }
        };
        match *self {
            Self::WhiteNoise => Ok(()),
            Self::FGn { hurst } | Self::FBm { hurst } => unit("hurst", hurst),
            Self::Logistic { a, x0 } => {
                if !(a > 0.0 && a <= 4.0) {
                    return Err(invalid_arg(format!("a must lie in (0,4], got {a}")));
                }
                in_closed("x0", x0, 0.0, 1.0)
            }
            Self::NoisyLogisticDynamical { a, eps, x0, a_window } => {
                in_closed("a", a, 0.0, 4.0)?;
                non_neg("eps", eps)?;
                in_closed("x0", x0, 0.0, 1.0)?;
                if let Some((lo, hi)) = a_window {
                    in_closed("a-lo", lo, 0.0, 4.0)?;
                    in_closed("a-hi", hi, lo, 4.0)?;
                }
                Ok(())
            }
            Self::NoisyCubic { amp, y0 } => {
                non_neg("amp", amp)?;
                in_closed("y0", y0, -CUBIC_BOUND, CUBIC_BOUND)
            }
            Self::NoisySkewTent { amp, y0 } => {
                non_neg("amp", amp)?;
                in_closed("y0", y0, 0.0, 1.0)
            }
        }
    }
}

/// `name:key=value:key=value`, also accepting `,` between parameters.
impl FromStr for ProcessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split([':', ',']).map(str::trim).filter(|p| !p.is_empty());
        let name = parts.next().ok_or_else(|| invalid_arg("empty process description"))?;
        let mut kind = Self::from_name(name)?;
        for part in parts {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| invalid_arg(format!("expected key=value, got `{part}`")))?;
            let v: f64 = v
                .parse()
                .map_err(|_| invalid_arg(format!("parameter `{k}` is not a number: `{v}`")))?;
            kind.set_param(k, v)?;
        }
        Ok(kind)
    }
}

impl fmt::Display for ProcessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        match *self {
            Self::WhiteNoise => Ok(()),
            Self::FGn { hurst } | Self::FBm { hurst } => write!(f, ":hurst={hurst}"),
            Self::Logistic { a, x0 } => write!(f, ":a={a}:x0={x0}"),
            Self::NoisyLogisticDynamical { a, eps, x0, a_window } => match a_window {
                Some((lo, hi)) => write!(f, ":a-lo={lo}:a-hi={hi}:eps={eps}:x0={x0}"),
                None => write!(f, ":a={a}:eps={eps}:x0={x0}"),
            },
            Self::NoisyCubic { amp, y0 } | Self::NoisySkewTent { amp, y0 } => {
                write!(f, ":amp={amp}:y0={y0}")
            }
        }
    }
}

/// The forbidden-pattern-free reference set: white noise, fGn (H=0.75),
/// fBm (H = 0.2, 0.5, 0.7), noisy cubic map (0.15) and noisy skew tent (0.20).
pub fn reference_processes() -> Vec<ProcessKind> {
    vec![
        ProcessKind::WhiteNoise,
        ProcessKind::FGn { hurst: 0.75 },
        ProcessKind::FBm { hurst: 0.2 },
        ProcessKind::FBm { hurst: 0.5 },
        ProcessKind::FBm { hurst: 0.7 },
        ProcessKind::NoisyCubic { amp: 0.15, y0: 0.1 },
        ProcessKind::NoisySkewTent { amp: 0.2, y0: 0.3 },
    ]
}

/// Everything needed to reproduce one series.
#[derive(Clone, Debug, PartialEq)]
pub struct ProcessSpec {
    pub kind: ProcessKind,
    pub len: usize,
    pub seed: u64,
    /// Iterations discarded before the first recorded sample (maps only).
    pub transient: usize,
}

impl ProcessSpec {
    pub fn new(kind: ProcessKind, len: usize, seed: u64) -> Self {
        let transient = kind.default_transient();
        Self {
            kind,
            len,
            seed,
            transient,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_len(mut self, len: usize) -> Self {
        self.len = len;
        self
    }

    pub fn with_transient(mut self, transient: usize) -> Self {
        self.transient = transient;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.len < 2 {
            return Err(invalid_arg(format!("series length must be at least 2, got {}", self.len)));
        }
        self.kind.validate()
    }
}

/// Draws the series described by `spec`.
pub fn generate(spec: &ProcessSpec) -> Result<TimeSeries> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.len;
    let samples = match spec.kind {
        ProcessKind::WhiteNoise => (0..n).map(|_| rng.random::<f64>()).collect(),
        ProcessKind::FGn { hurst } => fgn(n, hurst, &mut rng),
        ProcessKind::FBm { hurst } => {
            let mut acc = 0.0;
            std::iter::once(0.0)
                .chain(fgn(n - 1, hurst, &mut rng).into_iter().map(|d| {
                    acc += d;
                    acc
                }))
                .collect()
        }
        ProcessKind::Logistic { a, x0 } => {
            iterate_map(x0, spec.transient, n, |x| a * x * (1.0 - x))
        }
        ProcessKind::NoisyLogisticDynamical { a, eps, x0, a_window } => {
            let a = match a_window {
                Some((lo, hi)) if hi > lo => rng.random_range(lo..=hi),
                Some((lo, _)) => lo,
                None => a,
            };
            let mut step = |x: f64| {
                let noise = if eps > 0.0 { rng.random_range(-eps..=eps) } else { 0.0 };
                (a * x * (1.0 - x) + noise).clamp(0.0, 1.0)
            };
            let mut x = x0;
            for _ in 0..spec.transient {
                x = step(x);
            }
            let mut out = Vec::with_capacity(n);
            for _ in 0..n {
                out.push(x);
                x = step(x);
            }
            out
        }
        ProcessKind::NoisyCubic { amp, y0 } => {
            let ys = iterate_map(y0, spec.transient, n, cubic_step);
            observe(ys, amp, &mut rng)
        }
        ProcessKind::NoisySkewTent { amp, y0 } => {
            let ys = iterate_map(y0, spec.transient, n, skew_tent_step);
            observe(ys, amp, &mut rng)
        }
    };
    Ok(TimeSeries::new(samples)?.with_meta(format!("{} seed={}", spec.kind, spec.seed)))
}

fn iterate_map(x0: f64, transient: usize, n: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
    let mut x = x0;
    for _ in 0..transient {
        x = f(x);
    }
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(x);
        x = f(x);
    }
    out
}

fn observe(ys: Vec<f64>, amp: f64, rng: &mut impl Rng) -> Vec<f64> {
    let half = amp / 2.0;
    ys.into_iter()
        .map(|y| if half > 0.0 { y + rng.random_range(-half..=half) } else { y })
        .collect()
}

/// Cubic map on its invariant interval `[-2/√3, 2/√3]`; a round-off
/// excursion past the edge is reflected back inside.
fn cubic_step(y: f64) -> f64 {
    let next = 3.0 * y * (1.0 - y * y);
    if next.abs() > CUBIC_BOUND {
        next.signum() * (2.0 * CUBIC_BOUND - next.abs())
    } else {
        next
    }
}

/// Skew tent with slopes 4 and -4/3. In floating point the orbit can land
/// exactly on the fixed point 0 (via 1) and stay there forever; such a hit is
/// nudged by one step along the golden-ratio rotation so the orbit continues.
fn skew_tent_step(y: f64) -> f64 {
    let next = if y <= 0.25 { y / 0.25 } else { (1.0 - y) / 0.75 };
    if next <= 0.0 || next >= 1.0 {
        (y + 0.618_033_988_749_894_9).fract()
    } else {
        next
    }
}

/// Autocovariance of unit-variance fGn at lag `k`.
pub fn fgn_autocovariance(k: usize, hurst: f64) -> f64 {
    let h2 = 2.0 * hurst;
    let k = k as f64;
    0.5 * ((k + 1.0).powf(h2) - 2.0 * k.powf(h2) + (k - 1.0).abs().powf(h2))
}

fn fgn(n: usize, hurst: f64, rng: &mut impl Rng) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    let gamma: Vec<f64> = (0..=n.next_power_of_two()).map(|k| fgn_autocovariance(k, hurst)).collect();
    match circulant_eigenvalues(&gamma) {
        Some(eig) => {
            let normals: Vec<f64> = (0..2 * eig.len()).map(|_| rng.sample(StandardNormal)).collect();
            circulant_sample(&eig, &normals, n)
        }
        None => {
            let normals: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            durbin_levinson(&gamma[..n], &normals)
        }
    }
}

/// Eigenvalues of the minimal circulant embedding of the Toeplitz matrix with
/// first row `gamma[0..=m]`, or `None` if the embedding is not non-negative
/// definite.
fn circulant_eigenvalues(gamma: &[f64]) -> Option<Vec<f64>> {
    let m = gamma.len() - 1;
    let size = 2 * m;
    let mut row: Vec<Complex64> = (0..size)
        .map(|k| {
            let lag = if k <= m { k } else { size - k };
            Complex64::new(gamma[lag], 0.0)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(size).process(&mut row);
    let max = row.iter().map(|c| c.re).fold(0.0, f64::max);
    if row.iter().any(|c| c.re < -1e-10 * max) {
        return None;
    }
    Some(row.into_iter().map(|c| c.re.max(0.0)).collect())
}

/// `Re(F · diag(√(λ/N)) · ξ)` with `ξ` complex standard normal, truncated to
/// `n` values; its covariance is the embedded Toeplitz matrix.
fn circulant_sample(eig: &[f64], normals: &[f64], n: usize) -> Vec<f64> {
    let size = eig.len();
    let mut buf: Vec<Complex64> = eig
        .iter()
        .enumerate()
        .map(|(k, &l)| {
            let s = (l / size as f64).sqrt();
            Complex64::new(s * normals[2 * k], s * normals[2 * k + 1])
        })
        .collect();
    FftPlanner::new().plan_fft_forward(size).process(&mut buf);
    buf.into_iter().take(n).map(|c| c.re).collect()
}

/// Exact Gaussian sample with autocovariance `gamma` by the Durbin–Levinson
/// innovations recursion; `O(n²)`.
fn durbin_levinson(gamma: &[f64], normals: &[f64]) -> Vec<f64> {
    let n = gamma.len();
    let mut x = Vec::with_capacity(n);
    let mut phi: Vec<f64> = Vec::with_capacity(n);
    let mut prev: Vec<f64> = Vec::with_capacity(n);
    let mut v = gamma[0];
    x.push(v.sqrt() * normals[0]);
    for t in 1..n {
        // φ_{t,t} = (γ(t) - Σ φ_{t-1,j} γ(t-j)) / v_{t-1}
        let acc: f64 = phi.iter().enumerate().map(|(j, &p)| p * gamma[t - 1 - j]).sum();
        let k = (gamma[t] - acc) / v;
        prev.clear();
        prev.extend_from_slice(&phi);
        for j in 0..prev.len() {
            phi[j] = prev[j] - k * prev[prev.len() - 1 - j];
        }
        phi.push(k);
        v *= 1.0 - k * k;
        let mean: f64 = phi.iter().enumerate().map(|(j, &p)| p * x[t - 1 - j]).sum();
        x.push(mean + v.max(0.0).sqrt() * normals[t]);
    }
    x
}

const MAGIC: &[u8; 8] = b"ORDENTS1";
const BINARY_VERSION: u32 = 1;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// One sample per line, shortest round-trip decimal.
pub fn write_csv(ts: &TimeSeries, out: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
    for x in ts.samples() {
        writeln!(out, "{x}")?;
    }
    Ok(())
}

/// 16-byte header (`ORDENTS1`, u32 version, u32 reserved) then little-endian `f64`s.
pub fn write_binary(ts: &TimeSeries, out: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&BINARY_VERSION.to_le_bytes())?;
    out.write_all(&0u32.to_le_bytes())?;
    for x in ts.samples() {
        out.write_all(&x.to_le_bytes())?;
    }
    Ok(())
}

pub fn save_csv(ts: &TimeSeries, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).map_err(io_err(path))?);
    write_csv(ts, &mut w).and_then(|_| w.flush()).map_err(io_err(path))
}

pub fn save_binary(ts: &TimeSeries, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path).map_err(io_err(path))?);
    write_binary(ts, &mut w).and_then(|_| w.flush()).map_err(io_err(path))
}

/// Parses a one-column CSV; blank lines and `#` comments are skipped. If a
/// line has several comma-separated fields the last one is taken.
pub fn parse_csv(reader: impl BufRead, path: &Path) -> Result<TimeSeries> {
    let mut samples = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        let field = line.trim();
        if field.is_empty() || field.starts_with('#') {
            continue;
        }
        let field = field.rsplit(',').next().unwrap_or(field).trim();
        let x: f64 = field.parse().map_err(|_| Error::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            message: format!("not a number: `{field}`"),
        })?;
        if !x.is_finite() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: i + 1,
                message: format!("non-finite sample `{field}`"),
            });
        }
        samples.push(x);
    }
    TimeSeries::new(samples)
}

pub fn parse_binary(bytes: &[u8], path: &Path) -> Result<TimeSeries> {
    let bad = |message: String| Error::Parse {
        path: path.to_path_buf(),
        line: 0,
        message,
    };
    if bytes.len() < 16 || &bytes[..8] != MAGIC {
        return Err(bad("missing ORDENTS1 header".into()));
    }
    let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    if version != BINARY_VERSION {
        return Err(bad(format!("unsupported binary version {version}")));
    }
    let body = &bytes[16..];
    if !body.len().is_multiple_of(8) {
        return Err(bad(format!("payload of {} bytes is not a whole number of f64s", body.len())));
    }
    let samples = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    TimeSeries::new(samples)
}

/// Loads a series, detecting the binary format by its magic bytes.
pub fn load_series(path: &Path) -> Result<TimeSeries> {
    let mut bytes = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(io_err(path))?;
    if bytes.starts_with(MAGIC) {
        parse_binary(&bytes, path)
    } else {
        parse_csv(BufReader::new(bytes.as_slice()), path)
    }
}
