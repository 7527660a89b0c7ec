//! Principal branch of the real Lambert W function.

use crate::error::{domain, Result};

/// `1/e` rounded to `f64`.
pub const EXP_NEG1: f64 = 0.367_879_441_171_442_33;
// 1/e - EXP_NEG1, so that x + 1/e is formed without cancellation near the branch point.
const EXP_NEG1_LO: f64 = -1.242_875_367_278_836_3e-17;

// Series of W0 in p = sqrt(2(e·x + 1)) around the branch point.
const BRANCH_SERIES: [f64; 10] = [
    -1.0,
    1.0,
    -1.0 / 3.0,
    11.0 / 72.0,
    -43.0 / 540.0,
    769.0 / 17280.0,
    -221.0 / 8505.0,
    680_863.0 / 43_545_600.0,
    -1963.0 / 204_120.0,
    226_287_557.0 / 37_623_398_400.0,
];

fn branch_series(p: f64, terms: usize) -> f64 {
    BRANCH_SERIES[..terms]
        .iter()
        .rev()
        .fold(0.0, |acc, &c| acc * p + c)
}

/// Unique `w >= -1` with `w·e^w = x`, for `x >= -1/e`.
///
/// Close to `-1/e` the value comes straight from the branch-point series in
/// the cancellation-free offset `x + 1/e`; elsewhere an initial guess is
/// polished with Halley's iteration until the step drops below a few ulps.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(domain("lambert_w0 of NaN"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    let offset = (x + EXP_NEG1) + EXP_NEG1_LO;
    if offset < -4.0 * f64::EPSILON * EXP_NEG1 {
        return Err(domain(format!("lambert_w0 undefined below -1/e, got {x}")));
    }
    if offset <= 0.0 {
        return Ok(-1.0);
    }
    let p = (2.0 * std::f64::consts::E * offset).sqrt();
    if offset < 1e-4 {
        return Ok(branch_series(p, BRANCH_SERIES.len()));
    }

    let mut w = if x < -0.25 {
        branch_series(p, 4)
    } else if x < 3.0 {
        // ln(1+x) tracks W0 well on this stretch
        x.ln_1p() * (1.0 - 0.1 * x.ln_1p().max(0.0))
    } else {
        let l = x.ln();
        l - l.ln() + l.ln() / l
    };

    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - x;
        if f == 0.0 {
            break;
        }
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= 2.0 * f64::EPSILON * w.abs() {
            break;
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Bisection oracle on w·e^w = x over [-1, hi].
    fn bisect_w(x: f64) -> f64 {
        let (mut lo, mut hi) = (-1.0f64, 1.0f64.max(x.ln_1p() + 1.0));
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid * mid.exp() < x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn special_values() {
        assert_eq!(lambert_w0(0.0).unwrap(), 0.0);
        assert_eq!(lambert_w0(-EXP_NEG1).unwrap(), -1.0);
        assert!((lambert_w0(std::f64::consts::E).unwrap() - 1.0).abs() < 1e-15);
        assert!((lambert_w0(1.0).unwrap() - 0.567_143_290_409_783_8).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(lambert_w0(-0.5).is_err());
        assert!(lambert_w0(f64::NAN).is_err());
    }

    #[test]
    fn agrees_with_bisection() {
        let mut x = -EXP_NEG1 + 1e-6;
        while x < 1e8 {
            let w = lambert_w0(x).unwrap();
            let o = bisect_w(x);
            assert!((w - o).abs() <= 1e-13 * o.abs().max(1e-3), "x={x} w={w} oracle={o}");
            x = if x < 0.0 { x * 0.7 + 1e-3 } else { x * 1.37 + 1e-3 };
        }
    }

    #[test]
    fn residual_is_tiny() {
        for &x in &[-0.367, -0.3, -0.1, -1e-8, 1e-12, 0.5, 2.0, 10.0, 1e3, 1e10, 1e200] {
            let w = lambert_w0(x).unwrap();
            let r = w * w.exp();
            // rounding of w is amplified by |w| inside exp
            let tol = 4.0 * f64::EPSILON * (1.0 + w.abs());
            assert!((r - x).abs() <= tol * x.abs().max(1e-300), "x={x} w={w}");
        }
    }

    #[test]
    fn strictly_increasing() {
        let mut prev = -1.0;
        for i in 1..5000 {
            let x = -EXP_NEG1 + (i as f64).powi(3) * 1e-9;
            let w = lambert_w0(x).unwrap();
            assert!(w > prev, "x={x}");
            prev = w;
        }
    }

    #[test]
    fn inverts_t_ln_t() {
        let (lo, hi) = (-1.0f64, 6.0 * 10f64.ln());
        for i in 0..1000 {
            let x = (lo + (hi - lo) * i as f64 / 999.0).exp();
            let w = lambert_w0(x * x.ln()).unwrap();
            let expect = x.ln();
            let err = if expect == 0.0 { w.abs() } else { ((w - expect) / expect).abs() };
            assert!(err <= 1e-12, "x={x} w={w}");
        }
    }
}
