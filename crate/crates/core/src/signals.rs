//! Ground-truth band-limited signals, sample containers and the sampling
//! series that rebuild a function from its samples.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{
    dual_gen_1, dual_gen_1_deriv, dual_gen_2, dual_gen_2_deriv, sinc, sinc_deriv,
    OneChannelParams, TwoChannelParams, SQRT_2PI,
};

/// A finite combination `f(x) = sum_j a_j sinc(omega (x - x_j))`, which lies
/// in the band `[-omega, omega]`, together with its exact derivative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandLimitedSignal {
    band: f64,
    terms: Vec<(f64, f64)>,
    description: String,
}

impl BandLimitedSignal {
    pub fn band(&self) -> f64 {
        self.band
    }

    /// `(amplitude, shift)` pairs.
    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(a, s)| a * sinc(self.band * (x - s))).sum()
    }

    pub fn eval_deriv(&self, x: f64) -> f64 {
        self.terms.iter().map(|&(a, s)| a * self.band * sinc_deriv(self.band * (x - s))).sum()
    }

    /// Samples `f(n step)` for `lo <= n <= hi`.
    pub fn samples(&self, step: f64, lo: i64, hi: i64) -> IndexedSamples {
        IndexedSamples::from_fn(lo, hi, |n| self.eval(n as f64 * step))
    }

    /// Samples `f'(n step)` for `lo <= n <= hi`.
    pub fn deriv_samples(&self, step: f64, lo: i64, hi: i64) -> IndexedSamples {
        IndexedSamples::from_fn(lo, hi, |n| self.eval_deriv(n as f64 * step))
    }
}

/// `g(x) = sinc(pi (x - 2.1)) - 0.7 sinc(pi (x + 1.7))`, band `[-pi, pi]`.
pub fn test_signal_g() -> BandLimitedSignal {
    BandLimitedSignal {
        band: PI,
        terms: vec![(1.0, 2.1), (-0.7, -1.7)],
        description: "g(x) = sinc(pi(x-2.1)) - 0.7 sinc(pi(x+1.7))".into(),
    }
}

/// `sum_j a_j sinc(omega (x - x_j))` from `(a_j, x_j)` pairs.
pub fn sinc_combination(coeffs: &[(f64, f64)], omega: f64) -> Result<BandLimitedSignal> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidParams(format!("band must be positive, got {omega}")));
    }
    if coeffs.iter().any(|(a, s)| !a.is_finite() || !s.is_finite()) {
        return Err(Error::InvalidParams("sinc combination terms must be finite".into()));
    }
    let description = if coeffs.is_empty() {
        "zero signal".to_string()
    } else {
        let parts: Vec<String> =
            coeffs.iter().map(|(a, s)| format!("{a}*sinc({omega}(x-{s}))")).collect();
        parts.join(" + ")
    };
    Ok(BandLimitedSignal { band: omega, terms: coeffs.to_vec(), description })
}

/// Values on a contiguous range of integer sample indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexedSamples {
    first: i64,
    values: Vec<f64>,
}

impl IndexedSamples {
    pub fn new(first: i64, values: Vec<f64>) -> Self {
        Self { first, values }
    }

    /// Samples `f(n)` for `lo <= n <= hi` (empty when `hi < lo`).
    pub fn from_fn(lo: i64, hi: i64, mut f: impl FnMut(i64) -> f64) -> Self {
        let values = if hi < lo { Vec::new() } else { (lo..=hi).map(&mut f).collect() };
        Self { first: lo, values }
    }

    pub fn zeros(lo: i64, hi: i64) -> Self {
        Self::from_fn(lo, hi, |_| 0.0)
    }

    pub fn first_index(&self) -> i64 {
        self.first
    }

    pub fn last_index(&self) -> i64 {
        self.first + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, n: i64) -> Option<f64> {
        let k = n.checked_sub(self.first)?;
        usize::try_from(k).ok().and_then(|k| self.values.get(k).copied())
    }

    /// Value at `n` or [`Error::MissingKnownSample`].
    pub fn require(&self, n: i64) -> Result<f64> {
        self.get(n).ok_or(Error::MissingKnownSample { index: n })
    }

    /// Overwrites the value at `n`; returns false when `n` is out of range.
    pub fn set(&mut self, n: i64, v: f64) -> bool {
        match usize::try_from(n - self.first).ok().filter(|&k| k < self.values.len()) {
            Some(k) => {
                self.values[k] = v;
                true
            }
            None => false,
        }
    }

    /// `(index, value)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values.iter().enumerate().map(move |(k, &v)| (self.first + k as i64, v))
    }

    /// Linear combination `a self + b other` over a common index range.
    pub fn combine(&self, a: f64, other: &IndexedSamples, b: f64) -> Result<IndexedSamples> {
        if self.first != other.first || self.values.len() != other.values.len() {
            return Err(Error::DimensionMismatch("sample ranges differ".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect();
        Ok(Self { first: self.first, values })
    }

    fn window(&self, m: i64) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.iter().filter(move |(n, _)| n.abs() <= m)
    }
}

/// One-channel series `r sum_{|n|<=M} f(n t_o) sinc(omega (x - n t_o))`.
///
/// Indices missing from `samples` contribute nothing.
pub fn reconstruct_one_channel(
    p: &OneChannelParams,
    samples: &IndexedSamples,
    m: i64,
    x: f64,
) -> f64 {
    let (w, t) = (p.omega(), p.t_o());
    let scale = w * t / PI;
    scale * samples.window(m).map(|(n, v)| v * sinc(w * (x - n as f64 * t))).sum::<f64>()
}

/// Two-channel derivative oversampling series
/// `sqrt(2 pi) sum_{|k|<=M} f(k t_o) phi_1(x - k t_o) - f'(k t_o) phi_2(x - k t_o)`.
pub fn reconstruct_two_channel(
    p: &TwoChannelParams,
    samples: &IndexedSamples,
    dsamples: &IndexedSamples,
    m: i64,
    x: f64,
) -> f64 {
    two_channel_series(p, samples, dsamples, m, x, dual_gen_1, dual_gen_2)
}

/// Derivative of [`reconstruct_two_channel`] with respect to `x`.
pub fn reconstruct_two_channel_deriv(
    p: &TwoChannelParams,
    samples: &IndexedSamples,
    dsamples: &IndexedSamples,
    m: i64,
    x: f64,
) -> f64 {
    two_channel_series(p, samples, dsamples, m, x, dual_gen_1_deriv, dual_gen_2_deriv)
}

fn two_channel_series(
    p: &TwoChannelParams,
    samples: &IndexedSamples,
    dsamples: &IndexedSamples,
    m: i64,
    x: f64,
    k1: fn(f64, &TwoChannelParams) -> f64,
    k2: fn(f64, &TwoChannelParams) -> f64,
) -> f64 {
    let t = p.t_o();
    let first: f64 = samples.window(m).map(|(n, v)| v * k1(x - n as f64 * t, p)).sum();
    let second: f64 = dsamples.window(m).map(|(n, v)| v * k2(x - n as f64 * t, p)).sum();
    SQRT_2PI * (first - second)
}

/// Critically sampled derivative series with step `t_o = 2 pi / h`:
/// `sum_{|n|<=M} (f(n t_o) + f'(n t_o)(x - n t_o)) sinc^2(h (x - n t_o) / 2)`.
pub fn reconstruct_riesz(
    h: f64,
    samples: &IndexedSamples,
    dsamples: &IndexedSamples,
    m: i64,
    x: f64,
) -> f64 {
    let t = 2.0 * PI / h;
    let kernel = |d: f64| {
        let s = sinc(0.5 * h * d);
        s * s
    };
    let first: f64 = samples.window(m).map(|(n, v)| v * kernel(x - n as f64 * t)).sum();
    let second: f64 = dsamples
        .window(m)
        .map(|(n, v)| {
            let d = x - n as f64 * t;
            v * d * kernel(d)
        })
        .sum();
    first + second
}

/// Maximum absolute error and per-entry relative errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorMetrics {
    pub max_abs: f64,
    /// `|computed - truth| / |truth|`, `+inf` where the truth is zero.
    pub relative: Vec<f64>,
}

pub fn error_metrics(truth: &[f64], computed: &[f64]) -> Result<ErrorMetrics> {
    if truth.len() != computed.len() {
        return Err(Error::LengthMismatch { truth: truth.len(), computed: computed.len() });
    }
    let mut max_abs = 0.0f64;
    let relative = truth
        .iter()
        .zip(computed)
        .map(|(&t, &c)| {
            let err = (c - t).abs();
            max_abs = max_abs.max(err);
            if t == 0.0 {
                f64::INFINITY
            } else {
                err / t.abs()
            }
        })
        .collect();
    Ok(ErrorMetrics { max_abs, relative })
}
