//! Recovery of missing samples, plain and Tikhonov-regularized, with a seeded
//! Gaussian noise model.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{OneChannelParams, TwoChannelParams};
use crate::linalg::{
    discrepancy_select, norm2, solve_linear, spectral_condition, DenseMatrix, CONDITION_TRUST_LIMIT,
};
use crate::signals::{BandLimitedSignal, IndexedSamples};
use crate::system::{build_r, build_s, rhs_one_channel, rhs_two_channel_from_samples, MissingSet};

/// Unregularized solves above this condition number carry a warning.
pub const ILL_CONDITIONED_LIMIT: f64 = 1e12;

/// Zero-mean Gaussian noise rescaled to the exact norm `magnitude * sqrt(len)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub magnitude: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(magnitude: f64, seed: u64) -> Result<Self> {
        if !(magnitude >= 0.0 && magnitude.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "noise magnitude must be finite and >= 0, got {magnitude}"
            )));
        }
        Ok(Self { magnitude, seed })
    }
}

/// Where the noise enters the system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseTarget {
    /// Added to the assembled right-hand side; `delta` is the noise norm.
    #[default]
    RightHandSide,
    /// Added to the known samples before assembly; `delta` is the norm of the
    /// noise carried through the right-hand side.
    Samples,
}

/// Returns `data + e` and `||e||`.
pub fn add_noise(data: &[f64], spec: &NoiseSpec) -> (Vec<f64>, f64) {
    let e = noise_vector(data.len(), spec);
    let delta = norm2(&e);
    (data.iter().zip(&e).map(|(d, n)| d + n).collect(), delta)
}

fn noise_vector(len: usize, spec: &NoiseSpec) -> Vec<f64> {
    if len == 0 || spec.magnitude == 0.0 {
        return vec![0.0; len];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut e: Vec<f64> = (0..len).map(|_| StandardNormal.sample(&mut rng)).collect();
    let raw = norm2(&e);
    if raw > 0.0 {
        let scale = spec.magnitude * (len as f64).sqrt() / raw;
        e.iter_mut().for_each(|v| *v *= scale);
    }
    e
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RecoveryOptions {
    pub noise: Option<NoiseSpec>,
    pub noise_target: NoiseTarget,
    /// Choose `lambda` by the discrepancy principle.
    pub regularize: bool,
    /// Replaces the noise norm as the discrepancy target.
    pub delta_override: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Warning {
    /// Unregularized solve of a system with condition number above `1e12`.
    IllConditioned { condition: f64 },
    /// Condition number above `1e15`; its digits are not trustworthy.
    BeyondBinary64Trust { condition: f64 },
    /// The residual exceeded the discrepancy window at the smallest `lambda`.
    BracketFailure { lambda: f64 },
    /// The residual stayed below `delta` at the largest `lambda`.
    Saturated { lambda: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecoveredSample {
    pub index: i64,
    pub x: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryResult {
    pub recovered_function: Vec<RecoveredSample>,
    pub recovered_derivative: Option<Vec<RecoveredSample>>,
    pub lambda_used: f64,
    /// `||A z - rhs||` for the right-hand side actually solved against.
    pub residual_norm: f64,
    pub condition_estimate: f64,
    /// Discrepancy target, when noise or an override was supplied.
    pub delta: Option<f64>,
    pub warnings: Vec<Warning>,
}

impl RecoveryResult {
    pub fn function_values(&self) -> Vec<f64> {
        self.recovered_function.iter().map(|s| s.value).collect()
    }

    pub fn derivative_values(&self) -> Option<Vec<f64>> {
        self.recovered_derivative.as_ref().map(|d| d.iter().map(|s| s.value).collect())
    }

    /// Function values first, then derivative values.
    pub fn all_values(&self) -> Vec<f64> {
        let mut v = self.function_values();
        v.extend(self.derivative_values().unwrap_or_default());
        v
    }
}

/// Samples of `f` and `f'` on `n step` for `|n| <= m`.
pub fn sample_signal(f: &BandLimitedSignal, step: f64, m: i64) -> (IndexedSamples, IndexedSamples) {
    (f.samples(step, -m, m), f.deriv_samples(step, -m, m))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Channel {
    Function,
    Derivative,
}

type RhsFn<'a> = Box<dyn Fn(&IndexedSamples, &IndexedSamples) -> Result<Vec<f64>> + 'a>;

/// Everything the generic solver needs: the matrix, a right-hand side that is
/// linear in the sample data, and the data entries it reads.
struct Problem<'a> {
    matrix: DenseMatrix,
    rhs: RhsFn<'a>,
    data_entries: Vec<(Channel, i64)>,
}

struct Solution {
    z: Vec<f64>,
    lambda: f64,
    residual: f64,
    condition: f64,
    delta: Option<f64>,
    warnings: Vec<Warning>,
}

fn solve_problem(
    problem: &Problem<'_>,
    samples: &IndexedSamples,
    dsamples: &IndexedSamples,
    opts: &RecoveryOptions,
) -> Result<Solution> {
    if let Some(d) = opts.delta_override {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::InvalidParams(format!("delta must be finite and positive, got {d}")));
        }
    }
    let clean = (problem.rhs)(samples, dsamples)?;
    let (rhs, noise_delta) = match opts.noise {
        None => (clean, None),
        Some(spec) => match opts.noise_target {
            NoiseTarget::RightHandSide => {
                let (noisy, delta) = add_noise(&clean, &spec);
                (noisy, Some(delta))
            }
            NoiseTarget::Samples => {
                let e = noise_vector(problem.data_entries.len(), &spec);
                let mut noisy_s = samples.clone();
                let mut noisy_d = dsamples.clone();
                let mut only_s = IndexedSamples::zeros(samples.first_index(), samples.last_index());
                let mut only_d = IndexedSamples::zeros(dsamples.first_index(), dsamples.last_index());
                for (&(ch, n), &v) in problem.data_entries.iter().zip(&e) {
                    let (target, only) = match ch {
                        Channel::Function => (&mut noisy_s, &mut only_s),
                        Channel::Derivative => (&mut noisy_d, &mut only_d),
                    };
                    let old = target.require(n)?;
                    target.set(n, old + v);
                    only.set(n, v);
                }
                let noisy = (problem.rhs)(&noisy_s, &noisy_d)?;
                let propagated = (problem.rhs)(&only_s, &only_d)?;
                (noisy, Some(norm2(&propagated)))
            }
        },
    };
    let delta = opts.delta_override.or(noise_delta);

    let a = &problem.matrix;
    let condition = spectral_condition(a);
    let mut warnings = Vec::new();
    let (z, lambda) = if opts.regularize {
        let delta = delta.ok_or_else(|| {
            Error::InvalidParams("regularization needs a noise model or an explicit delta".into())
        })?;
        let out = discrepancy_select(a, &rhs, delta)?;
        if out.bracket_failure {
            warnings.push(Warning::BracketFailure { lambda: out.lambda });
        }
        if out.saturated {
            warnings.push(Warning::Saturated { lambda: out.lambda });
        }
        (out.x, out.lambda)
    } else {
        if condition > ILL_CONDITIONED_LIMIT {
            warnings.push(Warning::IllConditioned { condition });
        }
        (solve_linear(a, &rhs)?, 0.0)
    };
    if condition > CONDITION_TRUST_LIMIT {
        warnings.push(Warning::BeyondBinary64Trust { condition });
    }
    let az = a.matvec(&z)?;
    let residual = norm2(&az.iter().zip(&rhs).map(|(u, v)| u - v).collect::<Vec<_>>());
    Ok(Solution { z, lambda, residual, condition, delta, warnings })
}

fn samples_at(u: &MissingSet, t: f64, values: &[f64]) -> Vec<RecoveredSample> {
    u.zip(values).map(|(index, value)| RecoveredSample { index, x: index as f64 * t, value }).collect()
}

fn known_entries(u: &MissingSet, m: i64, ch: Channel) -> impl Iterator<Item = (Channel, i64)> + '_ {
    (-m..=m).filter(move |n| !u.contains(*n)).map(move |n| (ch, n))
}

/// Solves `(I - S) Z = C` for the missing samples of both channels.
///
/// `samples` and `dsamples` must cover `|n| <= m`; their values at the
/// missing indices are ignored.
pub fn recover_two_channel(
    p: &TwoChannelParams,
    u: &MissingSet,
    samples: &IndexedSamples,
    dsamples: &IndexedSamples,
    m: i64,
    opts: &RecoveryOptions,
) -> Result<RecoveryResult> {
    let problem = Problem {
        matrix: build_s(p, u).identity_minus(),
        rhs: Box::new(move |s, d| rhs_two_channel_from_samples(p, u, s, d, m)),
        data_entries: known_entries(u, m, Channel::Function)
            .chain(known_entries(u, m, Channel::Derivative))
            .collect(),
    };
    let sol = solve_problem(&problem, samples, dsamples, opts)?;
    let n = u.len();
    Ok(RecoveryResult {
        recovered_function: samples_at(u, p.t_o(), &sol.z[..n]),
        recovered_derivative: Some(samples_at(u, p.t_o(), &sol.z[n..])),
        lambda_used: sol.lambda,
        residual_norm: sol.residual,
        condition_estimate: sol.condition,
        delta: sol.delta,
        warnings: sol.warnings,
    })
}

/// Recovers the missing function samples when every derivative sample is
/// known: `(I - S11) X = C1 + S12 Y`.
pub fn recover_function_channel(
    p: &TwoChannelParams,
    u: &MissingSet,
    samples: &IndexedSamples,
    dsamples: &IndexedSamples,
    m: i64,
    opts: &RecoveryOptions,
) -> Result<RecoveryResult> {
    let n = u.len();
    let s = build_s(p, u);
    let s12 = s.block(0, n, n, n);
    let problem = Problem {
        matrix: s.block(0, 0, n, n).identity_minus(),
        rhs: Box::new(move |sm, d| {
            let c = rhs_two_channel_from_samples(p, u, sm, d, m)?;
            let y = u.indices().iter().map(|&l| d.require(l)).collect::<Result<Vec<_>>>()?;
            let s12y = s12.matvec(&y)?;
            Ok(c[..n].iter().zip(&s12y).map(|(a, b)| a + b).collect())
        }),
        data_entries: known_entries(u, m, Channel::Function)
            .chain((-m..=m).map(|k| (Channel::Derivative, k)))
            .collect(),
    };
    let sol = solve_problem(&problem, samples, dsamples, opts)?;
    Ok(RecoveryResult {
        recovered_function: samples_at(u, p.t_o(), &sol.z),
        recovered_derivative: None,
        lambda_used: sol.lambda,
        residual_norm: sol.residual,
        condition_estimate: sol.condition,
        delta: sol.delta,
        warnings: sol.warnings,
    })
}

/// Recovers the missing derivative samples when every function sample is
/// known: `(I - S22) Y = C2 + S21 X`. The result is reported in
/// `recovered_derivative`; `recovered_function` is empty.
pub fn recover_derivative_channel(
    p: &TwoChannelParams,
    u: &MissingSet,
    samples: &IndexedSamples,
    dsamples: &IndexedSamples,
    m: i64,
    opts: &RecoveryOptions,
) -> Result<RecoveryResult> {
    let n = u.len();
    let s = build_s(p, u);
    let s21 = s.block(n, 0, n, n);
    let problem = Problem {
        matrix: s.block(n, n, n, n).identity_minus(),
        rhs: Box::new(move |sm, d| {
            let c = rhs_two_channel_from_samples(p, u, sm, d, m)?;
            let x = u.indices().iter().map(|&l| sm.require(l)).collect::<Result<Vec<_>>>()?;
            let s21x = s21.matvec(&x)?;
            Ok(c[n..].iter().zip(&s21x).map(|(a, b)| a + b).collect())
        }),
        data_entries: (-m..=m)
            .map(|k| (Channel::Function, k))
            .chain(known_entries(u, m, Channel::Derivative))
            .collect(),
    };
    let sol = solve_problem(&problem, samples, dsamples, opts)?;
    Ok(RecoveryResult {
        recovered_function: Vec::new(),
        recovered_derivative: Some(samples_at(u, p.t_o(), &sol.z)),
        lambda_used: sol.lambda,
        residual_norm: sol.residual,
        condition_estimate: sol.condition,
        delta: sol.delta,
        warnings: sol.warnings,
    })
}

/// Solves `(I - R) X = B` for the missing samples of a single channel.
pub fn recover_one_channel(
    p: &OneChannelParams,
    u: &MissingSet,
    samples: &IndexedSamples,
    m: i64,
    opts: &RecoveryOptions,
) -> Result<RecoveryResult> {
    let problem = Problem {
        matrix: build_r(p, u).identity_minus(),
        rhs: Box::new(move |s, _| rhs_one_channel(p, u, s, m)),
        data_entries: known_entries(u, m, Channel::Function).collect(),
    };
    let empty = IndexedSamples::zeros(0, -1);
    let sol = solve_problem(&problem, samples, &empty, opts)?;
    Ok(RecoveryResult {
        recovered_function: samples_at(u, p.t_o(), &sol.z),
        recovered_derivative: None,
        lambda_used: sol.lambda,
        residual_norm: sol.residual,
        condition_estimate: sol.condition,
        delta: sol.delta,
        warnings: sol.warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::{error_metrics, sinc_combination, test_signal_g};
    use crate::system::structural_case;
    use std::f64::consts::PI;

    fn truth(f: &BandLimitedSignal, u: &MissingSet, t: f64) -> (Vec<f64>, Vec<f64>) {
        let x: Vec<f64> = u.indices().iter().map(|&l| f.eval(l as f64 * t)).collect();
        let y: Vec<f64> = u.indices().iter().map(|&l| f.eval_deriv(l as f64 * t)).collect();
        (x, y)
    }

    #[test]
    fn noise_model() {
        let data = vec![1.0; 100];
        let (same, d0) = add_noise(&data, &NoiseSpec::new(0.0, 1).unwrap());
        assert_eq!(same, data);
        assert_eq!(d0, 0.0);
        let spec = NoiseSpec::new(1e-2, 7).unwrap();
        let (a, da) = add_noise(&data, &spec);
        let (b, db) = add_noise(&data, &spec);
        assert_eq!(a, b);
        assert_eq!(da, db);
        assert!((da - 0.1).abs() < 1e-15);
        let (c, _) = add_noise(&data, &NoiseSpec::new(1e-2, 8).unwrap());
        assert_ne!(a, c);
        assert!(NoiseSpec::new(-1.0, 0).is_err());
    }

    #[test]
    fn zero_signal_recovers_zeros() {
        let p = TwoChannelParams::from_ratio(PI, 0.6).unwrap();
        let q = OneChannelParams::from_ratio(PI, 0.6).unwrap();
        let u = MissingSet::contiguous(-2, 3).unwrap();
        let z = IndexedSamples::zeros(-60, 60);
        let opts = RecoveryOptions::default();
        let r = recover_two_channel(&p, &u, &z, &z, 60, &opts).unwrap();
        assert!(r.all_values().iter().all(|&v| v == 0.0));
        assert_eq!(r.lambda_used, 0.0);
        for r in [
            recover_function_channel(&p, &u, &z, &z, 60, &opts).unwrap(),
            recover_derivative_channel(&p, &u, &z, &z, 60, &opts).unwrap(),
            recover_one_channel(&q, &u, &z, 60, &opts).unwrap(),
        ] {
            assert!(r.all_values().iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn one_channel_matches_reference_samples() {
        let g = test_signal_g();
        let q = OneChannelParams::from_ratio(PI, 0.6).unwrap();
        let u = MissingSet::contiguous(0, 5).unwrap();
        let s = g.samples(q.t_o(), -500, 500);
        let r = recover_one_channel(&q, &u, &s, 500, &RecoveryOptions::default()).unwrap();
        let v = r.function_values();
        for (k, reference) in [(0, 0.1498), (1, -0.3096), (4, 0.8029), (5, 0.0585)] {
            assert!((v[k] - reference).abs() < 2e-3, "k={k}: {}", v[k]);
        }
        assert!((r.condition_estimate - 3.07e4).abs() < 0.05 * 3.07e4);
        // the returned solution satisfies its own system
        let b = rhs_one_channel(&q, &u, &s, 500).unwrap();
        let ax = build_r(&q, &u).identity_minus().matvec(&v).unwrap();
        let rel = norm2(&ax.iter().zip(&b).map(|(a, c)| a - c).collect::<Vec<_>>()) / norm2(&b);
        assert!(rel < 1e-10);
    }

    #[test]
    fn two_channel_interleaved_recovery() {
        let g = test_signal_g();
        let p = TwoChannelParams::from_ratio(PI, 0.7).unwrap();
        let u = MissingSet::factored(4, &[-1, 0, 1, 2, 3, 4]).unwrap();
        let (s, d) = sample_signal(&g, p.t_o(), 500);
        let r = recover_two_channel(&p, &u, &s, &d, 500, &RecoveryOptions::default()).unwrap();
        let (x, y) = truth(&g, &u, p.t_o());
        assert!(error_metrics(&x, &r.function_values()).unwrap().max_abs < 8e-4);
        assert!(error_metrics(&y, &r.derivative_values().unwrap()).unwrap().max_abs < 8e-4);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn single_channel_variants() {
        let g = test_signal_g();
        let p = TwoChannelParams::from_ratio(PI, 0.7).unwrap();
        let u = MissingSet::factored(8, &[0, 1, 2, 3]).unwrap();
        let (s, d) = sample_signal(&g, p.t_o(), 500);
        let (x, y) = truth(&g, &u, p.t_o());
        let opts = RecoveryOptions::default();
        let rf = recover_function_channel(&p, &u, &s, &d, 500, &opts).unwrap();
        assert!(error_metrics(&x, &rf.function_values()).unwrap().max_abs < 1e-3);
        let rd = recover_derivative_channel(&p, &u, &s, &d, 500, &opts).unwrap();
        assert!(error_metrics(&y, &rd.derivative_values().unwrap()).unwrap().max_abs < 1e-3);

        // the function-channel solution satisfies the first N rows of the full system
        let n = u.len();
        let c = rhs_two_channel_from_samples(&p, &u, &s, &d, 500).unwrap();
        let mut z = rf.function_values();
        z.extend(&y);
        let az = build_s(&p, &u).identity_minus().matvec(&z).unwrap();
        for k in 0..n {
            assert!((az[k] - c[k]).abs() < 1e-10);
        }
    }

    #[test]
    fn derivative_channel_integer_case_is_diagonal() {
        let f = sinc_combination(&[(0.9, 0.35), (-0.4, 2.7)], PI).unwrap();
        let p = TwoChannelParams::from_ratio(PI, 0.6).unwrap();
        let u = MissingSet::factored(5, &[0, 1, 2]).unwrap();
        assert!(structural_case(5, 0.6).is_some());
        let (s, d) = sample_signal(&f, p.t_o(), 200);
        let r = recover_derivative_channel(&p, &u, &s, &d, 200, &RecoveryOptions::default()).unwrap();
        let c = rhs_two_channel_from_samples(&p, &u, &s, &d, 200).unwrap();
        let sm = build_s(&p, &u);
        let x: Vec<f64> = u.indices().iter().map(|&l| s.get(l).unwrap()).collect();
        let s21x = sm.block(3, 0, 3, 3).matvec(&x).unwrap();
        for (k, y) in r.derivative_values().unwrap().iter().enumerate() {
            let closed = (c[3 + k] + s21x[k]) / (1.0 - 0.36);
            assert!((y - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn ill_conditioned_warning_and_regularization() {
        let g = test_signal_g();
        let p = TwoChannelParams::from_ratio(PI, 0.6).unwrap();
        let u = MissingSet::contiguous(-2, 3).unwrap();
        let (s, d) = sample_signal(&g, p.t_o(), 500);
        let noise = Some(NoiseSpec::new(1e-2, 3).unwrap());
        let plain = recover_two_channel(&p, &u, &s, &d, 500, &RecoveryOptions { noise, ..Default::default() })
            .unwrap();
        assert!(plain.condition_estimate > 1e7);
        assert_eq!(plain.lambda_used, 0.0);
        let reg = recover_two_channel(
            &p,
            &u,
            &s,
            &d,
            500,
            &RecoveryOptions { noise, regularize: true, ..Default::default() },
        )
        .unwrap();
        assert!(reg.lambda_used > 0.0);
        let delta = reg.delta.unwrap();
        assert!(reg.residual_norm >= delta && reg.residual_norm <= 1.05 * delta);
        let (x, _) = truth(&g, &u, p.t_o());
        let e_plain = error_metrics(&x, &plain.function_values()).unwrap().max_abs;
        let e_reg = error_metrics(&x, &reg.function_values()).unwrap().max_abs;
        assert!(e_reg < e_plain);
    }

    #[test]
    fn warning_flag_above_limit() {
        let g = test_signal_g();
        let p = TwoChannelParams::from_ratio(PI, 0.9).unwrap();
        let u = MissingSet::contiguous(0, 9).unwrap();
        let (s, d) = sample_signal(&g, p.t_o(), 100);
        match recover_two_channel(&p, &u, &s, &d, 100, &RecoveryOptions::default()) {
            Ok(r) => assert!(r.warnings.iter().any(|w| matches!(w, Warning::IllConditioned { .. }))),
            Err(e) => assert!(e.is_numerical()),
        }
    }

    #[test]
    fn regularization_needs_delta() {
        let q = OneChannelParams::from_ratio(PI, 0.6).unwrap();
        let u = MissingSet::contiguous(0, 2).unwrap();
        let s = test_signal_g().samples(q.t_o(), -50, 50);
        let opts = RecoveryOptions { regularize: true, ..Default::default() };
        assert!(matches!(recover_one_channel(&q, &u, &s, 50, &opts), Err(Error::InvalidParams(_))));
        let opts = RecoveryOptions { regularize: true, delta_override: Some(1e3), ..Default::default() };
        assert!(matches!(recover_one_channel(&q, &u, &s, 50, &opts), Err(Error::DeltaTooLarge { .. })));
    }

    #[test]
    fn sample_noise_delta_is_propagated_norm() {
        let q = OneChannelParams::from_ratio(PI, 0.6).unwrap();
        let u = MissingSet::contiguous(-2, 3).unwrap();
        let s = test_signal_g().samples(q.t_o(), -80, 80);
        let spec = NoiseSpec::new(1e-2, 11).unwrap();
        let opts = RecoveryOptions { noise: Some(spec), noise_target: NoiseTarget::Samples, ..Default::default() };
        let r = recover_one_channel(&q, &u, &s, 80, &opts).unwrap();
        // noise over 161 - 6 known samples, pushed through the kernel sums
        let e = noise_vector(155, &spec);
        let mut only = IndexedSamples::zeros(-80, 80);
        let known: Vec<i64> = (-80..=80).filter(|n| !u.contains(*n)).collect();
        for (n, v) in known.iter().zip(&e) {
            only.set(*n, *v);
        }
        let expected = norm2(&rhs_one_channel(&q, &u, &only, 80).unwrap());
        assert!((r.delta.unwrap() - expected).abs() < 1e-15);
    }
}
