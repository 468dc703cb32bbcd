//! Sinc kernel, dual generators of the two-channel derivative frame and the
//! one-channel kernel.
//!
//! Every function here is pure and evaluated in binary64. Removable
//! singularities at the origin are handled with short Taylor expansions so the
//! kernels are smooth and keep their parity exactly.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `1 / sqrt(2 pi)`
pub const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
/// `sqrt(2 pi)`
pub const SQRT_2PI: f64 = 2.506_628_274_631_000_2;

const SINC_SERIES_CUTOFF: f64 = 1e-4;
const DERIV_SERIES_CUTOFF: f64 = 1e-3;

/// Parameters of the two-channel (function + derivative) scheme.
///
/// `r = omega * t_o / (2 pi)` and `h = 2 pi / t_o`, so `omega = r * h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoChannelParams {
    omega: f64,
    t_o: f64,
    r: f64,
    h: f64,
}

impl TwoChannelParams {
    /// Builds the parameters from the band edge and the sampling step.
    pub fn new(omega: f64, t_o: f64) -> Result<Self> {
        check_positive("omega", omega)?;
        check_positive("t_o", t_o)?;
        let r = omega * t_o / (2.0 * PI);
        check_ratio(r)?;
        Ok(Self { omega, t_o, r, h: 2.0 * PI / t_o })
    }

    /// Builds the parameters from the band edge and the oversampling ratio;
    /// the step is `t_o = 2 pi r / omega`.
    pub fn from_ratio(omega: f64, r: f64) -> Result<Self> {
        check_positive("omega", omega)?;
        check_ratio(r)?;
        let t_o = 2.0 * PI * r / omega;
        Ok(Self { omega, t_o, r, h: 2.0 * PI / t_o })
    }

    /// The `r = 1` limit, where the frame degenerates to a Riesz basis and no
    /// sample can be recovered. Only useful for checking degenerate behaviour.
    pub fn critical(omega: f64) -> Result<Self> {
        check_positive("omega", omega)?;
        let t_o = 2.0 * PI / omega;
        Ok(Self { omega, t_o, r: 1.0, h: omega })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn t_o(&self) -> f64 {
        self.t_o
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn h(&self) -> f64 {
        self.h
    }
}

/// Parameters of the classical one-channel scheme, `r = omega * t_o / pi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneChannelParams {
    omega: f64,
    t_o: f64,
    r: f64,
}

impl OneChannelParams {
    pub fn new(omega: f64, t_o: f64) -> Result<Self> {
        check_positive("omega", omega)?;
        check_positive("t_o", t_o)?;
        let r = omega * t_o / PI;
        check_ratio(r)?;
        Ok(Self { omega, t_o, r })
    }

    /// Step `t_o = pi r / omega`.
    pub fn from_ratio(omega: f64, r: f64) -> Result<Self> {
        check_positive("omega", omega)?;
        check_ratio(r)?;
        Ok(Self { omega, t_o: PI * r / omega, r })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn t_o(&self) -> f64 {
        self.t_o
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{name} must be finite and positive, got {v}")))
    }
}

fn check_ratio(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("oversampling ratio must lie in (0, 1), got {r}")))
    }
}

/// `sin(x) / x`, with value 1 at the origin.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SINC_SERIES_CUTOFF {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Derivative of [`sinc`]: `(x cos x - sin x) / x^2`.
pub fn sinc_deriv(x: f64) -> f64 {
    if x.abs() < DERIV_SERIES_CUTOFF {
        let x2 = x * x;
        x * (-1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0)
    } else {
        (x * x.cos() - x.sin()) / (x * x)
    }
}

/// First dual generator,
/// `(2r(1-r) sinc(omega x) + r^2 sinc^2(omega x / 2)) / sqrt(2 pi)`.
pub fn dual_gen_1(x: f64, p: &TwoChannelParams) -> f64 {
    let r = p.r;
    let u = p.omega * x;
    let half = sinc(0.5 * u);
    INV_SQRT_2PI * (2.0 * r * (1.0 - r) * sinc(u) + r * r * half * half)
}

/// Second dual generator, `-x r^2 sinc^2(omega x / 2) / sqrt(2 pi)`. Odd.
pub fn dual_gen_2(x: f64, p: &TwoChannelParams) -> f64 {
    let r = p.r;
    let half = sinc(0.5 * p.omega * x);
    -INV_SQRT_2PI * x * r * r * half * half
}

/// Derivative of [`dual_gen_1`]. Odd, zero at the origin.
pub fn dual_gen_1_deriv(x: f64, p: &TwoChannelParams) -> f64 {
    let r = p.r;
    let w = p.omega;
    let u = w * x;
    if u.abs() < DERIV_SERIES_CUTOFF {
        // d/dx sinc(u)       = w (-u/3 + u^3/30 - u^5/840)
        // d/dx sinc^2(u / 2) = w/2 (-u/3 + u^3/45 - u^5/1680)
        let u2 = u * u;
        let full = u * (-1.0 / 3.0 + u2 / 30.0 - u2 * u2 / 840.0);
        let half = u * (-1.0 / 3.0 + u2 / 45.0 - u2 * u2 / 1680.0);
        return INV_SQRT_2PI * w * (2.0 * r * (1.0 - r) * full + 0.5 * r * r * half);
    }
    let s_half = sinc(0.5 * u);
    let bracket = (1.0 - r) * (u.cos() - sinc(u)) + r * s_half * ((0.5 * u).cos() - s_half);
    2.0 * r * INV_SQRT_2PI * bracket / x
}

/// Derivative of [`dual_gen_2`],
/// `-r^2 sinc(omega x/2) (2 cos(omega x/2) - sinc(omega x/2)) / sqrt(2 pi)`. Even.
pub fn dual_gen_2_deriv(x: f64, p: &TwoChannelParams) -> f64 {
    let r = p.r;
    let v = 0.5 * p.omega * x;
    let s = sinc(v);
    -INV_SQRT_2PI * r * r * s * (2.0 * v.cos() - s)
}

/// Entry kernel of the one-channel matrix, `r sinc(pi r n)`.
pub fn one_channel_kernel(r: f64, n: i64) -> f64 {
    r * sinc(PI * r * n as f64)
}

/// Dual generator `psi_1*` of the critically sampled derivative Riesz basis.
pub fn riesz_dual_1(x: f64, h: f64) -> f64 {
    let s = sinc(0.5 * h * x);
    INV_SQRT_2PI * s * s
}

/// Dual generator `psi_2*` of the critically sampled derivative Riesz basis.
pub fn riesz_dual_2(x: f64, h: f64) -> f64 {
    let s = sinc(0.5 * h * x);
    -INV_SQRT_2PI * x * s * s
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(r: f64) -> TwoChannelParams {
        TwoChannelParams::from_ratio(PI, r).unwrap()
    }

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
    }

    // composite 5-point Gauss-Legendre
    fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
        const NODES: [f64; 5] = [
            0.0,
            -0.538_469_310_105_683_1,
            0.538_469_310_105_683_1,
            -0.906_179_845_938_664,
            0.906_179_845_938_664,
        ];
        const WEIGHTS: [f64; 5] = [
            0.568_888_888_888_888_9,
            0.478_628_670_499_366_5,
            0.478_628_670_499_366_5,
            0.236_926_885_056_189_1,
            0.236_926_885_056_189_1,
        ];
        let width = (b - a) / panels as f64;
        (0..panels)
            .map(|k| {
                let mid = a + (k as f64 + 0.5) * width;
                NODES
                    .iter()
                    .zip(WEIGHTS)
                    .map(|(t, w)| w * f(mid + 0.5 * width * t))
                    .sum::<f64>()
                    * 0.5
                    * width
            })
            .sum()
    }

    /// Inverse Fourier transform of the triangular spectrum of the first dual
    /// generator, after the change of variable `y = r xi / omega`.
    fn dual_gen_1_quadrature(x: f64, p: &TwoChannelParams) -> f64 {
        let (r, w) = (p.r(), p.omega());
        2.0 * INV_SQRT_2PI * gauss_legendre(|y| (1.0 - y) * (x * y * w / r).cos(), 0.0, r, 400)
    }

    /// Inverse Fourier transform of `i r^2/omega^2 sign(xi)` on `[-omega, omega]`.
    fn dual_gen_2_quadrature(x: f64, p: &TwoChannelParams) -> f64 {
        let (r, w) = (p.r(), p.omega());
        -2.0 * INV_SQRT_2PI * r * r / (w * w)
            * gauss_legendre(|xi| (x * xi).sin(), 0.0, w, 400)
    }

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(PI).abs() < 1e-15);
        assert!((sinc(1.0) - 0.841_470_984_807_896_5).abs() < 1e-15);
        // series branch agrees with the closed form at the cutoff
        let x = SINC_SERIES_CUTOFF;
        assert!((sinc(x * 0.999) - (x * 0.999).sin() / (x * 0.999)).abs() < 1e-16);
    }

    #[test]
    fn sinc_deriv_matches_difference_quotient() {
        for &x in &[-3.7, -0.5, 1e-3, 2e-3, 0.8, 5.1] {
            let h = 1e-6;
            let fd = (sinc(x + h) - sinc(x - h)) / (2.0 * h);
            assert!((sinc_deriv(x) - fd).abs() < 1e-9, "x = {x}");
        }
        assert_eq!(sinc_deriv(0.0), 0.0);
    }

    #[test]
    fn params_validation() {
        assert!(TwoChannelParams::from_ratio(PI, 0.0).is_err());
        assert!(TwoChannelParams::from_ratio(PI, 1.0).is_err());
        assert!(TwoChannelParams::from_ratio(-1.0, 0.5).is_err());
        assert!(TwoChannelParams::new(PI, 2.0).is_err());
        let p = TwoChannelParams::new(PI, 1.2).unwrap();
        assert!((p.r() - 0.6).abs() < 1e-15);
        assert!((p.h() - 2.0 * PI / 1.2).abs() < 1e-15);
        assert!(p.omega() < p.h());
        let q = OneChannelParams::from_ratio(PI, 0.6).unwrap();
        assert!((q.t_o() - 0.6).abs() < 1e-15);
        assert!(OneChannelParams::new(PI, 1.0).is_err());
    }

    #[test]
    fn dual_gen_1_at_origin() {
        let p = params(0.6);
        let expected = (2.0 * 0.6 - 0.36) * INV_SQRT_2PI;
        assert!((dual_gen_1(0.0, &p) - expected).abs() < 1e-16);
    }

    #[test]
    fn dual_gen_quadrature_at_one() {
        // frozen from a 30-digit quadrature of the Fourier inversion integrals
        let p = params(0.6);
        assert!((dual_gen_1(1.0, &p) - 0.058_206_677_839_555_06).abs() < 1e-10);
        assert!((dual_gen_2(1.0, &p) + 0.058_206_677_839_555_06).abs() < 1e-10);
    }

    #[test]
    fn dual_gen_1_matches_quadrature_on_grid() {
        let p = params(0.6);
        for k in 0..100 {
            let x = -7.0 + 14.0 * k as f64 / 99.0;
            let q = dual_gen_1_quadrature(x, &p);
            assert!((dual_gen_1(x, &p) - q).abs() < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn dual_gen_2_matches_quadrature_on_grid() {
        let p = params(0.75);
        for k in 0..100 {
            let x = -7.0 + 14.0 * k as f64 / 99.0;
            let q = dual_gen_2_quadrature(x, &p);
            assert!((dual_gen_2(x, &p) - q).abs() < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let step = 1e-5;
        for _ in 0..500 {
            let p = params(rng.random_range(0.05..0.95));
            let x: f64 = rng.random_range(-20.0..20.0);
            if x.abs() < 0.05 {
                continue;
            }
            let fd1 = (dual_gen_1(x + step, &p) - dual_gen_1(x - step, &p)) / (2.0 * step);
            let fd2 = (dual_gen_2(x + step, &p) - dual_gen_2(x - step, &p)) / (2.0 * step);
            let d1 = dual_gen_1_deriv(x, &p);
            let d2 = dual_gen_2_deriv(x, &p);
            // relative, with an absolute floor for values near a zero crossing
            assert!((d1 - fd1).abs() <= 1e-6 * d1.abs().max(1e-3), "x = {x}");
            assert!((d2 - fd2).abs() <= 1e-6 * d2.abs().max(1e-3), "x = {x}");
        }
    }

    #[test]
    fn deriv_series_branch_is_continuous() {
        let p = params(0.7);
        let edge = DERIV_SERIES_CUTOFF / p.omega();
        let inside = dual_gen_1_deriv(edge * (1.0 - 1e-9), &p);
        let outside = dual_gen_1_deriv(edge * (1.0 + 1e-9), &p);
        assert!(rel_close(inside, outside, 1e-6));
        assert_eq!(dual_gen_1_deriv(0.0, &p), 0.0);
        // a point inside the series branch
        let x = 0.5 * edge;
        let h = 1e-5;
        let fd = (dual_gen_1(x + h, &p) - dual_gen_1(x - h, &p)) / (2.0 * h);
        assert!(rel_close(dual_gen_1_deriv(x, &p), fd, 1e-6));
    }

    #[test]
    fn dual_gen_2_deriv_at_origin() {
        let p = params(0.8);
        assert!((dual_gen_2_deriv(0.0, &p) + 0.64 * INV_SQRT_2PI).abs() < 1e-16);
        assert_eq!(dual_gen_2(0.0, &p), 0.0);
    }

    #[test]
    fn parity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let p = params(rng.random_range(0.01..0.99));
            let x: f64 = rng.random_range(-50.0..50.0);
            assert_eq!(sinc(x), sinc(-x));
            assert_eq!(dual_gen_1(x, &p), dual_gen_1(-x, &p));
            assert_eq!(dual_gen_2(x, &p), -dual_gen_2(-x, &p));
            assert_eq!(dual_gen_1_deriv(x, &p), -dual_gen_1_deriv(-x, &p));
            assert_eq!(dual_gen_2_deriv(x, &p), dual_gen_2_deriv(-x, &p));
        }
    }

    #[test]
    fn critical_ratio_is_interpolating() {
        let p = TwoChannelParams::critical(PI).unwrap();
        for n in -50i64..=50 {
            let x = n as f64 * p.t_o();
            let delta = if n == 0 { 1.0 } else { 0.0 };
            assert!((SQRT_2PI * dual_gen_1(x, &p) - delta).abs() < 1e-14, "n = {n}");
            assert!((SQRT_2PI * dual_gen_2(x, &p)).abs() < 1e-14);
            assert!((-SQRT_2PI * dual_gen_2_deriv(x, &p) - delta).abs() < 1e-14);
            assert!(dual_gen_1_deriv(x, &p).abs() < 1e-14);
        }
    }

    #[test]
    fn integer_mr_derivative_entries() {
        // m r integer: sqrt(2 pi) phi_1'(m i t_o) = (1 - r) omega / (m pi i)
        let p = params(0.6);
        let m = 5;
        for i in [-3i64, -1, 1, 2, 4] {
            let x = (m * i) as f64 * p.t_o();
            let expected = 0.4 * PI / (m as f64 * PI * i as f64);
            assert!((SQRT_2PI * dual_gen_1_deriv(x, &p) - expected).abs() < 1e-13);
            assert!(dual_gen_2_deriv(x, &p).abs() < 1e-13);
        }
    }

    #[test]
    fn one_channel_kernel_values() {
        assert_eq!(one_channel_kernel(0.37, 0), 0.37);
        assert!(one_channel_kernel(0.5, 2).abs() < 1e-16);
        assert!((one_channel_kernel(0.6, 1) - 0.302_730_691_456_262_8).abs() < 1e-15);
    }

    #[test]
    fn riesz_duals() {
        let h = 2.5;
        assert_eq!(riesz_dual_1(0.0, h), INV_SQRT_2PI);
        assert_eq!(riesz_dual_2(0.0, h), 0.0);
        assert!(riesz_dual_1(2.0 * PI / h, h).abs() < 1e-16);
    }

    #[test]
    fn constants() {
        assert!((SQRT_2PI - (2.0 * PI).sqrt()).abs() < 1e-15);
        assert!((INV_SQRT_2PI * SQRT_2PI - 1.0).abs() < 1e-15);
    }
}
