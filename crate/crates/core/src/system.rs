//! Assembly of the recovery systems and the analytic eigenvalue predictions
//! for interleaved missing sets `m * I`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{
    dual_gen_1, dual_gen_1_deriv, dual_gen_2, dual_gen_2_deriv, one_channel_kernel,
    OneChannelParams, TwoChannelParams, SQRT_2PI,
};
use crate::linalg::DenseMatrix;
use crate::signals::{BandLimitedSignal, IndexedSamples};

/// Truncation half-width used when none is given.
pub const DEFAULT_TRUNCATION: i64 = 500;
/// `|m r - round(m r)|` below this counts as an integer.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-9;

/// Sorted distinct indices of the missing samples, optionally of the form
/// `m * base`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingSet {
    indices: Vec<i64>,
    factorization: Option<(u32, Vec<i64>)>,
}

impl MissingSet {
    /// Sorts the indices; rejects an empty list and duplicates.
    pub fn new(indices: &[i64]) -> Result<Self> {
        Ok(Self { indices: sorted_distinct(indices)?, factorization: None })
    }

    /// The set `m * base`.
    pub fn factored(m: u32, base: &[i64]) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidMissingSet("interleaving factor m must be positive".into()));
        }
        let base = sorted_distinct(base)?;
        let indices = base
            .iter()
            .map(|&i| i.checked_mul(m as i64))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidMissingSet("m * base overflows".into()))?;
        Ok(Self { indices, factorization: Some((m, base)) })
    }

    /// `{lo, lo+1, ..., hi}`.
    pub fn contiguous(lo: i64, hi: i64) -> Result<Self> {
        if hi < lo {
            return Err(Error::InvalidMissingSet(format!("empty range {lo}..={hi}")));
        }
        Self::new(&(lo..=hi).collect::<Vec<_>>())
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn factorization(&self) -> Option<(u32, &[i64])> {
        self.factorization.as_ref().map(|(m, b)| (*m, b.as_slice()))
    }

    pub fn contains(&self, n: i64) -> bool {
        self.indices.binary_search(&n).is_ok()
    }

    pub fn max_abs(&self) -> i64 {
        self.indices.iter().map(|i| i.abs()).max().unwrap_or(0)
    }

    /// True when consecutive indices are equally spaced.
    pub fn is_equispaced(&self) -> bool {
        self.indices.windows(3).all(|w| w[1] - w[0] == w[2] - w[1])
    }

    /// `v` indexed by position in the set, as `(index, value)` pairs.
    pub fn zip<'a>(&'a self, v: &'a [f64]) -> impl Iterator<Item = (i64, f64)> + 'a {
        self.indices.iter().copied().zip(v.iter().copied())
    }
}

fn sorted_distinct(indices: &[i64]) -> Result<Vec<i64>> {
    if indices.is_empty() {
        return Err(Error::InvalidMissingSet("missing set must be nonempty".into()));
    }
    let set: BTreeSet<i64> = indices.iter().copied().collect();
    if set.len() != indices.len() {
        return Err(Error::InvalidMissingSet("missing indices must be distinct".into()));
    }
    Ok(set.into_iter().collect())
}

fn check_truncation(u: &MissingSet, m: i64) -> Result<()> {
    if m <= u.max_abs() {
        return Err(Error::InvalidParams(format!(
            "truncation M = {m} must exceed the largest missing index magnitude {}",
            u.max_abs()
        )));
    }
    Ok(())
}

/// The full two-channel system `(I - S) Z = C`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSystem {
    pub s: DenseMatrix,
    pub s11: DenseMatrix,
    pub s12: DenseMatrix,
    pub s21: DenseMatrix,
    pub s22: DenseMatrix,
    pub c: Vec<f64>,
    pub truncation_m: i64,
    pub params: TwoChannelParams,
    pub missing: MissingSet,
}

impl BlockSystem {
    /// Assembles `S` and `C` from the samples of `f` and `f'`.
    pub fn assemble(
        p: &TwoChannelParams,
        u: &MissingSet,
        f: &BandLimitedSignal,
        m: i64,
    ) -> Result<Self> {
        let c = rhs_two_channel(p, u, f, m)?;
        Ok(Self::with_rhs(p, u, c, m))
    }

    /// Assembles `S` around an externally computed right-hand side.
    pub fn with_rhs(p: &TwoChannelParams, u: &MissingSet, c: Vec<f64>, m: i64) -> Self {
        let s = build_s(p, u);
        let n = u.len();
        Self {
            s11: s.block(0, 0, n, n),
            s12: s.block(0, n, n, n),
            s21: s.block(n, 0, n, n),
            s22: s.block(n, n, n, n),
            s,
            c,
            truncation_m: m,
            params: *p,
            missing: u.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.missing.len()
    }

    /// `I - S`.
    pub fn system_matrix(&self) -> DenseMatrix {
        self.s.identity_minus()
    }

    pub fn c1(&self) -> &[f64] {
        &self.c[..self.n()]
    }

    pub fn c2(&self) -> &[f64] {
        &self.c[self.n()..]
    }
}

/// The `2N x 2N` matrix `[[S11, S12], [S21, S22]]`.
pub fn build_s(p: &TwoChannelParams, u: &MissingSet) -> DenseMatrix {
    let l = u.indices();
    let n = l.len();
    let t = p.t_o();
    let mut s = DenseMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        for j in 0..n {
            let d = (l[k] - l[j]) as f64 * t;
            s[(k, j)] = SQRT_2PI * dual_gen_1(d, p);
            s[(k, j + n)] = -SQRT_2PI * dual_gen_2(d, p);
            s[(k + n, j)] = SQRT_2PI * dual_gen_1_deriv(d, p);
            s[(k + n, j + n)] = -SQRT_2PI * dual_gen_2_deriv(d, p);
        }
    }
    s
}

/// One-channel matrix `R(j, k) = r sinc(pi r (l_j - l_k))`.
pub fn build_r(p: &OneChannelParams, u: &MissingSet) -> DenseMatrix {
    let l = u.indices();
    let n = l.len();
    DenseMatrix::from_fn(n, n, |j, k| one_channel_kernel(p.r(), l[j] - l[k]))
}

/// Two-channel right-hand side from a signal, sampled on the grid `n t_o`.
pub fn rhs_two_channel(
    p: &TwoChannelParams,
    u: &MissingSet,
    f: &BandLimitedSignal,
    m: i64,
) -> Result<Vec<f64>> {
    check_truncation(u, m)?;
    let t = p.t_o();
    let samples = f.samples(t, -m, m);
    let dsamples = f.deriv_samples(t, -m, m);
    rhs_two_channel_from_samples(p, u, &samples, &dsamples, m)
}

/// Two-channel right-hand side
/// `c_k = sqrt(2 pi) sum_{n not in U, |n|<=M} f(n t_o) phi_1((l_k - n) t_o) - f'(n t_o) phi_2((l_k - n) t_o)`
/// with the derivative kernels in the lower half.
pub fn rhs_two_channel_from_samples(
    p: &TwoChannelParams,
    u: &MissingSet,
    samples: &IndexedSamples,
    dsamples: &IndexedSamples,
    m: i64,
) -> Result<Vec<f64>> {
    check_truncation(u, m)?;
    let l = u.indices();
    let big_n = l.len();
    let t = p.t_o();
    let mut c = vec![0.0; 2 * big_n];
    for n in -m..=m {
        if u.contains(n) {
            continue;
        }
        let fv = samples.require(n)?;
        let dv = dsamples.require(n)?;
        for (k, &lk) in l.iter().enumerate() {
            let d = (lk - n) as f64 * t;
            c[k] += fv * dual_gen_1(d, p) - dv * dual_gen_2(d, p);
            c[k + big_n] += fv * dual_gen_1_deriv(d, p) - dv * dual_gen_2_deriv(d, p);
        }
    }
    c.iter_mut().for_each(|v| *v *= SQRT_2PI);
    Ok(c)
}

/// One-channel right-hand side `b_j = r sum_{k not in U, |k|<=M} f(k t_o) sinc(pi r (l_j - k))`.
pub fn rhs_one_channel(
    p: &OneChannelParams,
    u: &MissingSet,
    samples: &IndexedSamples,
    m: i64,
) -> Result<Vec<f64>> {
    check_truncation(u, m)?;
    let l = u.indices();
    let mut b = vec![0.0; l.len()];
    for k in -m..=m {
        if u.contains(k) {
            continue;
        }
        let fv = samples.require(k)?;
        for (j, &lj) in l.iter().enumerate() {
            b[j] += fv * one_channel_kernel(p.r(), lj - k);
        }
    }
    Ok(b)
}

/// Interval bounds on the eigenvalues of `S11` and `S22` for `U = m I`
/// with `m r` not an integer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigBounds {
    pub d: u64,
    pub alpha11_low: f64,
    pub alpha11_high: f64,
    pub beta22_low: f64,
    pub beta22_high: f64,
}

fn is_integer_product(m: u32, r: f64) -> bool {
    let product = m as f64 * r;
    (product - product.round()).abs() < INTEGRALITY_TOLERANCE
}

fn check_ratio(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParams(format!("oversampling ratio must lie in (0, 1), got {r}")));
    }
    Ok(())
}

pub fn eig_bounds(m: u32, r: f64) -> Result<EigBounds> {
    check_ratio(r)?;
    if m == 0 {
        return Err(Error::InvalidParams("interleaving factor m must be positive".into()));
    }
    if is_integer_product(m, r) {
        return Err(Error::IntegerCase { m, r, product: m as f64 * r });
    }
    let d = (2.0 * m as f64 * r).floor();
    let mf = m as f64;
    let alpha11_low = d / mf * (1.0 - d / (4.0 * mf) - 1.0 / (4.0 * mf));
    Ok(EigBounds {
        d: d as u64,
        alpha11_low,
        alpha11_high: alpha11_low + 1.0 / mf,
        beta22_low: d * (d - 1.0) / (4.0 * mf * mf),
        beta22_high: d * (d + 1.0) / (4.0 * mf * mf) + r / mf,
    })
}

/// Interleaving factors above this value separate the spectra of `S22` and
/// `S11` (for non-integer `m r`).
pub fn separation_threshold(r: f64) -> f64 {
    (1.0 + 2.0 * r) / (2.0 * r * (1.0 - r))
}

/// Exact block structure of `S` when `m r` is an integer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructuralCase {
    pub m: u32,
    pub r: f64,
    /// `S11 = (2r - r^2) I`.
    pub s11_diagonal: f64,
    /// `S22 = r^2 I`.
    pub s22_diagonal: f64,
}

impl StructuralCase {
    /// Predicted `S21` for `U = m * base`: zero diagonal, off-diagonal
    /// `(1 - r) omega / (m pi (i_k - i_j))`.
    pub fn s21(&self, omega: f64, base: &[i64]) -> DenseMatrix {
        let n = base.len();
        let scale = (1.0 - self.r) * omega / (self.m as f64 * std::f64::consts::PI);
        DenseMatrix::from_fn(n, n, |k, j| {
            if k == j {
                0.0
            } else {
                scale / (base[k] - base[j]) as f64
            }
        })
    }

    /// The full predicted `S` (block lower triangular).
    pub fn predicted_s(&self, omega: f64, base: &[i64]) -> DenseMatrix {
        let n = base.len();
        let s21 = self.s21(omega, base);
        DenseMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
            (true, true) if i == j => self.s11_diagonal,
            (false, false) if i == j => self.s22_diagonal,
            (false, true) => s21[(i - n, j)],
            _ => 0.0,
        })
    }
}

/// `Some` exactly when `m r` is an integer (and `0 < r < 1`).
pub fn structural_case(m: u32, r: f64) -> Option<StructuralCase> {
    if m == 0 || !(r > 0.0 && r < 1.0) || !is_integer_product(m, r) {
        return None;
    }
    Some(StructuralCase { m, r, s11_diagonal: 2.0 * r - r * r, s22_diagonal: r * r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_general, eig_symmetric};
    use crate::signals::{sinc_combination, test_signal_g};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_base(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<i64> {
        let n = rng.random_range(1..=max_len);
        let mut set = BTreeSet::new();
        while set.len() < n {
            set.insert(rng.random_range(-20..=20));
        }
        set.into_iter().collect()
    }

    fn is_toeplitz(a: &DenseMatrix, tol: f64) -> bool {
        (1..a.rows()).all(|i| (1..a.cols()).all(|j| (a[(i, j)] - a[(i - 1, j - 1)]).abs() <= tol))
    }

    #[test]
    fn missing_set_validation() {
        let u = MissingSet::new(&[3, -1, 2]).unwrap();
        assert_eq!(u.indices(), &[-1, 2, 3]);
        assert!(u.factorization().is_none());
        assert!(MissingSet::new(&[]).is_err());
        assert!(MissingSet::new(&[1, 1]).is_err());
        let f = MissingSet::factored(8, &[0, 1, 2, 3]).unwrap();
        assert_eq!(f.indices(), &[0, 8, 16, 24]);
        assert_eq!(f.factorization(), Some((8, &[0, 1, 2, 3][..])));
        assert!(MissingSet::factored(0, &[1]).is_err());
        assert!(f.is_equispaced());
        assert!(!MissingSet::new(&[0, 1, 3]).unwrap().is_equispaced());
        assert_eq!(MissingSet::contiguous(-2, 3).unwrap().len(), 6);
    }

    #[test]
    fn critical_ratio_gives_identity() {
        let p = TwoChannelParams::critical(PI).unwrap();
        let u = MissingSet::new(&[-3, 0, 1, 5]).unwrap();
        let s = build_s(&p, &u);
        assert!(s.sub(&DenseMatrix::identity(8)).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn block_invariants_on_random_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..40 {
            let r = rng.random_range(0.05..0.95);
            let p = TwoChannelParams::from_ratio(PI, r).unwrap();
            let m = rng.random_range(1..6u32);
            let u = MissingSet::factored(m, &random_base(&mut rng, 8)).unwrap();
            let sys = BlockSystem::with_rhs(&p, &u, vec![0.0; 2 * u.len()], 50);
            let n = u.len() as f64;
            assert_eq!(sys.s11.asymmetry(), 0.0);
            assert_eq!(sys.s22.asymmetry(), 0.0);
            assert_eq!(sys.s12.transpose().scaled(-1.0), sys.s12);
            assert_eq!(sys.s21.transpose().scaled(-1.0), sys.s21);
            assert!((sys.s11.trace() - n * (2.0 * r - r * r)).abs() <= 1e-10 * n);
            assert!((sys.s22.trace() - n * r * r).abs() <= 1e-10 * n);
        }
    }

    #[test]
    fn equispaced_blocks_are_toeplitz() {
        let p = TwoChannelParams::from_ratio(PI, 0.63).unwrap();
        let u = MissingSet::factored(3, &[-2, -1, 0, 1, 2, 3]).unwrap();
        let sys = BlockSystem::with_rhs(&p, &u, vec![0.0; 12], 50);
        for b in [&sys.s11, &sys.s12, &sys.s21, &sys.s22] {
            assert!(is_toeplitz(b, 1e-15));
        }
        assert!(!is_toeplitz(&sys.s, 1e-3));
    }

    #[test]
    fn r_matrix() {
        let p = OneChannelParams::from_ratio(PI, 0.6).unwrap();
        let r1 = build_r(&p, &MissingSet::new(&[4]).unwrap());
        assert_eq!(r1.as_slice(), &[0.6]);
        let half = OneChannelParams::from_ratio(PI, 0.5).unwrap();
        let r2 = build_r(&half, &MissingSet::new(&[0, 2]).unwrap());
        assert!(r2[(0, 1)].abs() < 1e-16 && r2[(1, 0)].abs() < 1e-16);
        let r6 = build_r(&p, &MissingSet::contiguous(0, 5).unwrap());
        let ev = eig_symmetric(&r6).unwrap();
        assert!(ev.min_real() > 0.0 && ev.max_real() < 1.0);
    }

    #[test]
    fn one_channel_rhs_needs_samples() {
        let p = OneChannelParams::from_ratio(PI, 0.6).unwrap();
        let u = MissingSet::contiguous(0, 5).unwrap();
        let short = IndexedSamples::zeros(-10, 10);
        assert!(matches!(
            rhs_one_channel(&p, &u, &short, 40),
            Err(Error::MissingKnownSample { index: -40 })
        ));
        let zeros = IndexedSamples::zeros(-40, 40);
        assert_eq!(rhs_one_channel(&p, &u, &zeros, 40).unwrap(), vec![0.0; 6]);
        assert!(rhs_one_channel(&p, &u, &zeros, 5).is_err());
    }

    #[test]
    fn zero_signal_gives_zero_rhs() {
        let p = TwoChannelParams::from_ratio(PI, 0.6).unwrap();
        let u = MissingSet::contiguous(-2, 3).unwrap();
        let zero = sinc_combination(&[], PI).unwrap();
        assert_eq!(rhs_two_channel(&p, &u, &zero, 100).unwrap(), vec![0.0; 12]);
    }

    #[test]
    fn critical_rhs_vanishes_for_signal_supported_on_missing_set() {
        // at r = 1 only the missing indices would contribute, and they are excluded
        let p = TwoChannelParams::critical(PI).unwrap();
        let u = MissingSet::new(&[0, 1]).unwrap();
        let mut s = IndexedSamples::zeros(-30, 30);
        let mut ds = IndexedSamples::zeros(-30, 30);
        s.set(0, 1.0);
        ds.set(1, -2.0);
        assert_eq!(rhs_two_channel_from_samples(&p, &u, &s, &ds, 30).unwrap(), vec![0.0; 4]);
    }

    #[test]
    fn full_system_is_consistent_with_truth() {
        // Z_true satisfies (I - S) Z = C up to truncation
        let g = test_signal_g();
        let p = TwoChannelParams::from_ratio(PI, 0.7).unwrap();
        let u = MissingSet::factored(4, &[-1, 0, 1, 2, 3, 4]).unwrap();
        let sys = BlockSystem::assemble(&p, &u, &g, 500).unwrap();
        let t = p.t_o();
        let z: Vec<f64> = u
            .indices()
            .iter()
            .map(|&l| g.eval(l as f64 * t))
            .chain(u.indices().iter().map(|&l| g.eval_deriv(l as f64 * t)))
            .collect();
        let az = sys.system_matrix().matvec(&z).unwrap();
        let res: f64 = az.iter().zip(&sys.c).map(|(a, c)| (a - c).abs()).fold(0.0, f64::max);
        assert!(res < 1e-3, "residual {res}");
    }

    #[test]
    fn bounds_examples() {
        let b = eig_bounds(8, 0.7).unwrap();
        assert_eq!(b.d, 11);
        assert!((b.alpha11_low - 0.859).abs() < 1e-3);
        assert!((b.alpha11_high - 0.984).abs() < 1e-3);
        assert!((b.beta22_low - 0.430).abs() < 1e-3);
        assert!((b.beta22_high - 0.603).abs() < 1e-3);
        let b = eig_bounds(8, 0.55).unwrap();
        assert!((b.alpha11_low - 0.719).abs() < 1e-3 && (b.alpha11_high - 0.844).abs() < 1e-3);
        let b = eig_bounds(8, 0.9).unwrap();
        assert!((b.beta22_low - 0.711).abs() < 1e-3 && (b.beta22_high - 0.932).abs() < 1e-3);
        assert!(matches!(eig_bounds(5, 0.6), Err(Error::IntegerCase { m: 5, .. })));
        assert!(eig_bounds(8, 1.0).is_err());
        assert!(eig_bounds(0, 0.3).is_err());
    }

    #[test]
    fn separation() {
        assert_eq!(separation_threshold(0.5), 4.0);
        assert!((separation_threshold(0.7) - 2.4 / 0.42).abs() < 1e-12);
        // m = 8 lies above the threshold at r = 0.7: spectra separate
        let p = TwoChannelParams::from_ratio(PI, 0.7).unwrap();
        let sys = BlockSystem::with_rhs(&p, &MissingSet::factored(8, &[0, 1, 2, 3]).unwrap(), vec![0.0; 8], 50);
        let e11 = eig_symmetric(&sys.s11).unwrap();
        let e22 = eig_symmetric(&sys.s22).unwrap();
        assert!(e22.max_real() < e11.min_real());
    }

    #[test]
    fn bounds_hold_on_random_configurations() {
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        let mut checked = 0;
        while checked < 60 {
            let m = rng.random_range(2..=20u32);
            let r = rng.random_range(0.01..0.99);
            let Ok(b) = eig_bounds(m, r) else { continue };
            let p = TwoChannelParams::from_ratio(PI, r).unwrap();
            let u = MissingSet::factored(m, &random_base(&mut rng, 8)).unwrap();
            let s = build_s(&p, &u);
            let n = u.len();
            let e11 = eig_symmetric(&s.block(0, 0, n, n)).unwrap();
            let e22 = eig_symmetric(&s.block(n, n, n, n)).unwrap();
            assert!(e11.min_real() > b.alpha11_low && e11.max_real() < b.alpha11_high);
            assert!(e22.min_real() > b.beta22_low && e22.max_real() < b.beta22_high);
            checked += 1;
        }
    }

    #[test]
    fn integer_case_structure() {
        assert!(structural_case(7, 0.6).is_none());
        assert!(structural_case(5, 1.0).is_none());
        for (m, r, base) in [(5u32, 0.6, vec![0, 1, 2]), (10, 0.5, vec![-2, 0, 3, 4]), (4, 0.75, vec![1, 2])] {
            let case = structural_case(m, r).unwrap();
            let p = TwoChannelParams::from_ratio(PI, r).unwrap();
            let u = MissingSet::factored(m, &base).unwrap();
            let s = build_s(&p, &u);
            let predicted = case.predicted_s(PI, &base);
            assert!(s.sub(&predicted).unwrap().max_abs() < 1e-12, "m={m} r={r}");
            let ev = eig_general(&s).unwrap();
            let n = base.len();
            let re = ev.real_parts();
            for v in &re[..n] {
                assert!((v - r * r).abs() < 1e-9);
            }
            for v in &re[n..] {
                assert!((v - (2.0 * r - r * r)).abs() < 1e-9);
            }
        }
    }
}
