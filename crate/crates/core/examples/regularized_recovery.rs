//! Noisy recovery with and without Tikhonov regularization, where lambda is
//! picked by the discrepancy principle.

use std::f64::consts::PI;

use oversampling::kernels::TwoChannelParams;
use oversampling::recovery::{recover_two_channel, sample_signal, NoiseSpec, RecoveryOptions};
use oversampling::signals::{error_metrics, test_signal_g};
use oversampling::system::MissingSet;

fn main() -> oversampling::Result<()> {
    let g = test_signal_g();
    let p = TwoChannelParams::from_ratio(PI, 0.6)?;
    let u = MissingSet::contiguous(-2, 3)?;
    let (s, d) = sample_signal(&g, p.t_o(), 500);
    let truth: Vec<f64> = u.indices().iter().map(|&l| g.eval(l as f64 * p.t_o())).collect();
    for seed in 0..5 {
        let noise = Some(NoiseSpec::new(1e-2, seed)?);
        let plain = recover_two_channel(&p, &u, &s, &d, 500, &RecoveryOptions { noise, ..Default::default() })?;
        let reg = recover_two_channel(&p, &u, &s, &d, 500, &RecoveryOptions { noise, regularize: true, ..Default::default() })?;
        println!(
            "seed {seed}: plain max error {:.3e}, regularized {:.3e} (lambda {:.3e}, warnings {})",
            error_metrics(&truth, &plain.function_values())?.max_abs,
            error_metrics(&truth, &reg.function_values())?.max_abs,
            reg.lambda_used,
            reg.warnings.len()
        );
    }
    Ok(())
}
