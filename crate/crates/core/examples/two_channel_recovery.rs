//! Recover function and derivative samples from the two-channel stream, for an
//! interleaved and a contiguous missing set.

use std::f64::consts::PI;

use oversampling::kernels::TwoChannelParams;
use oversampling::recovery::{recover_two_channel, sample_signal, RecoveryOptions};
use oversampling::signals::test_signal_g;
use oversampling::system::MissingSet;

fn show(r: f64, u: &MissingSet) -> oversampling::Result<()> {
    let g = test_signal_g();
    let p = TwoChannelParams::from_ratio(PI, r)?;
    let (s, d) = sample_signal(&g, p.t_o(), 500);
    let res = recover_two_channel(&p, u, &s, &d, 500, &RecoveryOptions::default())?;
    println!("r = {r}, missing {:?}, cond(I - S) = {:.3e}", u.indices(), res.condition_estimate);
    let deriv = res.recovered_derivative.as_deref().unwrap_or(&[]);
    for (f, df) in res.recovered_function.iter().zip(deriv) {
        println!(
            "  x = {:>6.3}  f: {:>9.5} ({:>9.5})  f': {:>9.5} ({:>9.5})",
            f.x,
            f.value,
            g.eval(f.x),
            df.value,
            g.eval_deriv(df.x)
        );
    }
    Ok(())
}

fn main() -> oversampling::Result<()> {
    show(0.7, &MissingSet::factored(4, &[-1, 0, 1, 2, 3, 4])?)?;
    show(0.3, &MissingSet::contiguous(-2, 3)?)
}
