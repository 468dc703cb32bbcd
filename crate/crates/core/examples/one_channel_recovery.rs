//! Recover six consecutive lost samples of the test signal from the remaining
//! oversampled values, with a long and a short truncation window.

use std::f64::consts::PI;

use oversampling::kernels::OneChannelParams;
use oversampling::recovery::{recover_one_channel, RecoveryOptions};
use oversampling::signals::test_signal_g;
use oversampling::system::MissingSet;

fn main() -> oversampling::Result<()> {
    let g = test_signal_g();
    let p = OneChannelParams::from_ratio(PI, 0.6)?;
    let u = MissingSet::contiguous(0, 5)?;
    for m in [40, 500] {
        let samples = g.samples(p.t_o(), -m, m);
        let res = recover_one_channel(&p, &u, &samples, m, &RecoveryOptions::default())?;
        println!("M = {m}, cond = {:.3e}", res.condition_estimate);
        for s in &res.recovered_function {
            println!("  x = {:4.1}  truth = {:>8.4}  recovered = {:>8.4}", s.x, g.eval(s.x), s.value);
        }
    }
    Ok(())
}
