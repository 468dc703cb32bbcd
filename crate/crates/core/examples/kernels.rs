//! Evaluate the dual generators and compare the two-channel series with the
//! critically sampled derivative series on the test signal.

use std::f64::consts::PI;

use oversampling::kernels::{dual_gen_1, dual_gen_2, TwoChannelParams};
use oversampling::recovery::sample_signal;
use oversampling::signals::{reconstruct_riesz, reconstruct_two_channel, test_signal_g};

fn main() -> oversampling::Result<()> {
    let p = TwoChannelParams::from_ratio(PI, 0.7)?;
    println!("r = {}, t_o = {:.6}, h = {:.6}", p.r(), p.t_o(), p.h());
    println!("{:>6} {:>14} {:>14}", "x", "phi_1(x)", "phi_2(x)");
    for k in 0..=8 {
        let x = 0.5 * k as f64;
        println!("{x:>6.2} {:>14.8} {:>14.8}", dual_gen_1(x, &p), dual_gen_2(x, &p));
    }

    let g = test_signal_g();
    let m = 500;
    let (s, d) = sample_signal(&g, p.t_o(), m);
    let crit = TwoChannelParams::critical(PI)?;
    let (cs, cd) = sample_signal(&g, crit.t_o(), m);
    println!("\n{:>6} {:>12} {:>12} {:>12}", "x", "g(x)", "oversampled", "critical");
    for x in [-2.3, -0.4, 0.9, 2.1, 3.75] {
        let over = reconstruct_two_channel(&p, &s, &d, m, x);
        let riesz = reconstruct_riesz(crit.h(), &cs, &cd, m, x);
        println!("{x:>6.2} {:>12.8} {:>12.8} {:>12.8}", g.eval(x), over, riesz);
    }
    Ok(())
}
