//! Eigenvalue extremes of the diagonal blocks against the analytic bounds,
//! for the missing set 8 * {0, 1, 2, 3}.

use oversampling::experiments::{run, Command, ExperimentConfig};

fn main() -> oversampling::Result<()> {
    let cfg = ExperimentConfig::defaults(Command::BoundsTable);
    let t = run(&cfg)?;
    println!("{:>5} {:>8} {:>8} {:>8} {:>8} | {:>8} {:>8} {:>8} {:>8}", "r", "a_low", "min", "max", "a_high", "b_low", "min", "max", "b_high");
    for i in 0..t.rows.len() {
        let v = |c: &str| t.value(i, c).unwrap_or(f64::NAN);
        println!(
            "{:>5.2} {:>8.4} {:>8.4} {:>8.4} {:>8.4} | {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            v("r"),
            v("s11_low_bound"),
            v("s11_lambda_min"),
            v("s11_lambda_max"),
            v("s11_high_bound"),
            v("s22_low_bound"),
            v("s22_lambda_min"),
            v("s22_lambda_max"),
            v("s22_high_bound"),
        );
    }
    Ok(())
}
