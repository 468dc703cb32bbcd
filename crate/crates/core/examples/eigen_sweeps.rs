//! Eigenvalues of S as the interleaving factor grows: they cluster at r^2 and
//! 2r - r^2.

use oversampling::experiments::{run, Command, ExperimentConfig};

fn main() -> oversampling::Result<()> {
    let mut cfg = ExperimentConfig::defaults(Command::EigVsM);
    cfg.sweep = vec![1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0];
    let t = run(&cfg)?;
    let r = cfg.r[0];
    println!("limits: {:.4} and {:.4}", r * r, 2.0 * r - r * r);
    for i in 0..t.rows.len() {
        println!(
            "m = {:>3}: smallest {:.4}, largest {:.4}, distance to limits {:.4}",
            t.value(i, "m").unwrap(),
            t.value(i, "lambda_min_re").unwrap(),
            t.value(i, "lambda_max_re").unwrap(),
            t.value(i, "max_dist_to_limits").unwrap()
        );
    }
    Ok(())
}
