//! Condition number of I - S for ten contiguous missing samples as r grows.

use oversampling::experiments::{run, Command, ExperimentConfig};
use oversampling::report::Cell;

fn main() -> oversampling::Result<()> {
    let t = run(&ExperimentConfig::defaults(Command::CondTable))?;
    for (i, row) in t.rows.iter().enumerate() {
        let trusted = match &row[2] {
            Cell::Text(s) => s.as_str(),
            _ => "",
        };
        println!("r = {:.1}  cond = {:.4e}  trusted: {trusted}", t.value(i, "r").unwrap(), t.value(i, "condition").unwrap());
    }
    Ok(())
}
