//! Running an experiment from code: defaults, a config overlay, the JSON
//! report and the per-replica CSV.

use polymer_lab::experiments::{gibbs_default_config, run_experiment};
use polymer_lab::Result;

fn main() -> Result<()> {
    let mut cfg = gibbs_default_config();
    cfg.apply_text("replicas = 20000\nseed = 9  # any u64\nlevel = 0.001\n")?;
    let report = run_experiment(&cfg)?;
    for v in &report.verdicts {
        println!("[{}] {} {}", if v.passed { "pass" } else { "FAIL" }, v.name, v.detail);
    }
    let json = report.to_json()?;
    println!("report is {} bytes of JSON, first line: {}", json.len(), json.lines().next().unwrap_or(""));
    let mut csv = Vec::new();
    report.write_csv(&mut csv)?;
    print!("{}", String::from_utf8_lossy(&csv).lines().take(4).collect::<Vec<_>>().join("\n"));
    println!();
    Ok(())
}
