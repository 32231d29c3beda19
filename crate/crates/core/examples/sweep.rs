//! Empirical hdh and localized estimates across sample sizes, written as a
//! plot-ready CSV next to the JSON record.
//!
//!     cargo run --release --example sweep -- /tmp/sweep

use locdisc::harness::{record_path, run_sweep, write_results, Scenario, ScenarioConfig};
use std::path::PathBuf;

fn main() -> locdisc::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let mut cfg = ScenarioConfig::for_scenario(Scenario::Sweep);
    cfg.sizes = vec![250, 500, 1000, 2000, 4000];
    cfg.trials = 10;
    let rec = run_sweep(&cfg)?;
    if let Some(means) = rec.outputs.get("means").and_then(|m| m.as_array()) {
        for m in means {
            println!("{:>5} {:<10} {:.4}", m["size"], m["estimator"].as_str().unwrap_or(""), m["mean"].as_f64().unwrap_or(0.0));
        }
    }
    print!("{}", rec.summary());
    for p in write_results(&rec, &record_path(&dir, Scenario::Sweep))? {
        println!("wrote {}", p.display());
    }
    Ok(())
}
