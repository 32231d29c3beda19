//! Running a scenario from a JSON config overlay and reading the record back.

use locdisc::harness::{read_results, run, write_results, Scenario, ScenarioConfig};

fn main() -> locdisc::Result<()> {
    let cfg = ScenarioConfig::from_json_overlay(Scenario::Ex43, r#"{"epsilon": 0.2, "r": [0.05, 0.1, 0.2]}"#)?;
    let rec = run(&cfg)?;
    print!("{}", rec.summary());

    let path = std::env::temp_dir().join("locdisc-example").join("ex43.json");
    write_results(&rec, &path)?;
    let back = read_results(&path)?;
    assert_eq!(back, rec);
    println!("round-tripped {} ({} claims, all passed: {})", path.display(), back.claims.len(), back.passed());
    Ok(())
}
