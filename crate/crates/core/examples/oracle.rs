//! The dense-grid oracle against the engine on random mixture pairs.

use locdisc::discrepancy::DiscrepancyKind;
use locdisc::harness::compare_with_oracle;
use locdisc::discrepancy::SearchConfig;
use locdisc::synthetic::random_pair;
use rand::SeedableRng;

fn main() -> locdisc::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for i in 0..5 {
        let pair = random_pair(&mut rng)?;
        let a = pair.source.labeling;
        for kind in [DiscrepancyKind::hdh(), DiscrepancyKind::localized_disparity(a, 0.2)] {
            let row = compare_with_oracle(&format!("pair-{i}"), &kind, &pair, 1e-4, SearchConfig::default())?;
            println!(
                "{:<8} {:<20} engine {:.6}  oracle {:.6}  tol {:.1e}  {}",
                row.config,
                row.kind,
                row.engine,
                row.oracle,
                row.tolerance.unwrap_or(0.0),
                if row.pass { "ok" } else { "MISMATCH" }
            );
        }
    }
    Ok(())
}
