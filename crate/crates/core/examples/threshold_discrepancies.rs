//! Population discrepancies between a narrow uniform source and a wide
//! uniform target under thresholds, with the witnesses that attain them.
//!
//!     cargo run --example threshold_discrepancies -- 0.1

use locdisc::discrepancy::{disparity_discrepancy, hdh_divergence, ideal_joint_error, localized_hdh, Mode};
use locdisc::hypothesis::Hypothesis;
use locdisc::synthetic::narrow_vs_wide;

fn main() -> locdisc::Result<()> {
    let eps: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.1);
    let pair = narrow_vs_wide(eps)?;
    let (p, q, class) = (&pair.source, &pair.target, &pair.class);
    let mode = Mode::population();

    let hdh = hdh_divergence(p, q, class, &mode)?;
    println!("hdh divergence     {:.6}   (1 - 2 eps = {:.6})", hdh.value, 1.0 - 2.0 * eps);
    println!("  witness          {:?} / {:?}", hdh.witness.h, hdh.witness.h_prime);

    let half = Hypothesis::threshold(0.5);
    let disp = disparity_discrepancy(&half, p, q, class, &mode)?;
    println!("disparity at h_1/2 {:.6}   (1/2 - eps = {:.6})", disp.value, 0.5 - eps);

    for r in [0.05, 0.1, 0.2] {
        let loc = localized_hdh(p, q, class, r, &mode)?;
        println!("localized r={r:<5} {:.2e}", loc.value);
    }
    let (lambda, ideal) = ideal_joint_error(p, q, class)?;
    println!("lambda {lambda} at {ideal:?}");
    Ok(())
}
