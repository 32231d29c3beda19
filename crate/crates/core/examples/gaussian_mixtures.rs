//! Shifted Gaussian mixtures: a tiny ideal joint error makes a radius below
//! sqrt(lambda) admissible, and the localized discrepancy collapses while
//! the unlocalized one stays large.

use locdisc::discrepancy::{hdh_divergence, ideal_joint_error, localized_hdh, DiscrepancyKind, Mode};
use locdisc::oracle::oracle_sup;
use locdisc::synthetic::{shifted_mixtures, MixtureSpec};

fn main() -> locdisc::Result<()> {
    let pair = shifted_mixtures(&MixtureSpec::default())?;
    let (p, q, class) = (&pair.source, &pair.target, &pair.class);

    let (lambda, ideal) = ideal_joint_error(p, q, class)?;
    println!("lambda = {lambda:.3e} at {ideal:?}, sqrt = {:.3e}", lambda.sqrt());

    let r = 1e-8;
    assert!(lambda < r && r < lambda.sqrt(), "r outside (lambda, sqrt(lambda))");
    let mode = Mode::population();
    let loc = localized_hdh(p, q, class, r, &mode)?;
    let hdh = hdh_divergence(p, q, class, &mode)?;
    println!("localized (r = {r:e}) = {:.3e}", loc.value);
    println!("hdh divergence        = {:.6}", hdh.value);
    println!("ratio                 = {:.0}", hdh.value / loc.value);

    let o = oracle_sup(&DiscrepancyKind::hdh(), p, q, class, 1e-4)?;
    println!("dense-grid oracle     = {:.6} ± {:.1e}", o.value, o.tolerance.unwrap_or(0.0));
    Ok(())
}
