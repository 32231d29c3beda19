//! The constrained, joint and boosted adaptation objectives on one sample,
//! and the chain inequality relating the first two.

use locdisc::localization::LocalizationConstants;
use locdisc::objectives::{check_prop_54, solve_objective_13, solve_objective_16, solve_objective_21};
use locdisc::synthetic::narrow_vs_wide;

fn main() -> locdisc::Result<()> {
    let pair = narrow_vs_wide(0.1)?;
    let (n, r) = (2000, 0.15);
    let s = pair.source.sample(n, 1, true)?;
    let t = pair.target.sample(n, 2, false)?;
    let c = LocalizationConstants::new(n, pair.class.vc_dimension, 0.1, r)?.with_gamma(2.0)?;

    let constrained = solve_objective_13(&s, &t, &pair.class, &c)?;
    let joint = solve_objective_16(&s, &t, &pair.class, &c)?;
    let boosted = solve_objective_21(&s, &t, &pair.class, &c)?;
    for sol in [&constrained, &joint, &boosted] {
        println!(
            "{:<20} h = {:?}  value {:.4} (err {:.4} + disc {:.4}) over {} candidates",
            format!("{:?}", sol.objective),
            sol.h,
            sol.value,
            sol.source_error,
            sol.discrepancy,
            sol.candidates
        );
    }

    let chk = check_prop_54(&s, &t, &pair.class, &c)?;
    println!("chain {:.4} <= {:.4} <= {:.4}: {}", chk.chain[0], chk.chain[1], chk.chain[2], chk.holds);
    Ok(())
}
