//! Target-error bounds, plain and boosted, plus a generalization bound
//! next to its classical counterpart. Prints CSV rows.

use locdisc::hypothesis::Hypothesis;
use locdisc::localization::LocalizationConstants;
use locdisc::objectives::{gen_bound_rhs, solve_objective_13, BoundContext, BoundReport, BoundVariant, GenTheorem};
use locdisc::synthetic::narrow_vs_wide;

fn main() -> locdisc::Result<()> {
    let pair = narrow_vs_wide(0.1)?;
    let mut ctx = BoundContext::new(&pair.source, &pair.target, &pair.class, 0.15)?;
    println!("{}", BoundReport::csv_header());
    for t in [0.5, 0.51, 0.52] {
        let h = Hypothesis::threshold(t);
        println!("{}", ctx.thm32(&h, BoundVariant::Hdh)?.to_csv_row()?);
        for g in [1.5, 2.0, 3.0] {
            ctx.boosted(g)?;
            println!("{}", ctx.thm62(&h, g)?.to_csv_row()?);
        }
    }

    let n = 4000;
    let s = pair.source.sample(n, 5, true)?;
    let t = pair.target.sample(n, 6, false)?;
    let c = LocalizationConstants::new(n, 2, 0.1, 0.1)?;
    let sol = solve_objective_13(&s, &t, &pair.class, &c)?;
    let truth = pair.target.expected_error(&sol.h)?;
    let b = gen_bound_rhs(GenTheorem::LocalizedHdh, &sol, &s, &t, &c, ctx.lambda, 1.0, Some(truth))?;
    println!("\ngeneralization bound (multiplier 1, diagnostic): {:.4}", b.rhs);
    println!("classical form:                                  {:.4}", b.classical_rhs.unwrap_or(f64::NAN));
    println!("realised target error:                           {truth:.4}");
    Ok(())
}
