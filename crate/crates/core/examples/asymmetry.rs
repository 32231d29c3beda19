//! Localized discrepancies are not symmetric: swapping source and target
//! changes which hypotheses are admissible.

use locdisc::discrepancy::{localized_hdh, Mode};
use locdisc::synthetic::narrow_vs_wide;

fn main() -> locdisc::Result<()> {
    let eps = 0.1;
    let forward = narrow_vs_wide(eps)?;
    let reverse = forward.reversed();
    let mode = Mode::population();
    println!("{:>6} {:>10} {:>10} {:>12}", "r", "P -> Q", "Q -> P", "r(1/eps-2)");
    for r in [0.01, 0.025, 0.05, 0.075, 0.1] {
        let f = localized_hdh(&forward.source, &forward.target, &forward.class, r, &mode)?.value;
        let b = localized_hdh(&reverse.source, &reverse.target, &reverse.class, r, &mode)?.value;
        println!("{r:>6} {f:>10.6} {b:>10.6} {:>12.6}", r * (1.0 / eps - 2.0));
    }
    Ok(())
}
