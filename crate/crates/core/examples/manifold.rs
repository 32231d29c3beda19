//! Planar linear classifiers with a target supported on a segment inside
//! the source square.

use locdisc::discrepancy::{disparity_discrepancy, hdh_divergence, localized_hdh, Mode};
use locdisc::synthetic::square_vs_segment;

fn main() -> locdisc::Result<()> {
    let fwd = square_vs_segment(0.5)?;
    let rev = fwd.reversed();
    let mode = Mode::population();
    let l = fwd.source.labeling;

    let hdh = hdh_divergence(&fwd.source, &fwd.target, &fwd.class, &mode)?;
    println!("hdh(P, Q)            {:.6}  witness {:?}", hdh.value, hdh.witness.h_prime);
    let disp = disparity_discrepancy(&l, &fwd.source, &fwd.target, &fwd.class, &mode)?;
    println!("disparity at l       {:.6}", disp.value);
    for r in [0.05, 0.1, 0.2] {
        let f = localized_hdh(&fwd.source, &fwd.target, &fwd.class, r, &mode)?;
        let b = localized_hdh(&rev.source, &rev.target, &rev.class, r, &mode)?;
        println!("r = {r:<4}  P->Q {:.2e}   Q->P {:.6}", f.value, b.value);
    }
    Ok(())
}
