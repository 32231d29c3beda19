//! Capacity term, sandwich margins and how often the empirical localized
//! spaces actually sandwich the population one.

use locdisc::localization::{containment_frequency, member_minus, member_plus, LocalizationConstants};
use locdisc::synthetic::narrow_vs_wide;

fn main() -> locdisc::Result<()> {
    for n in [500, 2000, 10_000] {
        let c = LocalizationConstants::new(n, 2, 0.1, 0.3)?;
        println!(
            "n = {n:>6}: eps {:.4}  c+ {:.4}  c- {}",
            c.epsilon,
            c.c_plus,
            c.c_minus.map_or("undefined".into(), |v| format!("{v:.4}"))
        );
    }

    let pair = narrow_vs_wide(0.1)?;
    let c = LocalizationConstants::new(2000, 2, 0.1, 0.3)?;
    let s = pair.source.sample(2000, 3, true)?;
    let h = locdisc::hypothesis::Hypothesis::threshold(0.52);
    println!("h_0.52: in H+ {}, in H- {}", member_plus(&h, &s, &c)?, member_minus(&h, &s, &c)?);

    let f = containment_frequency(&pair.source, &pair.class, 2, 0.1, 0.3, 2000, 200, 11)?;
    println!("over {} samples: H- in H_r {:.3}, H_r in H+ {:.3}", f.trials, f.lower, f.upper);
    Ok(())
}
