//! Brute-force reference values for the discrepancy engine.
//!
//! A dense uniform grid, no refinement and no pruning, evaluated with the
//! plain domain mass functions. Slow by design and kept free of the
//! engine's tables and search code.

use crate::discrepancy::DiscrepancyKind;
use crate::domain::{Domain, Marginal};
use crate::error::{Error, Result};
use crate::hypothesis::{Hypothesis, HypothesisClass, Orientation, ParameterBox};
use crate::tables::Gain;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleValue {
    pub value: f64,
    /// Lipschitz-derived accuracy; `None` where the masses are not
    /// Lipschitz in the parameters (segments).
    pub tolerance: Option<f64>,
    pub grid_points: usize,
}

/// Dense-grid supremum of `kind` with step `resolution` × offset span (and
/// `resolution` × 2π for angles).
pub fn oracle_sup(
    kind: &DiscrepancyKind,
    source: &Domain,
    target: &Domain,
    class: &HypothesisClass,
    resolution: f64,
) -> Result<OracleValue> {
    kind.validate()?;
    if !(resolution > 0.0 && resolution < 1.0) {
        return Err(Error::InvalidParameter(format!("resolution {resolution} not in (0, 1)")));
    }
    if !class.is_bounded() {
        return Err(Error::UnboundedParameterBox);
    }
    match class.parameter_box {
        ParameterBox::Threshold { lo, hi } => line_oracle(kind, source, target, lo, hi, resolution),
        ParameterBox::Linear2D { .. } => plane_oracle(kind, source, target, class, resolution),
    }
}

fn line_oracle(kind: &DiscrepancyKind, source: &Domain, target: &Domain, lo: f64, hi: f64, res: f64) -> Result<OracleValue> {
    let (Marginal::OneD(mp), Marginal::OneD(mq)) = (&source.marginal, &target.marginal) else {
        return Err(Error::DimensionMismatch { expected: 1, found: 2 });
    };
    let step = res * (hi - lo);
    let count = ((hi - lo) / step).round() as usize;
    let mut ts = vec![f64::NEG_INFINITY];
    ts.extend((0..=count).map(|i| lo + (hi - lo) * i as f64 / count as f64));
    ts.push(f64::INFINITY);

    let hyp = |k: usize, o: usize| Hypothesis::threshold_with(ts[k], Orientation::BOTH[o]);
    let feasible: Vec<[bool; 2]> = ts
        .iter()
        .enumerate()
        .map(|(k, _)| {
            [0, 1].map(|o| match kind.cutoff() {
                None => true,
                Some(r) => source.expected_error(&hyp(k, o)).map(|e| e <= r).unwrap_or(false),
            })
        })
        .collect();
    let gain = kind.gain();
    let mut best = f64::NEG_INFINITY;

    if let Some(a) = kind.anchor {
        for k in 0..ts.len() {
            for o in 0..2 {
                if feasible[k][o] {
                    let h = hyp(k, o);
                    best = best.max(gain.eval(target.disagreement(&h, &a)?, source.disagreement(&h, &a)?));
                }
            }
        }
    } else {
        let fp: Vec<f64> = ts.iter().map(|&t| mp.cdf(t)).collect();
        let fq: Vec<f64> = ts.iter().map(|&t| mq.cdf(t)).collect();
        // disagreement of (k1, o1), (k2, o2) with k1 <= k2 is [t1, t2) when
        // the orientations match and its complement otherwise
        let pair = |k1: usize, o1: usize, k2: usize, o2: usize| {
            let q = fq[k2] - fq[k1];
            let p = fp[k2] - fp[k1];
            if o1 == o2 {
                (q, p)
            } else {
                (1.0 - q, 1.0 - p)
            }
        };
        if gain.is_linear() {
            // every pair is visited through running extrema of Q(x<t) − P(x<t)
            let diff: Vec<f64> = fq.iter().zip(&fp).map(|(q, p)| q - p).collect();
            let mut lo_ext = [(f64::INFINITY, f64::NEG_INFINITY); 2];
            for k2 in 0..ts.len() {
                for o1 in 0..2 {
                    if feasible[k2][o1] {
                        lo_ext[o1].0 = lo_ext[o1].0.min(diff[k2]);
                        lo_ext[o1].1 = lo_ext[o1].1.max(diff[k2]);
                    }
                }
                for o2 in 0..2 {
                    if !feasible[k2][o2] {
                        continue;
                    }
                    for o1 in 0..2 {
                        let (mn, mx) = lo_ext[o1];
                        if mn > mx {
                            continue;
                        }
                        let (a, b) = if o1 == o2 { (diff[k2] - mn, diff[k2] - mx) } else { (mx - diff[k2], mn - diff[k2]) };
                        let v = match gain {
                            Gain::Absolute => a.abs().max(b.abs()),
                            _ => a.max(b),
                        };
                        best = best.max(v);
                    }
                }
            }
        } else {
            let idx: Vec<(usize, usize)> =
                (0..ts.len()).flat_map(|k| [0, 1].map(|o| (k, o))).filter(|&(k, o)| feasible[k][o]).collect();
            for (x, &(k1, o1)) in idx.iter().enumerate() {
                for &(k2, o2) in &idx[x..] {
                    let (q, p) = pair(k1, o1, k2, o2);
                    best = best.max(gain.eval(q, p));
                }
            }
        }
    }
    if best == f64::NEG_INFINITY {
        return Err(Error::EmptyLocalizedSpace { r: kind.r.unwrap_or(f64::NAN) });
    }
    let slope = match gain {
        Gain::Boosted(g) => g * mp.max_density() + mq.max_density(),
        _ => mp.max_density() + mq.max_density(),
    };
    Ok(OracleValue { value: best, tolerance: Some(2.0 * step * slope), grid_points: 2 * ts.len() })
}

fn plane_oracle(
    kind: &DiscrepancyKind,
    source: &Domain,
    target: &Domain,
    class: &HypothesisClass,
    res: f64,
) -> Result<OracleValue> {
    let ParameterBox::Linear2D { radius, .. } = class.parameter_box else { unreachable!() };
    let nt = (1.0 / res).round() as usize;
    let ns = nt + 1;
    let mut lines = Vec::with_capacity(nt * ns);
    for i in 0..nt {
        for j in 0..ns {
            let s = -radius + 2.0 * radius * j as f64 / (ns - 1) as f64;
            lines.push(class.line_at(TAU * i as f64 / nt as f64, s));
        }
    }
    let lines: Vec<Hypothesis> = match kind.cutoff() {
        None => lines,
        Some(r) => lines.into_iter().filter(|h| source.expected_error(h).is_ok_and(|e| e <= r)).collect(),
    };
    if lines.is_empty() {
        return Err(Error::EmptyLocalizedSpace { r: kind.r.unwrap_or(f64::NAN) });
    }
    let gain = kind.gain();
    let mut best = f64::NEG_INFINITY;
    match kind.anchor {
        Some(a) => {
            for h in &lines {
                best = best.max(gain.eval(target.disagreement(h, &a)?, source.disagreement(h, &a)?));
            }
        }
        None => {
            for (x, h) in lines.iter().enumerate() {
                for h2 in &lines[x..] {
                    best = best.max(gain.eval(target.disagreement(h, h2)?, source.disagreement(h, h2)?));
                }
            }
        }
    }
    Ok(OracleValue { value: best, tolerance: None, grid_points: lines.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Marginal1D;

    #[test]
    fn threshold_example_values() {
        let p = Domain::new("P", Marginal::OneD(Marginal1D::uniform(0.4, 0.6).unwrap()), Hypothesis::threshold(0.5)).unwrap();
        let q = Domain::new("Q", Marginal::OneD(Marginal1D::uniform(0.0, 1.0).unwrap()), Hypothesis::threshold(0.5)).unwrap();
        let c = crate::domain::default_class(&[&p, &q]);
        let o = oracle_sup(&DiscrepancyKind::hdh(), &p, &q, &c, 1e-4).unwrap();
        assert!((o.value - 0.8).abs() <= 2e-3, "{o:?}");
        let d = oracle_sup(&DiscrepancyKind::disparity(Hypothesis::threshold(0.5)), &p, &q, &c, 1e-3).unwrap();
        assert!((d.value - 0.4).abs() <= d.tolerance.unwrap());
        let b = oracle_sup(&DiscrepancyKind::boosted(0.1, 2.0), &p, &q, &c, 1e-3).unwrap();
        assert!(b.value.abs() <= b.tolerance.unwrap());
        let rev = oracle_sup(&DiscrepancyKind::localized_hdh(0.05), &q, &p, &c, 1e-3).unwrap();
        assert!((rev.value - 0.4).abs() <= rev.tolerance.unwrap());
    }
}
