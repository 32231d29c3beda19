//! Finite-sample localization: the capacity term `𝓔`, the margins `𝔠⁺` and
//! `𝔠⁻`, membership in the empirical localized spaces, and a Monte-Carlo
//! check of the sandwich `H̃_{r−} ⊂ H_r ⊂ H̃_{r+}`.

use crate::domain::{Dataset, Domain, Points};
use crate::error::{Error, Result};
use crate::hypothesis::{Hypothesis, HypothesisClass, Orientation};
use crate::numeric::derive_seed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Slack on every `≤` membership test.
pub const MEMBERSHIP_SLACK: f64 = 1e-12;

/// How the confidence term inside `𝓔` is grouped.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EpsilonReading {
    /// `+ln(16/δ)`
    #[default]
    LogSixteenOverDelta,
    /// `−(ln δ)/16`
    LogDeltaOverSixteen,
}

/// `𝓔 = 4 (d (1 + 4 max(0, ln(n/d))) + ln(16/δ)) / n`.
pub fn epsilon_term(n: usize, d: usize, delta: f64) -> Result<f64> {
    epsilon_term_with(n, d, delta, EpsilonReading::default())
}

pub fn epsilon_term_with(n: usize, d: usize, delta: f64, reading: EpsilonReading) -> Result<f64> {
    if d == 0 || n < d {
        return Err(Error::InvalidParameter(format!("need n >= d >= 1, got n = {n}, d = {d}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta = {delta} not in (0, 1)")));
    }
    let (n, d) = (n as f64, d as f64);
    let conf = match reading {
        EpsilonReading::LogSixteenOverDelta => (16.0 / delta).ln(),
        EpsilonReading::LogDeltaOverSixteen => -delta.ln() / 16.0,
    };
    Ok(4.0 * (d * (1.0 + 4.0 * (n / d).ln().max(0.0)) + conf) / n)
}

fn plus_from(eps: f64, r: f64) -> f64 {
    0.5 * eps * (1.0 + (1.0 + 4.0 * r / eps).sqrt())
}

fn minus_from(eps: f64, r: f64) -> Result<f64> {
    if r > eps {
        Ok((eps * r).sqrt())
    } else {
        Err(Error::RadiusNotAboveCapacity { r, capacity: eps })
    }
}

/// `𝔠⁺ = (𝓔/2)(1 + √(1 + 4r/𝓔))`.
pub fn c_plus(n: usize, d: usize, delta: f64, r: f64) -> Result<f64> {
    Ok(plus_from(epsilon_term(n, d, delta)?, r))
}

/// `𝔠⁻ = √(𝓔 r)`, defined for `r > 𝓔`.
pub fn c_minus(n: usize, d: usize, delta: f64, r: f64) -> Result<f64> {
    minus_from(epsilon_term(n, d, delta)?, r)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalizationConstants {
    pub n: usize,
    pub d: usize,
    pub delta: f64,
    pub r: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default)]
    pub reading: EpsilonReading,
    pub epsilon: f64,
    pub c_plus: f64,
    /// absent when `r ≤ 𝓔`
    pub c_minus: Option<f64>,
}

impl LocalizationConstants {
    pub fn new(n: usize, d: usize, delta: f64, r: f64) -> Result<Self> {
        Self::with_reading(n, d, delta, r, EpsilonReading::default())
    }

    pub fn with_reading(n: usize, d: usize, delta: f64, r: f64, reading: EpsilonReading) -> Result<Self> {
        if !(r >= 0.0) {
            return Err(Error::InvalidParameter(format!("r = {r} must be nonnegative")));
        }
        let epsilon = epsilon_term_with(n, d, delta, reading)?;
        Ok(Self {
            n,
            d,
            delta,
            r,
            gamma: None,
            reading,
            epsilon,
            c_plus: plus_from(epsilon, r),
            c_minus: minus_from(epsilon, r).ok(),
        })
    }

    pub fn with_gamma(mut self, gamma: f64) -> Result<Self> {
        if !(gamma >= 1.0) {
            return Err(Error::InvalidParameter(format!("gamma = {gamma} must be at least 1")));
        }
        self.gamma = Some(gamma);
        Ok(self)
    }

    /// Recomputes the derived fields and checks they match exactly.
    pub fn validate(&self) -> Result<()> {
        let fresh = Self::with_reading(self.n, self.d, self.delta, self.r, self.reading)?;
        if fresh.epsilon != self.epsilon || fresh.c_plus != self.c_plus || fresh.c_minus != self.c_minus {
            return Err(Error::InvalidParameter("derived localization fields are stale".into()));
        }
        if let Some(g) = self.gamma {
            if !(g >= 1.0) {
                return Err(Error::InvalidParameter(format!("gamma = {g} must be at least 1")));
            }
        }
        Ok(())
    }

    /// `r + 𝔠⁺`
    pub fn upper_cutoff(&self) -> f64 {
        self.r + self.c_plus
    }

    /// `r − 𝔠⁻`
    pub fn lower_cutoff(&self) -> Result<f64> {
        self.c_minus
            .map(|c| self.r - c)
            .ok_or(Error::RadiusNotAboveCapacity { r: self.r, capacity: self.epsilon })
    }

    fn check_size(&self, data: &Dataset) -> Result<()> {
        if data.len() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: data.len() });
        }
        Ok(())
    }
}

/// `h ∈ H̃_{r+}`: empirical source error at most `r + 𝔠⁺`.
pub fn member_plus(h: &Hypothesis, source: &Dataset, c: &LocalizationConstants) -> Result<bool> {
    c.check_size(source)?;
    Ok(source.empirical_error(h)? <= c.upper_cutoff() + MEMBERSHIP_SLACK)
}

/// `h ∈ H̃_{r−}`: empirical source error at most `r − 𝔠⁻`.
pub fn member_minus(h: &Hypothesis, source: &Dataset, c: &LocalizationConstants) -> Result<bool> {
    c.check_size(source)?;
    let cut = c.lower_cutoff()?;
    Ok(source.empirical_error(h)? <= cut + MEMBERSHIP_SLACK)
}

/// Empirical threshold errors at arbitrary positions in `O(log n)`.
struct ThresholdErrors {
    xs: Vec<f64>,
    ones_prefix: Vec<usize>,
}

impl ThresholdErrors {
    fn new(xs: &[f64], ys: &[u8]) -> Self {
        let mut pairs: Vec<(f64, u8)> = xs.iter().copied().zip(ys.iter().copied()).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut ones_prefix = Vec::with_capacity(pairs.len() + 1);
        ones_prefix.push(0);
        for &(_, y) in &pairs {
            ones_prefix.push(ones_prefix.last().copied().unwrap_or(0) + y as usize);
        }
        Self { xs: pairs.into_iter().map(|p| p.0).collect(), ones_prefix }
    }

    fn error(&self, t: f64, o: Orientation) -> f64 {
        let n = self.xs.len();
        let k = self.xs.partition_point(|&x| x < t);
        let ones_below = self.ones_prefix[k];
        let wrong = (k - ones_below) + (self.ones_prefix[n] - ones_below);
        let wrong = match o {
            Orientation::OnesBelow => wrong,
            Orientation::OnesAbove => n - wrong,
        };
        wrong as f64 / n as f64
    }
}

/// Observed frequencies of the two containments over independent samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContainmentFrequency {
    /// `H̃_{r−} ⊂ H_r`
    pub lower: f64,
    /// `H_r ⊂ H̃_{r+}`
    pub upper: f64,
    pub trials: usize,
    pub constants: LocalizationConstants,
    /// population grid size added to each trial's candidates
    pub grid_size: usize,
}

/// Estimates how often `H̃_{r−} ⊂ H_r` and `H_r ⊂ H̃_{r+}` hold on samples
/// of size `n`, checked over each sample's canonical candidates plus a fixed
/// grid at `1e-3` of the parameter box.
pub fn containment_frequency(
    source: &Domain,
    class: &HypothesisClass,
    d: usize,
    delta: f64,
    r: f64,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<ContainmentFrequency> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let c = LocalizationConstants::new(n, d, delta, r)?;
    let lower_cut = c.lower_cutoff()?;
    let upper_cut = c.upper_cutoff();
    let grid: Vec<Hypothesis> = class.parameter_grid(class.relative_step(1e-3))?.collect();
    let grid_pop: Vec<f64> = grid.iter().map(|h| source.expected_error(h)).collect::<Result<_>>()?;

    let outcomes: Vec<(bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<(bool, bool)> {
            let data = source.sample(n, derive_seed(seed, trial as u64), true)?;
            let candidates = class.canonical_candidates(&[&data])?;
            let cand_pop: Vec<f64> = candidates.iter().map(|h| source.expected_error(h)).collect::<Result<_>>()?;
            let emp: Box<dyn Fn(&Hypothesis) -> f64> = match (&data.points, &data.labels) {
                (Points::OneD(xs), Some(ys)) => {
                    let te = ThresholdErrors::new(xs, ys);
                    Box::new(move |h: &Hypothesis| match *h {
                        Hypothesis::Threshold { t, orientation } => te.error(t, orientation),
                        Hypothesis::Linear2D { .. } => f64::NAN,
                    })
                }
                _ => {
                    let data = data.clone();
                    Box::new(move |h: &Hypothesis| data.empirical_error(h).unwrap_or(f64::NAN))
                }
            };
            let (mut lower_ok, mut upper_ok) = (true, true);
            for (h, &pop) in candidates.iter().zip(&cand_pop).chain(grid.iter().zip(&grid_pop)) {
                let e = emp(h);
                if e <= lower_cut + MEMBERSHIP_SLACK && pop > r {
                    lower_ok = false;
                }
                if pop <= r && e > upper_cut + MEMBERSHIP_SLACK {
                    upper_ok = false;
                }
                if !lower_ok && !upper_ok {
                    break;
                }
            }
            Ok((lower_ok, upper_ok))
        })
        .collect::<Result<_>>()?;

    let count = |f: fn(&(bool, bool)) -> bool| outcomes.iter().filter(|o| f(o)).count() as f64 / trials as f64;
    Ok(ContainmentFrequency {
        lower: count(|o| o.0),
        upper: count(|o| o.1),
        trials,
        constants: c,
        grid_size: grid.len(),
    })
}
