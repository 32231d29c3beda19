//! Named source/target pairs used by the examples, suites and sweeps, plus
//! a generator of random one-dimensional configurations.

use crate::domain::{default_class, Component, Domain, Marginal, Marginal1D, Marginal2D, Shape1D};
use crate::error::{Error, Result};
use crate::hypothesis::{Hypothesis, HypothesisClass, Orientation};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// A source, a target and the class searched over both.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pair {
    pub source: Domain,
    pub target: Domain,
    pub class: HypothesisClass,
}

impl Pair {
    fn new(source: Domain, target: Domain) -> Self {
        let class = default_class(&[&source, &target]);
        Self { source, target, class }
    }

    /// Same domains with the roles swapped.
    pub fn reversed(&self) -> Self {
        Self { source: self.target.clone(), target: self.source.clone(), class: self.class }
    }
}

/// Narrow uniform source `U[½−ε, ½+ε]` against `U[0, 1]`, both labeled by `h_{½}`.
pub fn narrow_vs_wide(epsilon: f64) -> Result<Pair> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::InvalidParameter(format!("epsilon = {epsilon} must lie in (0, 1/2)")));
    }
    let h = Hypothesis::threshold(0.5);
    let p = Domain::new("P", Marginal::OneD(Marginal1D::uniform(0.5 - epsilon, 0.5 + epsilon)?), h)?;
    let q = Domain::new("Q", Marginal::OneD(Marginal1D::uniform(0.0, 1.0)?), h)?;
    Ok(Pair::new(p, q))
}

/// Two-component unit-variance Gaussian mixtures.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    pub source_means: [f64; 2],
    pub target_means: [f64; 2],
    pub source_weight: f64,
    pub target_weight: f64,
    pub source_threshold: f64,
    pub target_threshold: f64,
}

impl Default for MixtureSpec {
    fn default() -> Self {
        Self {
            source_means: [-10.0, 8.0],
            target_means: [-8.0, 10.0],
            source_weight: 0.5,
            target_weight: 0.5,
            source_threshold: -1.0,
            target_threshold: 1.0,
        }
    }
}

/// Shifted mixtures whose labelings are `h_{-1}` and `h_{1}` by default.
pub fn shifted_mixtures(spec: &MixtureSpec) -> Result<Pair> {
    let mix = |m: [f64; 2], w: f64| Marginal1D::gaussian_mixture(&[(w, m[0], 1.0), (1.0 - w, m[1], 1.0)]);
    let p = Domain::new(
        "P",
        Marginal::OneD(mix(spec.source_means, spec.source_weight)?),
        Hypothesis::threshold(spec.source_threshold),
    )?;
    let q = Domain::new(
        "Q",
        Marginal::OneD(mix(spec.target_means, spec.target_weight)?),
        Hypothesis::threshold(spec.target_threshold),
    )?;
    Ok(Pair::new(p, q))
}

/// Unit square against the horizontal segment at height `y`, both labeled
/// by `1[x₁ > ½]`.
pub fn square_vs_segment(y: f64) -> Result<Pair> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::InvalidParameter(format!("segment height {y} outside [0, 1]")));
    }
    let l = Hypothesis::linear(0.0, 0.5);
    let rect = Marginal2D::UniformRect { x_range: [0.0, 1.0], y_range: [0.0, 1.0] };
    let seg = Marginal2D::UniformSegment { endpoint_a: [0.0, y], endpoint_b: [1.0, y] };
    Ok(Pair::new(Domain::new("P", Marginal::TwoD(rect), l)?, Domain::new("Q", Marginal::TwoD(seg), l)?))
}

/// Mixture of one to three uniform or Gaussian pieces inside roughly `[-4, 4]`.
pub fn random_marginal<R: Rng>(rng: &mut R) -> Result<Marginal1D> {
    let k = rng.random_range(1..=3);
    let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.2..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut comps = Vec::with_capacity(k);
    let mut left = 1.0;
    for (i, w) in raw.iter().enumerate() {
        let weight = if i + 1 == k { left } else { w / total };
        left -= weight;
        let shape = if rng.random_bool(0.5) {
            let lo = rng.random_range(-3.0..2.0);
            Shape1D::UniformInterval { lo, hi: lo + rng.random_range(0.2..2.0) }
        } else {
            Shape1D::Gaussian { mean: rng.random_range(-3.0..3.0), stddev: rng.random_range(0.3..1.5) }
        };
        comps.push(Component { weight, shape });
    }
    Marginal1D::new(comps)
}

/// Random source and target, each labeled by a random flipped-or-not threshold.
pub fn random_pair<R: Rng>(rng: &mut R) -> Result<Pair> {
    let labeling = |rng: &mut R| {
        let o = if rng.random_bool(0.5) { Orientation::OnesBelow } else { Orientation::OnesAbove };
        Hypothesis::threshold_with(rng.random_range(-2.0..2.0), o)
    };
    let hp = labeling(rng);
    let p = Domain::new("P", Marginal::OneD(random_marginal(rng)?), hp)?;
    let hq = labeling(rng);
    let q = Domain::new("Q", Marginal::OneD(random_marginal(rng)?), hq)?;
    Ok(Pair::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn random_marginals_are_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let m = random_marginal(&mut rng).unwrap();
            assert!((m.cdf(f64::INFINITY) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn constructors_reject_bad_parameters() {
        assert!(narrow_vs_wide(0.0).is_err());
        assert!(narrow_vs_wide(0.6).is_err());
        assert!(square_vs_segment(1.5).is_err());
        let pair = shifted_mixtures(&MixtureSpec::default()).unwrap();
        assert_eq!(pair.reversed().source.name, "Q");
    }
}
