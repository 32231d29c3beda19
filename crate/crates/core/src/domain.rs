//! Analytic marginals, labelled domains, and seeded datasets.

use crate::error::{Error, Result};
use crate::geometry::{clip_polygon, polygon_area, rect_polygon, segment_interval, Vec2};
use crate::hypothesis::{disagreement_region, Hypothesis, HypothesisClass, Point, Region};
use crate::numeric::std_normal_mass;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// How far beyond a Gaussian mean the threshold search box extends.
pub const GAUSSIAN_BOX_SIGMAS: f64 = 12.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Shape1D {
    UniformInterval { lo: f64, hi: f64 },
    Gaussian { mean: f64, stddev: f64 },
}

impl Shape1D {
    fn mass(&self, lo: f64, hi: f64) -> f64 {
        match *self {
            Shape1D::UniformInterval { lo: a, hi: b } => {
                let (l, h) = (lo.max(a), hi.min(b));
                if h > l {
                    (h - l) / (b - a)
                } else {
                    0.0
                }
            }
            Shape1D::Gaussian { mean, stddev } => {
                std_normal_mass((lo - mean) / stddev, (hi - mean) / stddev)
            }
        }
    }

    fn max_density(&self) -> f64 {
        match *self {
            Shape1D::UniformInterval { lo, hi } => 1.0 / (hi - lo),
            Shape1D::Gaussian { stddev, .. } => 1.0 / (stddev * (2.0 * PI).sqrt()),
        }
    }

    fn support_box(&self) -> (f64, f64) {
        match *self {
            Shape1D::UniformInterval { lo, hi } => (lo, hi),
            Shape1D::Gaussian { mean, stddev } => {
                (mean - GAUSSIAN_BOX_SIGMAS * stddev, mean + GAUSSIAN_BOX_SIGMAS * stddev)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub weight: f64,
    pub shape: Shape1D,
}

/// Finite mixture of uniform intervals and Gaussians on the real line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Marginal1D {
    pub components: Vec<Component>,
}

impl Marginal1D {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        let m = Self { components };
        m.validate()?;
        Ok(m)
    }

    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![Component { weight: 1.0, shape: Shape1D::UniformInterval { lo, hi } }])
    }

    /// Mixture of Gaussians given as `(weight, mean, stddev)`.
    pub fn gaussian_mixture(parts: &[(f64, f64, f64)]) -> Result<Self> {
        Self::new(
            parts
                .iter()
                .map(|&(weight, mean, stddev)| Component { weight, shape: Shape1D::Gaussian { mean, stddev } })
                .collect(),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::InvalidMarginal("no components".into()));
        }
        let mut total = 0.0;
        for c in &self.components {
            if !(c.weight >= 0.0) {
                return Err(Error::InvalidMarginal(format!("negative weight {}", c.weight)));
            }
            total += c.weight;
            match c.shape {
                Shape1D::UniformInterval { lo, hi } if !(lo < hi) || !lo.is_finite() || !hi.is_finite() => {
                    return Err(Error::InvalidMarginal(format!("interval [{lo}, {hi}] is empty")));
                }
                Shape1D::Gaussian { stddev, mean } if !(stddev > 0.0) || !mean.is_finite() => {
                    return Err(Error::InvalidMarginal(format!("stddev {stddev} not positive")));
                }
                _ => {}
            }
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidMarginal(format!("weights sum to {total}")));
        }
        Ok(())
    }

    /// Mass of `[lo, hi)`.
    pub fn interval_mass(&self, lo: f64, hi: f64) -> f64 {
        if !(hi > lo) {
            return 0.0;
        }
        self.components.iter().map(|c| c.weight * c.shape.mass(lo, hi)).sum()
    }

    /// `P(X < t)`.
    pub fn cdf(&self, t: f64) -> f64 {
        self.interval_mass(f64::NEG_INFINITY, t)
    }

    /// Upper bound on the density (sum of component peaks).
    pub fn max_density(&self) -> f64 {
        self.components.iter().map(|c| c.weight * c.shape.max_density()).sum()
    }

    /// Points where the density jumps or peaks: uniform endpoints and
    /// Gaussian means.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for c in &self.components {
            match c.shape {
                Shape1D::UniformInterval { lo, hi } => out.extend([lo, hi]),
                Shape1D::Gaussian { mean, .. } => out.push(mean),
            }
        }
        out
    }

    /// Smallest interval covering every component's effective support.
    pub fn support_box(&self) -> (f64, f64) {
        self.components
            .iter()
            .filter(|c| c.weight > 0.0)
            .map(|c| c.shape.support_box())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (l, h)| (a.min(l), b.max(h)))
    }

    fn sample_one<R: Rng>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut chosen = &self.components[self.components.len() - 1];
        for c in &self.components {
            acc += c.weight;
            if u < acc {
                chosen = c;
                break;
            }
        }
        match chosen.shape {
            Shape1D::UniformInterval { lo, hi } => lo + (hi - lo) * rng.random::<f64>(),
            Shape1D::Gaussian { mean, stddev } => {
                let z: f64 = StandardNormal.sample(rng);
                mean + stddev * z
            }
        }
    }
}

/// Uniform distributions on a rectangle or a line segment in the plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Marginal2D {
    UniformRect { x_range: [f64; 2], y_range: [f64; 2] },
    UniformSegment { endpoint_a: Vec2, endpoint_b: Vec2 },
}

impl Marginal2D {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Marginal2D::UniformRect { x_range, y_range } => {
                if !(x_range[0] < x_range[1] && y_range[0] < y_range[1]) {
                    return Err(Error::InvalidMarginal("rectangle has zero area".into()));
                }
            }
            Marginal2D::UniformSegment { endpoint_a, endpoint_b } => {
                if endpoint_a == endpoint_b {
                    return Err(Error::InvalidMarginal("segment has zero length".into()));
                }
            }
        }
        Ok(())
    }

    /// Bounding box `(min, max)`.
    pub fn bounds(&self) -> (Vec2, Vec2) {
        match *self {
            Marginal2D::UniformRect { x_range, y_range } => ([x_range[0], y_range[0]], [x_range[1], y_range[1]]),
            Marginal2D::UniformSegment { endpoint_a: a, endpoint_b: b } => {
                ([a[0].min(b[0]), a[1].min(b[1])], [a[0].max(b[0]), a[1].max(b[1])])
            }
        }
    }

    pub(crate) fn wedge_mass(&self, bounds: &[(crate::geometry::HalfPlane, bool)]) -> f64 {
        match *self {
            Marginal2D::UniformRect { x_range, y_range } => {
                let mut poly = rect_polygon(x_range, y_range);
                for (hp, pos) in bounds {
                    poly = clip_polygon(&poly, hp, *pos);
                }
                polygon_area(&poly) / ((x_range[1] - x_range[0]) * (y_range[1] - y_range[0]))
            }
            Marginal2D::UniformSegment { endpoint_a, endpoint_b } => {
                let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
                for (hp, pos) in bounds {
                    let (l, h) = segment_interval(endpoint_a, endpoint_b, hp, *pos);
                    lo = lo.max(l);
                    hi = hi.min(h);
                }
                (hi - lo).max(0.0)
            }
        }
    }

    fn sample_one<R: Rng>(&self, rng: &mut R) -> Vec2 {
        match *self {
            Marginal2D::UniformRect { x_range, y_range } => [
                x_range[0] + (x_range[1] - x_range[0]) * rng.random::<f64>(),
                y_range[0] + (y_range[1] - y_range[0]) * rng.random::<f64>(),
            ],
            Marginal2D::UniformSegment { endpoint_a: a, endpoint_b: b } => {
                let s: f64 = rng.random();
                [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])]
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Marginal {
    OneD(Marginal1D),
    TwoD(Marginal2D),
}

impl Marginal {
    pub fn dimension(&self) -> usize {
        match self {
            Marginal::OneD(_) => 1,
            Marginal::TwoD(_) => 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Marginal::OneD(m) => m.validate(),
            Marginal::TwoD(m) => m.validate(),
        }
    }

    /// Probability of `region`.
    pub fn mass(&self, region: &Region) -> Result<f64> {
        match (self, region) {
            (Marginal::OneD(m), Region::Line { intervals }) => {
                Ok(intervals.iter().map(|iv| m.interval_mass(iv.lo, iv.hi)).sum::<f64>().min(1.0))
            }
            (Marginal::TwoD(m), Region::Plane { wedges }) => {
                Ok(wedges.iter().map(|w| m.wedge_mass(&w.bounds)).sum::<f64>().min(1.0))
            }
            _ => Err(Error::DimensionMismatch { expected: self.dimension(), found: region.dimension() }),
        }
    }

    pub fn as_1d(&self) -> Option<&Marginal1D> {
        match self {
            Marginal::OneD(m) => Some(m),
            Marginal::TwoD(_) => None,
        }
    }

    pub fn as_2d(&self) -> Option<&Marginal2D> {
        match self {
            Marginal::TwoD(m) => Some(m),
            Marginal::OneD(_) => None,
        }
    }
}

/// Free-function form of [`Marginal::mass`].
pub fn mass(marginal: &Marginal, region: &Region) -> Result<f64> {
    marginal.mass(region)
}

/// A marginal plus a deterministic labeling hypothesis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DomainRepr")]
pub struct Domain {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    pub marginal: Marginal,
    pub labeling: Hypothesis,
}

#[derive(Deserialize)]
struct DomainRepr {
    #[serde(default)]
    name: String,
    marginal: Marginal,
    labeling: Hypothesis,
}

impl TryFrom<DomainRepr> for Domain {
    type Error = Error;
    fn try_from(r: DomainRepr) -> Result<Self> {
        Domain::new(r.name, r.marginal, r.labeling)
    }
}

impl Domain {
    pub fn new(name: impl Into<String>, marginal: Marginal, labeling: Hypothesis) -> Result<Self> {
        marginal.validate()?;
        if marginal.dimension() != labeling.dimension() {
            return Err(Error::DimensionMismatch { expected: marginal.dimension(), found: labeling.dimension() });
        }
        Ok(Self { name: name.into(), marginal, labeling })
    }

    pub fn dimension(&self) -> usize {
        self.marginal.dimension()
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// `err_D(h)`: mass of the region where `h` disagrees with the labeling.
    pub fn expected_error(&self, h: &Hypothesis) -> Result<f64> {
        self.marginal.mass(&disagreement_region(h, &self.labeling)?)
    }

    /// Mass where `h` and `h2` disagree, `E_D L(h, h2)`.
    pub fn disagreement(&self, h: &Hypothesis, h2: &Hypothesis) -> Result<f64> {
        self.marginal.mass(&disagreement_region(h, h2)?)
    }

    /// Search box covering this domain's support.
    pub fn default_class(&self) -> HypothesisClass {
        default_class(&[self])
    }

    /// i.i.d. sample; labels from the labeling hypothesis when requested.
    pub fn sample(&self, count: usize, seed: u64, labeled: bool) -> Result<Dataset> {
        if count == 0 {
            return Err(Error::InvalidParameter("sample count must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (points, labels) = match &self.marginal {
            Marginal::OneD(m) => {
                let xs: Vec<f64> = (0..count).map(|_| m.sample_one(&mut rng)).collect();
                let ls = labeled.then(|| xs.iter().map(|&x| self.labeling.predict_1d(x)).collect());
                (Points::OneD(xs), ls)
            }
            Marginal::TwoD(m) => {
                let xs: Vec<Vec2> = (0..count).map(|_| m.sample_one(&mut rng)).collect();
                let ls = labeled.then(|| xs.iter().map(|&x| self.labeling.predict_2d(x)).collect());
                (Points::TwoD(xs), ls)
            }
        };
        Ok(Dataset { points, labels, seed, source_id: self.name.clone() })
    }
}

/// Class whose parameter box covers the supports of all `domains`.
pub fn default_class(domains: &[&Domain]) -> HypothesisClass {
    match domains.first().map(|d| d.dimension()) {
        Some(2) => {
            let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
            for d in domains {
                if let Some(m) = d.marginal.as_2d() {
                    let (a, b) = m.bounds();
                    for k in 0..2 {
                        lo[k] = lo[k].min(a[k]);
                        hi[k] = hi[k].max(b[k]);
                    }
                }
            }
            let center = [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])];
            let radius = 0.5 * ((hi[0] - lo[0]).powi(2) + (hi[1] - lo[1]).powi(2)).sqrt();
            HypothesisClass::linear_2d(center, radius.max(1e-12))
        }
        _ => {
            let (lo, hi) = domains
                .iter()
                .filter_map(|d| d.marginal.as_1d())
                .map(|m| m.support_box())
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (l, h)| (a.min(l), b.max(h)));
            HypothesisClass::thresholds(lo, hi)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Points {
    OneD(Vec<f64>),
    TwoD(Vec<Vec2>),
}

impl Points {
    pub fn len(&self) -> usize {
        match self {
            Points::OneD(v) => v.len(),
            Points::TwoD(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> Point {
        match self {
            Points::OneD(v) => Point::OneD(v[i]),
            Points::TwoD(v) => Point::TwoD(v[i]),
        }
    }
}

/// Finite sample with optional labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub points: Points,
    pub labels: Option<Vec<u8>>,
    pub seed: u64,
    pub source_id: String,
}

impl Dataset {
    pub fn new(points: Points, labels: Option<Vec<u8>>, seed: u64, source_id: impl Into<String>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.len() != points.len() {
                return Err(Error::SizeMismatch { expected: points.len(), found: l.len() });
            }
            if l.iter().any(|&y| y > 1) {
                return Err(Error::InvalidParameter("labels must be 0 or 1".into()));
            }
        }
        Ok(Self { points, labels, seed, source_id: source_id.into() })
    }

    pub fn labeled_1d(xs: Vec<f64>, ys: Vec<u8>, seed: u64, id: &str) -> Result<Self> {
        Self::new(Points::OneD(xs), Some(ys), seed, id)
    }

    pub fn unlabeled_1d(xs: Vec<f64>, seed: u64, id: &str) -> Self {
        Self { points: Points::OneD(xs), labels: None, seed, source_id: id.into() }
    }

    pub fn unlabeled_2d(xs: Vec<Vec2>, seed: u64, id: &str) -> Self {
        Self { points: Points::TwoD(xs), labels: None, seed, source_id: id.into() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dimension(&self) -> usize {
        match self.points {
            Points::OneD(_) => 1,
            Points::TwoD(_) => 2,
        }
    }

    pub fn is_labeled(&self) -> bool {
        self.labels.is_some()
    }

    /// Fraction of points with `h(x) != y`.
    pub fn empirical_error(&self, h: &Hypothesis) -> Result<f64> {
        let labels = self.labels.as_ref().ok_or(Error::UnlabeledDataset)?;
        if h.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), found: h.dimension() });
        }
        if self.is_empty() {
            return Err(Error::EmptyData);
        }
        let wrong = match &self.points {
            Points::OneD(xs) => xs.iter().zip(labels).filter(|(&x, &y)| h.predict_1d(x) != y).count(),
            Points::TwoD(xs) => xs.iter().zip(labels).filter(|(&x, &y)| h.predict_2d(x) != y).count(),
        };
        Ok(wrong as f64 / self.len() as f64)
    }

    /// Fraction of points on which `h` and `h2` disagree (labels ignored).
    pub fn disagreement(&self, h: &Hypothesis, h2: &Hypothesis) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        let n = match &self.points {
            Points::OneD(xs) => xs.iter().filter(|&&x| h.predict_1d(x) != h2.predict_1d(x)).count(),
            Points::TwoD(xs) => xs.iter().filter(|&&x| h.predict_2d(x) != h2.predict_2d(x)).count(),
        };
        n as f64 / self.len() as f64
    }
}

pub fn expected_error(h: &Hypothesis, domain: &Domain) -> Result<f64> {
    domain.expected_error(h)
}

pub fn empirical_error(h: &Hypothesis, data: &Dataset) -> Result<f64> {
    data.empirical_error(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypothesis::Interval;

    fn line(ivs: &[(f64, f64)]) -> Region {
        Region::from_intervals(ivs.iter().map(|&(a, b)| Interval::new(a, b)).collect())
    }

    #[test]
    fn uniform_and_mixture_masses() {
        let u = Marginal::OneD(Marginal1D::uniform(0.0, 1.0).unwrap());
        assert!((u.mass(&line(&[(0.25, 0.75)])).unwrap() - 0.5).abs() < 1e-15);
        let q = Marginal::OneD(Marginal1D::gaussian_mixture(&[(0.5, -8.0, 1.0), (0.5, 10.0, 1.0)]).unwrap());
        assert!((q.mass(&Region::everything(1)).unwrap() - 1.0).abs() < 1e-15);
        let p = Marginal::OneD(Marginal1D::gaussian_mixture(&[(0.5, -10.0, 1.0), (0.5, 8.0, 1.0)]).unwrap());
        let m = p.mass(&line(&[(9.0, f64::INFINITY)])).unwrap();
        assert!((m - 0.0793).abs() < 1e-4);
    }

    #[test]
    fn invalid_marginals() {
        assert!(Marginal1D::uniform(1.0, 1.0).is_err());
        assert!(Marginal1D::gaussian_mixture(&[(0.5, 0.0, 1.0)]).is_err());
        assert!(Marginal1D::gaussian_mixture(&[(1.0, 0.0, 0.0)]).is_err());
        assert!(Marginal2D::UniformSegment { endpoint_a: [0.0, 0.0], endpoint_b: [0.0, 0.0] }.validate().is_err());
        let m = Marginal::OneD(Marginal1D::uniform(0.0, 1.0).unwrap());
        assert!(m.mass(&Region::everything(2)).is_err());
    }

    #[test]
    fn domain_dimension_must_match() {
        let m = Marginal::OneD(Marginal1D::uniform(0.0, 1.0).unwrap());
        assert!(Domain::new("x", m, Hypothesis::linear(0.0, 0.5)).is_err());
    }

    fn ex41_p() -> Domain {
        Domain::new("P", Marginal::OneD(Marginal1D::uniform(0.4, 0.6).unwrap()), Hypothesis::threshold(0.5)).unwrap()
    }

    #[test]
    fn sampling_contract() {
        let p = ex41_p();
        let d = p.sample(100, 7, true).unwrap();
        let Points::OneD(xs) = &d.points else { panic!() };
        assert!(xs.iter().all(|&x| (0.4..=0.6).contains(&x)));
        let ys = d.labels.as_ref().unwrap();
        assert!(xs.iter().zip(ys).all(|(&x, &y)| y == (x < 0.5) as u8));
        assert_eq!(d, p.sample(100, 7, true).unwrap());
        assert!(p.sample(0, 7, true).is_err());

        // mean of U[0,1] within 3σ/√n = 3·0.2887/316 ≈ 0.00274 of ½, spec asks for 0.01
        let u = Domain::new("U", Marginal::OneD(Marginal1D::uniform(0.0, 1.0).unwrap()), Hypothesis::threshold(0.5)).unwrap();
        let d = u.sample(100_000, 11, false).unwrap();
        let Points::OneD(xs) = &d.points else { panic!() };
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        assert!((mean - 0.5).abs() < 0.01);
    }

    #[test]
    fn expected_error_examples() {
        let p = ex41_p();
        assert_eq!(p.expected_error(&Hypothesis::threshold(0.5)).unwrap(), 0.0);
        assert!((p.expected_error(&Hypothesis::threshold(0.52)).unwrap() - 0.1).abs() < 1e-12);
        // Monte-Carlo cross-check of the 0.1
        let d = p.sample(200_000, 3, true).unwrap();
        let mc = d.empirical_error(&Hypothesis::threshold(0.52)).unwrap();
        assert!((mc - 0.1).abs() < 4.0 * (0.09f64 / 200_000.0).sqrt() + 1e-3);
    }

    #[test]
    fn empirical_error_examples() {
        let zeros = Dataset::labeled_1d(vec![0.1, 0.2, 0.3], vec![0, 0, 0], 0, "z").unwrap();
        assert_eq!(zeros.empirical_error(&Hypothesis::threshold(f64::NEG_INFINITY)).unwrap(), 0.0);
        assert_eq!(zeros.empirical_error(&Hypothesis::threshold(f64::INFINITY)).unwrap(), 1.0);
        let three = Dataset::labeled_1d(vec![0.1, 0.6, 0.9], vec![1, 0, 0], 0, "t").unwrap();
        assert_eq!(three.empirical_error(&Hypothesis::threshold(0.5)).unwrap(), 0.0);
        let unl = Dataset::unlabeled_1d(vec![0.1], 0, "u");
        assert!(matches!(unl.empirical_error(&Hypothesis::threshold(0.5)), Err(Error::UnlabeledDataset)));
        assert!(Dataset::labeled_1d(vec![0.1], vec![0, 1], 0, "bad").is_err());
    }

    #[test]
    fn domain_json_roundtrip() {
        let p = Domain::new(
            "P",
            Marginal::OneD(Marginal1D::gaussian_mixture(&[(0.5, -10.0, 1.0), (0.5, 8.0, 1.0)]).unwrap()),
            Hypothesis::threshold(-1.0),
        )
        .unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"marginal\"") && s.contains("\"labeling\""));
        assert_eq!(Domain::from_json(&s).unwrap(), p);
        let seg = Domain::new(
            "",
            Marginal::TwoD(Marginal2D::UniformSegment { endpoint_a: [0.0, 0.5], endpoint_b: [1.0, 0.5] }),
            Hypothesis::linear(0.0, 0.5),
        )
        .unwrap();
        let s = serde_json::to_string(&seg).unwrap();
        assert_eq!(Domain::from_json(&s).unwrap(), seg);
        let bad = r#"{"marginal":{"components":[{"weight":0.7,"shape":{"type":"uniform_interval","lo":0,"hi":1}}]},"labeling":{"kind":"threshold","t":0.5,"orientation":"ones_below"}}"#;
        assert!(Domain::from_json(bad).is_err());
    }
}
