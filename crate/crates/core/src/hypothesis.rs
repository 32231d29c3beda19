//! Threshold and planar linear classifiers, their exact disagreement
//! regions, and the finite hypothesis families used by the searches.

use crate::domain::{Dataset, Points};
use crate::error::{Error, Result};
use crate::geometry::{dot, unit_normal, HalfPlane, Vec2};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// A point of the instance space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    OneD(f64),
    TwoD(Vec2),
}

impl Point {
    pub fn dimension(&self) -> usize {
        match self {
            Point::OneD(_) => 1,
            Point::TwoD(_) => 2,
        }
    }
}

/// Which side of a threshold outputs label 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `1[x < t]`
    OnesBelow,
    /// `1[x >= t]`, the exact complement of `OnesBelow`
    OnesAbove,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::OnesBelow, Orientation::OnesAbove];

    pub fn flipped(self) -> Self {
        match self {
            Orientation::OnesBelow => Orientation::OnesAbove,
            Orientation::OnesAbove => Orientation::OnesBelow,
        }
    }
}

/// A binary classifier from one of the two implemented classes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Hypothesis {
    Threshold {
        #[serde(with = "extended_real")]
        t: f64,
        orientation: Orientation,
    },
    /// `1[cos θ · x₁ + sin θ · x₂ > b]`
    #[serde(rename = "linear2d")]
    Linear2D { theta: f64, b: f64 },
}

impl Hypothesis {
    /// `h_t`: outputs 1 on `x < t`.
    pub fn threshold(t: f64) -> Self {
        Hypothesis::Threshold { t, orientation: Orientation::OnesBelow }
    }

    pub fn threshold_with(t: f64, orientation: Orientation) -> Self {
        Hypothesis::Threshold { t, orientation }
    }

    /// Linear classifier with `theta` canonicalised to `[0, 2π)`.
    pub fn linear(theta: f64, b: f64) -> Self {
        let mut th = theta.rem_euclid(TAU);
        if th >= TAU {
            th = 0.0;
        }
        Hypothesis::Linear2D { theta: th, b }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Hypothesis::Threshold { .. } => 1,
            Hypothesis::Linear2D { .. } => 2,
        }
    }

    /// The complementary classifier `1 - h` (up to the boundary line for
    /// linear classifiers).
    pub fn flip(&self) -> Self {
        match *self {
            Hypothesis::Threshold { t, orientation } => {
                Hypothesis::Threshold { t, orientation: orientation.flipped() }
            }
            Hypothesis::Linear2D { theta, b } => Hypothesis::linear(theta + PI, -b),
        }
    }

    pub fn predict(&self, x: Point) -> Result<u8> {
        match (self, x) {
            (Hypothesis::Threshold { .. }, Point::OneD(v)) => Ok(self.predict_1d(v)),
            (Hypothesis::Linear2D { .. }, Point::TwoD(v)) => Ok(self.predict_2d(v)),
            _ => Err(Error::DimensionMismatch { expected: self.dimension(), found: x.dimension() }),
        }
    }

    /// Threshold prediction; linear hypotheses return 0.
    #[inline]
    pub fn predict_1d(&self, x: f64) -> u8 {
        match *self {
            Hypothesis::Threshold { t, orientation: Orientation::OnesBelow } => (x < t) as u8,
            Hypothesis::Threshold { t, orientation: Orientation::OnesAbove } => (x >= t) as u8,
            Hypothesis::Linear2D { .. } => 0,
        }
    }

    #[inline]
    pub fn predict_2d(&self, x: Vec2) -> u8 {
        match self.half_plane() {
            Some(hp) => hp.contains(x) as u8,
            None => 0,
        }
    }

    /// Positive region of a linear classifier.
    pub fn half_plane(&self) -> Option<HalfPlane> {
        match *self {
            Hypothesis::Linear2D { theta, b } => Some(HalfPlane::new(unit_normal(theta), b)),
            Hypothesis::Threshold { .. } => None,
        }
    }
}

/// Half-open interval `[lo, hi)` over the extended reals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "extended_real")]
    pub lo: f64,
    #[serde(with = "extended_real")]
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x < self.hi
    }
}

/// One convex piece of a planar region: intersection of up to two
/// half-planes, each taken on its positive (`n·x > b`) or non-positive side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Wedge {
    pub bounds: Vec<(HalfPlane, bool)>,
}

impl Wedge {
    pub fn contains(&self, x: Vec2) -> bool {
        self.bounds.iter().all(|(hp, pos)| hp.contains(x) == *pos)
    }
}

/// An exactly representable subset of the instance space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "dimension", rename_all = "snake_case")]
pub enum Region {
    /// Sorted, pairwise disjoint half-open intervals.
    Line { intervals: Vec<Interval> },
    /// Pairwise disjoint wedges.
    Plane { wedges: Vec<Wedge> },
}

impl Region {
    pub fn empty(dimension: usize) -> Self {
        if dimension == 1 {
            Region::Line { intervals: vec![] }
        } else {
            Region::Plane { wedges: vec![] }
        }
    }

    pub fn everything(dimension: usize) -> Self {
        if dimension == 1 {
            Region::Line { intervals: vec![Interval::new(f64::NEG_INFINITY, f64::INFINITY)] }
        } else {
            Region::Plane { wedges: vec![Wedge { bounds: vec![] }] }
        }
    }

    /// Build a 1-D region, dropping empty pieces and sorting.
    pub fn from_intervals(mut intervals: Vec<Interval>) -> Self {
        intervals.retain(|iv| iv.hi > iv.lo);
        intervals.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
                _ => merged.push(iv),
            }
        }
        Region::Line { intervals: merged }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Region::Line { .. } => 1,
            Region::Plane { .. } => 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Region::Line { intervals } => intervals.is_empty(),
            Region::Plane { wedges } => wedges.is_empty(),
        }
    }

    pub fn contains(&self, x: Point) -> Result<bool> {
        match (self, x) {
            (Region::Line { intervals }, Point::OneD(v)) => Ok(intervals.iter().any(|iv| iv.contains(v))),
            (Region::Plane { wedges }, Point::TwoD(v)) => Ok(wedges.iter().any(|w| w.contains(v))),
            _ => Err(Error::DimensionMismatch { expected: self.dimension(), found: x.dimension() }),
        }
    }
}

/// Region where `h` and `h'` predict differently.
pub fn disagreement_region(h: &Hypothesis, h2: &Hypothesis) -> Result<Region> {
    match (*h, *h2) {
        (
            Hypothesis::Threshold { t: t1, orientation: o1 },
            Hypothesis::Threshold { t: t2, orientation: o2 },
        ) => {
            let (a, b) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            if o1 == o2 {
                Ok(Region::from_intervals(vec![Interval::new(a, b)]))
            } else {
                Ok(Region::from_intervals(vec![
                    Interval::new(f64::NEG_INFINITY, a),
                    Interval::new(b, f64::INFINITY),
                ]))
            }
        }
        (Hypothesis::Linear2D { theta: a1, b: b1 }, Hypothesis::Linear2D { theta: a2, b: b2 }) => {
            if a1 == a2 && b1 == b2 {
                return Ok(Region::empty(2));
            }
            let p = HalfPlane::new(unit_normal(a1), b1);
            let q = HalfPlane::new(unit_normal(a2), b2);
            Ok(Region::Plane {
                wedges: vec![
                    Wedge { bounds: vec![(p, true), (q, false)] },
                    Wedge { bounds: vec![(p, false), (q, true)] },
                ],
            })
        }
        _ => Err(Error::DimensionMismatch { expected: h.dimension(), found: h2.dimension() }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassKind {
    #[serde(rename = "threshold-1d")]
    Threshold1D,
    #[serde(rename = "linear-2d")]
    Linear2D,
}

/// Search bounds. Linear classifiers are searched as `(θ, s)` with
/// `b = n(θ)·center + s`, `s ∈ [-radius, radius]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParameterBox {
    Threshold { lo: f64, hi: f64 },
    Linear2D { center: Vec2, radius: f64 },
}

/// Step sizes for [`HypothesisClass::parameter_grid`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridStep {
    /// threshold step, or offset step for linear classifiers
    pub offset: f64,
    /// angular step (linear classifiers only)
    pub angle: f64,
}

impl GridStep {
    pub fn new(offset: f64, angle: f64) -> Self {
        Self { offset, angle }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisClass {
    pub kind: ClassKind,
    pub vc_dimension: usize,
    pub parameter_box: ParameterBox,
}

impl HypothesisClass {
    /// Thresholds with flips (VC dimension 2) searched over `[lo, hi]`.
    pub fn thresholds(lo: f64, hi: f64) -> Self {
        Self {
            kind: ClassKind::Threshold1D,
            vc_dimension: 2,
            parameter_box: ParameterBox::Threshold { lo, hi },
        }
    }

    /// Planar linear classifiers (VC dimension 3).
    pub fn linear_2d(center: Vec2, radius: f64) -> Self {
        Self {
            kind: ClassKind::Linear2D,
            vc_dimension: 3,
            parameter_box: ParameterBox::Linear2D { center, radius },
        }
    }

    pub fn dimension(&self) -> usize {
        match self.kind {
            ClassKind::Threshold1D => 1,
            ClassKind::Linear2D => 2,
        }
    }

    pub fn is_bounded(&self) -> bool {
        match self.parameter_box {
            ParameterBox::Threshold { lo, hi } => lo.is_finite() && hi.is_finite() && hi > lo,
            ParameterBox::Linear2D { center, radius } => {
                center[0].is_finite() && center[1].is_finite() && radius.is_finite() && radius > 0.0
            }
        }
    }

    /// Width of the offset range (threshold span or `2·radius`).
    pub fn offset_span(&self) -> f64 {
        match self.parameter_box {
            ParameterBox::Threshold { lo, hi } => hi - lo,
            ParameterBox::Linear2D { radius, .. } => 2.0 * radius,
        }
    }

    /// Steps that are `fraction` of the offset span and of `2π`.
    pub fn relative_step(&self, fraction: f64) -> GridStep {
        GridStep::new(fraction * self.offset_span(), fraction * TAU)
    }

    /// Linear classifier from search coordinates `(θ, s)`.
    pub fn line_at(&self, theta: f64, s: f64) -> Hypothesis {
        match self.parameter_box {
            ParameterBox::Linear2D { center, .. } => {
                Hypothesis::linear(theta, dot(unit_normal(theta), center) + s)
            }
            ParameterBox::Threshold { .. } => Hypothesis::threshold(s),
        }
    }

    /// Search coordinates `(θ, s)` of a linear classifier.
    pub fn line_coords(&self, h: &Hypothesis) -> Option<(f64, f64)> {
        match (self.parameter_box, *h) {
            (ParameterBox::Linear2D { center, .. }, Hypothesis::Linear2D { theta, b }) => {
                Some((theta, b - dot(unit_normal(theta), center)))
            }
            _ => None,
        }
    }

    /// Uniform grid over the parameter box, deterministic order (threshold
    /// ascending then orientation; angle outer, offset inner).
    pub fn parameter_grid(&self, step: GridStep) -> Result<impl Iterator<Item = Hypothesis> + '_> {
        if !self.is_bounded() {
            return Err(Error::UnboundedParameterBox);
        }
        if !(step.offset > 0.0) || (self.kind == ClassKind::Linear2D && !(step.angle > 0.0)) {
            return Err(Error::InvalidParameter("grid step must be positive".into()));
        }
        let (lo, hi) = match self.parameter_box {
            ParameterBox::Threshold { lo, hi } => (lo, hi),
            ParameterBox::Linear2D { radius, .. } => (-radius, radius),
        };
        let offsets = uniform_points(lo, hi, step.offset);
        let angles: Vec<f64> = match self.kind {
            ClassKind::Threshold1D => vec![0.0],
            ClassKind::Linear2D => {
                let k = ((TAU / step.angle).round() as usize).max(1);
                (0..k).map(|i| i as f64 * TAU / k as f64).collect()
            }
        };
        let kind = self.kind;
        Ok(angles.into_iter().flat_map(move |theta| {
            let offsets = offsets.clone();
            offsets.into_iter().flat_map(move |s| {
                let pair: Vec<Hypothesis> = match kind {
                    ClassKind::Threshold1D => Orientation::BOTH
                        .iter()
                        .map(|&o| Hypothesis::threshold_with(s, o))
                        .collect(),
                    ClassKind::Linear2D => vec![self.line_at(theta, s)],
                };
                pair
            })
        }))
    }

    /// Finite family realising every dichotomy of the pooled points that the
    /// class can realise.
    pub fn canonical_candidates(&self, data: &[&Dataset]) -> Result<Vec<Hypothesis>> {
        if data.is_empty() || data.iter().all(|d| d.is_empty()) {
            return Err(Error::EmptyData);
        }
        for d in data {
            if d.dimension() != self.dimension() {
                return Err(Error::DimensionMismatch { expected: self.dimension(), found: d.dimension() });
            }
        }
        match self.kind {
            ClassKind::Threshold1D => {
                let mut xs: Vec<f64> = Vec::new();
                for d in data {
                    if let Points::OneD(p) = &d.points {
                        xs.extend_from_slice(p);
                    }
                }
                Ok(threshold_candidates(&xs))
            }
            ClassKind::Linear2D => {
                let mut ps: Vec<Vec2> = Vec::new();
                for d in data {
                    if let Points::TwoD(p) = &d.points {
                        ps.extend_from_slice(p);
                    }
                }
                Ok(line_candidates(&ps))
            }
        }
    }
}

/// Sorted distinct candidate threshold positions: −∞, midpoints, +∞.
pub fn threshold_positions(xs: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = xs.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    let mut out = Vec::with_capacity(v.len() + 1);
    out.push(f64::NEG_INFINITY);
    for w in v.windows(2) {
        out.push(0.5 * (w[0] + w[1]));
    }
    out.push(f64::INFINITY);
    out
}

fn threshold_candidates(xs: &[f64]) -> Vec<Hypothesis> {
    threshold_positions(xs)
        .into_iter()
        .flat_map(|t| Orientation::BOTH.map(|o| Hypothesis::threshold_with(t, o)))
        .collect()
}

fn line_through(u: Vec2, v: Vec2) -> (f64, f64) {
    let d = [v[0] - u[0], v[1] - u[1]];
    let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
    let n = [-d[1] / len, d[0] / len];
    (n[1].atan2(n[0]), dot(n, u))
}

fn line_candidates(points: &[Vec2]) -> Vec<Hypothesis> {
    let mut ps: Vec<Vec2> = points.to_vec();
    ps.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    ps.dedup();
    let (mut min, mut max) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in &ps {
        for k in 0..2 {
            min[k] = min[k].min(p[k]);
            max[k] = max[k].max(p[k]);
        }
    }
    let diag = ((max[0] - min[0]).powi(2) + (max[1] - min[1]).powi(2)).sqrt();
    let eta = 1e-9 * if diag > 0.0 { diag } else { 1.0 };
    let far = 1.0 + 2.0 * ps.iter().flat_map(|p| [p[0].abs(), p[1].abs()]).fold(0.0, f64::max);

    let mut out = Vec::with_capacity(3 * ps.len() * ps.len().saturating_sub(1) + 4);
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            let (p, q) = (ps[i], ps[j]);
            let d = [q[0] - p[0], q[1] - p[1]];
            let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
            let n = [-d[1] / len * eta, d[0] / len * eta];
            let plus = |x: Vec2| [x[0] + n[0], x[1] + n[1]];
            let minus = |x: Vec2| [x[0] - n[0], x[1] - n[1]];
            for (u, v) in [(plus(p), plus(q)), (minus(p), minus(q)), (plus(p), minus(q))] {
                let (theta, b) = line_through(u, v);
                out.push(Hypothesis::linear(theta, b));
                out.push(Hypothesis::linear(theta + PI, -b));
            }
        }
    }
    for theta in [0.0, PI / 2.0] {
        out.push(Hypothesis::linear(theta, far));
        out.push(Hypothesis::linear(theta, -far));
    }
    out
}

pub(crate) fn uniform_points(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let span = hi - lo;
    let count = (span / step + 1e-9).floor() as usize + 1;
    let mut v: Vec<f64> = (0..count).map(|i| lo + step * i as f64).collect();
    if let Some(&last) = v.last() {
        if last < hi - 1e-12 * span.max(1.0) {
            v.push(hi);
        } else if let Some(l) = v.last_mut() {
            *l = hi;
        }
    }
    v
}

/// Serde adapter writing infinite values as `"inf"` / `"-inf"`.
pub mod extended_real {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else if *v < 0.0 {
            s.serialize_str("-inf")
        } else {
            s.serialize_str("nan")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Str(s) => match s.as_str() {
                "inf" | "+inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(serde::de::Error::custom(format!("not an extended real: {other}"))),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(v: f64) -> Point {
        Point::OneD(v)
    }

    #[test]
    fn threshold_predictions() {
        let h = Hypothesis::threshold(0.5);
        assert_eq!(h.predict(one(0.3)).unwrap(), 1);
        assert_eq!(h.predict(one(0.5)).unwrap(), 0);
        assert_eq!(h.flip().predict(one(0.5)).unwrap(), 1);
        assert_eq!(Hypothesis::linear(0.0, 0.5).predict(Point::TwoD([0.7, 0.2])).unwrap(), 1);
        assert!(h.predict(Point::TwoD([0.0, 0.0])).is_err());
    }

    #[test]
    fn threshold_disagreements() {
        let a = Hypothesis::threshold(0.2);
        let b = Hypothesis::threshold(0.7);
        assert_eq!(
            disagreement_region(&a, &b).unwrap(),
            Region::Line { intervals: vec![Interval::new(0.2, 0.7)] }
        );
        assert_eq!(
            disagreement_region(&a, &b.flip()).unwrap(),
            Region::Line {
                intervals: vec![
                    Interval::new(f64::NEG_INFINITY, 0.2),
                    Interval::new(0.7, f64::INFINITY)
                ]
            }
        );
        assert!(disagreement_region(&a, &a).unwrap().is_empty());
        assert_eq!(disagreement_region(&a, &a.flip()).unwrap(), Region::everything(1));
        assert!(disagreement_region(&a, &Hypothesis::linear(0.0, 0.0)).is_err());
    }

    #[test]
    fn linear_self_disagreement_is_empty() {
        let h = Hypothesis::linear(1.0, 0.2);
        assert!(disagreement_region(&h, &h).unwrap().is_empty());
    }

    #[test]
    fn theta_is_canonical() {
        match Hypothesis::linear(-PI / 2.0, 0.0) {
            Hypothesis::Linear2D { theta, .. } => assert!((theta - 1.5 * PI).abs() < 1e-15),
            _ => unreachable!(),
        }
    }

    #[test]
    fn candidate_counts() {
        let d = Dataset::unlabeled_1d(vec![0.1, 0.6, 0.9], 0, "s");
        let c = HypothesisClass::thresholds(0.0, 1.0).canonical_candidates(&[&d]).unwrap();
        assert_eq!(c.len(), 8);
        let ts: Vec<f64> = c.iter().step_by(2).map(|h| match h {
            Hypothesis::Threshold { t, .. } => *t,
            _ => unreachable!(),
        }).collect();
        assert_eq!(ts[0], f64::NEG_INFINITY);
        assert!((ts[1] - 0.35).abs() < 1e-15 && (ts[2] - 0.75).abs() < 1e-15);
        assert_eq!(ts[3], f64::INFINITY);

        let single = Dataset::unlabeled_1d(vec![0.4], 0, "s");
        let c = HypothesisClass::thresholds(0.0, 1.0).canonical_candidates(&[&single]).unwrap();
        assert_eq!(c.len(), 4);
        let labels: std::collections::HashSet<u8> = c.iter().map(|h| h.predict_1d(0.4)).collect();
        assert_eq!(labels.len(), 2);

        let pts: Vec<Vec2> = (0..7).map(|i| [i as f64 * 0.13, (i * i) as f64 * 0.07]).collect();
        let d2 = Dataset::unlabeled_2d(pts, 0, "s");
        let c = HypothesisClass::linear_2d([0.5, 0.5], 1.0).canonical_candidates(&[&d2]).unwrap();
        assert_eq!(c.len(), 3 * 7 * 6 + 4);
    }

    #[test]
    fn empty_data_rejected() {
        let d = Dataset::unlabeled_1d(vec![], 0, "s");
        assert!(matches!(
            HypothesisClass::thresholds(0.0, 1.0).canonical_candidates(&[&d]),
            Err(Error::EmptyData)
        ));
    }

    #[test]
    fn grid_cardinalities() {
        let c = HypothesisClass::thresholds(0.0, 1.0);
        let g: Vec<_> = c.parameter_grid(GridStep::new(0.5, 0.0)).unwrap().collect();
        assert_eq!(g.len(), 6);
        assert_eq!(g[2], Hypothesis::threshold(0.5));
        let fine = c.parameter_grid(GridStep::new(0.25, 0.0)).unwrap().count();
        assert_eq!(fine, 10);

        let l = HypothesisClass::linear_2d([0.0, 0.0], 0.5);
        let g: Vec<_> = l.parameter_grid(GridStep::new(0.5, PI / 2.0)).unwrap().collect();
        assert_eq!(g.len(), 4 * 3);
        assert!(HypothesisClass::thresholds(0.0, f64::INFINITY)
            .parameter_grid(GridStep::new(0.1, 0.0))
            .is_err());
    }

    #[test]
    fn json_shapes() {
        let h = Hypothesis::threshold(f64::NEG_INFINITY);
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"kind":"threshold","t":"-inf","orientation":"ones_below"}"#);
        assert_eq!(serde_json::from_str::<Hypothesis>(&s).unwrap(), h);
        let l = Hypothesis::linear(0.25, 0.5);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"kind":"linear2d","theta":0.25,"b":0.5}"#);
    }
}
