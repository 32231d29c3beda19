//! Cached footprints of linear classifiers on a planar marginal, so pair
//! disagreement masses cost one extra clip instead of two wedge masses.

use crate::domain::Marginal2D;
use crate::geometry::{clip_polygon, polygon_area, rect_polygon, segment_interval, HalfPlane, Vec2};
use crate::hypothesis::Hypothesis;

/// Part of the support on the positive side of a classifier.
#[derive(Clone, Debug, PartialEq)]
pub enum Cover {
    Poly(Vec<Vec2>),
    Span(f64, f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Footprint {
    pub half_plane: HalfPlane,
    pub cover: Cover,
    /// mass of the positive region
    pub mass: f64,
}

#[derive(Clone, Debug)]
pub struct PlaneMeasure {
    marginal: Marginal2D,
    total_area: f64,
}

impl PlaneMeasure {
    pub fn new(marginal: Marginal2D) -> Self {
        let total_area = match marginal {
            Marginal2D::UniformRect { x_range, y_range } => (x_range[1] - x_range[0]) * (y_range[1] - y_range[0]),
            Marginal2D::UniformSegment { .. } => 1.0,
        };
        Self { marginal, total_area }
    }

    pub fn footprint(&self, h: &Hypothesis) -> Footprint {
        let half_plane = h.half_plane().expect("planar footprint needs a linear classifier");
        match self.marginal {
            Marginal2D::UniformRect { x_range, y_range } => {
                let poly = clip_polygon(&rect_polygon(x_range, y_range), &half_plane, true);
                let mass = polygon_area(&poly) / self.total_area;
                Footprint { half_plane, cover: Cover::Poly(poly), mass }
            }
            Marginal2D::UniformSegment { endpoint_a, endpoint_b } => {
                let (lo, hi) = segment_interval(endpoint_a, endpoint_b, &half_plane, true);
                Footprint { half_plane, cover: Cover::Span(lo, hi), mass: hi - lo }
            }
        }
    }

    /// Mass of the intersection of both positive regions.
    pub fn overlap(&self, a: &Footprint, b: &Footprint) -> f64 {
        match &a.cover {
            Cover::Poly(poly) => {
                if a.mass == 0.0 || b.mass == 0.0 {
                    return 0.0;
                }
                polygon_area(&clip_polygon(poly, &b.half_plane, true)) / self.total_area
            }
            Cover::Span(lo, hi) => match b.cover {
                Cover::Span(l2, h2) => (hi.min(h2) - lo.max(l2)).max(0.0),
                Cover::Poly(_) => 0.0,
            },
        }
    }

    /// Mass of the symmetric difference of the positive regions.
    pub fn disagreement(&self, a: &Footprint, b: &Footprint) -> f64 {
        (a.mass + b.mass - 2.0 * self.overlap(a, b)).clamp(0.0, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Domain, Marginal};

    #[test]
    fn footprints_agree_with_wedge_masses() {
        let rect = Marginal2D::UniformRect { x_range: [0.0, 2.0], y_range: [-1.0, 1.0] };
        let seg = Marginal2D::UniformSegment { endpoint_a: [0.0, 0.5], endpoint_b: [1.0, 0.5] };
        let lines = [
            Hypothesis::linear(0.3, 0.4),
            Hypothesis::linear(2.0, -0.2),
            Hypothesis::linear(std::f64::consts::FRAC_PI_2, 0.5),
            Hypothesis::linear(4.0, 0.1),
        ];
        for m in [rect, seg] {
            let pm = PlaneMeasure::new(m);
            let d = Domain::new("", Marginal::TwoD(m), lines[0]).unwrap();
            for a in &lines {
                for b in &lines {
                    let want = d.disagreement(a, b).unwrap();
                    let got = pm.disagreement(&pm.footprint(a), &pm.footprint(b));
                    assert!((want - got).abs() < 1e-12, "{a:?} {b:?}: {want} vs {got}");
                }
            }
        }
    }
}
