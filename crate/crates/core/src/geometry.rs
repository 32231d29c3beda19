//! Planar primitives behind the 2-D regions: half-planes, convex polygon
//! clipping, and parametric clipping of segments.

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

pub type Vec2 = [f64; 2];

/// Unit normal `(cos θ, sin θ)`. Angles within 1e-12 of a multiple of π/2
/// return exact axis vectors so axis-parallel boundaries stay exact.
pub fn unit_normal(theta: f64) -> Vec2 {
    let q = theta / FRAC_PI_2;
    let k = q.round();
    if (q - k).abs() < 1e-12 {
        match (k as i64).rem_euclid(4) {
            0 => return [1.0, 0.0],
            1 => return [0.0, 1.0],
            2 => return [-1.0, 0.0],
            _ => return [0.0, -1.0],
        }
    }
    [theta.cos(), theta.sin()]
}

#[inline]
pub fn dot(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// The open half-plane `{x : normal · x > offset}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub normal: Vec2,
    pub offset: f64,
}

impl HalfPlane {
    pub fn new(normal: Vec2, offset: f64) -> Self {
        Self { normal, offset }
    }

    /// `n·x - b`; positive strictly inside.
    #[inline]
    pub fn signed(&self, x: Vec2) -> f64 {
        dot(self.normal, x) - self.offset
    }

    #[inline]
    pub fn contains(&self, x: Vec2) -> bool {
        self.signed(x) > 0.0
    }
}

/// Clip a convex polygon, keeping the positive (`keep_positive`) or the
/// non-positive side of `hp`.
pub fn clip_polygon(poly: &[Vec2], hp: &HalfPlane, keep_positive: bool) -> Vec<Vec2> {
    let sign = if keep_positive { 1.0 } else { -1.0 };
    let mut out = Vec::with_capacity(poly.len() + 1);
    if poly.is_empty() {
        return out;
    }
    let mut prev = poly[poly.len() - 1];
    let mut prev_v = sign * hp.signed(prev);
    for &cur in poly {
        let cur_v = sign * hp.signed(cur);
        let cur_in = cur_v >= 0.0;
        let prev_in = prev_v >= 0.0;
        if cur_in != prev_in {
            let t = prev_v / (prev_v - cur_v);
            out.push([
                prev[0] + t * (cur[0] - prev[0]),
                prev[1] + t * (cur[1] - prev[1]),
            ]);
        }
        if cur_in {
            out.push(cur);
        }
        prev = cur;
        prev_v = cur_v;
    }
    out
}

/// Shoelace area (absolute).
pub fn polygon_area(poly: &[Vec2]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        s += a[0] * b[1] - b[0] * a[1];
    }
    0.5 * s.abs()
}

pub fn rect_polygon(x: [f64; 2], y: [f64; 2]) -> Vec<Vec2> {
    vec![[x[0], y[0]], [x[1], y[0]], [x[1], y[1]], [x[0], y[1]]]
}

/// Parameter interval `[lo, hi] ⊂ [0, 1]` of the segment `a + s (b - a)` on
/// the requested side of `hp`. Length zero means empty up to measure.
pub fn segment_interval(a: Vec2, b: Vec2, hp: &HalfPlane, positive: bool) -> (f64, f64) {
    let alpha = hp.signed(a);
    let beta = dot(hp.normal, [b[0] - a[0], b[1] - a[1]]);
    // positive side: alpha + beta s > 0; non-positive: alpha + beta s <= 0
    let (alpha, beta) = if positive { (alpha, beta) } else { (-alpha, -beta) };
    if beta == 0.0 {
        let inside = if positive { alpha > 0.0 } else { alpha >= 0.0 };
        return if inside { (0.0, 1.0) } else { (0.0, 0.0) };
    }
    let root = -alpha / beta;
    let (lo, hi) = if beta > 0.0 { (root, 1.0) } else { (0.0, root) };
    let (lo, hi) = (lo.clamp(0.0, 1.0), hi.clamp(0.0, 1.0));
    if hi > lo {
        (lo, hi)
    } else {
        (0.0, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_normals_are_exact() {
        assert_eq!(unit_normal(FRAC_PI_2), [0.0, 1.0]);
        assert_eq!(unit_normal(3.0 * FRAC_PI_2), [0.0, -1.0]);
        assert_eq!(unit_normal(0.0), [1.0, 0.0]);
    }

    #[test]
    fn clip_square_in_half() {
        let sq = rect_polygon([0.0, 1.0], [0.0, 1.0]);
        let hp = HalfPlane::new([1.0, 0.0], 0.25);
        assert!((polygon_area(&clip_polygon(&sq, &hp, true)) - 0.75).abs() < 1e-15);
        assert!((polygon_area(&clip_polygon(&sq, &hp, false)) - 0.25).abs() < 1e-15);
        let diag = HalfPlane::new([std::f64::consts::FRAC_1_SQRT_2; 2], std::f64::consts::FRAC_1_SQRT_2);
        assert!((polygon_area(&clip_polygon(&sq, &diag, true)) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn segment_clipping() {
        let hp = HalfPlane::new([1.0, 0.0], 0.3);
        assert_eq!(segment_interval([0.0, 0.5], [1.0, 0.5], &hp, true), (0.3, 1.0));
        assert_eq!(segment_interval([0.0, 0.5], [1.0, 0.5], &hp, false), (0.0, 0.3));
        // segment lying on the boundary line is on the non-positive side
        let on = HalfPlane::new([0.0, 1.0], 0.5);
        assert_eq!(segment_interval([0.0, 0.5], [1.0, 0.5], &on, true), (0.0, 0.0));
        assert_eq!(segment_interval([0.0, 0.5], [1.0, 0.5], &on, false), (0.0, 1.0));
    }
}
