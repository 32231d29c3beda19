//! Scalar numerics: tail-accurate normal probabilities, 1-D line searches,
//! seed derivation.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Standard normal CDF, `Φ(z) = ½ erfc(-z/√2)`. Accurate in the lower tail.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

/// Standard normal survival function `1 - Φ(z)`, accurate in the upper tail.
pub fn normal_sf(z: f64) -> f64 {
    0.5 * libm::erfc(z * FRAC_1_SQRT_2)
}

pub fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// Standard normal mass of `[a, b)`.
///
/// Differences are always taken on the side of zero where both endpoints lie,
/// so a mass like `Φ(-8) - Φ(-9)` keeps full relative precision instead of
/// cancelling against 1.
pub fn std_normal_mass(a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let m = if a >= 0.0 {
        normal_sf(a) - normal_sf(b)
    } else if b <= 0.0 {
        normal_cdf(b) - normal_cdf(a)
    } else {
        1.0 - normal_cdf(a) - normal_sf(b)
    };
    m.max(0.0)
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section maximisation of `f` on `[lo, hi]`.
///
/// Returns the best `(x, f(x))` seen, including both endpoints, so kinks at
/// the bracket edge are never lost.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut best = (a, f(a));
    let fb = f(b);
    if fb > best.1 {
        best = (b, fb);
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for (x, v) in [(c, fc), (d, fd)] {
        if v > best.1 {
            best = (x, v);
        }
    }
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc > best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd > best.1 {
                best = (d, fd);
            }
        }
    }
    best
}

/// Bisection on a predicate that is `true` at `inside` and `false` at
/// `outside`. Returns the last point known to satisfy the predicate.
pub fn bisect_boundary<F: FnMut(f64) -> bool>(
    mut pred: F,
    mut inside: f64,
    mut outside: f64,
    tol: f64,
) -> f64 {
    while (outside - inside).abs() > tol {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            break;
        }
        if pred(mid) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    inside
}

/// Derive an independent 64-bit seed for stream `index` of a run seeded with
/// `seed` (SplitMix64 finaliser over the pair).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x6A09_E667_F3BC_C909);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Spearman rank correlation with average ranks for ties. `None` when either
/// side is constant.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let mut out = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            let avg = (i + j) as f64 / 2.0 + 1.0;
            for k in i..=j {
                out[idx[k]] = avg;
            }
            i = j + 1;
        }
        out
    }
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: composite Simpson on the density over `[a, b]`.
    fn simpson_mass(a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        let mut s = normal_pdf(a) + normal_pdf(b);
        for i in 1..panels {
            let x = a + h * i as f64;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * normal_pdf(x);
        }
        s * h / 3.0
    }

    #[test]
    fn tail_masses_match_quadrature() {
        // upper tail beyond 19 is ~1e-80; truncating the integral at 40 is exact in f64
        for &(a, b) in &[(1.0, 40.0), (7.0, 8.0), (8.0, 9.0), (-9.0, -8.0), (-1.0, 1.0), (3.6, 40.0)] {
            let oracle = simpson_mass(a, b, 200_000);
            let got = std_normal_mass(a, b);
            assert!(
                ((got - oracle) / oracle).abs() < 1e-9,
                "[{a},{b}): {got} vs {oracle}"
            );
        }
    }

    #[test]
    fn mixture_tail_example_value() {
        // ½(1-Φ(19)) + ½(1-Φ(1)) with Φ from quadrature
        let oracle = 0.5 * simpson_mass(19.0, 40.0, 20_000) + 0.5 * simpson_mass(1.0, 40.0, 200_000);
        let got = 0.5 * std_normal_mass(19.0, f64::INFINITY) + 0.5 * std_normal_mass(1.0, f64::INFINITY);
        assert!((got - oracle).abs() < 1e-12);
        assert!((got - 0.0793).abs() < 1e-4);
    }

    #[test]
    fn golden_finds_kinked_max() {
        let (x, v) = golden_max(|t| -(t - 0.4).abs(), 0.0, 1.0, 1e-10);
        assert!((x - 0.4).abs() < 1e-9 && v > -1e-9);
    }

    #[test]
    fn bisect_boundary_converges() {
        let b = bisect_boundary(|t| t * t <= 2.0, 1.0, 2.0, 1e-12);
        assert!((b - 2f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn derived_seeds_differ() {
        let s: std::collections::HashSet<u64> = (0..1000).map(|i| derive_seed(7, i)).collect();
        assert_eq!(s.len(), 1000);
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }

    #[test]
    fn spearman_basics() {
        assert!((spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-12);
        assert!(spearman(&[1.0, 2.0], &[0.0, 0.0]).is_none());
    }
}
