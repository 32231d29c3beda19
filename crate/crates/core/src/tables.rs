//! Finite hypothesis tables with O(1) pair-mass lookups, and the exhaustive
//! scans that take suprema over them.
//!
//! A table stores, for a finite list of hypotheses, whatever is needed to
//! read off the source and target masses of the disagreement region of any
//! pair. Thresholds share a sorted position array with cumulative masses;
//! planar classifiers carry label bitsets (empirical) or clipped footprints
//! (population, see [`crate::plane`]).

use crate::domain::{Dataset, Points};
use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::hypothesis::{threshold_positions, Hypothesis, HypothesisClass, Orientation};
use serde::{Deserialize, Serialize};

/// How a `(target mass, source mass)` pair is scored.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gain {
    /// `|q - p|`
    Absolute,
    /// `q - p`
    Signed,
    /// `q - p^γ`
    Boosted(f64),
}

impl Gain {
    #[inline]
    pub fn eval(self, q: f64, p: f64) -> f64 {
        match self {
            Gain::Absolute => (q - p).abs(),
            Gain::Signed => q - p,
            Gain::Boosted(g) => q - p.max(0.0).powf(g),
        }
    }

    /// Linear in the masses, so interval suprema reduce to prefix extrema.
    pub fn is_linear(self) -> bool {
        match self {
            Gain::Absolute | Gain::Signed => true,
            Gain::Boosted(g) => g == 1.0,
        }
    }
}

/// A scored hypothesis pair (indices into a table).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scored {
    pub value: f64,
    pub i: usize,
    pub j: usize,
}

/// Finite hypothesis family with pair-mass lookups.
pub trait PairTable {
    fn len(&self) -> usize;
    fn hypothesis(&self, i: usize) -> Hypothesis;
    /// `(target mass, source mass)` of the disagreement region of `i`, `j`.
    fn masses(&self, i: usize, j: usize) -> (f64, f64);
    /// Source error of hypothesis `i`, when the source is labelled.
    fn source_error(&self, i: usize) -> Option<f64>;
    /// Masses of the disagreement of every hypothesis with `anchor`.
    fn anchored(&self, anchor: &Hypothesis) -> Vec<(f64, f64)>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Best feasible unordered pair, earliest on ties.
    fn best_pair(&self, feasible: &[bool], gain: Gain) -> Option<Scored> {
        top_pairs(self, feasible, gain, 1).into_iter().next()
    }
}

/// Keeps the `k` best entries, earliest first among equal values.
#[derive(Debug)]
pub struct TopK {
    k: usize,
    items: Vec<Scored>,
}

impl TopK {
    pub fn new(k: usize) -> Self {
        Self { k: k.max(1), items: Vec::with_capacity(k.max(1) + 1) }
    }

    #[inline]
    pub fn floor(&self) -> f64 {
        if self.items.len() < self.k {
            f64::NEG_INFINITY
        } else {
            self.items[self.items.len() - 1].value
        }
    }

    #[inline]
    pub fn offer(&mut self, s: Scored) {
        if self.items.len() == self.k && s.value <= self.floor() {
            return;
        }
        let pos = self.items.iter().position(|x| s.value > x.value).unwrap_or(self.items.len());
        self.items.insert(pos, s);
        self.items.truncate(self.k);
    }

    pub fn into_vec(self) -> Vec<Scored> {
        self.items
    }
}

/// Exhaustive scan over unordered feasible pairs `i <= j`.
pub fn top_pairs<T: PairTable + ?Sized>(table: &T, feasible: &[bool], gain: Gain, k: usize) -> Vec<Scored> {
    let mut top = TopK::new(k);
    for i in 0..table.len() {
        if !feasible[i] {
            continue;
        }
        for j in i..table.len() {
            if !feasible[j] {
                continue;
            }
            let (q, p) = table.masses(i, j);
            let v = gain.eval(q, p);
            if v > top.floor() {
                top.offer(Scored { value: v, i, j });
            }
        }
    }
    top.into_vec()
}

/// Exhaustive scan over feasible single hypotheses given anchored masses.
/// `Scored::i == Scored::j` is the hypothesis index.
pub fn top_singles(anchored: &[(f64, f64)], feasible: &[bool], gain: Gain, k: usize) -> Vec<Scored> {
    let mut top = TopK::new(k);
    for (i, &(q, p)) in anchored.iter().enumerate() {
        if feasible[i] {
            top.offer(Scored { value: gain.eval(q, p), i, j: i });
        }
    }
    top.into_vec()
}

/// Thresholds at sorted positions with cumulative masses.
///
/// Hypothesis index `2k + o` is position `k` with orientation `o`
/// (`0` = ones-below, `1` = ones-above).
#[derive(Clone, Debug)]
pub struct LineTable {
    pub positions: Vec<f64>,
    pub tgt_below: Vec<f64>,
    pub src_below: Vec<f64>,
    pub src_err: Option<Vec<[f64; 2]>>,
    anchor_cdf: AnchorCdf,
}

/// How to evaluate `P(x < a)`, `Q(x < a)` at an arbitrary anchor position.
#[derive(Clone, Debug)]
enum AnchorCdf {
    Sorted { src: Vec<f64>, tgt: Vec<f64> },
    Exact { src: crate::domain::Marginal1D, tgt: crate::domain::Marginal1D },
}

#[inline]
pub fn orientation_index(o: Orientation) -> usize {
    match o {
        Orientation::OnesBelow => 0,
        Orientation::OnesAbove => 1,
    }
}

fn below(sorted: &[f64], t: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    sorted.partition_point(|&x| x < t) as f64 / sorted.len() as f64
}

impl LineTable {
    /// Empirical table over the canonical thresholds of the pooled sample.
    pub fn empirical(source: &Dataset, target: &Dataset) -> Result<Self> {
        let (Points::OneD(sx), Points::OneD(tx)) = (&source.points, &target.points) else {
            return Err(Error::DimensionMismatch { expected: 1, found: 2 });
        };
        if sx.is_empty() && tx.is_empty() {
            return Err(Error::EmptyData);
        }
        let pooled: Vec<f64> = sx.iter().chain(tx.iter()).copied().collect();
        let positions = threshold_positions(&pooled);
        let mut src = sx.clone();
        src.sort_by(f64::total_cmp);
        let mut tgt = tx.clone();
        tgt.sort_by(f64::total_cmp);
        let src_below: Vec<f64> = positions.iter().map(|&t| below(&src, t)).collect();
        let tgt_below: Vec<f64> = positions.iter().map(|&t| below(&tgt, t)).collect();

        let src_err = source.labels.as_ref().map(|labels| {
            let mut pairs: Vec<(f64, u8)> = sx.iter().copied().zip(labels.iter().copied()).collect();
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            let ones_prefix: Vec<usize> = std::iter::once(0)
                .chain(pairs.iter().scan(0usize, |acc, &(_, y)| {
                    *acc += y as usize;
                    Some(*acc)
                }))
                .collect();
            let n = pairs.len();
            let ones = ones_prefix[n];
            positions
                .iter()
                .map(|&t| {
                    let k = pairs.partition_point(|&(x, _)| x < t);
                    let ones_below = ones_prefix[k];
                    let zeros_below = k - ones_below;
                    // ones-below predicts 1 left of t: wrong on zeros below and ones at/above
                    let wrong = zeros_below + (ones - ones_below);
                    if n == 0 {
                        [0.0, 0.0]
                    } else {
                        [wrong as f64 / n as f64, (n - wrong) as f64 / n as f64]
                    }
                })
                .collect()
        });
        Ok(Self { positions, tgt_below, src_below, src_err, anchor_cdf: AnchorCdf::Sorted { src, tgt } })
    }

    /// Population table at the given sorted positions.
    pub fn population(
        positions: Vec<f64>,
        source: &crate::domain::Marginal1D,
        target: &crate::domain::Marginal1D,
        src_err: Option<Vec<[f64; 2]>>,
    ) -> Self {
        let src_below = positions.iter().map(|&t| source.cdf(t)).collect();
        let tgt_below = positions.iter().map(|&t| target.cdf(t)).collect();
        Self {
            positions,
            tgt_below,
            src_below,
            src_err,
            anchor_cdf: AnchorCdf::Exact { src: source.clone(), tgt: target.clone() },
        }
    }

    pub fn positions_len(&self) -> usize {
        self.positions.len()
    }

    #[inline]
    fn split(i: usize) -> (usize, usize) {
        (i / 2, i % 2)
    }

    /// Best feasible pair for a linear gain in one pass per orientation
    /// combination (prefix minimum / maximum of `Q(x<t) - P(x<t)`).
    pub fn best_pair_linear(&self, feasible: &[bool], gain: Gain) -> Option<Scored> {
        debug_assert!(gain.is_linear());
        let diff: Vec<f64> = self.tgt_below.iter().zip(&self.src_below).map(|(q, p)| q - p).collect();
        let mut best: Option<Scored> = None;
        for o_lo in 0..2 {
            for o_hi in 0..2 {
                let sign = if o_lo == o_hi { 1.0 } else { -1.0 };
                let (mut min_k, mut max_k): (Option<usize>, Option<usize>) = (None, None);
                for k in 0..self.positions.len() {
                    if feasible[2 * k + o_lo] {
                        if min_k.is_none_or(|m| diff[k] < diff[m]) {
                            min_k = Some(k);
                        }
                        if max_k.is_none_or(|m| diff[k] > diff[m]) {
                            max_k = Some(k);
                        }
                    }
                    if !feasible[2 * k + o_hi] {
                        continue;
                    }
                    let mut consider = |lo: Option<usize>| {
                        if let Some(lo) = lo {
                            let signed = sign * (diff[k] - diff[lo]);
                            let v = match gain {
                                Gain::Absolute => signed.abs(),
                                _ => signed,
                            };
                            if best.is_none_or(|b| v > b.value) {
                                best = Some(Scored { value: v, i: 2 * lo + o_lo, j: 2 * k + o_hi });
                            }
                        }
                    };
                    match (gain, sign > 0.0) {
                        (Gain::Absolute, _) => {
                            consider(min_k);
                            consider(max_k);
                        }
                        (_, true) => consider(min_k),
                        (_, false) => consider(max_k),
                    }
                }
            }
        }
        best
    }
}

impl PairTable for LineTable {
    fn len(&self) -> usize {
        2 * self.positions.len()
    }

    fn hypothesis(&self, i: usize) -> Hypothesis {
        let (k, o) = Self::split(i);
        Hypothesis::threshold_with(self.positions[k], Orientation::BOTH[o])
    }

    #[inline]
    fn masses(&self, i: usize, j: usize) -> (f64, f64) {
        let (k1, o1) = Self::split(i);
        let (k2, o2) = Self::split(j);
        let (lo, hi) = if k1 <= k2 { (k1, k2) } else { (k2, k1) };
        let q = self.tgt_below[hi] - self.tgt_below[lo];
        let p = self.src_below[hi] - self.src_below[lo];
        if o1 == o2 {
            (q, p)
        } else {
            (1.0 - q, 1.0 - p)
        }
    }

    fn best_pair(&self, feasible: &[bool], gain: Gain) -> Option<Scored> {
        if gain.is_linear() {
            self.best_pair_linear(feasible, gain)
        } else {
            top_pairs(self, feasible, gain, 1).into_iter().next()
        }
    }

    fn source_error(&self, i: usize) -> Option<f64> {
        let (k, o) = Self::split(i);
        self.src_err.as_ref().map(|e| e[k][o])
    }

    fn anchored(&self, anchor: &Hypothesis) -> Vec<(f64, f64)> {
        let Hypothesis::Threshold { t: a, orientation } = *anchor else {
            return vec![(0.0, 0.0); self.len()];
        };
        let oa = orientation_index(orientation);
        let (pa, qa) = match &self.anchor_cdf {
            AnchorCdf::Sorted { src, tgt } => (below(src, a), below(tgt, a)),
            AnchorCdf::Exact { src, tgt } => (src.cdf(a), tgt.cdf(a)),
        };
        (0..self.len())
            .map(|i| {
                let (k, o) = Self::split(i);
                let q = (self.tgt_below[k] - qa).abs();
                let p = (self.src_below[k] - pa).abs();
                if o == oa {
                    (q, p)
                } else {
                    (1.0 - q, 1.0 - p)
                }
            })
            .collect()
    }
}

/// Planar candidates with label bitsets over the pooled sample.
#[derive(Clone, Debug)]
pub struct PlaneTable {
    hyps: Vec<Hypothesis>,
    bits: Vec<Vec<u64>>,
    src_mask: Vec<u64>,
    tgt_mask: Vec<u64>,
    n_src: usize,
    n_tgt: usize,
    src_err: Option<Vec<f64>>,
    points: Vec<Vec2>,
}

fn popcount_and(a: &[u64], b: &[u64], mask: &[u64]) -> usize {
    a.iter().zip(b).zip(mask).map(|((x, y), m)| ((x ^ y) & m).count_ones() as usize).sum()
}

impl PlaneTable {
    pub fn empirical(class: &HypothesisClass, source: &Dataset, target: &Dataset) -> Result<Self> {
        let hyps = class.canonical_candidates(&[source, target])?;
        Self::with_hypotheses(hyps, source, target)
    }

    pub fn with_hypotheses(hyps: Vec<Hypothesis>, source: &Dataset, target: &Dataset) -> Result<Self> {
        let (Points::TwoD(sx), Points::TwoD(tx)) = (&source.points, &target.points) else {
            return Err(Error::DimensionMismatch { expected: 2, found: 1 });
        };
        let points: Vec<Vec2> = sx.iter().chain(tx.iter()).copied().collect();
        let words = points.len().div_ceil(64);
        let mask = |range: std::ops::Range<usize>| {
            let mut m = vec![0u64; words];
            for i in range {
                m[i / 64] |= 1 << (i % 64);
            }
            m
        };
        let src_mask = mask(0..sx.len());
        let tgt_mask = mask(sx.len()..points.len());
        let label_bits = |h: &Hypothesis| {
            let mut b = vec![0u64; words];
            for (i, &x) in points.iter().enumerate() {
                if h.predict_2d(x) == 1 {
                    b[i / 64] |= 1 << (i % 64);
                }
            }
            b
        };
        let bits: Vec<Vec<u64>> = hyps.iter().map(label_bits).collect();
        let src_err = source.labels.as_ref().map(|labels| {
            let mut y = vec![0u64; words];
            for (i, &l) in labels.iter().enumerate() {
                if l == 1 {
                    y[i / 64] |= 1 << (i % 64);
                }
            }
            bits.iter()
                .map(|b| popcount_and(b, &y, &src_mask) as f64 / sx.len().max(1) as f64)
                .collect()
        });
        Ok(Self { hyps, bits, src_mask, tgt_mask, n_src: sx.len(), n_tgt: tx.len(), src_err, points })
    }

    fn frac(count: usize, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            count as f64 / n as f64
        }
    }
}

impl PairTable for PlaneTable {
    fn len(&self) -> usize {
        self.hyps.len()
    }

    fn hypothesis(&self, i: usize) -> Hypothesis {
        self.hyps[i]
    }

    fn masses(&self, i: usize, j: usize) -> (f64, f64) {
        let (a, b) = (&self.bits[i], &self.bits[j]);
        (
            Self::frac(popcount_and(a, b, &self.tgt_mask), self.n_tgt),
            Self::frac(popcount_and(a, b, &self.src_mask), self.n_src),
        )
    }

    fn source_error(&self, i: usize) -> Option<f64> {
        self.src_err.as_ref().map(|e| e[i])
    }

    fn anchored(&self, anchor: &Hypothesis) -> Vec<(f64, f64)> {
        let words = self.src_mask.len();
        let mut a = vec![0u64; words];
        for (i, &x) in self.points.iter().enumerate() {
            if anchor.predict_2d(x) == 1 {
                a[i / 64] |= 1 << (i % 64);
            }
        }
        self.bits
            .iter()
            .map(|b| {
                (
                    Self::frac(popcount_and(b, &a, &self.tgt_mask), self.n_tgt),
                    Self::frac(popcount_and(b, &a, &self.src_mask), self.n_src),
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample(xs: Vec<f64>, labeled: bool) -> Dataset {
        let ys: Vec<u8> = xs.iter().map(|&x| (x < 0.5) as u8).collect();
        Dataset::new(Points::OneD(xs), labeled.then_some(ys), 0, "d").unwrap()
    }

    #[test]
    fn line_table_masses_match_direct_counts() {
        let s = sample(vec![0.1, 0.3, 0.55, 0.7], true);
        let t = sample(vec![0.2, 0.6, 0.65, 0.9, 0.95], false);
        let table = LineTable::empirical(&s, &t).unwrap();
        for i in 0..table.len() {
            let hi = table.hypothesis(i);
            assert_eq!(table.source_error(i).unwrap(), s.empirical_error(&hi).unwrap());
            for j in 0..table.len() {
                let hj = table.hypothesis(j);
                let (q, p) = table.masses(i, j);
                assert!((q - t.disagreement(&hi, &hj)).abs() < 1e-12);
                assert!((p - s.disagreement(&hi, &hj)).abs() < 1e-12);
            }
        }
        let anchor = Hypothesis::threshold_with(0.42, Orientation::OnesAbove);
        for (i, (q, p)) in table.anchored(&anchor).into_iter().enumerate() {
            let h = table.hypothesis(i);
            assert!((q - t.disagreement(&h, &anchor)).abs() < 1e-12);
            assert!((p - s.disagreement(&h, &anchor)).abs() < 1e-12);
        }
    }

    #[test]
    fn plane_table_masses_match_direct_counts() {
        let s = Dataset::new(
            Points::TwoD(vec![[0.1, 0.2], [0.8, 0.3], [0.4, 0.9], [0.6, 0.6]]),
            Some(vec![0, 1, 0, 1]),
            0,
            "s",
        )
        .unwrap();
        let t = Dataset::unlabeled_2d(vec![[0.2, 0.5], [0.7, 0.5], [0.5, 0.1]], 0, "t");
        let class = HypothesisClass::linear_2d([0.5, 0.5], 1.0);
        let table = PlaneTable::empirical(&class, &s, &t).unwrap();
        for i in (0..table.len()).step_by(7) {
            let hi = table.hypothesis(i);
            assert_eq!(table.source_error(i).unwrap(), s.empirical_error(&hi).unwrap());
            for j in (0..table.len()).step_by(5) {
                let hj = table.hypothesis(j);
                let (q, p) = table.masses(i, j);
                assert!((q - t.disagreement(&hi, &hj)).abs() < 1e-12);
                assert!((p - s.disagreement(&hi, &hj)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn top_k_keeps_order() {
        let mut t = TopK::new(2);
        for (v, i) in [(0.1, 0), (0.3, 1), (0.3, 2), (0.2, 3)] {
            t.offer(Scored { value: v, i, j: i });
        }
        let v = t.into_vec();
        assert_eq!(v.iter().map(|s| s.i).collect::<Vec<_>>(), vec![1, 2]);
    }

    proptest! {
        #[test]
        fn linear_fast_path_matches_exhaustive(
            src in prop::collection::vec(0.0f64..1.0, 1..25),
            tgt in prop::collection::vec(0.0f64..1.0, 1..25),
            cutoff in 0.0f64..1.0,
            which in 0usize..3,
        ) {
            let s = sample(src, true);
            let t = sample(tgt, false);
            let table = LineTable::empirical(&s, &t).unwrap();
            let feasible: Vec<bool> = (0..table.len())
                .map(|i| which == 0 || table.source_error(i).unwrap() <= cutoff)
                .collect();
            prop_assume!(feasible.iter().any(|&f| f));
            let gain = [Gain::Absolute, Gain::Signed, Gain::Boosted(1.0)][which];
            let fast = table.best_pair_linear(&feasible, gain).unwrap();
            let slow = top_pairs(&table, &feasible, gain, 1)[0];
            prop_assert!((fast.value - slow.value).abs() < 1e-12);
            let (q, p) = table.masses(fast.i, fast.j);
            prop_assert!((gain.eval(q, p) - fast.value).abs() < 1e-12);
        }
    }
}
