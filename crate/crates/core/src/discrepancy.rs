//! The five discrepancies and the ideal joint error, at population level
//! (grid scan plus local refinement) and on samples (exact enumeration).

use crate::domain::{Dataset, Domain, Marginal, Marginal1D, Marginal2D};
use crate::error::{Error, Result};
use crate::hypothesis::{uniform_points, Hypothesis, HypothesisClass, Orientation, ParameterBox};
use crate::numeric::{bisect_boundary, derive_seed, golden_max};
use crate::plane::{Footprint, PlaneMeasure};
use crate::tables::{top_pairs, top_singles, Gain, LineTable, PairTable, PlaneTable};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Either side of a discrepancy: a population domain or a finite sample.
#[derive(Clone, Copy, Debug)]
pub enum Input<'a> {
    Domain(&'a Domain),
    Data(&'a Dataset),
}

impl<'a> From<&'a Domain> for Input<'a> {
    fn from(d: &'a Domain) -> Self {
        Input::Domain(d)
    }
}

impl<'a> From<&'a Dataset> for Input<'a> {
    fn from(d: &'a Dataset) -> Self {
        Input::Data(d)
    }
}

impl Input<'_> {
    pub fn name(&self) -> String {
        match self {
            Input::Domain(d) => d.name.clone(),
            Input::Data(d) => d.source_id.clone(),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Input::Domain(d) => d.dimension(),
            Input::Data(d) => d.dimension(),
        }
    }
}

/// Knobs of the population search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// coarse grid step as a fraction of the offset span
    pub grid_fraction: f64,
    pub refine_tol: f64,
    pub boundary_tol: f64,
    /// grid maxima refined locally
    pub top_k: usize,
    /// largest feasible planar family scanned pairwise
    pub plane_budget: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { grid_fraction: 1e-3, refine_tol: 1e-8, boundary_tol: 1e-10, top_k: 8, plane_budget: 2500 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Population(SearchConfig),
    EmpiricalExact,
    /// Sample both domains, then solve exactly on the samples.
    MonteCarlo { samples: usize, seed: u64 },
}

impl Mode {
    pub fn population() -> Self {
        Mode::Population(SearchConfig::default())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverMode {
    PopulationAnalytic,
    PopulationGrid,
    EmpiricalExact,
    EmpiricalGrid,
    MonteCarlo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindTag {
    HdhDivergence,
    Disparity,
    LocalizedHdh,
    LocalizedDisparity,
    BoostedLocalizedHdh,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyKind {
    #[serde(rename = "kind")]
    pub tag: KindTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor: Option<Hypothesis>,
}

impl DiscrepancyKind {
    pub fn hdh() -> Self {
        Self { tag: KindTag::HdhDivergence, r: None, gamma: None, anchor: None }
    }

    pub fn disparity(anchor: Hypothesis) -> Self {
        Self { tag: KindTag::Disparity, r: None, gamma: None, anchor: Some(anchor) }
    }

    pub fn localized_hdh(r: f64) -> Self {
        Self { tag: KindTag::LocalizedHdh, r: Some(r), gamma: None, anchor: None }
    }

    pub fn localized_disparity(anchor: Hypothesis, r: f64) -> Self {
        Self { tag: KindTag::LocalizedDisparity, r: Some(r), gamma: None, anchor: Some(anchor) }
    }

    pub fn boosted(r: f64, gamma: f64) -> Self {
        Self { tag: KindTag::BoostedLocalizedHdh, r: Some(r), gamma: Some(gamma), anchor: None }
    }

    pub fn validate(&self) -> Result<()> {
        let needs_r = matches!(
            self.tag,
            KindTag::LocalizedHdh | KindTag::LocalizedDisparity | KindTag::BoostedLocalizedHdh
        );
        match self.r {
            None if needs_r => return Err(Error::InvalidParameter("localized kinds need r".into())),
            Some(r) if !(r >= 0.0) => return Err(Error::InvalidParameter(format!("r = {r} must be nonnegative"))),
            _ => {}
        }
        if self.tag == KindTag::BoostedLocalizedHdh {
            match self.gamma {
                Some(g) if g >= 1.0 => {}
                _ => return Err(Error::InvalidParameter("boosted kind needs gamma >= 1".into())),
            }
            if self.r.is_some_and(|r| r <= 0.0) {
                return Err(Error::InvalidParameter("boosted kind needs r > 0".into()));
            }
        }
        let needs_anchor = matches!(self.tag, KindTag::Disparity | KindTag::LocalizedDisparity);
        if needs_anchor && self.anchor.is_none() {
            return Err(Error::InvalidParameter("disparity kinds need an anchor".into()));
        }
        Ok(())
    }

    pub fn gain(&self) -> Gain {
        match self.tag {
            KindTag::HdhDivergence => Gain::Absolute,
            KindTag::BoostedLocalizedHdh => Gain::Boosted(self.gamma.unwrap_or(1.0)),
            _ => Gain::Signed,
        }
    }

    /// Source-error cutoff defining the localized family.
    pub fn cutoff(&self) -> Option<f64> {
        match self.tag {
            KindTag::HdhDivergence | KindTag::Disparity => None,
            _ => self.r,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// `None` for anchored kinds, where only `h'` is searched.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Hypothesis>,
    pub h_prime: Hypothesis,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    #[serde(flatten)]
    pub kind: DiscrepancyKind,
    pub value: f64,
    pub witness: Witness,
    pub mode: SolverMode,
    /// grid step (population) or candidate count (empirical)
    pub resolution: f64,
    pub source: String,
    pub target: String,
}

impl DiscrepancyReport {
    /// Re-evaluate the objective at the witness on population domains.
    pub fn reevaluate(&self, source: &Domain, target: &Domain) -> Result<f64> {
        let anchor = self.witness.h.or(self.kind.anchor).unwrap_or(self.witness.h_prime);
        let q = target.disagreement(&self.witness.h_prime, &anchor)?;
        let p = source.disagreement(&self.witness.h_prime, &anchor)?;
        Ok(self.kind.gain().eval(q, p))
    }

    /// Re-evaluate the objective at the witness on samples.
    pub fn reevaluate_on(&self, source: &Dataset, target: &Dataset) -> f64 {
        let anchor = self.witness.h.or(self.kind.anchor).unwrap_or(self.witness.h_prime);
        let q = target.disagreement(&self.witness.h_prime, &anchor);
        let p = source.disagreement(&self.witness.h_prime, &anchor);
        self.kind.gain().eval(q, p)
    }
}

/// `sup_{h,h'} |Q(h≠h') − P(h≠h')|`.
pub fn hdh_divergence<'a>(
    source: impl Into<Input<'a>>,
    target: impl Into<Input<'a>>,
    class: &HypothesisClass,
    mode: &Mode,
) -> Result<DiscrepancyReport> {
    discrepancy(&DiscrepancyKind::hdh(), source.into(), target.into(), class, mode)
}

/// `sup_{h'} Q(h'≠h) − P(h'≠h)` at a fixed anchor `h`.
pub fn disparity_discrepancy<'a>(
    anchor: &Hypothesis,
    source: impl Into<Input<'a>>,
    target: impl Into<Input<'a>>,
    class: &HypothesisClass,
    mode: &Mode,
) -> Result<DiscrepancyReport> {
    discrepancy(&DiscrepancyKind::disparity(*anchor), source.into(), target.into(), class, mode)
}

/// Signed pair supremum over hypotheses with source error at most `r`.
pub fn localized_hdh<'a>(
    source: impl Into<Input<'a>>,
    target: impl Into<Input<'a>>,
    class: &HypothesisClass,
    r: f64,
    mode: &Mode,
) -> Result<DiscrepancyReport> {
    discrepancy(&DiscrepancyKind::localized_hdh(r), source.into(), target.into(), class, mode)
}

pub fn localized_disparity<'a>(
    anchor: &Hypothesis,
    source: impl Into<Input<'a>>,
    target: impl Into<Input<'a>>,
    class: &HypothesisClass,
    r: f64,
    mode: &Mode,
) -> Result<DiscrepancyReport> {
    discrepancy(&DiscrepancyKind::localized_disparity(*anchor, r), source.into(), target.into(), class, mode)
}

/// Localized pair supremum of `Q(h≠h') − P(h≠h')^γ`.
pub fn boosted_localized_hdh<'a>(
    source: impl Into<Input<'a>>,
    target: impl Into<Input<'a>>,
    class: &HypothesisClass,
    r: f64,
    gamma: f64,
    mode: &Mode,
) -> Result<DiscrepancyReport> {
    discrepancy(&DiscrepancyKind::boosted(r, gamma), source.into(), target.into(), class, mode)
}

/// Any discrepancy kind, dispatched on `mode`.
pub fn discrepancy(
    kind: &DiscrepancyKind,
    source: Input<'_>,
    target: Input<'_>,
    class: &HypothesisClass,
    mode: &Mode,
) -> Result<DiscrepancyReport> {
    kind.validate()?;
    for side in [&source, &target] {
        if side.dimension() != class.dimension() {
            return Err(Error::DimensionMismatch { expected: class.dimension(), found: side.dimension() });
        }
    }
    if let Some(a) = kind.anchor {
        if a.dimension() != class.dimension() {
            return Err(Error::DimensionMismatch { expected: class.dimension(), found: a.dimension() });
        }
    }
    let problem = Problem { gain: kind.gain(), cutoff: kind.cutoff(), anchor: kind.anchor };
    let (found, solver) = match (mode, source, target) {
        (Mode::Population(cfg), Input::Domain(s), Input::Domain(t)) => {
            (population_sup(&problem, s, t, class, cfg)?, SolverMode::PopulationGrid)
        }
        (Mode::Population(_), _, _) => {
            return Err(Error::ModeMismatch { mode: "population", needs: "domains on both sides" })
        }
        (Mode::EmpiricalExact, Input::Data(s), Input::Data(t)) => {
            (empirical_sup(&problem, s, t, class)?, SolverMode::EmpiricalExact)
        }
        (Mode::EmpiricalExact, _, _) => {
            return Err(Error::ModeMismatch { mode: "empirical-exact", needs: "datasets on both sides" })
        }
        (Mode::MonteCarlo { samples, seed }, Input::Domain(s), Input::Domain(t)) => {
            let ds = s.sample(*samples, derive_seed(*seed, 0), true)?;
            let dt = t.sample(*samples, derive_seed(*seed, 1), false)?;
            (empirical_sup(&problem, &ds, &dt, class)?, SolverMode::MonteCarlo)
        }
        (Mode::MonteCarlo { .. }, _, _) => {
            return Err(Error::ModeMismatch { mode: "monte-carlo", needs: "domains on both sides" })
        }
    };
    Ok(DiscrepancyReport {
        kind: *kind,
        value: found.value,
        witness: Witness { h: found.h, h_prime: found.h_prime },
        mode: solver,
        resolution: found.resolution,
        source: source.name(),
        target: target.name(),
    })
}

#[derive(Clone, Copy, Debug)]
struct Problem {
    gain: Gain,
    cutoff: Option<f64>,
    anchor: Option<Hypothesis>,
}

#[derive(Clone, Copy, Debug)]
struct Found {
    value: f64,
    h: Option<Hypothesis>,
    h_prime: Hypothesis,
    resolution: f64,
}

fn empirical_sup(problem: &Problem, source: &Dataset, target: &Dataset, class: &HypothesisClass) -> Result<Found> {
    if problem.cutoff.is_some() && !source.is_labeled() {
        return Err(Error::UnlabeledDataset);
    }
    let table: Box<dyn PairTable> = match class.dimension() {
        1 => Box::new(LineTable::empirical(source, target)?),
        _ => Box::new(PlaneTable::empirical(class, source, target)?),
    };
    let feasible = feasible_mask(table.as_ref(), problem.cutoff);
    if !feasible.iter().any(|&f| f) {
        return Err(Error::EmptyLocalizedSpace { r: problem.cutoff.unwrap_or(f64::NAN) });
    }
    let best = match problem.anchor {
        Some(a) => top_singles(&table.anchored(&a), &feasible, problem.gain, 1)[0],
        None => table.best_pair(&feasible, problem.gain).expect("nonempty feasible set"),
    };
    let h_prime = table.hypothesis(best.j);
    let anchor = problem.anchor.unwrap_or(table.hypothesis(best.i));
    let value = problem.gain.eval(target.disagreement(&h_prime, &anchor), source.disagreement(&h_prime, &anchor));
    Ok(Found {
        value,
        h: problem.anchor.is_none().then(|| table.hypothesis(best.i)),
        h_prime,
        resolution: table.len() as f64,
    })
}

/// Feasibility of every table entry under an empirical source-error cutoff
/// (with the usual `1e-12` slack).
pub fn feasible_mask<T: PairTable + ?Sized>(table: &T, cutoff: Option<f64>) -> Vec<bool> {
    (0..table.len())
        .map(|i| match cutoff {
            None => true,
            Some(c) => table.source_error(i).is_some_and(|e| e <= c + 1e-12),
        })
        .collect()
}

fn population_sup(
    problem: &Problem,
    source: &Domain,
    target: &Domain,
    class: &HypothesisClass,
    cfg: &SearchConfig,
) -> Result<Found> {
    if !class.is_bounded() {
        return Err(Error::UnboundedParameterBox);
    }
    match (&source.marginal, &target.marginal) {
        (Marginal::OneD(_), Marginal::OneD(_)) => line_sup(problem, source, target, class, cfg),
        (Marginal::TwoD(_), Marginal::TwoD(_)) => plane_sup(problem, source, target, class, cfg),
        _ => Err(Error::DimensionMismatch { expected: source.dimension(), found: target.dimension() }),
    }
}

fn objective_at(problem: &Problem, source: &Domain, target: &Domain, h: &Hypothesis, h2: &Hypothesis) -> f64 {
    if let Some(c) = problem.cutoff {
        let ok = |x: &Hypothesis| source.expected_error(x).map(|e| e <= c).unwrap_or(false);
        if !ok(h2) || (problem.anchor.is_none() && !ok(h)) {
            return f64::NEG_INFINITY;
        }
    }
    match (target.disagreement(h, h2), source.disagreement(h, h2)) {
        (Ok(q), Ok(p)) => problem.gain.eval(q, p),
        _ => f64::NEG_INFINITY,
    }
}

fn threshold_box(class: &HypothesisClass) -> (f64, f64) {
    match class.parameter_box {
        ParameterBox::Threshold { lo, hi } => (lo, hi),
        ParameterBox::Linear2D { .. } => (f64::NAN, f64::NAN),
    }
}

/// Grid positions for a 1-D search: `±∞`, the uniform grid, the labelings'
/// thresholds, and (when localized) the bisected edges of the feasible set
/// plus the error minimiser of each orientation.
fn line_positions(class: &HypothesisClass, domains: &[&Domain], localize: Option<(&Domain, f64)>, cfg: &SearchConfig) -> (Vec<f64>, f64) {
    let (lo, hi) = threshold_box(class);
    let step = cfg.grid_fraction * (hi - lo);
    let mut pos = vec![f64::NEG_INFINITY];
    pos.extend(uniform_points(lo, hi, step));
    pos.push(f64::INFINITY);
    for d in domains {
        if let Hypothesis::Threshold { t, .. } = d.labeling {
            pos.push(t);
        }
        if let Some(m) = d.marginal.as_1d() {
            pos.extend(m.breakpoints().into_iter().filter(|t| (lo..=hi).contains(t)));
        }
    }
    sort_dedup(&mut pos);

    if let Some((src, r)) = localize {
        let mut extra = Vec::new();
        for o in Orientation::BOTH {
            let err = |t: f64| src.expected_error(&Hypothesis::threshold_with(t, o)).unwrap_or(1.0);
            let errs: Vec<f64> = pos.iter().map(|&t| err(t)).collect();
            let finite: Vec<usize> = (1..pos.len() - 1).collect();
            if let Some(&k) = finite.iter().min_by(|&&a, &&b| errs[a].total_cmp(&errs[b])) {
                let (a, b) = (pos[k - 1].max(lo), pos[k + 1].min(hi));
                let (t, _) = golden_max(|t| -err(t), a, b, cfg.refine_tol);
                extra.push(t);
            }
            let mut aug = pos.clone();
            aug.extend(extra.iter().copied());
            sort_dedup(&mut aug);
            let flags: Vec<bool> = aug.iter().map(|&t| err(t) <= r).collect();
            for k in 0..aug.len() - 1 {
                let (a, b) = (aug[k], aug[k + 1]);
                if flags[k] == flags[k + 1] || !a.is_finite() || !b.is_finite() {
                    continue;
                }
                let pred = |t: f64| err(t) <= r;
                let edge = if flags[k] {
                    bisect_boundary(pred, a, b, cfg.boundary_tol)
                } else {
                    bisect_boundary(pred, b, a, cfg.boundary_tol)
                };
                extra.push(edge);
            }
        }
        pos.extend(extra);
        sort_dedup(&mut pos);
    }
    (pos, step)
}

fn sort_dedup(v: &mut Vec<f64>) {
    v.sort_by(f64::total_cmp);
    v.dedup();
}

fn line_sup(problem: &Problem, source: &Domain, target: &Domain, class: &HypothesisClass, cfg: &SearchConfig) -> Result<Found> {
    let (ms, mt) = (as_1d(source)?, as_1d(target)?);
    let localize = problem.cutoff.map(|r| (source, r));
    let (pos, step) = line_positions(class, &[source, target], localize, cfg);
    let src_err = problem.cutoff.map(|_| {
        pos.iter()
            .map(|&t| Orientation::BOTH.map(|o| source.expected_error(&Hypothesis::threshold_with(t, o)).unwrap_or(1.0)))
            .collect::<Vec<_>>()
    });
    let table = LineTable::population(pos.clone(), ms, mt, src_err);
    let feasible: Vec<bool> = (0..table.len())
        .map(|i| problem.cutoff.is_none_or(|c| table.source_error(i).is_some_and(|e| e <= c)))
        .collect();
    if !feasible.iter().any(|&f| f) {
        return Err(Error::EmptyLocalizedSpace { r: problem.cutoff.unwrap_or(f64::NAN) });
    }
    let bracket = |k: usize| -> Option<(f64, f64)> {
        let t = pos[k];
        t.is_finite().then(|| (pos[k.saturating_sub(1)].max(t - step), pos[(k + 1).min(pos.len() - 1)].min(t + step)))
    };
    let orient = |i: usize| Orientation::BOTH[i % 2];

    let mut best: Option<(f64, Option<Hypothesis>, Hypothesis)> = None;
    let mut offer = |v: f64, h: Option<Hypothesis>, h2: Hypothesis| {
        if best.as_ref().is_none_or(|b| v > b.0) {
            best = Some((v, h, h2));
        }
    };

    match problem.anchor {
        Some(a) => {
            for s in top_singles(&table.anchored(&a), &feasible, problem.gain, cfg.top_k) {
                let (k, o) = (s.j / 2, orient(s.j));
                let mut t = pos[k];
                let mut v = objective_at(problem, source, target, &a, &Hypothesis::threshold_with(t, o));
                if let Some((lo, hi)) = bracket(k) {
                    let f = |x: f64| objective_at(problem, source, target, &a, &Hypothesis::threshold_with(x, o));
                    let (x, fx) = golden_max(f, lo, hi, cfg.refine_tol);
                    if fx > v {
                        (t, v) = (x, fx);
                    }
                }
                offer(v, None, Hypothesis::threshold_with(t, o));
            }
        }
        None => {
            for s in top_pairs(&table, &feasible, problem.gain, cfg.top_k) {
                let (k1, o1, k2, o2) = (s.i / 2, orient(s.i), s.j / 2, orient(s.j));
                let (mut t1, mut t2) = (pos[k1], pos[k2]);
                let eval = |a: f64, b: f64| {
                    objective_at(problem, source, target, &Hypothesis::threshold_with(a, o1), &Hypothesis::threshold_with(b, o2))
                };
                let mut v = eval(t1, t2);
                for _ in 0..3 {
                    let before = v;
                    if let Some((lo, hi)) = bracket(k1) {
                        let (x, fx) = golden_max(|x| eval(x, t2), lo, hi, cfg.refine_tol);
                        if fx > v {
                            (t1, v) = (x, fx);
                        }
                    }
                    if let Some((lo, hi)) = bracket(k2) {
                        let (x, fx) = golden_max(|x| eval(t1, x), lo, hi, cfg.refine_tol);
                        if fx > v {
                            (t2, v) = (x, fx);
                        }
                    }
                    if v <= before {
                        break;
                    }
                }
                offer(v, Some(Hypothesis::threshold_with(t1, o1)), Hypothesis::threshold_with(t2, o2));
            }
        }
    }
    let (value, h, h_prime) = best.expect("nonempty feasible set");
    Ok(Found { value, h, h_prime, resolution: step })
}

fn as_1d(d: &Domain) -> Result<&Marginal1D> {
    d.marginal.as_1d().ok_or(Error::DimensionMismatch { expected: 1, found: 2 })
}

fn as_2d(d: &Domain) -> Result<Marginal2D> {
    d.marginal.as_2d().copied().ok_or(Error::DimensionMismatch { expected: 2, found: 1 })
}

/// `(θ count, offset count)` levels of the planar grid, finest first.
const PLANE_LEVELS: [(usize, usize); 4] = [(256, 129), (128, 65), (64, 33), (32, 17)];

struct PlaneGrid {
    hyps: Vec<Hypothesis>,
    coords: Vec<(f64, f64)>,
    src: Vec<Footprint>,
    tgt: Vec<Footprint>,
    feasible: Vec<bool>,
    steps: (f64, f64),
}

struct PlaneCtx<'a> {
    class: &'a HypothesisClass,
    ps: PlaneMeasure,
    pt: PlaneMeasure,
    src_label: Footprint,
    radius: f64,
}

impl PlaneCtx<'_> {
    fn source_error(&self, fp: &Footprint) -> f64 {
        self.ps.disagreement(fp, &self.src_label)
    }

    fn level(&self, (nt, ns): (usize, usize), cutoff: Option<f64>) -> PlaneGrid {
        let ds = 2.0 * self.radius / (ns - 1) as f64;
        let mut g = PlaneGrid {
            hyps: Vec::new(),
            coords: Vec::new(),
            src: Vec::new(),
            tgt: Vec::new(),
            feasible: Vec::new(),
            steps: (TAU / nt as f64, ds),
        };
        for i in 0..nt {
            let theta = TAU * i as f64 / nt as f64;
            for j in 0..ns {
                let s = -self.radius + ds * j as f64;
                let h = self.class.line_at(theta, s);
                let fs = self.ps.footprint(&h);
                g.feasible.push(cutoff.is_none_or(|c| self.source_error(&fs) <= c));
                g.hyps.push(h);
                g.coords.push((theta, s));
                g.src.push(fs);
                g.tgt.push(self.pt.footprint(&h));
            }
        }
        g
    }

    fn line(&self, theta: f64, s: f64) -> Hypothesis {
        self.class.line_at(theta, s.clamp(-self.radius, self.radius))
    }
}

/// Compass search maximising `f` from `x`, halving steps down to `tol`.
fn compass<const N: usize>(mut f: impl FnMut(&[f64; N]) -> f64, mut x: [f64; N], mut step: [f64; N], tol: f64) -> ([f64; N], f64) {
    let mut fx = f(&x);
    let mut evals = 0usize;
    while step.iter().any(|&s| s > tol) && evals < 50_000 {
        let mut moved = false;
        for k in 0..N {
            for dir in [1.0, -1.0] {
                let mut y = x;
                y[k] += dir * step[k];
                let fy = f(&y);
                evals += 1;
                if fy > fx {
                    x = y;
                    fx = fy;
                    moved = true;
                    break;
                }
            }
        }
        if !moved {
            for s in step.iter_mut() {
                *s *= 0.5;
            }
        }
    }
    (x, fx)
}

fn plane_sup(problem: &Problem, source: &Domain, target: &Domain, class: &HypothesisClass, cfg: &SearchConfig) -> Result<Found> {
    let ParameterBox::Linear2D { radius, .. } = class.parameter_box else {
        return Err(Error::DimensionMismatch { expected: 2, found: 1 });
    };
    let ps = PlaneMeasure::new(as_2d(source)?);
    let src_label = ps.footprint(&source.labeling);
    let ctx = PlaneCtx { class, ps, pt: PlaneMeasure::new(as_2d(target)?), src_label, radius };

    let grid = if problem.anchor.is_some() {
        ctx.level(PLANE_LEVELS[0], problem.cutoff)
    } else {
        let mut chosen = None;
        for lv in PLANE_LEVELS {
            let g = ctx.level(lv, problem.cutoff);
            if g.feasible.iter().filter(|&&f| f).count() <= cfg.plane_budget || lv == PLANE_LEVELS[3] {
                chosen = Some(g);
                break;
            }
        }
        chosen.expect("at least one level")
    };
    if !grid.feasible.iter().any(|&f| f) {
        return Err(Error::EmptyLocalizedSpace { r: problem.cutoff.unwrap_or(f64::NAN) });
    }
    let feasible_at = |fp: &Footprint| problem.cutoff.is_none_or(|c| ctx.source_error(fp) <= c);
    let gain = problem.gain;
    let tol = 1e-9;

    let mut best: Option<(f64, Option<Hypothesis>, Hypothesis)> = None;
    let mut offer = |v: f64, h: Option<Hypothesis>, h2: Hypothesis| {
        if best.as_ref().is_none_or(|b| v > b.0) {
            best = Some((v, h, h2));
        }
    };

    match problem.anchor {
        Some(a) => {
            let (fa_s, fa_t) = (ctx.ps.footprint(&a), ctx.pt.footprint(&a));
            let anchored: Vec<(f64, f64)> = (0..grid.hyps.len())
                .map(|i| (ctx.pt.disagreement(&grid.tgt[i], &fa_t), ctx.ps.disagreement(&grid.src[i], &fa_s)))
                .collect();
            for s in top_singles(&anchored, &grid.feasible, gain, cfg.top_k) {
                let (t0, s0) = grid.coords[s.j];
                let f = |x: &[f64; 2]| {
                    let h = ctx.line(x[0], x[1]);
                    let fs = ctx.ps.footprint(&h);
                    if !feasible_at(&fs) {
                        return f64::NEG_INFINITY;
                    }
                    gain.eval(ctx.pt.disagreement(&ctx.pt.footprint(&h), &fa_t), ctx.ps.disagreement(&fs, &fa_s))
                };
                let (x, _) = compass(f, [t0, s0], [grid.steps.0, grid.steps.1], tol);
                let h2 = ctx.line(x[0], x[1]);
                offer(objective_at(problem, source, target, &a, &h2), None, h2);
            }
        }
        None => {
            let table = FootprintTable { ctx: &ctx, grid: &grid };
            for s in top_pairs(&table, &grid.feasible, gain, cfg.top_k) {
                let (a0, b0) = (grid.coords[s.i], grid.coords[s.j]);
                let f = |x: &[f64; 4]| {
                    let (h1, h2) = (ctx.line(x[0], x[1]), ctx.line(x[2], x[3]));
                    let (s1, s2) = (ctx.ps.footprint(&h1), ctx.ps.footprint(&h2));
                    if !feasible_at(&s1) || !feasible_at(&s2) {
                        return f64::NEG_INFINITY;
                    }
                    let q = ctx.pt.disagreement(&ctx.pt.footprint(&h1), &ctx.pt.footprint(&h2));
                    gain.eval(q, ctx.ps.disagreement(&s1, &s2))
                };
                let st = [grid.steps.0, grid.steps.1, grid.steps.0, grid.steps.1];
                let (x, _) = compass(f, [a0.0, a0.1, b0.0, b0.1], st, tol);
                let (h1, h2) = (ctx.line(x[0], x[1]), ctx.line(x[2], x[3]));
                offer(objective_at(problem, source, target, &h1, &h2), Some(h1), h2);
            }
        }
    }
    let (value, h, h_prime) = best.expect("nonempty feasible set");
    Ok(Found { value, h, h_prime, resolution: grid.steps.1 })
}

struct FootprintTable<'a> {
    ctx: &'a PlaneCtx<'a>,
    grid: &'a PlaneGrid,
}

impl PairTable for FootprintTable<'_> {
    fn len(&self) -> usize {
        self.grid.hyps.len()
    }

    fn hypothesis(&self, i: usize) -> Hypothesis {
        self.grid.hyps[i]
    }

    fn masses(&self, i: usize, j: usize) -> (f64, f64) {
        (
            self.ctx.pt.disagreement(&self.grid.tgt[i], &self.grid.tgt[j]),
            self.ctx.ps.disagreement(&self.grid.src[i], &self.grid.src[j]),
        )
    }

    fn source_error(&self, i: usize) -> Option<f64> {
        Some(self.ctx.source_error(&self.grid.src[i]))
    }

    fn anchored(&self, anchor: &Hypothesis) -> Vec<(f64, f64)> {
        let (fs, ft) = (self.ctx.ps.footprint(anchor), self.ctx.pt.footprint(anchor));
        (0..self.len())
            .map(|i| (self.ctx.pt.disagreement(&self.grid.tgt[i], &ft), self.ctx.ps.disagreement(&self.grid.src[i], &fs)))
            .collect()
    }
}

/// `λ = min_h err_P(h) + err_Q(h)` and its minimiser `h*`.
pub fn ideal_joint_error(source: &Domain, target: &Domain, class: &HypothesisClass) -> Result<(f64, Hypothesis)> {
    ideal_joint_error_with(source, target, class, &SearchConfig::default())
}

pub fn ideal_joint_error_with(
    source: &Domain,
    target: &Domain,
    class: &HypothesisClass,
    cfg: &SearchConfig,
) -> Result<(f64, Hypothesis)> {
    if source.dimension() != target.dimension() || source.dimension() != class.dimension() {
        return Err(Error::DimensionMismatch { expected: class.dimension(), found: source.dimension() });
    }
    if !class.is_bounded() {
        return Err(Error::UnboundedParameterBox);
    }
    let joint = |h: &Hypothesis| -> f64 {
        match (source.expected_error(h), target.expected_error(h)) {
            (Ok(a), Ok(b)) => a + b,
            _ => f64::INFINITY,
        }
    };
    let mut best: Option<(f64, Hypothesis)> = None;
    let mut offer = |v: f64, h: Hypothesis| {
        if best.as_ref().is_none_or(|b| v < b.0) {
            best = Some((v, h));
        }
    };
    for d in [source, target] {
        if d.labeling.dimension() == class.dimension() {
            offer(joint(&d.labeling), d.labeling);
        }
    }
    match class.dimension() {
        1 => {
            let (pos, step) = line_positions(class, &[source, target], None, cfg);
            for o in Orientation::BOTH {
                let vals: Vec<f64> = pos.iter().map(|&t| joint(&Hypothesis::threshold_with(t, o))).collect();
                let k = (0..pos.len()).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).expect("nonempty grid");
                offer(vals[k], Hypothesis::threshold_with(pos[k], o));
                if pos[k].is_finite() {
                    let lo = pos[k - 1].max(pos[k] - step);
                    let hi = pos[k + 1].min(pos[k] + step);
                    let (t, v) = golden_max(|t| -joint(&Hypothesis::threshold_with(t, o)), lo, hi, cfg.refine_tol);
                    offer(-v, Hypothesis::threshold_with(t, o));
                }
            }
        }
        _ => {
            let ParameterBox::Linear2D { radius, .. } = class.parameter_box else { unreachable!() };
            let (nt, ns) = PLANE_LEVELS[0];
            let ds = 2.0 * radius / (ns - 1) as f64;
            let mut grid: Vec<(f64, [f64; 2])> = Vec::with_capacity(nt * ns);
            for i in 0..nt {
                for j in 0..ns {
                    let x = [TAU * i as f64 / nt as f64, -radius + ds * j as f64];
                    grid.push((joint(&class.line_at(x[0], x[1])), x));
                }
            }
            let mut order: Vec<usize> = (0..grid.len()).collect();
            order.sort_by(|&a, &b| grid[a].0.total_cmp(&grid[b].0).then(a.cmp(&b)));
            for &k in order.iter().take(cfg.top_k) {
                let line = |x: &[f64; 2]| class.line_at(x[0], x[1].clamp(-radius, radius));
                let (x, _) = compass(|x| -joint(&line(x)), grid[k].1, [TAU / nt as f64, ds], 1e-9);
                let h = line(&x);
                offer(joint(&h), h);
            }
        }
    }
    let (v, h) = best.expect("nonempty search");
    Ok((v.max(0.0), h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Marginal2D;

    fn ex41(eps: f64) -> (Domain, Domain) {
        let p = Domain::new("P", Marginal::OneD(Marginal1D::uniform(0.5 - eps, 0.5 + eps).unwrap()), Hypothesis::threshold(0.5)).unwrap();
        let q = Domain::new("Q", Marginal::OneD(Marginal1D::uniform(0.0, 1.0).unwrap()), Hypothesis::threshold(0.5)).unwrap();
        (p, q)
    }

    fn class_for(a: &Domain, b: &Domain) -> HypothesisClass {
        crate::domain::default_class(&[a, b])
    }

    #[test]
    fn example_41_values() {
        let (p, q) = ex41(0.1);
        let c = class_for(&p, &q);
        let m = Mode::population();
        let hdh = hdh_divergence(&p, &q, &c, &m).unwrap();
        assert!((hdh.value - 0.8).abs() < 1e-6, "{hdh:?}");
        assert!((hdh.reevaluate(&p, &q).unwrap() - hdh.value).abs() < 1e-9);
        let disp = disparity_discrepancy(&Hypothesis::threshold(0.5), &p, &q, &c, &m).unwrap();
        assert!((disp.value - 0.4).abs() < 1e-6, "{disp:?}");
        for r in [0.05, 0.1, 0.2] {
            let loc = localized_hdh(&p, &q, &c, r, &m).unwrap();
            assert!(loc.value.abs() < 1e-9, "{loc:?}");
        }
        let (lambda, h) = ideal_joint_error(&p, &q, &c).unwrap();
        assert_eq!(lambda, 0.0);
        assert_eq!(h, Hypothesis::threshold(0.5));
    }

    #[test]
    fn example_43_reverse_direction() {
        let (p, q) = ex41(0.1);
        let c = class_for(&p, &q);
        for r in [0.05, 0.1] {
            let rev = localized_hdh(&q, &p, &c, r, &Mode::population()).unwrap();
            assert!((rev.value - r * 8.0).abs() < 1e-6, "{rev:?}");
        }
    }

    #[test]
    fn boosted_with_unit_gamma_matches_localized() {
        let (p, q) = ex41(0.1);
        let c = class_for(&p, &q);
        let m = Mode::population();
        let a = localized_hdh(&q, &p, &c, 0.05, &m).unwrap();
        let b = boosted_localized_hdh(&q, &p, &c, 0.05, 1.0, &m).unwrap();
        assert!((a.value - b.value).abs() < 1e-12);
        let g2 = boosted_localized_hdh(&q, &p, &c, 0.05, 2.0, &m).unwrap();
        assert!(g2.value >= a.value);
    }

    #[test]
    fn empty_localized_space_is_an_error() {
        let s = Dataset::labeled_1d(vec![0.1, 0.2, 0.3], vec![1, 0, 1], 0, "s").unwrap();
        let t = Dataset::unlabeled_1d(vec![0.5], 0, "t");
        let c = HypothesisClass::thresholds(0.0, 1.0);
        assert!(matches!(
            localized_hdh(&s, &t, &c, 0.0, &Mode::EmpiricalExact),
            Err(Error::EmptyLocalizedSpace { .. })
        ));
        assert!(localized_hdh(&s, &t, &c, 1.0 / 3.0, &Mode::EmpiricalExact).is_ok());
    }

    #[test]
    fn mode_mismatch_is_reported() {
        let (p, q) = ex41(0.1);
        let c = class_for(&p, &q);
        let d = p.sample(10, 1, true).unwrap();
        assert!(matches!(
            hdh_divergence(&d, &q, &c, &Mode::population()),
            Err(Error::ModeMismatch { .. })
        ));
    }

    #[test]
    fn empirical_identical_samples_give_zero() {
        let (p, _) = ex41(0.1);
        let c = p.default_class();
        let d = p.sample(50, 3, true).unwrap();
        let r = hdh_divergence(&d, &d, &c, &Mode::EmpiricalExact).unwrap();
        assert_eq!(r.value, 0.0);
        let l = localized_hdh(&d, &d, &c, 0.2, &Mode::EmpiricalExact).unwrap();
        assert_eq!(l.value, 0.0);
        assert_eq!(l.reevaluate_on(&d, &d), 0.0);
    }

    #[test]
    fn manifold_example_directions() {
        let rect = Marginal2D::UniformRect { x_range: [0.0, 1.0], y_range: [0.0, 1.0] };
        let seg = Marginal2D::UniformSegment { endpoint_a: [0.0, 0.5], endpoint_b: [1.0, 0.5] };
        let l = Hypothesis::linear(0.0, 0.5);
        let p = Domain::new("P", Marginal::TwoD(rect), l).unwrap();
        let q = Domain::new("Q", Marginal::TwoD(seg), l).unwrap();
        let c = class_for(&p, &q);
        let m = Mode::population();
        assert!(hdh_divergence(&p, &q, &c, &m).unwrap().value >= 0.99);
        assert!(disparity_discrepancy(&l, &p, &q, &c, &m).unwrap().value >= 0.499);
        assert!(localized_hdh(&p, &q, &c, 0.1, &m).unwrap().value <= 0.02);
        let rev = localized_hdh(&q, &p, &c, 0.1, &m).unwrap();
        assert!(rev.value >= 0.95, "{rev:?}");
        assert!((rev.reevaluate(&q, &p).unwrap() - rev.value).abs() < 1e-9);
        let (lambda, _) = ideal_joint_error(&p, &q, &c).unwrap();
        assert_eq!(lambda, 0.0);
    }

    #[test]
    fn report_json_has_flat_kind_fields() {
        let (p, q) = ex41(0.1);
        let c = class_for(&p, &q);
        let r = localized_hdh(&p, &q, &c, 0.1, &Mode::population()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for key in ["kind", "r", "value", "witness", "mode", "resolution", "source", "target"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["kind"], "localized-hdh");
        let back: DiscrepancyReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
