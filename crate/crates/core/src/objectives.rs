//! The three empirical adaptation objectives, the chain inequality linking
//! two of them, and the assembled right-hand sides of the target-error and
//! generalization bounds.

use crate::discrepancy::{
    boosted_localized_hdh, feasible_mask, ideal_joint_error_with, localized_disparity, localized_hdh, Mode,
    SearchConfig,
};
use crate::domain::{Dataset, Domain};
use crate::error::{Error, Result};
use crate::hypothesis::{Hypothesis, HypothesisClass};
use crate::localization::{LocalizationConstants, MEMBERSHIP_SLACK};
use crate::tables::{Gain, LineTable, PairTable, PlaneTable};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectiveKind {
    /// empirical error over `H̃_{r−}` plus the pair discrepancy over `H̃_{r+}`
    LocalizedHdh,
    /// joint error-plus-disparity, anchor unconstrained
    LocalizedDisparity,
    /// as `LocalizedHdh` with the boosted discrepancy
    Boosted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveSolution {
    pub objective: ObjectiveKind,
    pub h: Hypothesis,
    pub value: f64,
    pub source_error: f64,
    pub discrepancy: f64,
    /// whether `h ∈ H̃_{r−}` (always true for the constrained objectives)
    pub feasible: bool,
    /// hypotheses attaining the discrepancy term
    pub witness: (Hypothesis, Hypothesis),
    pub constants: LocalizationConstants,
    pub candidates: usize,
}

fn table_for(source: &Dataset, target: &Dataset, class: &HypothesisClass) -> Result<Box<dyn PairTable + Sync>> {
    if !source.is_labeled() {
        return Err(Error::UnlabeledDataset);
    }
    if source.dimension() != class.dimension() || target.dimension() != class.dimension() {
        return Err(Error::DimensionMismatch { expected: class.dimension(), found: source.dimension() });
    }
    Ok(match class.dimension() {
        1 => Box::new(LineTable::empirical(source, target)?),
        _ => Box::new(PlaneTable::empirical(class, source, target)?),
    })
}

fn check_sizes(source: &Dataset, c: &LocalizationConstants) -> Result<()> {
    c.validate()?;
    if source.len() != c.n {
        return Err(Error::SizeMismatch { expected: c.n, found: source.len() });
    }
    Ok(())
}

/// Lowest index attaining the minimum source error among `allowed`.
fn min_error(table: &dyn PairTable, allowed: &[bool]) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &ok) in allowed.iter().enumerate() {
        if !ok {
            continue;
        }
        let e = table.source_error(i).unwrap_or(f64::INFINITY);
        if best.is_none_or(|b| e < b.1) {
            best = Some((i, e));
        }
    }
    best
}

fn solve_constrained(
    source: &Dataset,
    target: &Dataset,
    class: &HypothesisClass,
    c: &LocalizationConstants,
    gain: Gain,
    objective: ObjectiveKind,
) -> Result<ObjectiveSolution> {
    check_sizes(source, c)?;
    let lower = c.lower_cutoff()?;
    let table = table_for(source, target, class)?;
    let minus = feasible_mask(table.as_ref(), Some(lower));
    let plus = feasible_mask(table.as_ref(), Some(c.upper_cutoff()));
    let (i, err) = min_error(table.as_ref(), &minus).ok_or_else(|| {
        Error::ObjectiveInfeasible(format!("no candidate has empirical source error <= r - c_minus = {lower}"))
    })?;
    let best = table.best_pair(&plus, gain).expect("H_r- is inside H_r+");
    Ok(ObjectiveSolution {
        objective,
        h: table.hypothesis(i),
        value: err + best.value,
        source_error: err,
        discrepancy: best.value,
        feasible: true,
        witness: (table.hypothesis(best.i), table.hypothesis(best.j)),
        constants: *c,
        candidates: table.len(),
    })
}

/// `min_{h ∈ H̃_{r−}} err_{P_n}(h) + disc_{H̃_{r+}}(P_n, Q_m)`.
pub fn solve_objective_13(
    source: &Dataset,
    target: &Dataset,
    class: &HypothesisClass,
    c: &LocalizationConstants,
) -> Result<ObjectiveSolution> {
    solve_constrained(source, target, class, c, Gain::Signed, ObjectiveKind::LocalizedHdh)
}

/// Constrained objective with the `γ`-boosted discrepancy (`γ` from `c`).
pub fn solve_objective_21(
    source: &Dataset,
    target: &Dataset,
    class: &HypothesisClass,
    c: &LocalizationConstants,
) -> Result<ObjectiveSolution> {
    let gamma = c.gamma.ok_or_else(|| Error::InvalidParameter("boosted objective needs gamma".into()))?;
    solve_constrained(source, target, class, c, Gain::Boosted(gamma), ObjectiveKind::Boosted)
}

/// `min_h err_{P_n}(h) + sup_{h' ∈ H̃_{r+}} Q_m(h'≠h) − P_n(h'≠h)`.
pub fn solve_objective_16(
    source: &Dataset,
    target: &Dataset,
    class: &HypothesisClass,
    c: &LocalizationConstants,
) -> Result<ObjectiveSolution> {
    check_sizes(source, c)?;
    let table = table_for(source, target, class)?;
    let plus = feasible_mask(table.as_ref(), Some(c.upper_cutoff()));
    let plus_idx: Vec<usize> = (0..table.len()).filter(|&j| plus[j]).collect();
    if plus_idx.is_empty() {
        return Err(Error::ObjectiveInfeasible(format!(
            "no candidate has empirical source error <= r + c_plus = {}",
            c.upper_cutoff()
        )));
    }
    let t = table.as_ref();
    let scores: Vec<(f64, f64, usize)> = (0..t.len())
        .into_par_iter()
        .map(|i| {
            let mut best = (f64::NEG_INFINITY, usize::MAX);
            for &j in &plus_idx {
                let (q, p) = t.masses(j, i);
                let v = q - p;
                if v > best.0 {
                    best = (v, j);
                }
            }
            let err = t.source_error(i).unwrap_or(f64::INFINITY);
            (err + best.0, best.0, best.1)
        })
        .collect();
    let mut pick = 0;
    for (i, s) in scores.iter().enumerate() {
        if s.0 < scores[pick].0 {
            pick = i;
        }
    }
    let (value, disc, j) = scores[pick];
    let err = t.source_error(pick).unwrap_or(f64::INFINITY);
    let lower = c.lower_cutoff().ok();
    Ok(ObjectiveSolution {
        objective: ObjectiveKind::LocalizedDisparity,
        h: t.hypothesis(pick),
        value,
        source_error: err,
        discrepancy: disc,
        feasible: lower.is_some_and(|l| err <= l + MEMBERSHIP_SLACK),
        witness: (t.hypothesis(pick), t.hypothesis(j)),
        constants: *c,
        candidates: t.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prop54Check {
    /// `(𝔒(ȟ), err(ĥ) + disc, r + disc)`
    pub chain: [f64; 3],
    pub holds: bool,
    pub constrained: ObjectiveSolution,
    pub joint: ObjectiveSolution,
}

/// Solves both objectives on the same samples and checks
/// `𝔒(ȟ) ≤ err(ĥ) + disc ≤ r + disc` with `1e-12` slack.
pub fn check_prop_54(
    source: &Dataset,
    target: &Dataset,
    class: &HypothesisClass,
    c: &LocalizationConstants,
) -> Result<Prop54Check> {
    let constrained = solve_objective_13(source, target, class, c)?;
    let joint = solve_objective_16(source, target, class, c)?;
    let chain = [joint.value, constrained.value, c.r + constrained.discrepancy];
    let holds = chain[0] <= chain[1] + 1e-12 && chain[1] <= chain[2] + 1e-12;
    Ok(Prop54Check { chain, holds, constrained, joint })
}

/// Additive pieces of a bound; unused pieces are zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundTerms {
    pub source_term: f64,
    pub discrepancy_term: f64,
    pub lambda: f64,
    pub fast_source: f64,
    pub fast_target: f64,
    pub slow_source: f64,
    pub slow_target: f64,
}

impl BoundTerms {
    pub fn sum(&self) -> f64 {
        self.source_term
            + self.discrepancy_term
            + self.lambda
            + self.fast_source
            + self.fast_target
            + self.slow_source
            + self.slow_target
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub theorem: String,
    pub h: Hypothesis,
    /// realised target error, when a population target is available
    pub lhs: Option<f64>,
    pub terms: BoundTerms,
    pub rhs: f64,
    pub holds: Option<bool>,
    pub tolerance: f64,
    /// complexity terms carry unknown constants; the bound is indicative only
    pub diagnostic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    /// `err + disc + λ + √(d ln n / n) + √(d ln m / m)` for comparison
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classical_rhs: Option<f64>,
}

/// Flat CSV rendering of a [`BoundReport`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub theorem: String,
    pub lhs: Option<f64>,
    pub source_term: f64,
    pub discrepancy_term: f64,
    pub lambda: f64,
    pub fast_source: f64,
    pub fast_target: f64,
    pub slow_source: f64,
    pub slow_target: f64,
    pub rhs: f64,
    pub holds: Option<bool>,
}

impl BoundReport {
    fn new(theorem: &str, h: Hypothesis, lhs: Option<f64>, terms: BoundTerms, tolerance: f64) -> Self {
        let rhs = terms.sum();
        Self {
            theorem: theorem.into(),
            h,
            lhs,
            terms,
            rhs,
            holds: lhs.map(|l| l <= rhs + tolerance),
            tolerance,
            diagnostic: false,
            multiplier: None,
            gamma: None,
            classical_rhs: None,
        }
    }

    pub fn row(&self) -> BoundRow {
        let t = &self.terms;
        BoundRow {
            theorem: self.theorem.clone(),
            lhs: self.lhs,
            source_term: t.source_term,
            discrepancy_term: t.discrepancy_term,
            lambda: t.lambda,
            fast_source: t.fast_source,
            fast_target: t.fast_target,
            slow_source: t.slow_source,
            slow_target: t.slow_target,
            rhs: self.rhs,
            holds: self.holds,
        }
    }

    pub fn csv_header() -> &'static str {
        "theorem,lhs,source_term,discrepancy_term,lambda,fast_source,fast_target,slow_source,slow_target,rhs,holds"
    }

    pub fn to_csv_row(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.serialize(self.row()).map_err(|e| Error::Csv { path: "<memory>".into(), source: e })?;
        let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(String::from_utf8_lossy(&bytes).trim_end().to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundVariant {
    #[serde(rename = "hdh")]
    Hdh,
    #[serde(rename = "disparity")]
    Disparity,
}

/// Population quantities shared by many target-error bound evaluations:
/// `λ` and the localized discrepancies at a fixed `r`.
pub struct BoundContext<'a> {
    pub source: &'a Domain,
    pub target: &'a Domain,
    pub class: &'a HypothesisClass,
    pub r: f64,
    pub lambda: f64,
    pub ideal: Hypothesis,
    pub localized: f64,
    pub tolerance: f64,
    cfg: SearchConfig,
    boosted: HashMap<u64, f64>,
}

impl<'a> BoundContext<'a> {
    pub fn new(source: &'a Domain, target: &'a Domain, class: &'a HypothesisClass, r: f64) -> Result<Self> {
        Self::with_config(source, target, class, r, SearchConfig::default())
    }

    pub fn with_config(
        source: &'a Domain,
        target: &'a Domain,
        class: &'a HypothesisClass,
        r: f64,
        cfg: SearchConfig,
    ) -> Result<Self> {
        let (lambda, ideal) = ideal_joint_error_with(source, target, class, &cfg)?;
        if !(r > lambda) {
            return Err(Error::RadiusBelowIdealJointError { r, lambda });
        }
        let localized = localized_hdh(source, target, class, r, &Mode::Population(cfg))?.value;
        Ok(Self {
            source,
            target,
            class,
            r,
            lambda,
            ideal,
            localized,
            tolerance: 1e-9 + cfg.refine_tol,
            cfg,
            boosted: HashMap::new(),
        })
    }

    /// Boosted discrepancy at `γ`, cached; `γ = 1` reuses the plain value.
    pub fn boosted(&mut self, gamma: f64) -> Result<f64> {
        if gamma == 1.0 {
            return Ok(self.localized);
        }
        if let Some(&v) = self.boosted.get(&gamma.to_bits()) {
            return Ok(v);
        }
        let v = boosted_localized_hdh(self.source, self.target, self.class, self.r, gamma, &Mode::Population(self.cfg))?
            .value;
        self.boosted.insert(gamma.to_bits(), v);
        Ok(v)
    }

    /// Cached value when present, otherwise a fresh (uncached) search.
    fn boosted_value(&self, gamma: f64) -> Result<f64> {
        if gamma == 1.0 {
            return Ok(self.localized);
        }
        match self.boosted.get(&gamma.to_bits()) {
            Some(&v) => Ok(v),
            None => Ok(boosted_localized_hdh(
                self.source,
                self.target,
                self.class,
                self.r,
                gamma,
                &Mode::Population(self.cfg),
            )?
            .value),
        }
    }

    fn in_h_r(&self, h: &Hypothesis) -> Result<f64> {
        let e = self.source.expected_error(h)?;
        if e > self.r {
            return Err(Error::InvalidParameter(format!("hypothesis source error {e} exceeds r = {}", self.r)));
        }
        Ok(e)
    }

    /// `err_Q(h) ≤ err_P(h) + disc + λ`.
    pub fn thm32(&self, h: &Hypothesis, variant: BoundVariant) -> Result<BoundReport> {
        let (err_p, disc) = match variant {
            BoundVariant::Hdh => (self.in_h_r(h)?, self.localized),
            BoundVariant::Disparity => {
                let d = localized_disparity(h, self.source, self.target, self.class, self.r, &Mode::Population(self.cfg))?;
                (self.source.expected_error(h)?, d.value)
            }
        };
        let terms = BoundTerms { source_term: err_p, discrepancy_term: disc, lambda: self.lambda, ..Default::default() };
        let name = match variant {
            BoundVariant::Hdh => "thm32",
            BoundVariant::Disparity => "thm32-disparity",
        };
        Ok(BoundReport::new(name, *h, Some(self.target.expected_error(h)?), terms, self.tolerance))
    }

    /// `err_Q(h) ≤ 2^{γ−1} err_P(h)^γ + disc^γ + λ`.
    pub fn thm62(&self, h: &Hypothesis, gamma: f64) -> Result<BoundReport> {
        if !(gamma >= 1.0) {
            return Err(Error::InvalidParameter(format!("gamma = {gamma} must be at least 1")));
        }
        if !(self.lambda < 0.5) {
            return Err(Error::InvalidParameter(format!("lambda = {} must be below 1/2", self.lambda)));
        }
        if !(self.r < 0.5) {
            return Err(Error::InvalidParameter(format!("r = {} must be below 1/2", self.r)));
        }
        let err_p = self.in_h_r(h)?;
        let disc = self.boosted_value(gamma)?;
        let terms = BoundTerms {
            source_term: source_term_62(err_p, gamma),
            discrepancy_term: disc,
            lambda: self.lambda,
            ..Default::default()
        };
        let mut rep = BoundReport::new("thm62", *h, Some(self.target.expected_error(h)?), terms, self.tolerance);
        rep.gamma = Some(gamma);
        Ok(rep)
    }
}

/// `2^{γ−1} e^γ`, written so that `γ = 1` returns `e` exactly.
pub fn source_term_62(e: f64, gamma: f64) -> f64 {
    if gamma == 1.0 {
        e
    } else {
        2f64.powf(gamma - 1.0) * e.powf(gamma)
    }
}

pub fn error_bound_rhs_thm32(
    h: &Hypothesis,
    source: &Domain,
    target: &Domain,
    class: &HypothesisClass,
    r: f64,
    variant: BoundVariant,
) -> Result<BoundReport> {
    BoundContext::new(source, target, class, r)?.thm32(h, variant)
}

pub fn error_bound_rhs_thm62(
    h: &Hypothesis,
    source: &Domain,
    target: &Domain,
    class: &HypothesisClass,
    r: f64,
    gamma: f64,
) -> Result<BoundReport> {
    BoundContext::new(source, target, class, r)?.thm62(h, gamma)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenTheorem {
    #[serde(rename = "thm53")]
    LocalizedHdh,
    #[serde(rename = "thm55")]
    LocalizedDisparity,
    #[serde(rename = "thm63")]
    Boosted,
}

impl GenTheorem {
    pub fn id(self) -> &'static str {
        match self {
            GenTheorem::LocalizedHdh => "thm53",
            GenTheorem::LocalizedDisparity => "thm55",
            GenTheorem::Boosted => "thm63",
        }
    }
}

/// `(d ln k + ln(1/δ)) / k`
fn rate(d: usize, k: usize, delta: f64) -> f64 {
    let k = k as f64;
    (d as f64 * k.ln() + (1.0 / delta).ln()) / k
}

/// Generalization-bound right-hand side with every `O(·)` replaced by
/// `multiplier × (·)`. `target_error`, when given, becomes the lhs.
pub fn gen_bound_rhs(
    theorem: GenTheorem,
    solution: &ObjectiveSolution,
    source: &Dataset,
    target: &Dataset,
    c: &LocalizationConstants,
    lambda: f64,
    multiplier: f64,
    target_error: Option<f64>,
) -> Result<BoundReport> {
    use ObjectiveKind as O;
    let paired = matches!(
        (theorem, solution.objective),
        (GenTheorem::LocalizedHdh, O::LocalizedHdh)
            | (GenTheorem::LocalizedDisparity, O::LocalizedDisparity)
            | (GenTheorem::Boosted, O::LocalizedHdh | O::Boosted)
    );
    if !paired {
        return Err(Error::TheoremObjectiveMismatch {
            theorem: theorem.id().into(),
            objective: format!("{:?}", solution.objective),
        });
    }
    if !(multiplier > 0.0) {
        return Err(Error::InvalidParameter(format!("multiplier = {multiplier} must be positive")));
    }
    c.validate()?;
    if source.len() != c.n {
        return Err(Error::SizeMismatch { expected: c.n, found: source.len() });
    }
    if target.is_empty() {
        return Err(Error::EmptyData);
    }
    let needs_capacity = theorem != GenTheorem::LocalizedDisparity;
    let floor = if needs_capacity { c.epsilon + lambda } else { lambda };
    if !(c.r > floor) {
        return Err(if needs_capacity {
            Error::RadiusNotAboveCapacity { r: c.r, capacity: floor }
        } else {
            Error::RadiusBelowIdealJointError { r: c.r, lambda }
        });
    }
    let (n, m, r, k) = (source.len(), target.len(), c.r, multiplier);
    let (ln_n, ln_m) = (rate(c.d, n, c.delta), rate(c.d, m, c.delta));
    let err = solution.source_error;
    let disc = solution.discrepancy;
    let gamma = c.gamma.unwrap_or(1.0);
    let pow = |x: f64| if gamma == 1.0 { x } else { x.powf(gamma) };
    let terms = match theorem {
        GenTheorem::LocalizedHdh => BoundTerms {
            source_term: err,
            discrepancy_term: disc,
            lambda,
            fast_source: k * ln_n,
            fast_target: k * ln_m,
            slow_source: k * (2.0 * r * ln_n).sqrt(),
            slow_target: k * ((disc + 2.0 * r) * ln_m).sqrt(),
        },
        GenTheorem::LocalizedDisparity => BoundTerms {
            source_term: err,
            discrepancy_term: disc,
            lambda,
            fast_source: k * ln_n,
            fast_target: k * ln_m,
            slow_source: k * ((err + r) * ln_n).sqrt(),
            slow_target: k * ((solution.value + r) * ln_m).sqrt(),
        },
        GenTheorem::Boosted => BoundTerms {
            source_term: err,
            discrepancy_term: disc,
            lambda,
            fast_source: pow(k * ln_n),
            fast_target: k * ln_m,
            slow_source: pow(k * (2.0 * r * ln_n).sqrt()),
            slow_target: k * ((disc + pow(2.0 * r)) * ln_m).sqrt(),
        },
    };
    let mut rep = BoundReport::new(theorem.id(), solution.h, target_error, terms, 1e-12);
    rep.diagnostic = true;
    rep.multiplier = Some(multiplier);
    rep.gamma = c.gamma;
    let d = c.d as f64;
    rep.classical_rhs = Some(
        err + disc + lambda + (d * (n as f64).ln() / n as f64).sqrt() + (d * (m as f64).ln() / m as f64).sqrt(),
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Marginal, Marginal1D};

    fn ex41() -> (Domain, Domain, HypothesisClass) {
        let p = Domain::new("P", Marginal::OneD(Marginal1D::uniform(0.4, 0.6).unwrap()), Hypothesis::threshold(0.5)).unwrap();
        let q = Domain::new("Q", Marginal::OneD(Marginal1D::uniform(0.0, 1.0).unwrap()), Hypothesis::threshold(0.5)).unwrap();
        let c = crate::domain::default_class(&[&p, &q]);
        (p, q, c)
    }

    #[test]
    fn objective_13_on_example_data() {
        let (p, q, class) = ex41();
        let s = p.sample(2000, 11, true).unwrap();
        let t = q.sample(2000, 12, false).unwrap();
        let c = LocalizationConstants::new(2000, 2, 0.1, 0.15).unwrap();
        let sol = solve_objective_13(&s, &t, &class, &c).unwrap();
        let Hypothesis::Threshold { t: th, .. } = sol.h else { panic!() };
        assert!((th - 0.5).abs() < 0.01, "{sol:?}");
        assert!(sol.discrepancy <= 0.05, "{sol:?}");
        assert!(sol.source_error <= c.lower_cutoff().unwrap());
        assert!((sol.value - sol.source_error - sol.discrepancy).abs() <= 1e-12);

        let g1 = solve_objective_21(&s, &t, &class, &c.with_gamma(1.0).unwrap()).unwrap();
        assert_eq!((g1.h, g1.value), (sol.h, sol.value));
        let g2 = solve_objective_21(&s, &t, &class, &c.with_gamma(2.0).unwrap()).unwrap();
        assert!(g2.discrepancy >= sol.discrepancy);
    }

    #[test]
    fn same_distribution_objectives_are_small() {
        let (p, _, class) = ex41();
        let s = p.sample(2000, 21, true).unwrap();
        let t = p.sample(2000, 22, false).unwrap();
        let c = LocalizationConstants::new(2000, 2, 0.1, 0.15).unwrap();
        assert!(solve_objective_13(&s, &t, &class, &c).unwrap().discrepancy <= 0.05);
        assert!(solve_objective_16(&s, &t, &class, &c).unwrap().value <= 0.05);
    }

    #[test]
    fn prop_54_chain() {
        let (p, q, class) = ex41();
        let s = p.sample(500, 1, true).unwrap();
        let t = q.sample(500, 2, false).unwrap();
        let c = LocalizationConstants::new(500, 2, 0.1, 0.6).unwrap();
        let chk = check_prop_54(&s, &t, &class, &c).unwrap();
        assert!(chk.holds, "{chk:?}");
    }

    #[test]
    fn infeasible_constraint_is_an_error() {
        let (p, q, class) = ex41();
        let s = p.sample(2000, 1, true).unwrap();
        let t = q.sample(2000, 2, false).unwrap();
        let c = LocalizationConstants::new(2000, 2, 0.1, 0.05).unwrap();
        assert!(matches!(solve_objective_13(&s, &t, &class, &c), Err(Error::RadiusNotAboveCapacity { .. })));
    }

    #[test]
    fn target_error_bounds_on_example() {
        let (p, q, class) = ex41();
        let r0 = error_bound_rhs_thm32(&Hypothesis::threshold(0.5), &p, &q, &class, 0.1, BoundVariant::Hdh).unwrap();
        assert_eq!(r0.lhs, Some(0.0));
        assert!(r0.rhs.abs() < 1e-9 && r0.holds == Some(true));
        let h = Hypothesis::threshold(0.52);
        let r1 = error_bound_rhs_thm32(&h, &p, &q, &class, 0.15, BoundVariant::Hdh).unwrap();
        assert!((r1.lhs.unwrap() - 0.02).abs() < 1e-12);
        assert!((r1.rhs - 0.1).abs() < 1e-9);
        let r2 = error_bound_rhs_thm62(&h, &p, &q, &class, 0.15, 2.0).unwrap();
        assert!((r2.terms.source_term - 0.02).abs() < 1e-12);
        assert_eq!(r2.holds, Some(true));
        let g1 = error_bound_rhs_thm62(&h, &p, &q, &class, 0.15, 1.0).unwrap();
        assert!((g1.rhs - r1.rhs).abs() < 1e-12);
        assert!(error_bound_rhs_thm32(&Hypothesis::threshold(0.7), &p, &q, &class, 0.15, BoundVariant::Hdh).is_err());
        let disp = error_bound_rhs_thm32(&Hypothesis::threshold(0.7), &p, &q, &class, 0.15, BoundVariant::Disparity).unwrap();
        assert_eq!(disp.holds, Some(true));
    }

    #[test]
    fn generalization_bounds() {
        let (p, q, class) = ex41();
        let s = p.sample(4000, 5, true).unwrap();
        let t = q.sample(4000, 6, false).unwrap();
        let c = LocalizationConstants::new(4000, 2, 0.1, 0.1).unwrap().with_gamma(1.0).unwrap();
        let sol = solve_objective_13(&s, &t, &class, &c).unwrap();
        let b53 = gen_bound_rhs(GenTheorem::LocalizedHdh, &sol, &s, &t, &c, 0.0, 1.0, None).unwrap();
        let b63 = gen_bound_rhs(GenTheorem::Boosted, &sol, &s, &t, &c, 0.0, 1.0, None).unwrap();
        assert!((b53.rhs - b63.rhs).abs() < 1e-12);
        assert!(b53.rhs < b53.classical_rhs.unwrap(), "{b53:?}");
        assert!((b53.terms.sum() - b53.rhs).abs() == 0.0);
        let joint = solve_objective_16(&s, &t, &class, &c).unwrap();
        assert!(matches!(
            gen_bound_rhs(GenTheorem::LocalizedHdh, &joint, &s, &t, &c, 0.0, 1.0, None),
            Err(Error::TheoremObjectiveMismatch { .. })
        ));
        let b55 = gen_bound_rhs(GenTheorem::LocalizedDisparity, &joint, &s, &t, &c, 0.0, 1.0, None).unwrap();
        assert!(b55.diagnostic);
        let row = b53.to_csv_row().unwrap();
        assert_eq!(row.split(',').count(), BoundReport::csv_header().split(',').count());
    }
}
