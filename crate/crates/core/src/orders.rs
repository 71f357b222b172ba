//! Grid-based decisions of stochastic orders between two distributions.
//!
//! Every verdict is a statement about the probed grid only. Pointwise relations
//! (st, hr, rh, Lorenz, right spread) compare an A-side and a B-side quantity
//! at each grid point; monotone relations (lr, star, dispersive) check that a
//! B-minus-A difference moves in one direction between consecutive points.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::BaselineDistribution;
use crate::error::{Error, Result};
use crate::mixture::{ComponentGroup, MixtureModel};
use crate::monotone::{classify_points, scan_steps, MonotoneVerdict, Slack};
use crate::quad::{integrate, QuadConfig};

/// Densities below this are treated as underflow rather than true zeros.
const UNDERFLOW: f64 = 1e-290;

/// Fewer usable grid points than this gives an inconclusive verdict.
pub const MIN_USABLE: usize = 8;

/// Evaluators needed by the order checks.
pub trait Distribution: Sync {
    fn cdf(&self, x: f64) -> f64;
    fn sf(&self, x: f64) -> f64;
    fn pdf(&self, x: f64) -> f64;
    fn hazard(&self, x: f64) -> Result<f64>;
    fn reversed_hazard(&self, x: f64) -> Result<f64>;
    fn quantile(&self, p: f64) -> Result<f64>;
    /// `∫_x^∞ sf(u) du`.
    fn integrated_sf(&self, x: f64, cfg: &QuadConfig) -> Result<f64>;
    fn support(&self) -> (f64, f64);

    fn mean(&self, cfg: &QuadConfig) -> Result<f64> {
        let lo = self.support().0;
        Ok(lo + self.integrated_sf(lo, cfg)?)
    }

    fn ensure_proper(&self) -> Result<()> {
        Ok(())
    }
}

impl Distribution for BaselineDistribution {
    fn cdf(&self, x: f64) -> f64 {
        BaselineDistribution::cdf(self, x)
    }
    fn sf(&self, x: f64) -> f64 {
        BaselineDistribution::sf(self, x)
    }
    fn pdf(&self, x: f64) -> f64 {
        BaselineDistribution::pdf(self, x)
    }
    fn hazard(&self, x: f64) -> Result<f64> {
        BaselineDistribution::hazard(self, x)
    }
    fn reversed_hazard(&self, x: f64) -> Result<f64> {
        BaselineDistribution::reversed_hazard(self, x)
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        BaselineDistribution::quantile(self, p)
    }
    fn integrated_sf(&self, x: f64, _cfg: &QuadConfig) -> Result<f64> {
        self.tail_integral(x)
    }
    fn support(&self) -> (f64, f64) {
        (self.support_lo(), self.support_hi())
    }
}

impl Distribution for MixtureModel {
    fn cdf(&self, x: f64) -> f64 {
        MixtureModel::cdf(self, x)
    }
    fn sf(&self, x: f64) -> f64 {
        MixtureModel::sf(self, x)
    }
    fn pdf(&self, x: f64) -> f64 {
        MixtureModel::pdf(self, x)
    }
    fn hazard(&self, x: f64) -> Result<f64> {
        MixtureModel::hazard(self, x)
    }
    fn reversed_hazard(&self, x: f64) -> Result<f64> {
        MixtureModel::reversed_hazard(self, x)
    }
    fn quantile(&self, p: f64) -> Result<f64> {
        MixtureModel::quantile(self, p)
    }
    fn integrated_sf(&self, x: f64, cfg: &QuadConfig) -> Result<f64> {
        self.integrated_sf_with(x, cfg)
    }
    fn support(&self) -> (f64, f64) {
        (self.support_lo(), self.support_hi())
    }
    fn ensure_proper(&self) -> Result<()> {
        MixtureModel::ensure_proper(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    ST,
    HR,
    RH,
    LR,
    STAR,
    LORENZ,
    DISP,
    RS,
}

impl Relation {
    pub const ALL: [Relation; 8] = [
        Relation::ST,
        Relation::HR,
        Relation::RH,
        Relation::LR,
        Relation::STAR,
        Relation::LORENZ,
        Relation::DISP,
        Relation::RS,
    ];

    /// Relations judged by monotonicity of a difference along the grid.
    pub fn is_monotone(self) -> bool {
        matches!(self, Relation::LR | Relation::STAR | Relation::DISP)
    }

    /// Relations probed on the probability grid rather than the x-grid.
    pub fn uses_p_grid(self) -> bool {
        matches!(
            self,
            Relation::STAR | Relation::LORENZ | Relation::DISP | Relation::RS
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Relation::ST => "st",
            Relation::HR => "hr",
            Relation::RH => "rh",
            Relation::LR => "lr",
            Relation::STAR => "star",
            Relation::LORENZ => "lorenz",
            Relation::DISP => "disp",
            Relation::RS => "rs",
        }
    }
}

impl std::str::FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Relation::ALL
            .into_iter()
            .find(|r| r.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Usage(format!("unknown relation `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// A ≤ B on the grid.
    HoldsForward,
    /// B ≤ A on the grid.
    HoldsBackward,
    Equal,
    Incomparable,
    Inconclusive,
}

impl Outcome {
    /// The outcome of the same check with A and B swapped.
    pub fn reversed(self) -> Self {
        match self {
            Outcome::HoldsForward => Outcome::HoldsBackward,
            Outcome::HoldsBackward => Outcome::HoldsForward,
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GridConfig {
    pub n_points: usize,
    pub p_lo: f64,
    pub p_hi: f64,
    pub eps_abs: f64,
    pub eps_rel: f64,
    /// Absolute tolerance for integrated-survival quadrature.
    pub quad_tol: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            n_points: 2001,
            p_lo: 1e-6,
            p_hi: 1.0 - 1e-6,
            eps_abs: 1e-9,
            eps_rel: 1e-9,
            quad_tol: 1e-10,
        }
    }
}

impl GridConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0 < self.p_lo && self.p_lo < self.p_hi && self.p_hi < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "grid needs 0 < p_lo < p_hi < 1, got ({}, {})",
                self.p_lo, self.p_hi
            )));
        }
        if self.n_points < 32 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 32 points, got {}",
                self.n_points
            )));
        }
        if !(self.eps_abs >= 0.0 && self.eps_rel >= 0.0 && self.quad_tol > 0.0) {
            return Err(Error::InvalidParameter(
                "tolerances must be nonnegative".into(),
            ));
        }
        Ok(())
    }

    pub fn slack(&self) -> Slack {
        Slack::new(self.eps_abs, self.eps_rel)
    }

    pub fn quad(&self) -> QuadConfig {
        QuadConfig::with_abs_tol(self.quad_tol)
    }

    pub fn p_grid(&self) -> Vec<f64> {
        let last = (self.n_points - 1) as f64;
        (0..self.n_points)
            .map(|i| self.p_lo + (self.p_hi - self.p_lo) * i as f64 / last)
            .collect()
    }
}

/// A grid point where the relation was decided strictly.
///
/// For pointwise relations `lhs` is the A-side and `rhs` the B-side quantity at
/// `x`. For monotone relations `x` is the left end of a grid step and `lhs`,
/// `rhs` are the B-minus-A difference at its two ends. For probability-grid
/// relations `x` is the probability.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Witness {
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// +1 if the point supports A ≤ B, -1 if it supports B ≤ A.
    #[serde(skip)]
    pub sign: i8,
    /// Size of the strict difference in units of the tie tolerance.
    #[serde(skip)]
    pub strength: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderVerdict {
    pub relation: Relation,
    pub outcome: Outcome,
    pub witnesses: Vec<Witness>,
    pub probe: GridConfig,
}

impl OrderVerdict {
    /// Strongest witness supporting the given direction (+1 forward, -1 backward).
    pub fn strongest(&self, sign: i8) -> Option<&Witness> {
        self.witnesses
            .iter()
            .filter(|w| w.sign == sign)
            .max_by(|a, b| a.strength.total_cmp(&b.strength))
    }
}

/// One probed point: A-side and B-side quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbedPoint {
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
}

fn x_grid(a: &dyn Distribution, b: &dyn Distribution, cfg: &GridConfig) -> Result<Vec<f64>> {
    let ps = cfg.p_grid();
    let mut xs: Vec<f64> = ps
        .par_iter()
        .map(|&p| Ok([a.quantile(p)?, b.quantile(p)?]))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    Ok(xs)
}

fn ln_density(d: &dyn Distribution, x: f64) -> f64 {
    let f = d.pdf(x);
    if f > UNDERFLOW {
        return f.ln();
    }
    let (lo, hi) = d.support();
    if x <= lo || x >= hi {
        f64::NEG_INFINITY
    } else {
        f64::NAN
    }
}

/// Lorenz-curve ingredients shared across the grid.
fn lorenz_value(d: &dyn Distribution, mean: f64, t: f64, q: &QuadConfig) -> Result<f64> {
    let x = d.quantile(t)?;
    Ok((x * (1.0 - t) + d.integrated_sf(x, q)?) / mean)
}

fn finite_mean(d: &dyn Distribution, q: &QuadConfig) -> Result<f64> {
    let m = d.mean(q)?;
    if m.is_finite() && m > 0.0 {
        Ok(m)
    } else {
        Err(Error::Divergent(format!("mean is {m}")))
    }
}

/// Evaluates the relation's A-side and B-side quantities over its grid.
pub fn probe_relation(
    a: &dyn Distribution,
    b: &dyn Distribution,
    relation: Relation,
    cfg: &GridConfig,
) -> Result<Vec<ProbedPoint>> {
    cfg.validate()?;
    a.ensure_proper()?;
    b.ensure_proper()?;
    let q = cfg.quad();
    let xs = if relation.uses_p_grid() {
        cfg.p_grid()
    } else {
        x_grid(a, b, cfg)?
    };
    let means = if relation == Relation::LORENZ {
        Some((finite_mean(a, &q)?, finite_mean(b, &q)?))
    } else {
        None
    };
    let infinite_on_err = |r: Result<f64>| r.unwrap_or(f64::INFINITY);
    xs.par_iter()
        .map(|&x| {
            let (lhs, rhs) = match relation {
                Relation::ST => (a.sf(x), b.sf(x)),
                Relation::HR => (infinite_on_err(a.hazard(x)), infinite_on_err(b.hazard(x))),
                Relation::RH => (
                    infinite_on_err(a.reversed_hazard(x)),
                    infinite_on_err(b.reversed_hazard(x)),
                ),
                Relation::LR => (ln_density(a, x), ln_density(b, x)),
                Relation::STAR => {
                    let pos_ln = |v: f64| if v > 0.0 { v.ln() } else { f64::NAN };
                    (pos_ln(a.quantile(x)?), pos_ln(b.quantile(x)?))
                }
                Relation::DISP => (a.quantile(x)?, b.quantile(x)?),
                Relation::LORENZ => {
                    let (ma, mb) = means.expect("means computed");
                    (lorenz_value(a, ma, x, &q)?, lorenz_value(b, mb, x, &q)?)
                }
                Relation::RS => (
                    a.integrated_sf(a.quantile(x)?, &q)?,
                    b.integrated_sf(b.quantile(x)?, &q)?,
                ),
            };
            Ok(ProbedPoint { x, lhs, rhs })
        })
        .collect()
}

/// Decides `relation` between A and B on the configured grid.
pub fn check_order(
    a: &dyn Distribution,
    b: &dyn Distribution,
    relation: Relation,
    cfg: &GridConfig,
) -> Result<OrderVerdict> {
    let points = probe_relation(a, b, relation, cfg)?;
    Ok(classify_relation(relation, &points, cfg))
}

fn classify_relation(relation: Relation, points: &[ProbedPoint], cfg: &GridConfig) -> OrderVerdict {
    let slack = cfg.slack();
    let mut witnesses = Vec::new();
    let (usable, up, down);
    if relation.is_monotone() {
        let diffs: Vec<(f64, f64)> = points
            .iter()
            .map(|p| (p.x, p.rhs - p.lhs))
            .filter(|(_, v)| !v.is_nan())
            .collect();
        let values: Vec<f64> = diffs.iter().map(|d| d.1).collect();
        let scan = scan_steps(&values, &slack);
        usable = scan.usable;
        up = scan.strongest_up.is_some();
        down = scan.strongest_down.is_some();
        for (entry, sign) in [(scan.strongest_up, 1i8), (scan.strongest_down, -1i8)] {
            if let Some((i, strength)) = entry {
                witnesses.push(Witness {
                    x: diffs[i].0,
                    lhs: diffs[i].1,
                    rhs: diffs[i + 1].1,
                    sign,
                    strength,
                });
            }
        }
    } else {
        let mut best: [Option<Witness>; 2] = [None, None];
        let mut count = 0;
        for p in points {
            // hazard order runs opposite to the hazard values themselves
            let step = if relation == Relation::HR {
                slack.compare(p.rhs, p.lhs)
            } else {
                slack.compare(p.lhs, p.rhs)
            };
            let Some(step) = step else { continue };
            count += 1;
            if step.sign == 0 {
                continue;
            }
            let slot = &mut best[usize::from(step.sign < 0)];
            if slot.map_or(true, |w| step.strength > w.strength) {
                *slot = Some(Witness {
                    x: p.x,
                    lhs: p.lhs,
                    rhs: p.rhs,
                    sign: step.sign,
                    strength: step.strength,
                });
            }
        }
        usable = count;
        up = best[0].is_some();
        down = best[1].is_some();
        witnesses.extend(best.into_iter().flatten());
    }
    witnesses.sort_by(|a, b| a.x.total_cmp(&b.x));
    let outcome = if usable < MIN_USABLE {
        witnesses.clear();
        Outcome::Inconclusive
    } else {
        match (up, down) {
            (false, false) => Outcome::Equal,
            (true, false) => Outcome::HoldsForward,
            (false, true) => Outcome::HoldsBackward,
            (true, true) => Outcome::Incomparable,
        }
    };
    OrderVerdict {
        relation,
        outcome,
        witnesses,
        probe: *cfg,
    }
}

/// Ratio checked by [`saunders_derivative_criterion`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SaundersMode {
    /// `∂F/∂λ* / (x f)`
    Star,
    /// `∂F/∂λ* / f`
    Disp,
}

/// Relative central-difference step in the curve parameter.
pub const DEFAULT_STEP: f64 = 1e-5;

/// `λ* ↦ n₁r₁ F((x − σ)(1 − λ*)) + n₂r₂ F((x − σ)λ*)`, the two-scale curve
/// whose parameter trades the reciprocal scales against each other.
pub fn scale_pair_curve(
    baseline: BaselineDistribution,
    first_mass: f64,
    location: f64,
) -> impl Fn(f64) -> Result<MixtureModel> + Sync {
    move |s: f64| {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::Domain(format!(
                "curve parameter must lie in (0,1), got {s}"
            )));
        }
        crate::mixture::build_mixture(
            baseline.clone(),
            [
                ComponentGroup::new(1, first_mass, location, 1.0 / (1.0 - s)),
                ComponentGroup::new(1, 1.0 - first_mass, location, 1.0 / s),
            ],
        )
    }
}

struct CurvePoint {
    center: MixtureModel,
    plus: MixtureModel,
    minus: MixtureModel,
    half_width: f64,
}

fn curve_point<C>(curve: &C, at: f64, step_rel: f64) -> Result<CurvePoint>
where
    C: Fn(f64) -> Result<MixtureModel>,
{
    let h = step_rel * if at == 0.0 { 1.0 } else { at.abs() };
    let center = curve(at)?;
    let (plus, minus) = (curve(at + h)?, curve(at - h)?);
    for m in [&center, &plus, &minus] {
        m.ensure_proper()?;
    }
    Ok(CurvePoint {
        center,
        plus,
        minus,
        half_width: h,
    })
}

fn probe_points(center: &MixtureModel, cfg: &GridConfig) -> Result<Vec<f64>> {
    cfg.p_grid().iter().map(|&p| center.quantile(p)).collect()
}

/// Monotonicity of `∂F_λ*(x)/∂λ*` over `x f` (star) or `f` (disp) on the
/// center model's quantile grid.
pub fn saunders_derivative_criterion<C>(
    curve: C,
    at: f64,
    mode: SaundersMode,
    cfg: &GridConfig,
    step_rel: f64,
) -> Result<MonotoneVerdict>
where
    C: Fn(f64) -> Result<MixtureModel>,
{
    cfg.validate()?;
    let cp = curve_point(&curve, at, step_rel)?;
    let xs = probe_points(&cp.center, cfg)?;
    let points: Vec<(f64, f64)> = xs
        .par_iter()
        .map(|&x| {
            // difference whichever of cdf/sf is smaller to limit cancellation
            let d = if cp.center.sf(x) < 0.5 {
                -(cp.plus.sf(x) - cp.minus.sf(x))
            } else {
                cp.plus.cdf(x) - cp.minus.cdf(x)
            } / (2.0 * cp.half_width);
            let f = cp.center.pdf(x);
            let denom = match mode {
                SaundersMode::Star => x * f,
                SaundersMode::Disp => f,
            };
            let v = if f > UNDERFLOW && denom > 0.0 {
                d / denom
            } else {
                f64::NAN
            };
            (x, v)
        })
        .collect();
    Ok(classify_points(&points, cfg.slack(), MIN_USABLE))
}

/// Monotonicity of `W'_λ*(x) / sf(x)`, where `W'` is the parameter derivative
/// of the integrated survival function.
pub fn rs_derivative_criterion<C>(
    curve: C,
    at: f64,
    cfg: &GridConfig,
    step_rel: f64,
) -> Result<MonotoneVerdict>
where
    C: Fn(f64) -> Result<MixtureModel>,
{
    cfg.validate()?;
    let cp = curve_point(&curve, at, step_rel)?;
    let xs = probe_points(&cp.center, cfg)?;
    let q = cfg.quad();
    let two_h = 2.0 * cp.half_width;
    let top = cp.plus.tail_start().max(cp.minus.tail_start());
    let tail_diff = (cp.plus.analytic_tail(top)? - cp.minus.analytic_tail(top)?) / two_h;
    let mut cuts: Vec<f64> = cp.plus.cuts().to_vec();
    cuts.extend_from_slice(cp.minus.cuts());
    let points: Vec<(f64, f64)> = xs
        .par_iter()
        .map(|&x| {
            let body = integrate(
                |u| (cp.plus.sf(u) - cp.minus.sf(u)) / two_h,
                x,
                top,
                &cuts,
                &q,
            );
            let sf = cp.center.sf(x);
            let v = if sf > UNDERFLOW {
                (body.value + tail_diff) / sf
            } else {
                f64::NAN
            };
            (x, v)
        })
        .collect();
    Ok(classify_points(&points, cfg.slack(), MIN_USABLE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixture::build_mixture;
    use crate::monotone::MonotoneClass;

    fn exp_scale(s: f64) -> MixtureModel {
        MixtureModel::location_scale(BaselineDistribution::exponential(), 0.0, s).unwrap()
    }

    fn small() -> GridConfig {
        GridConfig {
            n_points: 401,
            ..GridConfig::default()
        }
    }

    fn outcome(a: &dyn Distribution, b: &dyn Distribution, r: Relation) -> Outcome {
        check_order(a, b, r, &small()).unwrap().outcome
    }

    #[test]
    fn exponential_scale_pair() {
        let (a, b) = (exp_scale(1.0), exp_scale(2.0));
        for r in [
            Relation::ST,
            Relation::HR,
            Relation::RH,
            Relation::LR,
            Relation::DISP,
            Relation::RS,
        ] {
            assert_eq!(outcome(&a, &b, r), Outcome::HoldsForward, "{r:?}");
            assert_eq!(outcome(&b, &a, r), Outcome::HoldsBackward, "{r:?}");
        }
        assert_eq!(outcome(&a, &b, Relation::LORENZ), Outcome::Equal);
        assert_eq!(outcome(&a, &b, Relation::STAR), Outcome::Equal);
    }

    #[test]
    fn weibull_is_star_smaller_than_exponential() {
        let w = BaselineDistribution::weibull(2.0).unwrap();
        let e = BaselineDistribution::exponential();
        assert_eq!(outcome(&w, &e, Relation::STAR), Outcome::HoldsForward);
        assert_eq!(outcome(&w, &e, Relation::LORENZ), Outcome::HoldsForward);
    }

    #[test]
    fn identical_inputs_are_equal() {
        let u = build_mixture(
            BaselineDistribution::weibull(2.0).unwrap(),
            [
                ComponentGroup::new(3, 0.17, 6.0, 2.0),
                ComponentGroup::new(2, 0.245, 8.0, 4.0),
            ],
        )
        .unwrap();
        for r in Relation::ALL {
            let v = check_order(&u, &u, r, &small()).unwrap();
            assert_eq!(v.outcome, Outcome::Equal, "{r:?}");
            assert!(v.witnesses.is_empty());
        }
    }

    #[test]
    fn weibull_crossing_is_incomparable() {
        let w = BaselineDistribution::weibull(2.0).unwrap();
        let u = build_mixture(
            w.clone(),
            [
                ComponentGroup::new(3, 0.17, 6.0, 2.0),
                ComponentGroup::new(2, 0.245, 8.0, 4.0),
            ],
        )
        .unwrap();
        let v = build_mixture(
            w,
            [
                ComponentGroup::new(3, 0.17, 4.0, 2.0),
                ComponentGroup::new(2, 0.245, 12.0, 4.0),
            ],
        )
        .unwrap();
        let verdict = check_order(&u, &v, Relation::ST, &GridConfig::default()).unwrap();
        assert_eq!(verdict.outcome, Outcome::Incomparable);
        let back = verdict.strongest(-1).unwrap();
        let fwd = verdict.strongest(1).unwrap();
        // sf_U > sf_V early (F_V > F_U), sf_U < sf_V late
        assert!((back.x - 6.543).abs() < 0.15, "{back:?}");
        assert!((fwd.x - 13.087).abs() < 0.3, "{fwd:?}");
    }

    #[test]
    fn swap_mirrors_verdicts() {
        let (a, b) = (exp_scale(1.0), exp_scale(2.0));
        for r in Relation::ALL {
            let f = check_order(&a, &b, r, &small()).unwrap();
            let g = check_order(&b, &a, r, &small()).unwrap();
            assert_eq!(f.outcome.reversed(), g.outcome, "{r:?}");
            assert_eq!(f.witnesses.len(), g.witnesses.len());
        }
    }

    #[test]
    fn grid_and_errors() {
        let bad = GridConfig {
            n_points: 10,
            ..GridConfig::default()
        };
        assert!(check_order(&exp_scale(1.0), &exp_scale(2.0), Relation::ST, &bad).is_err());
        let improper = build_mixture(
            BaselineDistribution::power(3.0, 2.0).unwrap(),
            [
                ComponentGroup::new(3, 0.1, 4.0, 12.0),
                ComponentGroup::new(2, 0.35, 2.0, 8.0),
            ],
        )
        .unwrap();
        assert!(matches!(
            check_order(&improper, &exp_scale(1.0), Relation::ST, &small()),
            Err(Error::ImproperModel(_))
        ));
        let heavy = BaselineDistribution::frechet(0.8).unwrap();
        assert!(matches!(
            check_order(&heavy, &exp_scale(1.0), Relation::LORENZ, &small()),
            Err(Error::Divergent(_))
        ));
    }

    #[test]
    fn witness_json_has_three_fields() {
        let w = Witness {
            x: 1.0,
            lhs: 2.0,
            rhs: 3.0,
            sign: 1,
            strength: 5.0,
        };
        assert_eq!(
            serde_json::to_string(&w).unwrap(),
            r#"{"x":1.0,"lhs":2.0,"rhs":3.0}"#
        );
    }

    #[test]
    fn derivative_criteria_on_degenerate_curve() {
        let flat = |_: f64| Ok(exp_scale(1.0));
        let cfg = small();
        let v = saunders_derivative_criterion(flat, 0.5, SaundersMode::Star, &cfg, DEFAULT_STEP)
            .unwrap();
        assert_eq!(v.classification, MonotoneClass::Constant);
        let v = rs_derivative_criterion(flat, 0.5, &cfg, DEFAULT_STEP).unwrap();
        assert_eq!(v.classification, MonotoneClass::Constant);
    }

    #[test]
    fn saunders_criterion_on_scale_pair_curve() {
        let cfg = small();
        for mode in [SaundersMode::Star, SaundersMode::Disp] {
            let curve = scale_pair_curve(BaselineDistribution::exponential(), 0.6, 1.0);
            let v = saunders_derivative_criterion(curve, 0.8, mode, &cfg, DEFAULT_STEP).unwrap();
            assert_eq!(v.classification, MonotoneClass::Decreasing, "{mode:?}");
        }
    }

    #[test]
    fn rs_criterion_on_scale_pair_curve() {
        // independent closed-form evaluation gives a decreasing ratio at 0.4
        // and an increasing one at 0.7
        let cfg = small();
        let curve = || scale_pair_curve(BaselineDistribution::exponential(), 0.4, 1.0);
        let v = rs_derivative_criterion(curve(), 0.4, &cfg, DEFAULT_STEP).unwrap();
        assert_eq!(v.classification, MonotoneClass::Decreasing);
        let v = rs_derivative_criterion(curve(), 0.7, &cfg, DEFAULT_STEP).unwrap();
        assert_eq!(v.classification, MonotoneClass::Increasing);
        let skewed = scale_pair_curve(BaselineDistribution::exponential(), 0.9, 1.0);
        let v = rs_derivative_criterion(skewed, 0.4, &cfg, DEFAULT_STEP).unwrap();
        assert_eq!(v.classification, MonotoneClass::NonMonotone);
    }
}
