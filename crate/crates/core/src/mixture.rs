//! Two-group multiple-outlier location-scale mixtures.
//!
//! The mixture cdf is `Σ nᵢ rᵢ F((x − σᵢ)/λᵢ)` with each term active only above
//! its own location, so both orderings of the locations are handled alike.

use serde::{Deserialize, Serialize};

use crate::baselines::BaselineDistribution;
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadConfig};

/// Tolerance on `n₁r₁ + n₂r₂ = 1`.
pub const WEIGHT_TOL: f64 = 1e-12;

/// Upper probability at which tail integrals switch from quadrature to closed form.
const TAIL_P: f64 = 1e-10;

/// One homogeneous subpopulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComponentGroup {
    #[serde(rename = "n")]
    pub count: u32,
    #[serde(rename = "r")]
    pub weight: f64,
    #[serde(rename = "sigma")]
    pub location: f64,
    #[serde(rename = "lambda")]
    pub scale: f64,
}

impl ComponentGroup {
    pub fn new(count: u32, weight: f64, location: f64, scale: f64) -> Self {
        Self {
            count,
            weight,
            location,
            scale,
        }
    }

    /// `n r`, the total mixing mass of the group.
    pub fn mass(&self) -> f64 {
        self.count as f64 * self.weight
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 1 {
            return Err(Error::InvalidParameter(
                "group count must be at least 1".into(),
            ));
        }
        if !(self.weight.is_finite() && self.weight >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "mixing weight must be nonnegative, got {}",
                self.weight
            )));
        }
        if !(self.location.is_finite() && self.location >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "location must be nonnegative, got {}",
                self.location
            )));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scale must be positive, got {}",
                self.scale
            )));
        }
        Ok(())
    }

    fn standardize(&self, x: f64) -> f64 {
        (x - self.location) / self.scale
    }
}

/// Outcome of a numerical mass check on the mixture density formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub total_mass: f64,
    pub proper: bool,
    pub diverged: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MixtureFunctional {
    Pdf,
    Cdf,
    Sf,
    Hazard,
    ReversedHazard,
}

impl std::str::FromStr for MixtureFunctional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "pdf" => Self::Pdf,
            "cdf" => Self::Cdf,
            "sf" => Self::Sf,
            "hazard" => Self::Hazard,
            "reversed_hazard" | "reversed-hazard" => Self::ReversedHazard,
            other => {
                return Err(Error::Usage(format!(
                    "unknown mixture functional `{other}`"
                )))
            }
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ModelSpec {
    baseline: BaselineDistribution,
    groups: [ComponentGroup; 2],
}

/// Mixture random variable over a baseline and two component groups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelSpec", into = "ModelSpec")]
pub struct MixtureModel {
    baseline: BaselineDistribution,
    groups: [ComponentGroup; 2],
    support_lo: f64,
    mass_check: ProbeReport,
    /// Quadrature breakpoints: the locations plus a ladder of upper quantiles.
    cuts: Vec<f64>,
    /// Point beyond which tail integrals use the closed form.
    tail_start: f64,
}

impl TryFrom<ModelSpec> for MixtureModel {
    type Error = Error;

    fn try_from(spec: ModelSpec) -> Result<Self> {
        build_mixture(spec.baseline, spec.groups)
    }
}

impl From<MixtureModel> for ModelSpec {
    fn from(m: MixtureModel) -> Self {
        ModelSpec {
            baseline: m.baseline,
            groups: m.groups,
        }
    }
}

/// Validates the groups and weight constraint, then runs the properness probe.
pub fn build_mixture(
    baseline: BaselineDistribution,
    groups: [ComponentGroup; 2],
) -> Result<MixtureModel> {
    for g in &groups {
        g.validate()?;
    }
    let total = groups[0].mass() + groups[1].mass();
    if (total - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::WeightConstraint { total });
    }
    let support_lo = groups[0].location.min(groups[1].location);
    let mut model = MixtureModel {
        baseline,
        groups,
        support_lo,
        mass_check: ProbeReport {
            total_mass: f64::NAN,
            proper: false,
            diverged: false,
            detail: String::new(),
        },
        cuts: Vec::new(),
        tail_start: f64::INFINITY,
    };
    model.init_cuts();
    model.mass_check = model.validate_properness(1e-6);
    Ok(model)
}

impl MixtureModel {
    /// Single location-scale distribution `F((x − σ)/λ)` as a degenerate mixture.
    pub fn location_scale(
        baseline: BaselineDistribution,
        location: f64,
        scale: f64,
    ) -> Result<Self> {
        let g = ComponentGroup::new(1, 0.5, location, scale);
        build_mixture(baseline, [g, g])
    }

    pub fn baseline(&self) -> &BaselineDistribution {
        &self.baseline
    }

    pub fn groups(&self) -> &[ComponentGroup; 2] {
        &self.groups
    }

    pub fn support_lo(&self) -> f64 {
        self.support_lo
    }

    pub fn support_hi(&self) -> f64 {
        let b = self.baseline.support_hi();
        self.groups
            .iter()
            .map(|g| g.location + g.scale * b)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub(crate) fn tail_start(&self) -> f64 {
        self.tail_start
    }

    pub(crate) fn cuts(&self) -> &[f64] {
        &self.cuts
    }

    pub fn mass_check(&self) -> &ProbeReport {
        &self.mass_check
    }

    pub fn is_proper(&self) -> bool {
        self.mass_check.proper
    }

    /// Fails with [`Error::ImproperModel`] unless the cached probe passed.
    pub fn ensure_proper(&self) -> Result<()> {
        if self.mass_check.proper {
            Ok(())
        } else {
            Err(Error::ImproperModel(self.mass_check.detail.clone()))
        }
    }

    fn active(&self) -> impl Iterator<Item = &ComponentGroup> {
        self.groups.iter().filter(|g| g.weight > 0.0)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.active()
            .map(|g| g.mass() * self.baseline.cdf(g.standardize(x)))
            .sum()
    }

    pub fn sf(&self, x: f64) -> f64 {
        self.active()
            .map(|g| g.mass() * self.baseline.sf(g.standardize(x)))
            .sum()
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.active()
            .map(|g| g.mass() / g.scale * self.baseline.pdf(g.standardize(x)))
            .sum()
    }

    /// pdf/sf, computed as a log-weighted average of component hazards so it
    /// stays accurate where sf underflows. Zero at and below `support_lo`.
    pub fn hazard(&self, x: f64) -> Result<f64> {
        let terms = self.active().map(|g| {
            let t = g.standardize(x);
            let rate = if t <= 0.0 {
                0.0
            } else {
                self.baseline.hazard(t).unwrap_or(0.0) / g.scale
            };
            (g.mass().ln() + self.baseline.log_sf(t), rate)
        });
        weighted_mean(terms)
            .ok_or_else(|| Error::Domain(format!("hazard undefined where sf = 0 (x = {x})")))
    }

    /// pdf/cdf via the same log-weighted averaging over active components.
    pub fn reversed_hazard(&self, x: f64) -> Result<f64> {
        let terms = self.active().filter(|g| x > g.location).map(|g| {
            let t = g.standardize(x);
            let rate = self.baseline.reversed_hazard(t).unwrap_or(0.0) / g.scale;
            (g.mass().ln() + self.baseline.log_cdf(t), rate)
        });
        weighted_mean(terms).ok_or_else(|| {
            Error::Domain(format!("reversed hazard undefined where cdf = 0 (x = {x})"))
        })
    }

    pub fn eval(&self, functional: MixtureFunctional, x: f64) -> Result<f64> {
        match functional {
            MixtureFunctional::Pdf => Ok(self.pdf(x)),
            MixtureFunctional::Cdf => Ok(self.cdf(x)),
            MixtureFunctional::Sf => Ok(self.sf(x)),
            MixtureFunctional::Hazard => self.hazard(x),
            MixtureFunctional::ReversedHazard => self.reversed_hazard(x),
        }
    }

    /// Left-continuous inverse of the cdf by bracketed bisection.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!("quantile needs p in (0,1), got {p}")));
        }
        // compare on the sf side in the upper half to keep precision near p = 1
        let below = |x: f64| {
            if p <= 0.5 {
                self.cdf(x) < p
            } else {
                self.sf(x) > 1.0 - p
            }
        };
        let max_scale = self.groups.iter().map(|g| g.scale).fold(0.0, f64::max);
        let mut lo = self.support_lo;
        let mut width = max_scale;
        let mut hi = lo + width;
        while below(hi) {
            lo = hi;
            width *= 2.0;
            hi = lo + width;
            if !hi.is_finite() {
                return Err(Error::Domain(format!(
                    "quantile bracket overflow at p = {p}"
                )));
            }
        }
        loop {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 1e-12 * hi.abs().max(1e-300) || mid <= lo || mid >= hi {
                return Ok(hi);
            }
            if below(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    fn init_cuts(&mut self) {
        let mut cuts: Vec<f64> = self.groups.iter().map(|g| g.location).collect();
        let top = if self.baseline.is_bounded() {
            self.support_hi()
        } else {
            let top = self.quantile(1.0 - TAIL_P).unwrap_or(f64::INFINITY);
            for p in [0.5, 0.9, 0.99, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9] {
                let p = if p < 0.5 { 1.0 - p } else { p };
                if let Ok(q) = self.quantile(p) {
                    cuts.push(q);
                }
            }
            top
        };
        cuts.push(top);
        cuts.retain(|c| c.is_finite());
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        self.cuts = cuts;
        self.tail_start = top;
    }

    /// Closed-form `∫_x^∞ sf` summed over components.
    pub(crate) fn analytic_tail(&self, x: f64) -> Result<f64> {
        let mut total = 0.0;
        for g in self.active() {
            total += g.mass() * g.scale * self.baseline.tail_integral(g.standardize(x))?;
        }
        Ok(total)
    }

    /// `W(x) = ∫_x^∞ sf(u) du`: adaptive quadrature up to the upper `1 − 1e-10`
    /// quantile plus the closed-form remainder.
    pub fn integrated_sf(&self, x: f64) -> Result<f64> {
        self.integrated_sf_with(x, &QuadConfig::default())
    }

    pub fn integrated_sf_with(&self, x: f64, cfg: &QuadConfig) -> Result<f64> {
        self.ensure_proper()?;
        if x < self.support_lo {
            return Ok(self.support_lo - x + self.integrated_sf_with(self.support_lo, cfg)?);
        }
        if x >= self.tail_start {
            return self.analytic_tail(x);
        }
        let body = integrate(|u| self.sf(u), x, self.tail_start, &self.cuts, cfg);
        if !body.converged {
            return Err(Error::Divergent(format!(
                "integrated sf quadrature did not converge at x = {x} (error {:.3e})",
                body.abs_err
            )));
        }
        Ok(body.value + self.analytic_tail(self.tail_start)?)
    }

    pub fn mean(&self) -> Result<f64> {
        self.mean_with(&QuadConfig::default())
    }

    pub fn mean_with(&self, cfg: &QuadConfig) -> Result<f64> {
        Ok(self.support_lo + self.integrated_sf_with(self.support_lo, cfg)?)
    }

    /// `(1/mean) ∫_t^1 Q(p) dp`, via `Q(t)(1 − t) + W(Q(t))`.
    pub fn upper_lorenz(&self, t: f64) -> Result<f64> {
        self.upper_lorenz_with(t, &QuadConfig::default())
    }

    pub fn upper_lorenz_with(&self, t: f64, cfg: &QuadConfig) -> Result<f64> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain(format!(
                "Lorenz curve needs t in [0,1], got {t}"
            )));
        }
        let mean = self.mean_with(cfg)?;
        if !(mean.is_finite() && mean > 0.0) {
            return Err(Error::Divergent(format!("mean is {mean}")));
        }
        if t == 0.0 {
            return Ok(1.0);
        }
        if t == 1.0 {
            return Ok(0.0);
        }
        let q = self.quantile(t)?;
        Ok((q * (1.0 - t) + self.integrated_sf_with(q, cfg)?) / mean)
    }

    /// Integrates the mixture density formula, with each baseline density taken
    /// in closed form beyond its upper bound, and checks the mass against one.
    pub fn validate_properness(&self, tol: f64) -> ProbeReport {
        let b = &self.baseline;
        let density = |x: f64| -> f64 {
            self.active()
                .map(|g| g.mass() / g.scale * b.density_formula(g.standardize(x)))
                .sum()
        };
        let far_t = if b.is_bounded() {
            b.support_hi()
        } else {
            b.quantile(1.0 - 1e-12).unwrap_or(1.0)
        };
        let q_far = self
            .groups
            .iter()
            .map(|g| g.location + g.scale * far_t)
            .fold(f64::NEG_INFINITY, f64::max);
        let lo = self.support_lo;
        let mut breaks: Vec<f64> = self.cuts.clone();
        breaks.extend(self.groups.iter().map(|g| g.location + g.scale * far_t));
        let cfg = QuadConfig::default();
        let mut mass = integrate(density, lo, q_far, &breaks, &cfg).value;

        let mut a = q_far;
        let mut width = (q_far - lo).max(1.0);
        let mut last = 0.0;
        for _ in 0..8 {
            last = integrate(density, a, a + width, &[], &cfg).value;
            mass += last;
            a += width;
            width *= 2.0;
        }
        let diverged = !last.is_finite() || last > tol;
        if !b.is_bounded() {
            mass += self
                .active()
                .map(|g| g.mass() * b.sf(g.standardize(a)))
                .sum::<f64>();
        }
        let proper = !diverged && (mass - 1.0).abs() <= tol;
        let detail = if diverged {
            format!(
                "density formula keeps accumulating mass beyond x = {q_far:.6} (last window added {last:.6e}, running total {mass:.6e}); the same density truncated at each component's upper support bound integrates to 1"
            )
        } else if proper {
            format!("mass {mass:.12} within {tol:e} of 1")
        } else {
            format!("mass {mass:.12} differs from 1 by more than {tol:e}")
        };
        ProbeReport {
            total_mass: mass,
            proper,
            diverged,
            detail,
        }
    }
}

/// `Σ exp(ℓᵢ) vᵢ / Σ exp(ℓᵢ)` for log-weights `ℓᵢ`; `None` if every weight is zero.
fn weighted_mean(terms: impl Iterator<Item = (f64, f64)>) -> Option<f64> {
    let terms: Vec<(f64, f64)> = terms.filter(|(l, _)| *l > f64::NEG_INFINITY).collect();
    let m = terms.iter().map(|t| t.0).fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return None;
    }
    let (mut num, mut den) = (0.0, 0.0);
    for (l, v) in terms {
        let w = (l - m).exp();
        num += w * v;
        den += w;
    }
    Some(num / den)
}
