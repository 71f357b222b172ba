//! Parametric baseline lifetime distributions and aging classification.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma, gamma_ur};

use crate::error::{Error, Result};
use crate::monotone::{classify_points, MonotoneVerdict, Slack};
use crate::quad::{integrate, QuadConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Exponential,
    Weibull,
    Frechet,
    Power,
}

impl Family {
    pub fn param_count(self) -> usize {
        match self {
            Family::Exponential => 0,
            Family::Weibull | Family::Frechet => 1,
            Family::Power => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Exponential => "exponential",
            Family::Weibull => "weibull",
            Family::Frechet => "frechet",
            Family::Power => "power",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exponential" | "exp" => Ok(Family::Exponential),
            "weibull" => Ok(Family::Weibull),
            "frechet" | "fréchet" => Ok(Family::Frechet),
            "power" => Ok(Family::Power),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// Quantity evaluated by [`BaselineDistribution::eval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Functional {
    Pdf,
    Cdf,
    Sf,
    Quantile,
    Hazard,
    ReversedHazard,
    LogDensitySlope,
}

impl FromStr for Functional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "pdf" => Functional::Pdf,
            "cdf" => Functional::Cdf,
            "sf" => Functional::Sf,
            "quantile" => Functional::Quantile,
            "hazard" => Functional::Hazard,
            "reversed_hazard" | "reversed-hazard" => Functional::ReversedHazard,
            "log_density_slope" | "log-density-slope" => Functional::LogDensitySlope,
            other => return Err(Error::Usage(format!("unknown functional `{other}`"))),
        })
    }
}

/// Aging notion checked by [`classify_monotone_aging`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AgingNotion {
    /// failure rate h(t)
    FR,
    /// reversed failure rate f(t)/F(t)
    RFR,
    /// proportional failure rate t h(t)
    PFR,
    /// proportional reversed failure rate t f(t)/F(t)
    PRFR,
    /// proportional likelihood ratio -t f'(t)/f(t)
    PLR,
    /// log-density slope f'(t)/f(t)
    LR,
}

impl FromStr for AgingNotion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "FR" => AgingNotion::FR,
            "RFR" => AgingNotion::RFR,
            "PFR" => AgingNotion::PFR,
            "PRFR" => AgingNotion::PRFR,
            "PLR" => AgingNotion::PLR,
            "LR" => AgingNotion::LR,
            _ => return Err(Error::Usage(format!("unknown aging notion `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Exponential,
    Weibull { shape: f64 },
    Frechet { shape: f64 },
    Power { shape: f64, upper: f64 },
}

#[derive(Serialize, Deserialize)]
struct BaselineSpec {
    family: Family,
    #[serde(default)]
    params: Vec<f64>,
}

/// A validated baseline distribution on `[0, support_hi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BaselineSpec", into = "BaselineSpec")]
pub struct BaselineDistribution {
    family: Family,
    params: Vec<f64>,
    kind: Kind,
}

impl TryFrom<BaselineSpec> for BaselineDistribution {
    type Error = Error;

    fn try_from(spec: BaselineSpec) -> Result<Self> {
        make_baseline(spec.family, &spec.params)
    }
}

impl From<BaselineDistribution> for BaselineSpec {
    fn from(b: BaselineDistribution) -> Self {
        BaselineSpec {
            family: b.family,
            params: b.params,
        }
    }
}

/// Validates parameters and builds a baseline.
pub fn make_baseline(family: Family, params: &[f64]) -> Result<BaselineDistribution> {
    if params.len() != family.param_count() {
        return Err(Error::InvalidParameter(format!(
            "{family} takes {} parameter(s), got {}",
            family.param_count(),
            params.len()
        )));
    }
    if let Some(bad) = params.iter().find(|p| !(p.is_finite() && **p > 0.0)) {
        return Err(Error::InvalidParameter(format!(
            "{family} parameters must be finite and positive, got {bad}"
        )));
    }
    let kind = match family {
        Family::Exponential => Kind::Exponential,
        Family::Weibull => Kind::Weibull { shape: params[0] },
        Family::Frechet => Kind::Frechet { shape: params[0] },
        Family::Power => Kind::Power {
            shape: params[0],
            upper: params[1],
        },
    };
    Ok(BaselineDistribution {
        family,
        params: params.to_vec(),
        kind,
    })
}

impl BaselineDistribution {
    pub fn exponential() -> Self {
        make_baseline(Family::Exponential, &[]).expect("valid")
    }

    pub fn weibull(shape: f64) -> Result<Self> {
        make_baseline(Family::Weibull, &[shape])
    }

    pub fn frechet(shape: f64) -> Result<Self> {
        make_baseline(Family::Frechet, &[shape])
    }

    pub fn power(shape: f64, upper: f64) -> Result<Self> {
        make_baseline(Family::Power, &[shape, upper])
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn support_lo(&self) -> f64 {
        0.0
    }

    pub fn support_hi(&self) -> f64 {
        match self.kind {
            Kind::Power { upper, .. } => upper,
            _ => f64::INFINITY,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.support_hi().is_finite()
    }

    fn inside(&self, t: f64) -> bool {
        t > 0.0 && t < self.support_hi()
    }

    pub fn pdf(&self, t: f64) -> f64 {
        if !self.inside(t) {
            return 0.0;
        }
        self.density_formula(t)
    }

    /// The closed-form density expression for any `t > 0`, ignoring the upper
    /// support bound. Used to probe properness of shifted/scaled mixtures.
    pub fn density_formula(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match self.kind {
            Kind::Exponential => (-t).exp(),
            Kind::Weibull { shape: a } => {
                let u = t.powf(a);
                a * u / t * (-u).exp()
            }
            Kind::Frechet { shape: a } => {
                let u = t.powf(-a);
                a * u / t * (-u).exp()
            }
            Kind::Power { shape: a, upper: b } => a * t.powf(a - 1.0) / b.powf(a),
        }
    }

    pub fn cdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match self.kind {
            Kind::Exponential => -(-t).exp_m1(),
            Kind::Weibull { shape: a } => -(-t.powf(a)).exp_m1(),
            Kind::Frechet { shape: a } => (-t.powf(-a)).exp(),
            Kind::Power { shape: a, upper: b } => {
                if t >= b {
                    1.0
                } else {
                    (t / b).powf(a)
                }
            }
        }
    }

    pub fn sf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 1.0;
        }
        match self.kind {
            Kind::Exponential => (-t).exp(),
            Kind::Weibull { shape: a } => (-t.powf(a)).exp(),
            Kind::Frechet { shape: a } => -(-t.powf(-a)).exp_m1(),
            Kind::Power { .. } => 1.0 - self.cdf(t),
        }
    }

    pub fn log_sf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match self.kind {
            Kind::Exponential => -t,
            Kind::Weibull { shape: a } => -t.powf(a),
            Kind::Frechet { shape: a } => (-(-t.powf(-a)).exp_m1()).ln(),
            Kind::Power { shape: a, upper: b } => {
                if t >= b {
                    f64::NEG_INFINITY
                } else {
                    (-(t / b).powf(a)).ln_1p()
                }
            }
        }
    }

    pub fn log_cdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return f64::NEG_INFINITY;
        }
        match self.kind {
            Kind::Exponential => (-(-t).exp_m1()).ln(),
            Kind::Weibull { shape: a } => (-(-t.powf(a)).exp_m1()).ln(),
            Kind::Frechet { shape: a } => -t.powf(-a),
            Kind::Power { shape: a, upper: b } => {
                if t >= b {
                    0.0
                } else {
                    a * (t / b).ln()
                }
            }
        }
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!("quantile needs p in (0,1), got {p}")));
        }
        Ok(match self.kind {
            Kind::Exponential => -(-p).ln_1p(),
            Kind::Weibull { shape: a } => (-(-p).ln_1p()).powf(1.0 / a),
            Kind::Frechet { shape: a } => (-p.ln()).powf(-1.0 / a),
            Kind::Power { shape: a, upper: b } => b * p.powf(1.0 / a),
        })
    }

    /// f/F̄, from closed forms; zero below the support.
    pub fn hazard(&self, t: f64) -> Result<f64> {
        if t >= self.support_hi() {
            return Err(Error::Domain(format!(
                "hazard undefined where sf = 0 (t = {t})"
            )));
        }
        if t <= 0.0 {
            return Ok(0.0);
        }
        Ok(match self.kind {
            Kind::Exponential => 1.0,
            Kind::Weibull { shape: a } => a * t.powf(a - 1.0),
            Kind::Frechet { shape: a } => {
                let u = t.powf(-a);
                a * u / t / u.exp_m1()
            }
            Kind::Power { shape: a, upper: b } => a * t.powf(a - 1.0) / (b.powf(a) - t.powf(a)),
        })
    }

    /// f/F, from closed forms; zero above the support.
    pub fn reversed_hazard(&self, t: f64) -> Result<f64> {
        if t <= 0.0 {
            return Err(Error::Domain(format!(
                "reversed hazard undefined where cdf = 0 (t = {t})"
            )));
        }
        if t >= self.support_hi() {
            return Ok(0.0);
        }
        Ok(match self.kind {
            Kind::Exponential => 1.0 / t.exp_m1(),
            Kind::Weibull { shape: a } => {
                let u = t.powf(a);
                a * u / t / u.exp_m1()
            }
            Kind::Frechet { shape: a } => a * t.powf(-a) / t,
            Kind::Power { shape: a, .. } => a / t,
        })
    }

    /// f'/f from closed forms, defined on the open support.
    pub fn log_density_slope(&self, t: f64) -> Result<f64> {
        if !self.inside(t) {
            return Err(Error::Domain(format!(
                "log-density slope needs t inside the support, got {t}"
            )));
        }
        Ok(match self.kind {
            Kind::Exponential => -1.0,
            Kind::Weibull { shape: a } => (a - 1.0) / t - a * t.powf(a - 1.0),
            Kind::Frechet { shape: a } => (-(a + 1.0) + a * t.powf(-a)) / t,
            Kind::Power { shape: a, .. } => (a - 1.0) / t,
        })
    }

    pub fn eval(&self, functional: Functional, point: f64) -> Result<f64> {
        match functional {
            Functional::Pdf => Ok(self.pdf(point)),
            Functional::Cdf => Ok(self.cdf(point)),
            Functional::Sf => Ok(self.sf(point)),
            Functional::Quantile => self.quantile(point),
            Functional::Hazard => self.hazard(point),
            Functional::ReversedHazard => self.reversed_hazard(point),
            Functional::LogDensitySlope => self.log_density_slope(point),
        }
    }

    /// `∫_t^∞ sf(s) ds`.
    pub fn tail_integral(&self, t: f64) -> Result<f64> {
        if t < 0.0 {
            return Ok(self.tail_integral(0.0)? - t);
        }
        match self.kind {
            Kind::Exponential => Ok((-t).exp()),
            Kind::Weibull { shape: a } => {
                let s = 1.0 / a;
                if t == 0.0 {
                    return Ok(gamma(1.0 + s));
                }
                Ok(s * gamma(s) * gamma_ur(s, t.powf(a)))
            }
            Kind::Frechet { shape: a } => {
                if a <= 1.0 {
                    return Err(Error::Divergent(format!(
                        "frechet shape {a} <= 1 has infinite mean"
                    )));
                }
                let y = if t > 0.0 { t.powf(-a) } else { f64::INFINITY };
                if y <= 1.0 {
                    Ok(frechet_tail_series(t, a, y))
                } else {
                    let head = integrate(|s| self.sf(s), 0.0, t, &[], &QuadConfig::default());
                    Ok(gamma(1.0 - 1.0 / a) - head.value)
                }
            }
            Kind::Power { shape: a, upper: b } => {
                if t >= b {
                    return Ok(0.0);
                }
                Ok((b - t) - b / (a + 1.0) * (1.0 - (t / b).powf(a + 1.0)))
            }
        }
    }

    pub fn mean(&self) -> Result<f64> {
        self.tail_integral(0.0)
    }
}

/// `∫_t^∞ (1 - exp(-s^-a)) ds` for `y = t^-a <= 1`, by termwise integration of
/// the exponential series.
fn frechet_tail_series(t: f64, a: f64, y: f64) -> f64 {
    let mut sum = 0.0;
    let mut yk_over_fact = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        yk_over_fact *= y / kf;
        let term = yk_over_fact / (kf * a - 1.0);
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-17 * sum.abs() {
            break;
        }
    }
    t * sum
}

/// Probe interval and resolution for grid-based aging checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub slack: Slack,
}

impl Probe {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            points: 512,
            slack: Slack::default(),
        }
    }

    /// The baseline's quantile range `[Q(p_lo), Q(p_hi)]`.
    pub fn quantile_range(baseline: &BaselineDistribution, p_lo: f64, p_hi: f64) -> Result<Self> {
        Ok(Self::new(
            baseline.quantile(p_lo)?,
            baseline.quantile(p_hi)?,
        ))
    }

    fn validate(&self, baseline: &BaselineDistribution) -> Result<()> {
        if self.points < 16 {
            return Err(Error::InvalidParameter(format!(
                "probe needs at least 16 points, got {}",
                self.points
            )));
        }
        if !(self.lo < self.hi) || !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "degenerate probe interval ({}, {})",
                self.lo, self.hi
            )));
        }
        if self.lo <= baseline.support_lo() || self.hi >= baseline.support_hi() {
            return Err(Error::Domain(format!(
                "probe interval ({}, {}) not strictly inside the support ({}, {})",
                self.lo,
                self.hi,
                baseline.support_lo(),
                baseline.support_hi()
            )));
        }
        Ok(())
    }

    /// Log-spaced grid from `lo` to `hi` inclusive.
    pub fn grid(&self) -> Vec<f64> {
        let (l0, l1) = (self.lo.ln(), self.hi.ln());
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| match i {
                0 => self.lo,
                i if i == self.points - 1 => self.hi,
                i => (l0 + (l1 - l0) * i as f64 / last).exp(),
            })
            .collect()
    }
}

fn notion_value(b: &BaselineDistribution, notion: AgingNotion, t: f64) -> f64 {
    let v = match notion {
        AgingNotion::FR => b.hazard(t),
        AgingNotion::RFR => b.reversed_hazard(t),
        AgingNotion::PFR => b.hazard(t).map(|h| t * h),
        AgingNotion::PRFR => b.reversed_hazard(t).map(|h| t * h),
        AgingNotion::PLR => b.log_density_slope(t).map(|s| -t * s),
        AgingNotion::LR => b.log_density_slope(t),
    };
    // non-finite values (overflow at extreme t) are skipped by the classifier
    v.ok().filter(|x| x.is_finite()).unwrap_or(f64::NAN)
}

/// Grid-based monotonicity of the notion's defining function on the probe.
pub fn classify_monotone_aging(
    baseline: &BaselineDistribution,
    notion: AgingNotion,
    probe: &Probe,
) -> Result<MonotoneVerdict> {
    probe.validate(baseline)?;
    let points: Vec<(f64, f64)> = probe
        .grid()
        .into_iter()
        .map(|t| (t, notion_value(baseline, notion, t)))
        .collect();
    Ok(classify_points(&points, probe.slack, 2))
}

/// Grid-based monotonicity of the density itself. A nonincreasing density on
/// `[0, ∞)` is equivalent to a concave cdf.
pub fn classify_density(baseline: &BaselineDistribution, probe: &Probe) -> Result<MonotoneVerdict> {
    probe.validate(baseline)?;
    let points: Vec<(f64, f64)> = probe
        .grid()
        .into_iter()
        .map(|t| (t, baseline.pdf(t)))
        .collect();
    Ok(classify_points(&points, probe.slack, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monotone::MonotoneClass;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn construction_and_validation() {
        let w = make_baseline(Family::Weibull, &[2.0]).unwrap();
        assert_eq!(w.support_hi(), f64::INFINITY);
        let p = make_baseline(Family::Power, &[3.0, 2.0]).unwrap();
        assert_eq!(p.support_hi(), 2.0);
        assert!(make_baseline(Family::Weibull, &[-1.0]).is_err());
        assert!(make_baseline(Family::Power, &[3.0]).is_err());
        assert!(make_baseline(Family::Exponential, &[1.0]).is_err());
        assert!(matches!(
            "gamma".parse::<Family>(),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn spec_evaluations() {
        let w = BaselineDistribution::weibull(2.0).unwrap();
        assert!(close(w.cdf(1.0), 1.0 - (-1.0f64).exp(), 1e-15));
        let f = BaselineDistribution::frechet(3.0).unwrap();
        assert!(close(f.cdf(1.0), (-1.0f64).exp(), 1e-15));
        let p = BaselineDistribution::power(3.0, 2.0).unwrap();
        assert_eq!(p.cdf(2.0), 1.0);
        let q = w.quantile(0.632121).unwrap();
        assert!(close(w.cdf(q), 0.632121, 1e-12));
        assert!(close(w.quantile(1.0 - (-1.0f64).exp()).unwrap(), 1.0, 1e-9));
    }

    #[test]
    fn domain_errors() {
        let p = BaselineDistribution::power(3.0, 2.0).unwrap();
        assert!(p.hazard(2.0).is_err());
        assert!(p.reversed_hazard(0.0).is_err());
        assert!(p.quantile(1.0).is_err());
        assert!(p.quantile(0.0).is_err());
        assert!(p.log_density_slope(-1.0).is_err());
        assert_eq!(p.hazard(-1.0).unwrap(), 0.0);
    }

    #[test]
    fn hazard_identities() {
        let all = [
            BaselineDistribution::exponential(),
            BaselineDistribution::weibull(0.7).unwrap(),
            BaselineDistribution::weibull(2.0).unwrap(),
            BaselineDistribution::frechet(3.0).unwrap(),
            BaselineDistribution::power(3.0, 2.0).unwrap(),
        ];
        for b in &all {
            for &t in &[0.05, 0.3, 1.0, 1.7, 3.0] {
                if t >= b.support_hi() {
                    continue;
                }
                let pdf = b.pdf(t);
                let h = b.hazard(t).unwrap() * b.sf(t);
                let r = b.reversed_hazard(t).unwrap() * b.cdf(t);
                assert!((h - pdf).abs() <= 1e-12 * pdf.max(1e-300), "{b:?} {t}");
                assert!((r - pdf).abs() <= 1e-12 * pdf.max(1e-300), "{b:?} {t}");
                assert!((b.sf(t) + b.cdf(t) - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn tail_integrals_match_quadrature() {
        let all = [
            BaselineDistribution::exponential(),
            BaselineDistribution::weibull(0.7).unwrap(),
            BaselineDistribution::weibull(2.0).unwrap(),
            BaselineDistribution::frechet(3.0).unwrap(),
            BaselineDistribution::power(3.0, 2.0).unwrap(),
        ];
        for b in &all {
            for &t in &[0.0, 0.4, 1.0, 1.5] {
                let hi = if b.is_bounded() { b.support_hi() } else { 1e4 };
                let q = integrate(
                    |s| b.sf(s),
                    t,
                    hi,
                    &[1.0, 3.0, 10.0, 30.0, 100.0, 1e3],
                    &QuadConfig::default(),
                )
                .value;
                // Fréchet α=3 loses ~ hi^-2 / 2 beyond the cutoff
                let rest = if b.family() == Family::Frechet {
                    0.5 * hi.powi(-2)
                } else {
                    0.0
                };
                let exact = b.tail_integral(t).unwrap();
                assert!(
                    (q + rest - exact).abs() < 1e-8,
                    "{b:?} t={t}: {q} vs {exact}"
                );
            }
        }
        assert!(close(
            BaselineDistribution::exponential()
                .tail_integral(-2.0)
                .unwrap(),
            3.0,
            1e-15
        ));
        assert!(BaselineDistribution::frechet(1.0).unwrap().mean().is_err());
    }

    #[test]
    fn aging_examples() {
        let w = BaselineDistribution::weibull(2.0).unwrap();
        let f = BaselineDistribution::frechet(3.0).unwrap();
        let probe = Probe::new(0.01, 20.0);
        let class = |b, n| {
            classify_monotone_aging(b, n, &probe)
                .unwrap()
                .classification
        };
        assert_eq!(class(&w, AgingNotion::PLR), MonotoneClass::Increasing);
        assert_eq!(class(&w, AgingNotion::FR), MonotoneClass::Increasing);
        assert_eq!(class(&w, AgingNotion::PRFR), MonotoneClass::Decreasing);
        assert_eq!(class(&f, AgingNotion::PRFR), MonotoneClass::Decreasing);
        let e = BaselineDistribution::exponential();
        assert_eq!(class(&e, AgingNotion::FR), MonotoneClass::Constant);
        let v = classify_monotone_aging(&f, AgingNotion::FR, &probe).unwrap();
        assert_eq!(v.classification, MonotoneClass::NonMonotone);
        let (t1, t2) = v.witness.unwrap();
        assert!(0.01 <= t1 && t1 < t2 && t2 <= 20.0);
    }

    #[test]
    fn probe_validation() {
        let p = BaselineDistribution::power(3.0, 2.0).unwrap();
        let w = BaselineDistribution::weibull(2.0).unwrap();
        assert!(classify_monotone_aging(&p, AgingNotion::FR, &Probe::new(0.1, 3.0)).is_err());
        assert!(classify_monotone_aging(&w, AgingNotion::FR, &Probe::new(1.0, 1.0)).is_err());
        let mut few = Probe::new(0.1, 1.0);
        few.points = 8;
        assert!(classify_monotone_aging(&w, AgingNotion::FR, &few).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let p = BaselineDistribution::power(3.0, 2.0).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"family":"power","params":[3.0,2.0]}"#);
        let back: BaselineDistribution = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<BaselineDistribution>(
            r#"{"family":"weibull","params":[0]}"#
        )
        .is_err());
        let e: BaselineDistribution = serde_json::from_str(r#"{"family":"exponential"}"#).unwrap();
        assert_eq!(e.family(), Family::Exponential);
    }
}
