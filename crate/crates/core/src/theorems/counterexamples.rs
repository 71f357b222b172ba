use serde::{Deserialize, Serialize};

use crate::baselines::BaselineDistribution;
use crate::error::{Error, Result};
use crate::majorization::{compare_vectors, expand, MajorizationMode, MajorizationVerdict};
use crate::mixture::{build_mixture, ComponentGroup, MixtureModel, ProbeReport};
use crate::orders::{check_order, GridConfig, OrderVerdict, Relation};

use super::Scenario;

const CURVE_POINTS: usize = 501;
const CURVE_TOP_P: f64 = 0.995;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CounterexampleId {
    /// Bounded power baseline whose mixture density does not integrate to one.
    ImproperPdf,
    /// Weibull shape 2 mixtures with intersecting cdfs.
    WeibullCrossing,
    /// Fréchet shape 3 mixtures with intersecting cdfs.
    FrechetCrossing,
}

impl CounterexampleId {
    pub const ALL: [CounterexampleId; 3] = [
        CounterexampleId::ImproperPdf,
        CounterexampleId::WeibullCrossing,
        CounterexampleId::FrechetCrossing,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CounterexampleId::ImproperPdf => "improper-pdf",
            CounterexampleId::WeibullCrossing => "weibull-crossing",
            CounterexampleId::FrechetCrossing => "frechet-crossing",
        }
    }

    /// The built-in configuration. For the improper case `v_groups` repeats `u_groups`.
    pub fn scenario(self) -> Scenario {
        let g = ComponentGroup::new;
        match self {
            CounterexampleId::ImproperPdf => {
                let groups = [g(3, 0.1, 4.0, 12.0), g(2, 0.35, 2.0, 8.0)];
                Scenario::new(
                    BaselineDistribution::power(3.0, 2.0).expect("valid power"),
                    groups,
                    groups,
                )
            }
            CounterexampleId::WeibullCrossing => Scenario::new(
                BaselineDistribution::weibull(2.0).expect("valid shape"),
                [g(3, 0.17, 6.0, 2.0), g(2, 0.245, 8.0, 4.0)],
                [g(3, 0.17, 4.0, 2.0), g(2, 0.245, 12.0, 4.0)],
            ),
            CounterexampleId::FrechetCrossing => Scenario::new(
                BaselineDistribution::frechet(3.0).expect("valid shape"),
                [g(4, 0.1, 9.0, 6.0), g(3, 0.2, 6.0, 5.0)],
                [g(4, 0.1, 15.0, 6.0), g(3, 0.2, 2.0, 5.0)],
            ),
        }
    }
}

impl std::fmt::Display for CounterexampleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CounterexampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CounterexampleId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Usage(format!(
                    "unknown counterexample `{s}` (improper-pdf, weibull-crossing, frechet-crossing)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub x: f64,
    #[serde(rename = "F_U")]
    pub f_u: f64,
    #[serde(rename = "F_V")]
    pub f_v: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub id: CounterexampleId,
    pub scenario: Scenario,
    /// Mass probe of the improper configuration.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub properness: Option<ProbeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderVerdict>,
    /// Weak submajorization of the expanded location vectors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location_certificate: Option<MajorizationVerdict>,
    /// Point where the two cdfs intersect, located by bisection.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossing: Option<f64>,
    #[serde(skip)]
    pub curve: Vec<CurveRow>,
}

fn bisect_crossing(u: &MixtureModel, v: &MixtureModel, mut a: f64, mut b: f64) -> Option<f64> {
    let diff = |x: f64| u.cdf(x) - v.cdf(x);
    let (mut fa, fb) = (diff(a), diff(b));
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    while (b - a).abs() > 1e-12 * (1.0 + a.abs().max(b.abs())) {
        let m = 0.5 * (a + b);
        let fm = diff(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

fn cdf_curve(u: &MixtureModel, v: &MixtureModel) -> Result<Vec<CurveRow>> {
    let lo = u.support_lo().min(v.support_lo());
    let hi = u.quantile(CURVE_TOP_P)?.max(v.quantile(CURVE_TOP_P)?);
    let step = (hi - lo) / (CURVE_POINTS - 1) as f64;
    Ok((0..CURVE_POINTS)
        .map(|i| {
            let x = if i + 1 == CURVE_POINTS {
                hi
            } else {
                lo + step * i as f64
            };
            CurveRow {
                x,
                f_u: u.cdf(x),
                f_v: v.cdf(x),
            }
        })
        .collect())
}

/// Rebuilds a built-in counterexample and reports the property it exhibits.
pub fn reproduce_counterexample(id: CounterexampleId) -> Result<CounterexampleReport> {
    let scenario = id.scenario();
    if id == CounterexampleId::ImproperPdf {
        let model = build_mixture(scenario.baseline.clone(), scenario.u_groups)?;
        return Ok(CounterexampleReport {
            id,
            properness: Some(model.mass_check().clone()),
            scenario,
            order: None,
            location_certificate: None,
            crossing: None,
            curve: Vec::new(),
        });
    }
    let (u, v) = scenario.models()?;
    let order = check_order(&u, &v, Relation::ST, &GridConfig::default())?;
    let locations =
        |g: &[ComponentGroup; 2]| expand(g[0].location, g[0].count, g[1].location, g[1].count);
    let certificate = compare_vectors(
        &locations(&scenario.u_groups),
        &locations(&scenario.v_groups),
        MajorizationMode::WeakSub,
    )?;
    let crossing = match (order.strongest(1), order.strongest(-1)) {
        (Some(a), Some(b)) => bisect_crossing(&u, &v, a.x.min(b.x), a.x.max(b.x)),
        _ => None,
    };
    Ok(CounterexampleReport {
        id,
        curve: cdf_curve(&u, &v)?,
        scenario,
        properness: None,
        order: Some(order),
        location_certificate: Some(certificate),
        crossing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::Outcome;

    #[test]
    fn improper_configuration_is_flagged() {
        let r = reproduce_counterexample(CounterexampleId::ImproperPdf).unwrap();
        let p = r.properness.unwrap();
        assert!(!p.proper);
        assert!(p.diverged);
    }

    #[test]
    fn weibull_crossing() {
        let r = reproduce_counterexample(CounterexampleId::WeibullCrossing).unwrap();
        assert_eq!(r.order.as_ref().unwrap().outcome, Outcome::Incomparable);
        assert!(r.location_certificate.unwrap().holds);
        let x = r.crossing.unwrap();
        assert!((x - 9.174138430803).abs() < 1e-8, "{x}");
        assert_eq!(r.curve.len(), CURVE_POINTS);
        assert!(r
            .curve
            .windows(2)
            .all(|w| w[1].f_u >= w[0].f_u && w[1].f_v >= w[0].f_v));
    }

    #[test]
    fn frechet_crossing() {
        let r = reproduce_counterexample(CounterexampleId::FrechetCrossing).unwrap();
        assert_eq!(r.order.as_ref().unwrap().outcome, Outcome::Incomparable);
        assert!(r.location_certificate.unwrap().holds);
        assert!((r.crossing.unwrap() - 14.16).abs() < 0.05);
    }

    #[test]
    fn ids_parse() {
        for id in CounterexampleId::ALL {
            assert_eq!(id.as_str().parse::<CounterexampleId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{id}\""));
        }
    }
}
