use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::BaselineDistribution;
use crate::error::{Error, Result};
use crate::mixture::ComponentGroup;
use crate::orders::GridConfig;

use super::{
    verify, Consistency, HypothesisRole, HypothesisVerdict, Scenario, TheoremId, TheoremReport,
};

/// Redraws allowed per scenario before a sweep gives up on infeasible bounds.
const MAX_REDRAWS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChamberPick {
    /// pairs sorted nonincreasing
    D,
    /// pairs sorted nondecreasing
    E,
}

impl std::str::FromStr for ChamberPick {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "d" | "d2+" => Ok(Self::D),
            "e" | "e2+" => Ok(Self::E),
            _ => Err(Error::Usage(format!("unknown chamber `{s}` (d, e)"))),
        }
    }
}

/// Ranges for random scenarios. Locations and scales are drawn log-uniformly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SamplerBounds {
    pub location: (f64, f64),
    pub scale: (f64, f64),
    pub count: (u32, u32),
    /// Overrides the per-theorem default baseline.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<BaselineDistribution>,
    /// Overrides the per-theorem default chamber.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chamber: Option<ChamberPick>,
}

impl Default for SamplerBounds {
    fn default() -> Self {
        Self {
            location: (0.1, 10.0),
            scale: (0.2, 5.0),
            count: (1, 6),
            baseline: None,
            chamber: None,
        }
    }
}

impl SamplerBounds {
    fn validate(&self) -> Result<()> {
        for (name, (lo, hi)) in [("location", self.location), ("scale", self.scale)] {
            if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} bounds must satisfy 0 < lo <= hi, got ({lo}, {hi})"
                )));
            }
        }
        if self.count.0 == 0 || self.count.0 > self.count.1 {
            return Err(Error::InvalidParameter(format!(
                "count bounds must satisfy 1 <= lo <= hi, got {:?}",
                self.count
            )));
        }
        Ok(())
    }

    fn baseline_for(&self, id: TheoremId) -> BaselineDistribution {
        self.baseline.clone().unwrap_or_else(|| match id {
            TheoremId::ScaleStar
            | TheoremId::ScaleLorenz
            | TheoremId::ScaleDisp
            | TheoremId::ScaleRs => BaselineDistribution::exponential(),
            _ => BaselineDistribution::weibull(2.0).expect("valid shape"),
        })
    }

    fn chamber_for(&self, id: TheoremId) -> ChamberPick {
        self.chamber.unwrap_or(if id == TheoremId::ScaleRs {
            ChamberPick::E
        } else {
            ChamberPick::D
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub theorem_id: TheoremId,
    pub seed: u64,
    pub attempted: usize,
    /// Scenarios where some hypothesis variant held in full.
    pub hypothesis_hits: usize,
    pub consistent_count: usize,
    /// Hits whose conclusion was neither consistent nor a strong contradiction.
    pub inconclusive_count: usize,
    pub contradiction_scenarios: Vec<Scenario>,
    /// Statement hypotheses violated in scenarios that missed, by name.
    pub violated_hypotheses: BTreeMap<String, usize>,
}

struct Sampler<'a> {
    rng: ChaCha8Rng,
    bounds: &'a SamplerBounds,
    chamber: ChamberPick,
}

impl Sampler<'_> {
    fn log_uniform(&mut self, (lo, hi): (f64, f64)) -> f64 {
        if lo == hi {
            return lo;
        }
        self.rng.gen_range(lo.ln()..hi.ln()).exp()
    }

    fn count(&mut self) -> u32 {
        self.rng
            .gen_range(self.bounds.count.0..=self.bounds.count.1)
    }

    fn counts(&mut self) -> [u32; 2] {
        [self.count(), self.count()]
    }

    fn oriented(&self, mut pair: [f64; 2]) -> [f64; 2] {
        let wrong = match self.chamber {
            ChamberPick::D => pair[0] < pair[1],
            ChamberPick::E => pair[0] > pair[1],
        };
        if wrong {
            pair.swap(0, 1);
        }
        pair
    }

    fn locations(&mut self) -> [f64; 2] {
        let b = self.bounds.location;
        let pair = [self.log_uniform(b), self.log_uniform(b)];
        self.oriented(pair)
    }

    fn scales(&mut self) -> [f64; 2] {
        let b = self.bounds.scale;
        let pair = [self.log_uniform(b), self.log_uniform(b)];
        self.oriented(pair)
    }

    /// `r1` uniform on the open interval allowed by `n`, `r2` from the constraint.
    fn free_weights(&mut self, n: [u32; 2]) -> [f64; 2] {
        let top = 1.0 / n[0] as f64;
        let r1 = loop {
            let r = self.rng.gen_range(0.0..top);
            if r > 0.0 {
                break r;
            }
        };
        [r1, (1.0 - n[0] as f64 * r1) / n[1] as f64]
    }

    fn scale_scenario(&mut self, id: TheoremId, baseline: &BaselineDistribution) -> Scenario {
        let n = self.counts();
        let r = self.free_weights(n);
        let sigma = if id.has_common_location() {
            let s = self.log_uniform(self.bounds.location);
            [s, s]
        } else {
            self.locations()
        };
        let mut lam = self.scales();
        let mut tht = self.scales();
        // the common-location results all assume the scale-ratio premise
        if id.has_common_location()
            && lam[0].min(lam[1]) / lam[0].max(lam[1]) > tht[0].min(tht[1]) / tht[0].max(tht[1])
        {
            std::mem::swap(&mut lam, &mut tht);
        }
        let group = |i: usize, scale: [f64; 2]| ComponentGroup::new(n[i], r[i], sigma[i], scale[i]);
        Scenario {
            baseline: baseline.clone(),
            u_groups: [group(0, lam), group(1, lam)],
            v_groups: [group(0, tht), group(1, tht)],
            shared_weights: true,
        }
    }

    /// Solves both weight constraints for a shared `r`; `None` when infeasible.
    fn count_scenario(
        &mut self,
        id: TheoremId,
        baseline: &BaselineDistribution,
    ) -> Option<Scenario> {
        let mut n = self.counts();
        let mut m = self.counts();
        if n == m {
            return None;
        }
        let det = |n: [u32; 2], m: [u32; 2]| n[0] as i64 * m[1] as i64 - m[0] as i64 * n[1] as i64;
        if id != TheoremId::CountSt && det(n, m) < 0 {
            std::mem::swap(&mut n, &mut m);
        }
        let d = det(n, m);
        if d == 0 {
            return None;
        }
        let r1 = (m[1] as f64 - n[1] as f64) / d as f64;
        let r2 = (n[0] as f64 - m[0] as f64) / d as f64;
        if !(r1 > 0.0 && r2 > 0.0) {
            return None;
        }
        let sigma = self.locations();
        let lam = self.scales();
        let groups = |c: [u32; 2]| {
            [
                ComponentGroup::new(c[0], r1, sigma[0], lam[0]),
                ComponentGroup::new(c[1], r2, sigma[1], lam[1]),
            ]
        };
        Some(Scenario {
            baseline: baseline.clone(),
            u_groups: groups(n),
            v_groups: groups(m),
            shared_weights: true,
        })
    }

    fn draw(&mut self, id: TheoremId, baseline: &BaselineDistribution) -> Result<Scenario> {
        for _ in 0..MAX_REDRAWS {
            let s = if id.varies_counts() {
                self.count_scenario(id, baseline)
            } else {
                Some(self.scale_scenario(id, baseline))
            };
            if let Some(s) = s {
                return Ok(s);
            }
        }
        Err(Error::Infeasible(format!(
            "no feasible scenario for {id} within {MAX_REDRAWS} draws; widen the count bounds"
        )))
    }
}

impl TheoremId {
    fn has_common_location(self) -> bool {
        matches!(
            self,
            TheoremId::ScaleStar
                | TheoremId::ScaleLorenz
                | TheoremId::ScaleDisp
                | TheoremId::ScaleRs
        )
    }
}

/// Draws `count` scenarios from `seed`, verifies each, and tallies the outcomes.
/// Generation is sequential; verification runs in parallel and the result does
/// not depend on scheduling.
pub fn sweep(
    id: TheoremId,
    bounds: &SamplerBounds,
    seed: u64,
    count: usize,
    cfg: &GridConfig,
) -> Result<SweepSummary> {
    if count == 0 {
        return Err(Error::InvalidParameter(
            "sweep count must be at least 1".into(),
        ));
    }
    bounds.validate()?;
    cfg.validate()?;
    let baseline = bounds.baseline_for(id);
    let mut sampler = Sampler {
        rng: ChaCha8Rng::seed_from_u64(seed),
        bounds,
        chamber: bounds.chamber_for(id),
    };
    let scenarios = (0..count)
        .map(|_| sampler.draw(id, &baseline))
        .collect::<Result<Vec<_>>>()?;
    let reports = scenarios
        .par_iter()
        .map(|s| verify(id, s, cfg))
        .collect::<Result<Vec<TheoremReport>>>()?;

    let mut summary = SweepSummary {
        theorem_id: id,
        seed,
        attempted: count,
        hypothesis_hits: 0,
        consistent_count: 0,
        inconclusive_count: 0,
        contradiction_scenarios: Vec::new(),
        violated_hypotheses: BTreeMap::new(),
    };
    for (scenario, report) in scenarios.into_iter().zip(reports) {
        if report.branch.is_none() {
            for h in &report.hypothesis_results {
                if h.role == HypothesisRole::Statement && h.verdict == HypothesisVerdict::Violated {
                    *summary
                        .violated_hypotheses
                        .entry(h.name.clone())
                        .or_default() += 1;
                }
            }
            continue;
        }
        summary.hypothesis_hits += 1;
        match report.consistent {
            Consistency::ConsistentWithPaper => summary.consistent_count += 1,
            Consistency::ContradictsPaper => summary.contradiction_scenarios.push(scenario),
            _ => summary.inconclusive_count += 1,
        }
    }
    Ok(summary)
}
