//! Encoded comparison results for two-group mixtures: hypothesis predicates,
//! the claimed order conclusion, and auditing of concrete scenarios.

mod counterexamples;
mod hypotheses;
mod sweep;

pub use counterexamples::{
    reproduce_counterexample, CounterexampleId, CounterexampleReport, CurveRow,
};
pub use sweep::{sweep, ChamberPick, SamplerBounds, SweepSummary};

use serde::{Deserialize, Serialize};

use crate::baselines::BaselineDistribution;
use crate::error::{Error, Result};
use crate::mixture::{build_mixture, ComponentGroup, MixtureModel};
use crate::orders::{check_order, GridConfig, OrderVerdict, Outcome, Relation};

/// Contradictions need an opposing witness at least this many tolerances strong.
pub const CONTRADICTION_STRENGTH: f64 = 10.0;

/// The encoded results. Serialized ids (`t4_3`, `c_lorenz`, ...) are the
/// stable external names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    /// Scale vectors weakly submajorized imply U ≥st V.
    #[serde(rename = "t4_1_i")]
    ScaleStSub,
    /// Scale vectors weakly supermajorized imply U ≥st V.
    #[serde(rename = "t4_1_ii")]
    ScaleStSuper,
    /// Changing group counts orders the mixtures in st.
    #[serde(rename = "t4_2")]
    CountSt,
    #[serde(rename = "t4_3")]
    CountHr,
    #[serde(rename = "t4_4")]
    CountRh,
    #[serde(rename = "t4_5")]
    CountLr,
    /// Scale-ratio condition implies U ≥* V.
    #[serde(rename = "t4_6")]
    ScaleStar,
    #[serde(rename = "c_lorenz")]
    ScaleLorenz,
    #[serde(rename = "t4_7")]
    ScaleDisp,
    #[serde(rename = "t4_8")]
    ScaleRs,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::ScaleStSub,
        TheoremId::ScaleStSuper,
        TheoremId::CountSt,
        TheoremId::CountHr,
        TheoremId::CountRh,
        TheoremId::CountLr,
        TheoremId::ScaleStar,
        TheoremId::ScaleLorenz,
        TheoremId::ScaleDisp,
        TheoremId::ScaleRs,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::ScaleStSub => "t4_1_i",
            TheoremId::ScaleStSuper => "t4_1_ii",
            TheoremId::CountSt => "t4_2",
            TheoremId::CountHr => "t4_3",
            TheoremId::CountRh => "t4_4",
            TheoremId::CountLr => "t4_5",
            TheoremId::ScaleStar => "t4_6",
            TheoremId::ScaleLorenz => "c_lorenz",
            TheoremId::ScaleDisp => "t4_7",
            TheoremId::ScaleRs => "t4_8",
        }
    }

    pub fn relation(self) -> Relation {
        match self {
            TheoremId::ScaleStSub | TheoremId::ScaleStSuper | TheoremId::CountSt => Relation::ST,
            TheoremId::CountHr => Relation::HR,
            TheoremId::CountRh => Relation::RH,
            TheoremId::CountLr => Relation::LR,
            TheoremId::ScaleStar => Relation::STAR,
            TheoremId::ScaleLorenz => Relation::LORENZ,
            TheoremId::ScaleDisp => Relation::DISP,
            TheoremId::ScaleRs => Relation::RS,
        }
    }

    /// Compares the two models' group counts rather than their scales.
    pub fn varies_counts(self) -> bool {
        matches!(
            self,
            TheoremId::CountSt | TheoremId::CountHr | TheoremId::CountRh | TheoremId::CountLr
        )
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Usage(format!("unknown theorem id `{s}`")))
    }
}

/// Two mixtures over a common baseline: U from `u_groups`, V from `v_groups`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub baseline: BaselineDistribution,
    pub u_groups: [ComponentGroup; 2],
    pub v_groups: [ComponentGroup; 2],
    /// Asserts both models use the same `(r₁, r₂)`; checked when set.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub shared_weights: bool,
}

impl Scenario {
    pub fn new(
        baseline: BaselineDistribution,
        u_groups: [ComponentGroup; 2],
        v_groups: [ComponentGroup; 2],
    ) -> Self {
        Self {
            baseline,
            u_groups,
            v_groups,
            shared_weights: false,
        }
    }

    /// Builds U and V, enforcing both weight constraints.
    pub fn models(&self) -> Result<(MixtureModel, MixtureModel)> {
        if self.shared_weights && !weights_shared(&self.u_groups, &self.v_groups) {
            return Err(Error::Infeasible(
                "scenario asserts shared weights but r differs".into(),
            ));
        }
        let u = build_mixture(self.baseline.clone(), self.u_groups)?;
        let v = build_mixture(self.baseline.clone(), self.v_groups)?;
        u.ensure_proper()?;
        v.ensure_proper()?;
        Ok((u, v))
    }
}

pub(crate) fn weights_shared(u: &[ComponentGroup; 2], v: &[ComponentGroup; 2]) -> bool {
    (0..2).all(|i| close(u[i].weight, v[i].weight))
}

pub(crate) fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisVerdict {
    Satisfied,
    Violated,
    Inconclusive,
}

/// Whether a predicate appears in the result's statement or only in its proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisRole {
    Statement,
    ProofOnly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisResult {
    pub name: String,
    pub verdict: HypothesisVerdict,
    pub detail: String,
    pub role: HypothesisRole,
}

/// Direction the encoded result claims for `check_order(U, V, relation)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimedDirection {
    /// U ≤ V
    Forward,
    /// V ≤ U
    Backward,
    /// Either direction is claimed (equal group totals).
    Either,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Consistency {
    ConsistentWithPaper,
    ContradictsPaper,
    HypothesesNotMet,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem_id: TheoremId,
    /// Hypothesis variant whose statement predicates all held, if any.
    pub branch: Option<String>,
    pub hypothesis_results: Vec<HypothesisResult>,
    pub claimed: ClaimedDirection,
    pub conclusion: OrderVerdict,
    pub consistent: Consistency,
}

/// Evaluates every hypothesis of the result on the scenario; names of
/// variant-specific predicates carry the variant label as a prefix.
pub fn check_hypotheses(id: TheoremId, scenario: &Scenario) -> Result<Vec<HypothesisResult>> {
    scenario.models()?;
    Ok(hypotheses::evaluate(id, scenario)?.flatten())
}

/// Order check `check_order(U, V, relation)` for the result's relation.
pub fn check_conclusion(
    id: TheoremId,
    scenario: &Scenario,
    cfg: &GridConfig,
) -> Result<OrderVerdict> {
    let (u, v) = scenario.models()?;
    check_order(&u, &v, id.relation(), cfg)
}

/// Hypotheses plus conclusion plus the consistency flag.
pub fn verify(id: TheoremId, scenario: &Scenario, cfg: &GridConfig) -> Result<TheoremReport> {
    let (u, v) = scenario.models()?;
    let sets = hypotheses::evaluate(id, scenario)?;
    let fired = sets.fired_branch();
    let pending = fired.is_none() && sets.undecided_branch();
    let conclusion = check_order(&u, &v, id.relation(), cfg)?;
    let claimed = hypotheses::claimed_direction(id, scenario);
    let consistent = if fired.is_some() {
        judge(&conclusion, claimed)
    } else if pending {
        Consistency::Inconclusive
    } else {
        Consistency::HypothesesNotMet
    };
    Ok(TheoremReport {
        theorem_id: id,
        branch: fired,
        hypothesis_results: sets.flatten(),
        claimed,
        conclusion,
        consistent,
    })
}

/// Compares an order verdict with the claimed direction.
pub fn judge(verdict: &OrderVerdict, claimed: ClaimedDirection) -> Consistency {
    let opposing: &[i8] = match (verdict.outcome, claimed) {
        (Outcome::Equal, _) => return Consistency::ConsistentWithPaper,
        (Outcome::Inconclusive, _) => return Consistency::Inconclusive,
        (Outcome::HoldsForward, ClaimedDirection::Forward | ClaimedDirection::Either) => {
            return Consistency::ConsistentWithPaper
        }
        (Outcome::HoldsBackward, ClaimedDirection::Backward | ClaimedDirection::Either) => {
            return Consistency::ConsistentWithPaper
        }
        (_, ClaimedDirection::Forward) => &[-1],
        (_, ClaimedDirection::Backward) => &[1],
        (_, ClaimedDirection::Either) => &[1, -1],
    };
    // every opposing sign must be carried by a strong witness
    let strong = opposing.iter().all(|&s| {
        verdict
            .strongest(s)
            .is_some_and(|w| w.strength > CONTRADICTION_STRENGTH)
    });
    if strong {
        Consistency::ContradictsPaper
    } else {
        Consistency::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn g(n: u32, r: f64, s: f64, l: f64) -> ComponentGroup {
        ComponentGroup::new(n, r, s, l)
    }

    fn small() -> GridConfig {
        GridConfig {
            n_points: 401,
            ..GridConfig::default()
        }
    }

    fn count_scenario() -> Scenario {
        Scenario::new(
            BaselineDistribution::weibull(2.0).unwrap(),
            [g(3, 0.2, 2.0, 2.0), g(2, 0.2, 1.0, 1.0)],
            [g(2, 0.2, 2.0, 2.0), g(3, 0.2, 1.0, 1.0)],
        )
    }

    #[test]
    fn ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
            assert_eq!(
                serde_json::to_string(&id).unwrap(),
                format!("\"{}\"", id.as_str())
            );
        }
        assert!("t9_9".parse::<TheoremId>().is_err());
    }

    #[test]
    fn hazard_count_example_is_consistent() {
        let s = count_scenario();
        let hyps = check_hypotheses(TheoremId::CountHr, &s).unwrap();
        let named = |n: &str| hyps.iter().find(|h| h.name == n).unwrap().verdict;
        assert_eq!(named("d2+: baseline IFR"), HypothesisVerdict::Satisfied);
        assert_eq!(named("n1 n2* >= n1* n2"), HypothesisVerdict::Satisfied);
        let report = verify(TheoremId::CountHr, &s, &small()).unwrap();
        assert_eq!(report.branch.as_deref(), Some("d2+"));
        assert_eq!(report.conclusion.outcome, Outcome::HoldsBackward);
        assert_eq!(report.consistent, Consistency::ConsistentWithPaper);
    }

    #[test]
    fn likelihood_ratio_count_example() {
        let report = verify(TheoremId::CountLr, &count_scenario(), &small()).unwrap();
        assert_eq!(report.conclusion.outcome, Outcome::HoldsBackward);
        assert_eq!(report.consistent, Consistency::ConsistentWithPaper);
    }

    #[test]
    fn frechet_scale_scenario_misses_iprfr() {
        let s = Scenario::new(
            BaselineDistribution::frechet(3.0).unwrap(),
            [g(4, 0.1, 9.0, 6.0), g(3, 0.2, 6.0, 5.0)],
            [g(4, 0.1, 9.0, 7.0), g(3, 0.2, 6.0, 5.0)],
        );
        let report = verify(TheoremId::ScaleStSub, &s, &small()).unwrap();
        assert_eq!(report.consistent, Consistency::HypothesesNotMet);
        let iprfr = report
            .hypothesis_results
            .iter()
            .find(|h| h.name == "baseline IPRFR")
            .unwrap();
        assert_eq!(iprfr.verdict, HypothesisVerdict::Violated);
    }

    #[test]
    fn equal_parameters_give_equal_conclusions() {
        let b = BaselineDistribution::exponential();
        let grp = [g(3, 0.2, 1.0, 4.0), g(2, 0.2, 1.0, 1.0)];
        let s = Scenario::new(b, grp, grp);
        for id in TheoremId::ALL {
            let v = check_conclusion(id, &s, &small()).unwrap();
            assert_eq!(v.outcome, Outcome::Equal, "{id}");
        }
    }

    #[test]
    fn star_example_hypotheses() {
        let s = Scenario::new(
            BaselineDistribution::exponential(),
            [g(3, 0.2, 1.0, 4.0), g(2, 0.2, 1.0, 1.0)],
            [g(3, 0.2, 1.0, 3.0), g(2, 0.2, 1.0, 2.0)],
        );
        let hyps = check_hypotheses(TheoremId::ScaleStar, &s).unwrap();
        for h in hyps.iter().filter(|h| h.role == HypothesisRole::Statement) {
            assert_eq!(h.verdict, HypothesisVerdict::Satisfied, "{h:?}");
        }
    }

    #[test]
    fn infeasible_weights_are_rejected() {
        let s = Scenario::new(
            BaselineDistribution::weibull(2.0).unwrap(),
            [g(3, 0.2, 2.0, 2.0), g(2, 0.2, 1.0, 1.0)],
            [g(3, 0.2, 2.0, 2.0), g(3, 0.2, 1.0, 1.0)],
        );
        assert!(matches!(
            verify(TheoremId::CountHr, &s, &small()),
            Err(Error::WeightConstraint { .. })
        ));
    }

    #[test]
    fn swapping_counts_flips_hazard_conclusion() {
        let s = count_scenario();
        let swapped = Scenario::new(s.baseline.clone(), s.v_groups, s.u_groups);
        let a = check_conclusion(TheoremId::CountHr, &s, &small()).unwrap();
        let b = check_conclusion(TheoremId::CountHr, &swapped, &small()).unwrap();
        assert_eq!(a.outcome, Outcome::HoldsBackward);
        assert_eq!(b.outcome, Outcome::HoldsForward);
    }

    #[test]
    fn judge_requires_strong_opposition() {
        use crate::orders::Witness;
        let mut v = OrderVerdict {
            relation: Relation::ST,
            outcome: Outcome::HoldsForward,
            witnesses: vec![Witness {
                x: 1.0,
                lhs: 0.0,
                rhs: 1.0,
                sign: 1,
                strength: 5.0,
            }],
            probe: GridConfig::default(),
        };
        assert_eq!(
            judge(&v, ClaimedDirection::Backward),
            Consistency::Inconclusive
        );
        v.witnesses[0].strength = 50.0;
        assert_eq!(
            judge(&v, ClaimedDirection::Backward),
            Consistency::ContradictsPaper
        );
        assert_eq!(
            judge(&v, ClaimedDirection::Forward),
            Consistency::ConsistentWithPaper
        );
    }
}
