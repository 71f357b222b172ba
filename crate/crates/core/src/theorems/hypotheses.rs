use crate::baselines::{classify_density, classify_monotone_aging, AgingNotion, Probe};
use crate::error::Result;
use crate::majorization::{
    chamber_of, compare_vectors, expand, scale_ratio_leq, Chamber, MajorizationMode,
};
use crate::mixture::ComponentGroup;
use crate::monotone::{MonotoneClass, MonotoneVerdict};

use super::{
    close, weights_shared, ClaimedDirection, HypothesisResult, HypothesisRole, HypothesisVerdict,
    Scenario, TheoremId,
};

/// Probability range whose baseline quantiles bound the aging probe.
const PROBE_P: (f64, f64) = (1e-6, 1.0 - 1e-6);

pub(super) struct Branch {
    pub label: &'static str,
    pub hypotheses: Vec<HypothesisResult>,
}

pub(super) struct HypothesisSets {
    pub common: Vec<HypothesisResult>,
    pub branches: Vec<Branch>,
}

fn statement_ok(h: &HypothesisResult) -> bool {
    h.role == HypothesisRole::ProofOnly || h.verdict == HypothesisVerdict::Satisfied
}

fn statement_undecided(h: &HypothesisResult) -> bool {
    h.role == HypothesisRole::Statement && h.verdict == HypothesisVerdict::Inconclusive
}

impl HypothesisSets {
    fn branch_hypotheses<'a>(
        &'a self,
        b: &'a Branch,
    ) -> impl Iterator<Item = &'a HypothesisResult> {
        self.common.iter().chain(&b.hypotheses)
    }

    /// First variant whose statement predicates, together with the common ones, all hold.
    pub fn fired_branch(&self) -> Option<String> {
        self.branches
            .iter()
            .find(|b| self.branch_hypotheses(b).all(statement_ok))
            .map(|b| b.label.to_string())
    }

    /// Some variant has no violated statement predicate but an inconclusive one.
    pub fn undecided_branch(&self) -> bool {
        self.branches.iter().any(|b| {
            let mut hs = self.branch_hypotheses(b);
            let none_violated = self.branch_hypotheses(b).all(|h| {
                h.role == HypothesisRole::ProofOnly || h.verdict != HypothesisVerdict::Violated
            });
            none_violated && hs.any(statement_undecided)
        })
    }

    pub fn flatten(self) -> Vec<HypothesisResult> {
        let mut out = self.common;
        for b in self.branches {
            if b.label.is_empty() {
                out.extend(b.hypotheses);
                continue;
            }
            out.extend(b.hypotheses.into_iter().map(|mut h| {
                h.name = format!("{}: {}", b.label, h.name);
                h
            }));
        }
        out
    }
}

fn pred(name: &str, ok: bool, detail: String) -> HypothesisResult {
    HypothesisResult {
        name: name.to_string(),
        verdict: if ok {
            HypothesisVerdict::Satisfied
        } else {
            HypothesisVerdict::Violated
        },
        detail,
        role: HypothesisRole::Statement,
    }
}

fn proof_only(mut h: HypothesisResult) -> HypothesisResult {
    h.role = HypothesisRole::ProofOnly;
    h
}

#[derive(Clone, Copy, PartialEq)]
enum Trend {
    Increasing,
    Decreasing,
}

fn trend_result(
    name: &str,
    label: &str,
    v: Result<MonotoneVerdict>,
    want: Trend,
    probe: &Probe,
) -> HypothesisResult {
    let scope = format!("on probe [{:.6e}, {:.6e}]", probe.lo, probe.hi);
    let (verdict, detail) = match v {
        Err(e) => (HypothesisVerdict::Inconclusive, format!("{label}: {e}")),
        Ok(v) => {
            let class = v.classification;
            let ok = match want {
                Trend::Increasing => class.is_weakly_increasing(),
                Trend::Decreasing => class.is_weakly_decreasing(),
            };
            let verdict = if ok {
                HypothesisVerdict::Satisfied
            } else if class == MonotoneClass::Inconclusive {
                HypothesisVerdict::Inconclusive
            } else {
                HypothesisVerdict::Violated
            };
            let witness = v
                .witness
                .map(|(a, b)| format!(", fails between {a:.6} and {b:.6}"))
                .unwrap_or_default();
            (
                verdict,
                format!("{label} {class:?} {scope}{witness}").to_lowercase(),
            )
        }
    };
    HypothesisResult {
        name: name.to_string(),
        verdict,
        detail,
        role: HypothesisRole::Statement,
    }
}

struct Ctx<'a> {
    s: &'a Scenario,
    probe: Option<Probe>,
}

impl<'a> Ctx<'a> {
    fn new(s: &'a Scenario) -> Self {
        let probe = Probe::quantile_range(&s.baseline, PROBE_P.0, PROBE_P.1).ok();
        Self { s, probe }
    }

    fn u(&self) -> &[ComponentGroup; 2] {
        &self.s.u_groups
    }

    fn v(&self) -> &[ComponentGroup; 2] {
        &self.s.v_groups
    }

    fn pair(groups: &[ComponentGroup; 2], f: impl Fn(&ComponentGroup) -> f64) -> [f64; 2] {
        [f(&groups[0]), f(&groups[1])]
    }

    fn aging(&self, name: &str, notion: AgingNotion, want: Trend) -> HypothesisResult {
        let label = format!("{notion:?}");
        match &self.probe {
            Some(p) => trend_result(
                name,
                &label,
                classify_monotone_aging(&self.s.baseline, notion, p),
                want,
                p,
            ),
            None => inconclusive(name, "no probe interval inside the support"),
        }
    }

    fn density_decreasing(&self, name: &str) -> HypothesisResult {
        match &self.probe {
            Some(p) => trend_result(
                name,
                "density",
                classify_density(&self.s.baseline, p),
                Trend::Decreasing,
                p,
            ),
            None => inconclusive(name, "no probe interval inside the support"),
        }
    }

    fn setup(&self) -> Vec<HypothesisResult> {
        let b = &self.s.baseline;
        vec![
            pred(
                "baseline support unbounded",
                !b.is_bounded(),
                format!("support upper end {}", b.support_hi()),
            ),
            pred(
                "shared mixing weights",
                weights_shared(self.u(), self.v()),
                format!(
                    "r = {:?}, r* = {:?}",
                    Self::pair(self.u(), |g| g.weight),
                    Self::pair(self.v(), |g| g.weight)
                ),
            ),
        ]
    }

    fn equal_counts(&self) -> HypothesisResult {
        let (n, m) = (
            Self::pair(self.u(), |g| g.count as f64),
            Self::pair(self.v(), |g| g.count as f64),
        );
        pred("equal counts", n == m, format!("n = {n:?}, n* = {m:?}"))
    }

    fn equal_locations(&self) -> HypothesisResult {
        let (s, m) = (
            Self::pair(self.u(), |g| g.location),
            Self::pair(self.v(), |g| g.location),
        );
        pred(
            "equal locations",
            close(s[0], m[0]) && close(s[1], m[1]),
            format!("sigma = {s:?}, mu = {m:?}"),
        )
    }

    fn equal_components(&self) -> HypothesisResult {
        let same = (0..2).all(|i| {
            close(self.u()[i].location, self.v()[i].location)
                && close(self.u()[i].scale, self.v()[i].scale)
        });
        pred(
            "equal component laws",
            same,
            format!(
                "(sigma, lambda) = {:?}, {:?} vs {:?}, {:?}",
                self.locations(),
                self.scales(),
                Self::pair(self.v(), |g| g.location),
                self.v_scales()
            ),
        )
    }

    fn common_location(&self) -> Vec<HypothesisResult> {
        let locs: Vec<f64> = self
            .u()
            .iter()
            .chain(self.v())
            .map(|g| g.location)
            .collect();
        let same = locs.iter().all(|&l| close(l, locs[0]));
        vec![
            pred("common location", same, format!("locations {locs:?}")),
            pred(
                "location positive",
                locs[0] > 0.0,
                format!("sigma = {}", locs[0]),
            ),
        ]
    }

    fn chamber(&self, name: &str, values: [f64; 2], want: Chamber) -> HypothesisResult {
        let got = chamber_of(&values);
        let ok = match want {
            Chamber::DPlus => got.in_d_plus(),
            Chamber::EPlus => got.in_e_plus(),
            _ => got == want,
        };
        pred(name, ok, format!("{values:?} is {got:?}").to_lowercase())
    }

    fn mass_order(&self, first_at_least: bool, role_proof: bool) -> HypothesisResult {
        let (a, b) = (self.u()[0].mass(), self.u()[1].mass());
        let (name, ok) = if first_at_least {
            ("n1 r1 >= n2 r2", a >= b - 1e-12)
        } else {
            ("n1 r1 <= n2 r2", a <= b + 1e-12)
        };
        let h = pred(name, ok, format!("n1 r1 = {a}, n2 r2 = {b}"));
        if role_proof {
            proof_only(h)
        } else {
            h
        }
    }

    fn scale_ratio(&self) -> HypothesisResult {
        let lam = (self.u()[0].scale, self.u()[1].scale);
        let tht = (self.v()[0].scale, self.v()[1].scale);
        match scale_ratio_leq(lam, tht) {
            Ok(ok) => pred(
                "scale ratio min/max of lambda <= that of theta",
                ok,
                format!("lambda = {lam:?}, theta = {tht:?}"),
            ),
            Err(e) => inconclusive(
                "scale ratio min/max of lambda <= that of theta",
                &e.to_string(),
            ),
        }
    }

    fn chambers(&self, names: &[(&str, [f64; 2])], want: Chamber) -> Vec<HypothesisResult> {
        names
            .iter()
            .map(|(n, v)| self.chamber(n, *v, want))
            .collect()
    }

    fn weights(&self) -> [f64; 2] {
        Self::pair(self.u(), |g| g.weight)
    }

    fn locations(&self) -> [f64; 2] {
        Self::pair(self.u(), |g| g.location)
    }

    fn scales(&self) -> [f64; 2] {
        Self::pair(self.u(), |g| g.scale)
    }

    fn v_scales(&self) -> [f64; 2] {
        Self::pair(self.v(), |g| g.scale)
    }
}

fn inconclusive(name: &str, detail: &str) -> HypothesisResult {
    HypothesisResult {
        name: name.to_string(),
        verdict: HypothesisVerdict::Inconclusive,
        detail: detail.to_string(),
        role: HypothesisRole::Statement,
    }
}

fn single(hypotheses: Vec<HypothesisResult>) -> Vec<Branch> {
    vec![Branch {
        label: "",
        hypotheses,
    }]
}

pub(super) fn evaluate(id: TheoremId, s: &Scenario) -> Result<HypothesisSets> {
    let c = Ctx::new(s);
    let mut common = c.setup();
    let d = Chamber::DPlus;
    let e = Chamber::EPlus;
    let branches = match id {
        TheoremId::ScaleStSub | TheoremId::ScaleStSuper => {
            let (u, v) = (c.u(), c.v());
            let mode = if id == TheoremId::ScaleStSub {
                MajorizationMode::WeakSub
            } else {
                MajorizationMode::WeakSuper
            };
            let lam = expand(u[0].scale, u[0].count, u[1].scale, u[1].count);
            let tht = expand(v[0].scale, v[0].count, v[1].scale, v[1].count);
            let cert = compare_vectors(&lam, &tht, mode)?;
            let [l1, l2] = c.scales();
            let [s1, s2] = c.locations();
            common.extend([
                c.equal_counts(),
                c.equal_locations(),
                c.aging("baseline IPRFR", AgingNotion::PRFR, Trend::Increasing),
                pred(
                    "(lambda1 - lambda2)(sigma1 - sigma2) >= 0",
                    (l1 - l2) * (s1 - s2) >= 0.0,
                    format!("product {}", (l1 - l2) * (s1 - s2)),
                ),
                pred(
                    match mode {
                        MajorizationMode::WeakSub => "scale vector weakly submajorized",
                        _ => "scale vector weakly supermajorized",
                    },
                    cert.holds,
                    format!(
                        "partial sums {:?} vs {:?}, first violation {:?}",
                        cert.partial_sums_u, cert.partial_sums_v, cert.first_violation
                    ),
                ),
            ]);
            let cham = |want| {
                c.chambers(
                    &[
                        ("lambda in chamber", c.scales()),
                        ("sigma in chamber", c.locations()),
                    ],
                    want,
                )
            };
            let mut dh = vec![c.mass_order(false, false)];
            dh.extend(cham(d));
            let mut eh = vec![c.mass_order(true, false)];
            eh.extend(cham(e));
            vec![
                Branch {
                    label: "d2+",
                    hypotheses: dh,
                },
                Branch {
                    label: "e2+",
                    hypotheses: eh,
                },
            ]
        }
        TheoremId::CountSt => {
            common.push(c.equal_components());
            let vecs = [
                ("r in chamber", c.weights()),
                ("lambda in chamber", c.scales()),
                ("sigma in chamber", c.locations()),
            ];
            vec![
                Branch {
                    label: "d2+",
                    hypotheses: c.chambers(&vecs, d),
                },
                Branch {
                    label: "e2+",
                    hypotheses: c.chambers(&vecs, e),
                },
            ]
        }
        TheoremId::CountHr | TheoremId::CountRh | TheoremId::CountLr => {
            let (u, v) = (c.u(), c.v());
            let lhs = u[0].count as u64 * v[1].count as u64;
            let rhs = v[0].count as u64 * u[1].count as u64;
            common.push(c.equal_components());
            common.push(pred(
                "n1 n2* >= n1* n2",
                lhs >= rhs,
                format!("{lhs} vs {rhs}"),
            ));
            let vecs = [
                ("lambda in chamber", c.scales()),
                ("sigma in chamber", c.locations()),
            ];
            let (d_aging, e_aging) = match id {
                TheoremId::CountHr => (
                    c.aging("baseline IFR", AgingNotion::FR, Trend::Increasing),
                    c.aging("baseline DPFR", AgingNotion::PFR, Trend::Decreasing),
                ),
                TheoremId::CountRh => (
                    c.aging("baseline DPRFR", AgingNotion::PRFR, Trend::Decreasing),
                    c.aging("baseline IRFR", AgingNotion::RFR, Trend::Increasing),
                ),
                _ => (
                    c.aging("baseline IPLR", AgingNotion::PLR, Trend::Increasing),
                    c.aging("baseline DLR", AgingNotion::LR, Trend::Increasing),
                ),
            };
            let mut dh = vec![d_aging];
            dh.extend(c.chambers(&vecs, d));
            let mut eh = vec![e_aging];
            eh.extend(c.chambers(&vecs, e));
            vec![
                Branch {
                    label: "d2+",
                    hypotheses: dh,
                },
                Branch {
                    label: "e2+",
                    hypotheses: eh,
                },
            ]
        }
        TheoremId::ScaleStar | TheoremId::ScaleDisp | TheoremId::ScaleLorenz => {
            common.push(c.equal_counts());
            common.extend(c.common_location());
            let mut hs = Vec::new();
            if id == TheoremId::ScaleLorenz {
                let [n1, n2] = Ctx::pair(c.u(), |g| g.count as f64);
                let [r1, r2] = c.weights();
                hs.push(pred("n1 >= n2", n1 >= n2, format!("n = ({n1}, {n2})")));
                hs.push(pred("r1 >= r2", r1 >= r2, format!("r = ({r1}, {r2})")));
            } else {
                hs.push(c.mass_order(true, false));
            }
            hs.extend(c.chambers(
                &[
                    ("lambda in chamber", c.scales()),
                    ("theta in chamber", c.v_scales()),
                ],
                d,
            ));
            hs.push(c.scale_ratio());
            hs.push(c.density_decreasing("baseline concave"));
            hs.push(c.aging("baseline IPLR", AgingNotion::PLR, Trend::Increasing));
            if id != TheoremId::ScaleLorenz {
                let [n1, n2] = Ctx::pair(c.u(), |g| g.count as f64);
                let [r1, r2] = c.weights();
                hs.push(proof_only(c.density_decreasing("density decreasing")));
                hs.push(proof_only(pred(
                    "n2 <= n1",
                    n2 <= n1,
                    format!("n = ({n1}, {n2})"),
                )));
                hs.push(proof_only(pred(
                    "r2 <= r1",
                    r2 <= r1,
                    format!("r = ({r1}, {r2})"),
                )));
            }
            single(hs)
        }
        TheoremId::ScaleRs => {
            common.push(c.equal_counts());
            common.extend(c.common_location());
            let mut hs = vec![c.mass_order(false, false)];
            hs.extend(c.chambers(
                &[
                    ("lambda in chamber", c.scales()),
                    ("theta in chamber", c.v_scales()),
                ],
                e,
            ));
            hs.push(c.scale_ratio());
            hs.push(c.density_decreasing("density decreasing"));
            single(hs)
        }
    };
    Ok(HypothesisSets { common, branches })
}

/// Direction claimed for `check_order(U, V, relation)`.
pub(super) fn claimed_direction(id: TheoremId, s: &Scenario) -> ClaimedDirection {
    match id {
        TheoremId::CountSt => {
            let total = |g: &[ComponentGroup; 2]| g[0].count + g[1].count;
            let (n, m) = (total(&s.u_groups), total(&s.v_groups));
            match n.cmp(&m) {
                std::cmp::Ordering::Less => ClaimedDirection::Forward,
                std::cmp::Ordering::Greater => ClaimedDirection::Backward,
                std::cmp::Ordering::Equal => ClaimedDirection::Either,
            }
        }
        TheoremId::ScaleRs => ClaimedDirection::Forward,
        _ => ClaimedDirection::Backward,
    }
}
