//! Tolerance-aware monotonicity classification of sampled sequences.
//!
//! Shared by the aging classifier and the order checks so both apply the same
//! tie policy: a step whose magnitude is within `abs + rel * max(|a|, |b|)` is
//! a tie; anything larger is strict.

use serde::{Deserialize, Serialize};

/// Comparison tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slack {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Slack {
    fn default() -> Self {
        Self {
            abs: 1e-9,
            rel: 1e-9,
        }
    }
}

/// One compared step `a -> b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    /// +1 when `b` exceeds `a` beyond tolerance, -1 when it falls short, 0 on ties.
    pub sign: i8,
    /// `|b - a|` in units of the tolerance; infinite for finite/infinite pairs.
    pub strength: f64,
}

impl Slack {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }

    pub fn tolerance(&self, a: f64, b: f64) -> f64 {
        self.abs + self.rel * a.abs().max(b.abs())
    }

    /// Compares `a` against `b` on the extended real line. `None` if either is NaN.
    pub fn compare(&self, a: f64, b: f64) -> Option<Step> {
        if a.is_nan() || b.is_nan() {
            return None;
        }
        if a.is_infinite() || b.is_infinite() {
            return Some(if a == b {
                Step {
                    sign: 0,
                    strength: 0.0,
                }
            } else {
                Step {
                    sign: if b > a { 1 } else { -1 },
                    strength: f64::INFINITY,
                }
            });
        }
        let tol = self.tolerance(a, b);
        let diff = b - a;
        let strength = diff.abs() / tol;
        let sign = if diff.abs() <= tol {
            0
        } else if diff > 0.0 {
            1
        } else {
            -1
        };
        Some(Step { sign, strength })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonotoneClass {
    Increasing,
    Decreasing,
    Constant,
    NonMonotone,
    /// Too few usable points to classify.
    Inconclusive,
}

impl MonotoneClass {
    /// Nondecreasing in the weak sense (constant counts).
    pub fn is_weakly_increasing(self) -> bool {
        matches!(self, Self::Increasing | Self::Constant)
    }

    pub fn is_weakly_decreasing(self) -> bool {
        matches!(self, Self::Decreasing | Self::Constant)
    }
}

/// Outcome of a grid-based monotonicity check, valid on the probed points only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneVerdict {
    pub classification: MonotoneClass,
    /// First pair `(t1, t2)`, `t1 < t2`, whose step opposes the first strict step seen.
    pub witness: Option<(f64, f64)>,
    pub slack: Slack,
}

/// Scan of consecutive steps of a sequence, indexed by the left point of each step.
#[derive(Debug, Clone, Default)]
pub(crate) struct StepScan {
    pub usable: usize,
    pub first_up: Option<usize>,
    pub first_down: Option<usize>,
    pub strongest_up: Option<(usize, f64)>,
    pub strongest_down: Option<(usize, f64)>,
}

impl StepScan {
    pub fn class(&self) -> MonotoneClass {
        match (self.first_up, self.first_down) {
            (None, None) => MonotoneClass::Constant,
            (Some(_), None) => MonotoneClass::Increasing,
            (None, Some(_)) => MonotoneClass::Decreasing,
            (Some(_), Some(_)) => MonotoneClass::NonMonotone,
        }
    }
}

/// Scans `values` (NaNs already removed) step by step.
pub(crate) fn scan_steps(values: &[f64], slack: &Slack) -> StepScan {
    let mut scan = StepScan {
        usable: values.len(),
        ..StepScan::default()
    };
    for (i, w) in values.windows(2).enumerate() {
        let Some(step) = slack.compare(w[0], w[1]) else {
            continue;
        };
        let (first, strongest) = match step.sign {
            1 => (&mut scan.first_up, &mut scan.strongest_up),
            -1 => (&mut scan.first_down, &mut scan.strongest_down),
            _ => continue,
        };
        first.get_or_insert(i);
        if strongest.map_or(true, |(_, s)| step.strength > s) {
            *strongest = Some((i, step.strength));
        }
    }
    scan
}

/// Classifies `(x, value)` samples, `x` increasing. Points with NaN values are
/// skipped; fewer than `min_points` usable samples yield `Inconclusive`.
pub fn classify_points(points: &[(f64, f64)], slack: Slack, min_points: usize) -> MonotoneVerdict {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|(_, v)| !v.is_nan())
        .collect();
    if usable.len() < min_points.max(2) {
        return MonotoneVerdict {
            classification: MonotoneClass::Inconclusive,
            witness: None,
            slack,
        };
    }
    let values: Vec<f64> = usable.iter().map(|p| p.1).collect();
    let scan = scan_steps(&values, &slack);
    let classification = scan.class();
    let witness = match (scan.first_up, scan.first_down) {
        (Some(up), Some(down)) => {
            let i = up.max(down);
            Some((usable[i].0, usable[i + 1].0))
        }
        _ => None,
    };
    MonotoneVerdict {
        classification,
        witness,
        slack,
    }
}
