//! Majorization and weak majorization of real vectors, plus chamber tests.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MajorizationMode {
    /// `u` majorized by `v`: equal totals, increasing partial sums of `u` dominate.
    #[serde(rename = "m")]
    M,
    /// `u` weakly supermajorized by `v`: prefix sums of `u` dominate for every `j`.
    #[serde(rename = "wsuper")]
    WeakSuper,
    /// `u` weakly submajorized by `v`: suffix sums of `u` are dominated for every `j`.
    #[serde(rename = "wsub")]
    WeakSub,
}

impl std::str::FromStr for MajorizationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "m" => Ok(Self::M),
            "wsuper" => Ok(Self::WeakSuper),
            "wsub" => Ok(Self::WeakSub),
            _ => Err(Error::Usage(format!(
                "unknown majorization mode `{s}` (m, wsuper, wsub)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajorizationVerdict {
    pub holds: bool,
    pub mode: MajorizationMode,
    /// Prefix sums of the increasing arrangement (suffix sums, largest first, for `WeakSub`).
    pub partial_sums_u: Vec<f64>,
    pub partial_sums_v: Vec<f64>,
    pub first_violation: Option<usize>,
}

fn sorted(x: &[f64]) -> Vec<f64> {
    let mut s = x.to_vec();
    s.sort_by(f64::total_cmp);
    s
}

fn prefix_sums(x: &[f64]) -> Vec<f64> {
    x.iter()
        .scan(0.0, |acc, &v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}

fn slack(a: f64, b: f64) -> f64 {
    1e-12 * (1.0 + a.abs().max(b.abs()))
}

/// Decides whether `u` is (weakly) majorized by `v` in the given mode.
pub fn compare_vectors(
    u: &[f64],
    v: &[f64],
    mode: MajorizationMode,
) -> Result<MajorizationVerdict> {
    if u.is_empty() || v.is_empty() {
        return Err(Error::Empty("majorization needs nonempty vectors".into()));
    }
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    if let Some(bad) = u.iter().chain(v).find(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "non-finite vector entry {bad}"
        )));
    }
    let (su, sv) = (sorted(u), sorted(v));
    let n = su.len();
    let (pu, pv, first_violation) = match mode {
        MajorizationMode::M | MajorizationMode::WeakSuper => {
            let (pu, pv) = (prefix_sums(&su), prefix_sums(&sv));
            let mut bad = (0..n).find(|&j| pu[j] < pv[j] - slack(pu[j], pv[j]));
            if mode == MajorizationMode::M && bad.is_none() {
                let (a, b) = (pu[n - 1], pv[n - 1]);
                if (a - b).abs() > slack(a, b) {
                    bad = Some(n - 1);
                }
            }
            (pu, pv, bad)
        }
        MajorizationMode::WeakSub => {
            let rev = |s: &[f64]| prefix_sums(&s.iter().rev().copied().collect::<Vec<_>>());
            let (pu, pv) = (rev(&su), rev(&sv));
            let bad = (0..n).find(|&j| pu[j] > pv[j] + slack(pu[j], pv[j]));
            (pu, pv, bad)
        }
    };
    Ok(MajorizationVerdict {
        holds: first_violation.is_none(),
        mode,
        partial_sums_u: pu,
        partial_sums_v: pv,
        first_violation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chamber {
    /// positive and nonincreasing
    DPlus,
    /// positive and nondecreasing
    EPlus,
    /// positive and constant
    Both,
    Neither,
}

impl Chamber {
    pub fn in_d_plus(self) -> bool {
        matches!(self, Chamber::DPlus | Chamber::Both)
    }

    pub fn in_e_plus(self) -> bool {
        matches!(self, Chamber::EPlus | Chamber::Both)
    }
}

pub fn chamber_of(u: &[f64]) -> Chamber {
    if u.is_empty() || u.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Chamber::Neither;
    }
    let nonincreasing = u.windows(2).all(|w| w[0] >= w[1]);
    let nondecreasing = u.windows(2).all(|w| w[0] <= w[1]);
    match (nonincreasing, nondecreasing) {
        (true, true) => Chamber::Both,
        (true, false) => Chamber::DPlus,
        (false, true) => Chamber::EPlus,
        (false, false) => Chamber::Neither,
    }
}

/// `min(lam)/max(lam) <= min(tht)/max(tht)`.
pub fn scale_ratio_leq(lam: (f64, f64), tht: (f64, f64)) -> Result<bool> {
    for x in [lam.0, lam.1, tht.0, tht.1] {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "scale ratio needs positive values, got {x}"
            )));
        }
    }
    let ratio = |(a, b): (f64, f64)| a.min(b) / a.max(b);
    Ok(ratio(lam) <= ratio(tht))
}

/// `a1` repeated `n1` times followed by `a2` repeated `n2` times.
pub fn expand(a1: f64, n1: u32, a2: f64, n2: u32) -> Vec<f64> {
    std::iter::repeat(a1)
        .take(n1 as usize)
        .chain(std::iter::repeat(a2).take(n2 as usize))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use MajorizationMode::*;

    fn holds(u: &[f64], v: &[f64], m: MajorizationMode) -> bool {
        compare_vectors(u, v, m).unwrap().holds
    }

    #[test]
    fn location_vectors_from_the_crossing_examples() {
        assert!(holds(
            &[6., 6., 6., 8., 8.],
            &[4., 4., 4., 12., 12.],
            WeakSub
        ));
        assert!(holds(
            &[9., 9., 9., 9., 6., 6., 6.],
            &[15., 15., 15., 15., 2., 2., 2.],
            WeakSub
        ));
        assert_eq!(expand(6.0, 3, 8.0, 2), vec![6., 6., 6., 8., 8.]);
    }

    #[test]
    fn basic_relations() {
        assert!(holds(&[1., 2., 3.], &[1., 2., 3.], M));
        assert!(holds(&[2., 2., 2.], &[1., 2., 3.], M));
        assert!(holds(&[2., 2., 2.], &[1., 2., 3.], WeakSuper));
        assert!(holds(&[2., 2., 2.], &[1., 2., 3.], WeakSub));
        assert!(!holds(&[1., 2., 3.], &[2., 2., 2.], M));
        let v = compare_vectors(&[1., 2., 4.], &[1., 2., 3.], M).unwrap();
        assert_eq!(v.first_violation, Some(2));
        assert_eq!(v.partial_sums_u, vec![1., 3., 7.]);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            compare_vectors(&[1.], &[1., 2.], M),
            Err(Error::LengthMismatch(1, 2))
        ));
        assert!(matches!(compare_vectors(&[], &[], M), Err(Error::Empty(_))));
        assert!(scale_ratio_leq((0.0, 1.0), (1.0, 1.0)).is_err());
    }

    #[test]
    fn chambers_and_ratios() {
        assert_eq!(chamber_of(&[2., 1.]), Chamber::DPlus);
        assert_eq!(chamber_of(&[1., 4.]), Chamber::EPlus);
        assert_eq!(chamber_of(&[3., 3.]), Chamber::Both);
        assert_eq!(chamber_of(&[0., 1.]), Chamber::Neither);
        assert!(scale_ratio_leq((4., 1.), (3., 2.)).unwrap());
        assert!(!scale_ratio_leq((2., 2.), (3., 1.)).unwrap());
        assert!(scale_ratio_leq((1., 4.), (2., 3.)).unwrap());
    }

    #[test]
    fn mode_serialization() {
        assert_eq!(serde_json::to_string(&WeakSub).unwrap(), "\"wsub\"");
        assert_eq!("wsuper".parse::<MajorizationMode>().unwrap(), WeakSuper);
    }
}
