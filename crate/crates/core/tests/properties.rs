use mixorder::baselines::{BaselineDistribution, Functional};
use mixorder::error::Error;
use mixorder::majorization::{compare_vectors, MajorizationMode};
use mixorder::mixture::{build_mixture, ComponentGroup, MixtureModel};
use mixorder::orders::{check_order, GridConfig, Outcome, Relation};
use mixorder::theorems::{
    check_conclusion, sweep, verify, Consistency, SamplerBounds, Scenario, TheoremId,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small() -> GridConfig {
    GridConfig {
        n_points: 301,
        ..GridConfig::default()
    }
}

fn baseline() -> impl Strategy<Value = BaselineDistribution> {
    prop_oneof![
        Just(BaselineDistribution::exponential()),
        (0.6..4.0f64).prop_map(|a| BaselineDistribution::weibull(a).unwrap()),
        (1.5..6.0f64).prop_map(|a| BaselineDistribution::frechet(a).unwrap()),
    ]
}

fn groups() -> impl Strategy<Value = [ComponentGroup; 2]> {
    (
        1..5u32,
        1..5u32,
        0.02..0.98f64,
        0.0..5.0f64,
        0.0..5.0f64,
        0.3..4.0f64,
        0.3..4.0f64,
    )
        .prop_map(|(n1, n2, frac, s1, s2, l1, l2)| {
            let r1 = frac / n1 as f64;
            let r2 = (1.0 - n1 as f64 * r1) / n2 as f64;
            [
                ComponentGroup::new(n1, r1, s1, l1),
                ComponentGroup::new(n2, r2, s2, l2),
            ]
        })
}

fn model() -> impl Strategy<Value = MixtureModel> {
    (baseline(), groups()).prop_map(|(b, g)| build_mixture(b, g).unwrap())
}

fn decided(o: Outcome) -> bool {
    matches!(o, Outcome::HoldsForward | Outcome::HoldsBackward)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn baseline_identities(b in baseline(), t in 0.01..20.0f64) {
        let (cdf, sf) = (b.cdf(t), b.sf(t));
        prop_assert!((cdf + sf - 1.0).abs() < 1e-12);
        if sf > 1e-12 {
            let h = b.hazard(t).unwrap();
            prop_assert!((h - b.pdf(t) / sf).abs() <= 1e-8 * (1.0 + h));
        }
        // beyond this range the cdf value itself no longer pins down t
        if cdf > 1e-6 && cdf < 1.0 - 1e-6 {
            let q = b.eval(Functional::Quantile, cdf).unwrap();
            prop_assert!((q - t).abs() <= 1e-7 * (1.0 + t));
        }
    }

    #[test]
    fn mixture_cdf_is_a_distribution(m in model(), xs in prop::collection::vec(-1.0..60.0f64, 2..20)) {
        let mut xs = xs;
        xs.sort_by(f64::total_cmp);
        let mut last = 0.0;
        for &x in &xs {
            let c = m.cdf(x);
            prop_assert!((0.0..=1.0).contains(&c));
            prop_assert!(c >= last - 1e-15);
            prop_assert!((c + m.sf(x) - 1.0).abs() < 1e-12);
            prop_assert!(m.pdf(x) >= 0.0);
            last = c;
        }
        prop_assert_eq!(m.cdf(m.support_lo()), 0.0);
        prop_assert!(m.is_proper());
    }

    #[test]
    fn mixture_quantile_inverts_cdf(m in model(), p in 1e-6..(1.0 - 1e-6f64)) {
        let x = m.quantile(p).unwrap();
        prop_assert!((m.cdf(x) - p).abs() < 1e-8);
    }

    #[test]
    fn weight_constraint_is_enforced(b in baseline(), g in groups(), bump in 0.01..0.5f64) {
        let mut g = g;
        g[0].weight += bump;
        let err = build_mixture(b, g).err();
        prop_assert!(matches!(err, Some(Error::WeightConstraint { .. })), "{:?}", err);
    }

    #[test]
    fn model_json_round_trip(m in model()) {
        let json = serde_json::to_string(&m).unwrap();
        let back: MixtureModel = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn majorization_is_reflexive_and_permutation_invariant(
        u in prop::collection::vec(-10.0..10.0f64, 1..9),
        seed in any::<u64>(),
    ) {
        let mut shuffled = u.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        for mode in [MajorizationMode::M, MajorizationMode::WeakSub, MajorizationMode::WeakSuper] {
            prop_assert!(compare_vectors(&u, &shuffled, mode).unwrap().holds);
        }
    }

    #[test]
    fn majorization_implies_both_weak_forms(
        u in prop::collection::vec(0..6i32, 1..9),
        v in prop::collection::vec(0..6i32, 1..9),
    ) {
        let n = u.len().min(v.len());
        let u: Vec<f64> = u[..n].iter().map(|&x| x as f64).collect();
        let v: Vec<f64> = v[..n].iter().map(|&x| x as f64).collect();
        if compare_vectors(&u, &v, MajorizationMode::M).unwrap().holds {
            prop_assert!(compare_vectors(&u, &v, MajorizationMode::WeakSub).unwrap().holds);
            prop_assert!(compare_vectors(&u, &v, MajorizationMode::WeakSuper).unwrap().holds);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn self_comparison_is_equal(m in model()) {
        for r in Relation::ALL {
            prop_assert_eq!(check_order(&m, &m, r, &small()).unwrap().outcome, Outcome::Equal, "{:?}", r);
        }
    }

    #[test]
    fn swapping_inputs_mirrors_verdicts(b in baseline(), ga in groups(), gb in groups()) {
        let a = build_mixture(b.clone(), ga).unwrap();
        let c = build_mixture(b, gb).unwrap();
        for r in [Relation::ST, Relation::HR, Relation::LR, Relation::DISP] {
            let fwd = check_order(&a, &c, r, &small()).unwrap();
            let back = check_order(&c, &a, r, &small()).unwrap();
            prop_assert_eq!(fwd.outcome, back.outcome.reversed(), "{:?}", r);
            if !r.is_monotone() {
                let xs = |v: &[mixorder::orders::Witness]| v.iter().map(|w| (w.x, w.lhs, w.rhs)).collect::<Vec<_>>();
                let mirrored: Vec<_> = back.witnesses.iter().map(|w| (w.x, w.rhs, w.lhs)).collect();
                prop_assert_eq!(xs(&fwd.witnesses), mirrored);
            }
        }
    }

    #[test]
    fn implication_chains_hold(b in baseline(), ga in groups(), gb in groups()) {
        let a = build_mixture(b.clone(), ga).unwrap();
        let c = build_mixture(b, gb).unwrap();
        let out = |r| check_order(&a, &c, r, &small()).unwrap().outcome;
        let lr = out(Relation::LR);
        if decided(lr) {
            for r in [Relation::HR, Relation::RH, Relation::ST] {
                prop_assert_eq!(out(r), lr, "{:?}", r);
            }
        }
        let star = out(Relation::STAR);
        if decided(star) {
            let lz = out(Relation::LORENZ);
            prop_assert!(lz == star || lz == Outcome::Equal, "star {:?} lorenz {:?}", star, lz);
        }
    }

    #[test]
    fn star_and_disp_are_invariant_under_rescaling_and_shift(
        b in baseline(), ga in groups(), gb in groups(), c in 0.2..5.0f64, shift in 0.0..5.0f64,
    ) {
        let a = build_mixture(b.clone(), ga).unwrap();
        let d = build_mixture(b.clone(), gb).unwrap();
        let map = |g: [ComponentGroup; 2], f: &dyn Fn(&mut ComponentGroup)| {
            let mut g = g;
            g.iter_mut().for_each(f);
            build_mixture(b.clone(), g).unwrap()
        };
        let scale = |g: &mut ComponentGroup| { g.location *= c; g.scale *= c; };
        let star = check_order(&a, &d, Relation::STAR, &small()).unwrap().outcome;
        let star_scaled = check_order(&map(ga, &scale), &map(gb, &scale), Relation::STAR, &small()).unwrap().outcome;
        prop_assert_eq!(star, star_scaled);
        let moved = |g: &mut ComponentGroup| g.location += shift;
        let disp = check_order(&a, &d, Relation::DISP, &small()).unwrap().outcome;
        let disp_shifted = check_order(&map(ga, &moved), &map(gb, &moved), Relation::DISP, &small()).unwrap().outcome;
        prop_assert_eq!(disp, disp_shifted);
    }

    #[test]
    fn equal_parameter_scenarios_are_equal(b in baseline(), g in groups()) {
        let s = Scenario::new(b, g, g);
        for id in TheoremId::ALL {
            prop_assert_eq!(check_conclusion(id, &s, &small()).unwrap().outcome, Outcome::Equal);
        }
    }
}

/// Composition sampling: pick a group by mass, then invert the baseline cdf.
fn sample(m: &MixtureModel, rng: &mut ChaCha8Rng) -> f64 {
    let g = m.groups();
    let i = if rng.gen::<f64>() < g[0].mass() { 0 } else { 1 };
    let u: f64 = rng.gen_range(1e-300..1.0);
    g[i].location + g[i].scale * m.baseline().quantile(u).unwrap()
}

#[test]
fn st_verdicts_agree_with_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = GridConfig::default();
    let mut checked = 0;
    let n = 1_000_000;
    while checked < 20 {
        let b = BaselineDistribution::weibull(rng.gen_range(0.8..3.0)).unwrap();
        let draw = |rng: &mut ChaCha8Rng| {
            let n1 = rng.gen_range(1..4u32);
            let n2 = rng.gen_range(1..4u32);
            let r1 = rng.gen_range(0.05..0.95) / n1 as f64;
            [
                ComponentGroup::new(n1, r1, rng.gen_range(0.0..3.0), rng.gen_range(0.5..3.0)),
                ComponentGroup::new(
                    n2,
                    (1.0 - n1 as f64 * r1) / n2 as f64,
                    rng.gen_range(0.0..3.0),
                    rng.gen_range(0.5..3.0),
                ),
            ]
        };
        let a = build_mixture(b.clone(), draw(&mut rng)).unwrap();
        let c = build_mixture(b, draw(&mut rng)).unwrap();
        let verdict = check_order(&a, &c, Relation::ST, &cfg).unwrap().outcome;
        if !decided(verdict) {
            continue;
        }
        checked += 1;
        let (lo, hi) = if verdict == Outcome::HoldsForward {
            (&a, &c)
        } else {
            (&c, &a)
        };
        let xs: Vec<f64> = (1..20)
            .map(|i| lo.quantile(i as f64 / 20.0).unwrap())
            .collect();
        let mut above_lo = vec![0usize; xs.len()];
        let mut above_hi = vec![0usize; xs.len()];
        for _ in 0..n {
            let (s, t) = (sample(lo, &mut rng), sample(hi, &mut rng));
            for (k, &x) in xs.iter().enumerate() {
                above_lo[k] += (s > x) as usize;
                above_hi[k] += (t > x) as usize;
            }
        }
        for k in 0..xs.len() {
            let (p, q) = (above_lo[k] as f64 / n as f64, above_hi[k] as f64 / n as f64);
            let band = 3.0 * ((p * (1.0 - p) + q * (1.0 - q)) / n as f64).sqrt();
            assert!(p <= q + band + 1e-12, "x {} empirical sf {p} vs {q}", xs[k]);
        }
    }
}

#[test]
fn sweep_summaries_partition_and_replay() {
    let cfg = small();
    for id in [TheoremId::CountHr, TheoremId::ScaleStar, TheoremId::CountSt] {
        let s = sweep(id, &SamplerBounds::default(), 9, 40, &cfg).unwrap();
        let again = sweep(id, &SamplerBounds::default(), 9, 40, &cfg).unwrap();
        assert_eq!(s, again);
        assert!(s.attempted >= s.hypothesis_hits);
        assert_eq!(
            s.hypothesis_hits,
            s.consistent_count + s.inconclusive_count + s.contradiction_scenarios.len()
        );
        for sc in &s.contradiction_scenarios {
            let (a, b) = (verify(id, sc, &cfg).unwrap(), verify(id, sc, &cfg).unwrap());
            assert_eq!(a, b);
            assert_eq!(a.consistent, Consistency::ContradictsPaper);
            let json = serde_json::to_string(sc).unwrap();
            assert_eq!(&serde_json::from_str::<Scenario>(&json).unwrap(), sc);
        }
    }
}

#[test]
fn swapping_counts_flips_count_theorem_conclusions() {
    let cfg = small();
    let s = sweep(TheoremId::CountHr, &SamplerBounds::default(), 5, 1, &cfg).unwrap();
    assert_eq!(s.consistent_count, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let sigma = [rng.gen_range(1.0..5.0), rng.gen_range(0.1..1.0)];
        let lam = [rng.gen_range(1.5..4.0), rng.gen_range(0.3..1.5)];
        let g = |n: u32, r: f64, i: usize| ComponentGroup::new(n, r, sigma[i], lam[i]);
        let sc = Scenario::new(
            BaselineDistribution::weibull(2.0).unwrap(),
            [g(3, 0.2, 0), g(2, 0.2, 1)],
            [g(2, 0.2, 0), g(3, 0.2, 1)],
        );
        let swapped = Scenario::new(sc.baseline.clone(), sc.v_groups, sc.u_groups);
        for id in [TheoremId::CountHr, TheoremId::CountLr] {
            let a = check_conclusion(id, &sc, &cfg).unwrap().outcome;
            let b = check_conclusion(id, &swapped, &cfg).unwrap().outcome;
            assert_eq!(a, Outcome::HoldsBackward, "{id}");
            assert_eq!(b, Outcome::HoldsForward, "{id}");
        }
    }
}
