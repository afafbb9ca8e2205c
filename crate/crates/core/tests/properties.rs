use num_traits::Zero;
use proptest::prelude::*;
use symrc::*;

fn tied_points(m: usize, d: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec((0u8..4).prop_map(f64::from), d), m)
}

fn perm(m: usize) -> impl Strategy<Value = Permutation> {
    Just((0..m).collect::<Vec<usize>>()).prop_shuffle().prop_map(|p| Permutation::new(p).unwrap())
}

fn builtins() -> Vec<RankIndicator> {
    let mut v = vec![
        builtin_indicator(IndicatorKind::Tau, 1).unwrap(),
        builtin_indicator(IndicatorKind::TauStar, 1).unwrap(),
    ];
    for d in 1..=3 {
        for k in [IndicatorKind::HoeffD, IndicatorKind::HoeffR, IndicatorKind::PartialP, IndicatorKind::JointJ] {
            v.push(builtin_indicator(k, d).unwrap());
        }
    }
    v
}

fn log_map(v: f64) -> f64 {
    v.signum() * (v.abs() + 10.0).ln()
}

/// Small discrete law on `{0,1,2}^d` with random integer weights.
fn small_law(d: usize) -> impl Strategy<Value = PointMass> {
    prop::collection::vec((prop::collection::vec((0u8..3).prop_map(f64::from), d), 1u64..4), 1..=3)
        .prop_map(|pw| {
            let (p, w): (Vec<_>, Vec<_>) = pw.into_iter().unzip();
            PointMass::new(p, w).unwrap()
        })
}

fn small_joint(r: usize, s: usize) -> impl Strategy<Value = DiscreteDist> {
    prop::collection::vec((prop::collection::vec((0u8..3).prop_map(f64::from), r + s), 1u64..4), 1..=3)
        .prop_map(move |pw| {
            let (p, w): (Vec<_>, Vec<_>) = pw.into_iter().unzip();
            DiscreteDist::from_weights(r, s, p, w).unwrap()
        })
}

fn sample_data(n: std::ops::RangeInclusive<usize>, r: usize, s: usize) -> impl Strategy<Value = Dataset> {
    n.prop_flat_map(move |n| tied_points(n, r + s)).prop_map(move |rows| Dataset::from_rows(&rows, r, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn indicators_depend_only_on_ranks(w in tied_points(7, 3)) {
        for ind in builtins() {
            let m = ind.order();
            let d = ind.dim();
            let pts: Vec<Vec<f64>> = w.iter().take(m).map(|p| p[..d].to_vec()).collect();
            let ranks = joint_ranks(&pts).unwrap().columns();
            prop_assert_eq!(ind.eval_points(&pts).unwrap(), ind.eval_points(&ranks).unwrap(), "{}", ind.name());
        }
    }

    #[test]
    fn ranks_survive_increasing_maps(w in tied_points(6, 2), shift in -5.0f64..5.0) {
        let r0 = joint_ranks(&w).unwrap();
        for f in [log_map as fn(f64) -> f64, |v: f64| v * v * v + v, f64::exp] {
            let mapped: Vec<Vec<f64>> = w.iter().map(|p| p.iter().map(|&v| f(v + shift)).collect()).collect();
            prop_assert_eq!(&joint_ranks(&mapped).unwrap(), &r0);
        }
    }

    #[test]
    fn group_action_is_an_action(a in perm(6), b in perm(6), w in tied_points(6, 1)) {
        let id = Permutation::identity(6);
        prop_assert_eq!(apply_perm(&id, &w).unwrap(), w.clone());
        let ab = a.compose(&b);
        prop_assert_eq!(apply_perm(&ab, &w).unwrap(), apply_perm(&a, &apply_perm(&b, &w).unwrap()).unwrap());
        prop_assert_eq!(ab.sign(), a.sign() * b.sign());
        prop_assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn accepted_groups_are_balanced(gens in prop::collection::vec(perm(5), 1..3)) {
        if let Ok(g) = make_group(&gens, 5) {
            let total: i32 = g.elements().iter().map(|p| p.sign() as i32).sum();
            prop_assert_eq!(total, 0);
        }
    }

    #[test]
    fn taustar_extensions_invariant_under_12_34(w in tied_points(4, 3)) {
        let g = make_group(
            &[
                Permutation::from_cycles(4, &[&[1, 2]]).unwrap(),
                Permutation::from_cycles(4, &[&[3, 4]]).unwrap(),
            ],
            4,
        )
        .unwrap();
        prop_assert_eq!(g.size(), 4);
        let elems = g.elements();
        for d in 1..=3 {
            for k in [IndicatorKind::PartialP, IndicatorKind::JointJ] {
                let ind = builtin_indicator(k, d).unwrap();
                let pts: Vec<Vec<f64>> = w.iter().map(|p| p[..d].to_vec()).collect();
                let base = ind.eval_points(&pts).unwrap();
                for s in elems {
                    prop_assert_eq!(ind.eval_points(&apply_perm(s, &pts).unwrap()).unwrap(), base);
                }
            }
        }
    }

    #[test]
    fn naive_estimates_are_monotone_invariant(data in sample_data(6..=8, 2, 1)) {
        let mapped = data.map(|c, v| if c == 2 { log_map(v) } else { (v * 0.3).exp() }).unwrap();
        for spec in [SrcSpec::hoeffding_d(2, 1).unwrap(), SrcSpec::partial_taustar(2, 1).unwrap(), SrcSpec::joint_taustar(2, 1).unwrap()] {
            prop_assert_eq!(u_stat_naive(&spec, &data).unwrap(), u_stat_naive(&spec, &mapped).unwrap());
        }
    }

    #[test]
    fn fast_estimates_are_monotone_and_order_invariant(
        data in sample_data(8..=14, 1, 2),
        order in Just((0..14).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let mapped = data.map(|_, v| log_map(v * 7.0 - 3.0)).unwrap();
        let idx: Vec<usize> = order.into_iter().filter(|&i| i < data.n()).collect();
        let shuffled = data.select(&idx).unwrap();
        for st in [Statistic::D, Statistic::R, Statistic::TauP, Statistic::TauJ] {
            let opts = EstimateOptions::default();
            let v = estimate(&st, &data, &opts).unwrap().value;
            prop_assert_eq!(estimate(&st, &mapped, &opts).unwrap().value, v);
            prop_assert_eq!(estimate(&st, &shuffled, &opts).unwrap().value, v);
        }
    }

    #[test]
    fn product_laws_have_zero_population(x in small_law(1), y in small_law(1), x2 in small_law(2)) {
        let dist = DiscreteDist::product(&x, &y).unwrap();
        for spec in [SrcSpec::tau(), SrcSpec::tau2(), SrcSpec::taustar(), SrcSpec::hoeffding_d(1, 1).unwrap()] {
            prop_assert!(population_src(&spec, &dist).unwrap().is_zero(), "{}", spec.name());
        }
        let dist = DiscreteDist::product(&x2, &y).unwrap();
        for spec in [SrcSpec::partial_taustar(2, 1).unwrap(), SrcSpec::joint_taustar(2, 1).unwrap()] {
            prop_assert!(population_src(&spec, &dist).unwrap().is_zero(), "{}", spec.name());
        }
    }

    #[test]
    fn two_factor_and_weighted_forms_agree(dist in small_joint(1, 1), dist2 in small_joint(2, 1)) {
        for (spec, dist) in [
            (SrcSpec::tau(), &dist),
            (SrcSpec::taustar(), &dist),
            (SrcSpec::tau2(), &dist),
            (SrcSpec::hoeffding_d(1, 1).unwrap(), &dist),
            (SrcSpec::partial_taustar(2, 1).unwrap(), &dist2),
            (SrcSpec::joint_taustar(2, 1).unwrap(), &dist2),
        ] {
            let two = population_src_form(&spec, dist, PopulationForm::TwoFactor, DEFAULT_BUDGET).unwrap();
            prop_assert_eq!(population_src_form(&spec, dist, PopulationForm::XWeighted, DEFAULT_BUDGET).unwrap(), two);
            prop_assert_eq!(population_src_form(&spec, dist, PopulationForm::YWeighted, DEFAULT_BUDGET).unwrap(), two);
        }
    }

    #[test]
    fn product_of_covariances_multiplies(dist in small_joint(1, 1)) {
        let (a, b) = (SrcSpec::tau(), SrcSpec::taustar());
        let p = a.product(&b).unwrap();
        prop_assert_eq!(
            population_src(&p, &dist).unwrap(),
            population_src(&a, &dist).unwrap() * population_src(&b, &dist).unwrap()
        );
        let tt = a.product(&a).unwrap();
        prop_assert_eq!(population_src(&tt, &dist).unwrap(), population_src(&SrcSpec::tau2(), &dist).unwrap());
    }

    #[test]
    fn full_cube_ism_is_d(data in sample_data(5..=7, 1, 2)) {
        let ism = ism_to_src(&IsmSpec::full(1, 2, IsmMeasure::Joint).unwrap()).unwrap();
        prop_assert_eq!(u_stat_naive(&ism, &data).unwrap(), u_stat_naive(&SrcSpec::hoeffding_d(1, 2).unwrap(), &data).unwrap());
    }

    #[test]
    fn product_ism_is_r_in_the_plane(data in sample_data(6..=7, 1, 1)) {
        let ism = ism_to_src(&IsmSpec::full(1, 1, IsmMeasure::Product).unwrap()).unwrap();
        prop_assert_eq!(u_stat_naive(&ism, &data).unwrap(), u_stat_naive(&SrcSpec::hoeffding_r(1, 1).unwrap(), &data).unwrap());
    }

    #[test]
    fn spearman_identity_without_ties(perm in Just((0..9).collect::<Vec<usize>>()).prop_shuffle()) {
        let n = perm.len() as i128;
        let x: Vec<f64> = (0..9).map(f64::from).collect();
        let y: Vec<f64> = perm.iter().map(|&p| p as f64).collect();
        let data = Dataset::bivariate(&x, &y).unwrap();
        let u = u_stat_naive(&spearman_ssrc().unwrap(), &data).unwrap();
        let t = u_stat_naive(&SrcSpec::tau(), &data).unwrap();
        let d2: i128 = perm.iter().enumerate().map(|(i, &p)| (i as i128 - p as i128).pow(2)).sum();
        let rs = Exact::from(1) - Exact::new(6 * d2, n * (n * n - 1));
        prop_assert_eq!(rs, (Exact::from(n - 2) * u + Exact::from(3) * t) / Exact::from(n + 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn symmetrisation_routes_agree(w in tied_points(6, 3)) {
        let specs = [
            SrcSpec::tau(),
            SrcSpec::tau2(),
            SrcSpec::taustar(),
            SrcSpec::hoeffding_d(1, 1).unwrap(),
            SrcSpec::hoeffding_r(1, 1).unwrap(),
            SrcSpec::partial_taustar(2, 1).unwrap(),
            SrcSpec::joint_taustar(1, 2).unwrap(),
            SrcSpec::hoeffding_d(2, 1).unwrap(),
        ];
        for spec in specs {
            let m = spec.order();
            let d = spec.r() + spec.s();
            let z: Vec<Vec<f64>> = w.iter().take(m).map(|p| p[..d].to_vec()).collect();
            prop_assert_eq!(
                sym_kernel(&spec, &z, SymRoute::Average).unwrap(),
                sym_kernel(&spec, &z, SymRoute::Rewrite).unwrap(),
                "{}", spec.name()
            );
        }
    }
}

/// κ₁ vanishes and κ₂ factorises under independence.
#[test]
fn projections_under_independence() {
    let x = PointMass::new(vec![vec![0.0], vec![1.0], vec![2.0]], vec![1, 2, 1]).unwrap();
    let y = PointMass::new(vec![vec![0.0], vec![1.0]], vec![1, 2]).unwrap();
    let dist = DiscreteDist::product(&x, &y).unwrap();
    let specs = [
        SrcSpec::taustar(),
        SrcSpec::hoeffding_d(1, 1).unwrap(),
        SrcSpec::partial_taustar(1, 1).unwrap(),
        SrcSpec::joint_taustar(1, 1).unwrap(),
    ];
    let support: Vec<Vec<f64>> = dist.mass().points().to_vec();
    for spec in &specs {
        let m = spec.order();
        for z in &support {
            assert!(kernel_projection(spec, &dist, std::slice::from_ref(z)).unwrap().is_zero(), "{}", spec.name());
        }
        for z1 in &support {
            for z2 in &support {
                let k2 = kernel_projection(spec, &dist, &[z1.clone(), z2.clone()]).unwrap();
                let ax = a_expectation(spec.ix(), spec.group(), &x, &[vec![z1[0]], vec![z2[0]]]).unwrap();
                let ay = a_expectation(spec.iy(), spec.group(), &y, &[vec![z1[1]], vec![z2[1]]]).unwrap();
                let c = Exact::new(4, (m * (m - 1) / 2) as i128);
                assert_eq!(k2, c * ax * ay, "{} at {z1:?} {z2:?}", spec.name());
            }
        }
    }
}

#[test]
fn d_and_taustar_a_functions_under_uniform_law() {
    let d = builtin_indicator(IndicatorKind::HoeffD, 1).unwrap();
    let t = builtin_indicator(IndicatorKind::TauStar, 1).unwrap();
    for (a, b) in [(1, 5), (3, 4), (2, 3), (7, 8), (1, 9)] {
        let f = [Exact::new(a, 10), Exact::new(b, 10)];
        let ed = a_expectation_uniform(&d, &SignedGroup::h_taustar(5), &f).unwrap();
        let et = a_expectation_uniform(&t, &SignedGroup::h_taustar(4), &f).unwrap();
        assert_eq!(ed * Exact::from(3), et);
        let g = [f[1], f[0]];
        let ed2 = a_expectation_uniform(&d, &SignedGroup::h_taustar(5), &g).unwrap();
        assert_eq!(ed2 * Exact::from(3), a_expectation_uniform(&t, &SignedGroup::h_taustar(4), &g).unwrap());
    }
}
