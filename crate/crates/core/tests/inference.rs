use symrc::inference::*;
use symrc::*;

fn var(v: &[f64]) -> f64 {
    let m = v.iter().sum::<f64>() / v.len() as f64;
    v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (v.len() - 1) as f64
}

fn default() -> EstimateOptions {
    EstimateOptions::default()
}

#[test]
fn maximal_statistic_gets_smallest_p() {
    let x: Vec<f64> = (0..12).map(f64::from).collect();
    let data = Dataset::bivariate(&x, &x).unwrap();
    let t = permutation_test(&data, &Statistic::Tau, 99, 5, &default()).unwrap();
    assert_eq!(t.observed, 1.0);
    assert_eq!(t.p_value, 1.0 / 100.0);
    assert_eq!(t.raw_proportion, 0.0);
    assert_eq!(t.reference.len(), 99);
}

#[test]
fn constant_x_gives_p_one() {
    let data = Dataset::bivariate(&[2.0; 10], &(0..10).map(f64::from).collect::<Vec<_>>()).unwrap();
    let t = permutation_test(&data, &Statistic::TauStar, 30, 1, &default()).unwrap();
    assert_eq!(t.p_value, 1.0);
    assert_eq!(t.raw_proportion, 1.0);
}

#[test]
fn same_seed_same_result() {
    let g = Generator::ProductNoise { sigma: 1.0 };
    let data = g.sample(25, &mut substream(9, Domain::Observed, 0)).unwrap();
    let a = permutation_test(&data, &Statistic::D, 50, 42, &default()).unwrap();
    let b = permutation_test(&data, &Statistic::D, 50, 42, &default()).unwrap();
    assert_eq!(a.reference, b.reference);
    assert_eq!(a.p_value, b.p_value);
    let c = permutation_test(&data, &Statistic::D, 50, 43, &default()).unwrap();
    assert_ne!(a.reference, c.reference);
}

#[test]
fn p_value_definition() {
    let r: Vec<Exact> = [1, 2, 3, 3, 5].iter().map(|&v| Exact::from(v)).collect();
    assert_eq!(p_values(&Exact::from(3), &r), (4.0 / 6.0, 3.0 / 5.0));
    assert_eq!(p_values(&Exact::from(9), &r), (1.0 / 6.0, 0.0));
}

#[test]
fn bad_arguments_are_input_errors() {
    let data = Dataset::bivariate(&[1.0, 2.0, 3.0, 4.0, 5.0], &[1.0, 3.0, 2.0, 5.0, 4.0]).unwrap();
    assert!(matches!(permutation_test(&data, &Statistic::Tau, 0, 1, &default()), Err(Error::Input(_))));
    assert!(matches!(Generator::from_name("xor4", 0.0, 0.0), Err(Error::Input(_))));
    assert!(matches!(NullLawSpec::new(0, NullScale::TauStar), Err(Error::Input(_))));
    // n = 5 is too small for R at r = s = 1 (needs 6); the replicate is named.
    let e = permutation_test(&data, &Statistic::R, 3, 1, &default()).unwrap_err();
    assert!(matches!(e, Error::Input(_)));
}

#[test]
fn replicate_failures_carry_the_index() {
    let g = Generator::GaussianIndep { r: 1, s: 1 };
    let tight = EstimateOptions { enumeration_budget: 10, ..Default::default() };
    let e = ReferenceBank::build(&g, &Statistic::Tau2, 8, 3, 1, &tight).unwrap_err();
    assert!(matches!(e, Error::Capacity(ref m) if m.contains("reference sample")));
}

#[test]
fn null_law_moments() {
    let spec = NullLawSpec::new(100, NullScale::Hoeffding).unwrap();
    let scale = NullScale::Hoeffding.value();
    let z: Vec<f64> = sample_null_z(&spec, 100_000, 11).unwrap().iter().map(|v| v / scale).collect();
    let mean = z.iter().sum::<f64>() / z.len() as f64;
    assert!(mean.abs() < 0.02, "mean {mean}");
    let zeta4 = std::f64::consts::PI.powi(4) / 90.0;
    let want = 2.0 * zeta4 * zeta4;
    assert!((want - 2.3431).abs() < 1e-3);
    assert!((var(&z) / want - 1.0).abs() < 0.01, "variance {} vs {want}", var(&z));
    assert!(spec.tail_variance() / spec.variance() < 1e-6);
    assert!(spec.tail_variance() > 0.0);
}

#[test]
fn tau_star_law_is_36_times_hoeffding() {
    let a = sample_null_z(&NullLawSpec::new(30, NullScale::TauStar).unwrap(), 200, 3).unwrap();
    let b = sample_null_z(&NullLawSpec::new(30, NullScale::Hoeffding).unwrap(), 200, 3).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x - 36.0 * y).abs() <= 1e-12 * x.abs().max(1e-300));
    }
}

#[test]
fn ks_distance_matches_brute_force() {
    let mut rng = substream(1, Domain::Null, 0);
    use rand::Rng;
    let a: Vec<f64> = (0..57).map(|_| rng.random_range(0..20) as f64).collect();
    let b: Vec<f64> = (0..41).map(|_| rng.random_range(0..25) as f64).collect();
    let cdf = |v: &[f64], t: f64| v.iter().filter(|&&x| x <= t).count() as f64 / v.len() as f64;
    let brute = a.iter().chain(&b).map(|&t| (cdf(&a, t) - cdf(&b, t)).abs()).fold(0.0, f64::max);
    assert!((ks_distance(&a, &b) - brute).abs() < 1e-15);
    assert_eq!(ks_distance(&a, &a), 0.0);
    assert!((ks_critical(0.01, 2000, 2000) - 1.6276 * (4000.0f64 / 4_000_000.0).sqrt()).abs() < 1e-3);
}

#[test]
fn generators_have_declared_shapes() {
    for name in ["product-noise", "exp-noise", "xor2", "xor3", "mixed-expit", "gaussian-indep", "gaussian-correlated-y"] {
        let g = Generator::from_name(name, 0.5, 0.3).unwrap();
        let d = g.sample(20, &mut substream(1, Domain::Observed, 0)).unwrap();
        assert_eq!((d.r(), d.s()), g.dims(), "{name}");
        assert_eq!(g.name(), name);
        let ind = g.sample_independent(20, &mut substream(1, Domain::Reference, 0)).unwrap();
        assert_eq!(ind.n(), 20);
    }
    let xor = Generator::Xor { r: 3 }.sample(50, &mut substream(2, Domain::Observed, 0)).unwrap();
    for i in 0..50 {
        let parity = xor.x(i).iter().sum::<f64>() as u32 % 2;
        assert_eq!(xor.y(i)[0], parity as f64);
    }
}

#[test]
fn null_calibration() {
    let g = Generator::from_name("gaussian-indep", 0.0, 0.0).unwrap();
    let opts = PowerOptions { b: 500, ..Default::default() };
    let rows = power_sim(&g, &[Statistic::D], 30, 1000, 0.05, 21, &opts).unwrap();
    let p = rows[0].power;
    assert!((0.03..=0.07).contains(&p), "rejection rate {p}");
    assert!((rows[0].std_error - (p * (1.0 - p) / 1000.0).sqrt()).abs() < 1e-15);
}

#[test]
fn noiseless_product_is_detected() {
    let g = Generator::ProductNoise { sigma: 0.0 };
    let opts = PowerOptions { b: 200, ..Default::default() };
    let stats = [Statistic::D, Statistic::R, Statistic::TauP];
    let rows = power_sim(&g, &stats, 50, 100, 0.05, 4, &opts).unwrap();
    // D and R are consistent for continuous laws; τ*_P is only conjectured to be.
    assert!(rows[0].power > 0.9, "D power {}", rows[0].power);
    assert!(rows[1].power > 0.9, "R power {}", rows[1].power);
    assert!(rows[2].power > 0.5, "tauP power {}", rows[2].power);
}

#[test]
fn permutation_scheme_agrees_with_bank_roughly() {
    let g = Generator::Xor { r: 2 };
    let bank = PowerOptions { b: 100, ..Default::default() };
    let perm = PowerOptions { b: 100, scheme: ReferenceScheme::Permutation, ..Default::default() };
    let a = power_sim(&g, &[Statistic::D], 40, 40, 0.05, 8, &bank).unwrap();
    let b = power_sim(&g, &[Statistic::D], 40, 40, 0.05, 8, &perm).unwrap();
    assert!((a[0].power - b[0].power).abs() <= 0.3);
}

#[test]
fn degenerate_scaling() {
    // Var(sqrt(n) U_D) falls as n grows: n U_D has a non-degenerate limit.
    let g = Generator::GaussianIndep { r: 1, s: 1 };
    let v: Vec<f64> = [30usize, 60, 120]
        .iter()
        .map(|&n| {
            let vals: Vec<f64> = (0..400)
                .map(|k| {
                    let d = g.sample(n, &mut substream(n as u64, Domain::Observed, k)).unwrap();
                    (n as f64).sqrt() * u_d_fast(&d, Backend::Auto).map(|v| to_f64(&v)).unwrap()
                })
                .collect();
            var(&vals)
        })
        .collect();
    assert!(v[0] > v[1] && v[1] > v[2], "{v:?}");
}

#[test]
fn correlation_of_y_shifts_the_joint_tau_null() {
    // Under independence with r = 1, s = 2, the law of n U_{τ*_J} depends on
    // the correlation inside Y.
    let bank = |rho: f64| {
        let g = Generator::GaussianCorrelatedY { rho };
        ReferenceBank::build(&g, &Statistic::TauJ, 70, 2000, 13, &default()).unwrap().values
    };
    let (a, b) = (bank(0.0), bank(0.8));
    let d = ks_distance(&a, &b);
    assert!(d > ks_critical(0.01, a.len(), b.len()), "KS {d}");
}
