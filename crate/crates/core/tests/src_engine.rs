use symrc::*;

fn pts(v: &[[f64; 2]]) -> Vec<Vec<f64>> {
    v.iter().map(|p| p.to_vec()).collect()
}

fn example_2_2() -> DiscreteDist {
    DiscreteDist::from_weights(1, 1, pts(&[[1.0, 0.0], [0.0, 1.0]]), vec![1, 1]).unwrap()
}

#[test]
fn taustar_kernel_on_identity_quadruple() {
    let z = pts(&[[1.0, 1.0], [2.0, 2.0], [3.0, 3.0], [4.0, 4.0]]);
    let spec = SrcSpec::taustar();
    assert_eq!(unsym_kernel(&spec, &z).unwrap(), 1);
    assert_eq!(sym_kernel(&spec, &z, SymRoute::Average).unwrap(), Exact::new(2, 3));
    assert_eq!(sym_kernel(&spec, &z, SymRoute::Rewrite).unwrap(), Exact::new(2, 3));
    let ds = Dataset::from_rows(&z, 1, 1).unwrap();
    assert_eq!(u_stat_naive(&spec, &ds).unwrap(), Exact::new(2, 3));
}

#[test]
fn tau_kernels() {
    let spec = SrcSpec::tau();
    assert_eq!(unsym_kernel(&spec, &pts(&[[1.0, 2.0], [2.0, 1.0]])).unwrap(), -1);
    assert_eq!(sym_kernel(&spec, &pts(&[[1.0, 1.0], [2.0, 2.0]]), SymRoute::Average).unwrap(), Exact::from(1));
}

#[test]
fn constant_x_gives_zero_kernel() {
    let z = pts(&[[1.0, 4.0], [1.0, 2.0], [1.0, 3.0], [1.0, 1.0]]);
    assert_eq!(unsym_kernel(&SrcSpec::taustar(), &z).unwrap(), 0);
    let all_equal = pts(&[[1.0, 1.0]; 4]);
    assert_eq!(sym_kernel(&SrcSpec::taustar(), &all_equal, SymRoute::Average).unwrap(), Exact::from(0));
}

#[test]
fn naive_requires_enough_points() {
    let ds = Dataset::from_rows(&pts(&[[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]]), 1, 1).unwrap();
    assert!(matches!(u_stat_naive(&SrcSpec::taustar(), &ds), Err(Error::Input(_))));
    assert!(matches!(
        u_stat_naive_with_budget(&SrcSpec::tau(), &ds, 2),
        Err(Error::Capacity(_))
    ));
}

#[test]
fn sym_kernel_order_guard() {
    let spec = SrcSpec::hoeffding_r(3, 3).unwrap();
    let z = vec![vec![0.0; 6]; 10];
    assert!(matches!(sym_kernel(&spec, &z, SymRoute::Average), Err(Error::Capacity(_))));
}

#[test]
fn xor_joint_taustar_population() {
    let j2 = SrcSpec::joint_taustar(2, 1).unwrap();
    assert_eq!(population_src(&j2, &DiscreteDist::xor(2).unwrap()).unwrap(), Exact::from(0));
    let j3 = SrcSpec::joint_taustar(3, 1).unwrap();
    assert_eq!(population_src(&j3, &DiscreteDist::xor(3).unwrap()).unwrap(), Exact::new(1, 1024));
}

#[test]
fn example_2_2_d_vanishes_r_does_not() {
    let d = example_2_2();
    assert_eq!(population_src(&SrcSpec::hoeffding_d(1, 1).unwrap(), &d).unwrap(), Exact::from(0));
    assert_eq!(population_src(&SrcSpec::hoeffding_r(1, 1).unwrap(), &d).unwrap(), Exact::new(1, 64));
}

#[test]
fn binarization_of_example_2_2() {
    let b = binarization_minors(&example_2_2(), &[0.0, 0.0]).unwrap();
    let half = Exact::new(1, 2);
    let zero = Exact::from(0);
    assert_eq!(b.matrix(), vec![vec![zero, half], vec![half, zero]]);
    assert_eq!(b.block_minor(&[0], &[1], &[0], &[1]).unwrap(), Exact::new(-1, 4));
    assert_eq!(b.tensor().iter().sum::<Exact>(), Exact::from(1));
    assert!(b.block_minor(&[0], &[0], &[0], &[1]).is_err());
}

#[test]
fn spearman_examples() {
    let sp = spearman_ssrc().unwrap();
    let x: Vec<f64> = (1..=6).map(|v| v as f64).collect();
    let y: Vec<f64> = x.iter().map(|v| v * v).collect();
    assert_eq!(u_stat_naive(&sp, &Dataset::bivariate(&x, &y).unwrap()).unwrap(), Exact::from(1));
    let rev = Dataset::bivariate(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap();
    assert_eq!(u_stat_naive(&sp, &rev).unwrap(), Exact::from(-1));
}

#[test]
fn ism_validation() {
    assert!(IsmSpec::new(1, 1, vec![], vec![1], vec![(vec![0], vec![0])]).is_err());
    assert!(IsmSpec::new(1, 1, vec![1], vec![1], vec![(vec![0], vec![])]).is_err());
    assert!(IsmSpec::new(2, 1, vec![1], vec![1], vec![(vec![0, 0], vec![0])]).is_err());
    let overlap = [(vec![1, 2], vec![1]), (vec![2, 3], vec![1])];
    assert!(matches!(ssrc_partition(2, 1, &overlap, IsmMeasure::Joint), Err(Error::Validation(_))));
    let gap = [(vec![1, 2], vec![1])];
    assert!(matches!(ssrc_partition(2, 1, &gap, IsmMeasure::Joint), Err(Error::Validation(_))));
}

#[test]
fn full_cube_partition_is_d() {
    let ss = ssrc_partition(1, 1, &[(vec![1], vec![1])], IsmMeasure::Joint).unwrap();
    assert_eq!(ss.terms().len(), 1);
    let dist = DiscreteDist::from_weights(
        1,
        1,
        pts(&[[0.0, 0.0], [1.0, 2.0], [2.0, 1.0], [1.0, 1.0]]),
        vec![1, 2, 3, 4],
    )
    .unwrap();
    assert_eq!(
        population_src(&ss, &dist).unwrap(),
        population_src(&SrcSpec::hoeffding_d(1, 1).unwrap(), &dist).unwrap()
    );
}
