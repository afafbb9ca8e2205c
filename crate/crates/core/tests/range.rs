use std::ops::Bound;

use proptest::prelude::*;
use symrc::range::*;

fn opts(cascade: bool, leaf_size: usize) -> RangeTreeOptions {
    RangeTreeOptions { cascade, leaf_size }
}

#[test]
fn empty_tree_counts_zero() {
    let t = build_range_tree(&[], 3, RangeTreeOptions::default());
    assert_eq!(tree_count(&t, &RangeBox::all(3)).unwrap(), 0);
}

#[test]
fn duplicates_are_counted() {
    let pts: Vec<u32> = [4u32, 2].repeat(50);
    for cascade in [false, true] {
        let t = build_range_tree(&pts, 2, opts(cascade, 4));
        assert_eq!(t.count_closed(&[4, 2], &[4, 2]), 50);
        assert_eq!(t.count_closed(&[1, 1], &[3, 9]), 0);
    }
}

#[test]
fn whole_space_and_boundary_semantics() {
    let pts = [1u32, 1, 2, 2, 2, 2, 3, 1];
    let t = build_range_tree(&pts, 2, RangeTreeOptions::default());
    assert_eq!(tree_count(&t, &RangeBox::all(2)).unwrap(), 4);
    let closed = RangeBox::new(vec![Bound::Unbounded; 2], vec![Bound::Included(2); 2]).unwrap();
    let open = RangeBox::new(vec![Bound::Unbounded; 2], vec![Bound::Excluded(2), Bound::Included(2)]).unwrap();
    assert_eq!(tree_count(&t, &closed).unwrap() - tree_count(&t, &open).unwrap(), 2);
    assert!(tree_count(&t, &RangeBox::all(3)).is_err());
}

#[test]
fn tensor_example_box() {
    let t = build_prefix_tensor(&[1, 1, 2, 2, 3, 1], 2, 1 << 20).unwrap();
    assert_eq!(tensor_count(&t, &[0, 0], &[2, 1]).unwrap(), 1);
    assert_eq!(tensor_count(&t, &[1, 1], &[1, 1]).unwrap(), 0);
    assert_eq!(t.count_box(&RangeBox::half_open(&[0, 0], &[3, 3]).unwrap()).unwrap(), 3);
}

/// Prefix counts satisfy the defining recursion
/// `B(i) = #{p = i} + Σ_{∅≠S} (-1)^{|S|+1} B(i - 1_S)`.
#[test]
fn tensor_recursion() {
    let pts = [1u32, 3, 2, 2, 2, 2, 3, 1, 1, 1];
    let t = build_prefix_tensor(&pts, 2, 1 << 20).unwrap();
    for i in 1..=5usize {
        for j in 1..=5usize {
            let exact = pts.chunks(2).filter(|p| p[0] as usize == i && p[1] as usize == j).count() as i64;
            let rec = exact + t.get(&[i - 1, j]) as i64 + t.get(&[i, j - 1]) as i64 - t.get(&[i - 1, j - 1]) as i64;
            assert_eq!(t.get(&[i, j]) as i64, rec);
        }
    }
}

#[test]
fn five_hundred_points_two_hundred_boxes() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let d = 3;
    let pts: Vec<u32> = (0..500 * d).map(|_| rng.random_range(1..=60)).collect();
    let brute = BruteForce::new(&pts, d);
    let tree = build_range_tree(&pts, d, RangeTreeOptions::default());
    for _ in 0..200 {
        let lo: Vec<u32> = (0..d).map(|_| rng.random_range(0..=61)).collect();
        let hi: Vec<u32> = lo.iter().map(|&l| l + rng.random_range(0..30)).collect();
        assert_eq!(tree.count_closed(&lo, &hi), brute.count_closed(&lo, &hi));
    }
}

#[test]
fn memory_estimate_tracks_actual() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for (n, d, cascade) in [(3000usize, 2usize, false), (3000, 2, true), (2000, 3, false), (800, 4, false)] {
        let pts: Vec<u32> = (0..n * d).map(|_| rng.random_range(1..=100)).collect();
        let o = opts(cascade, 8);
        let t = build_range_tree(&pts, d, o);
        let est = RangeTree::estimate_bytes(n, d, 100, o) as f64;
        let actual = t.memory_bytes() as f64;
        assert!(est / actual > 0.5 && est / actual < 2.0, "n={n} d={d}: est {est} actual {actual}");
    }
}

fn points_strategy() -> impl Strategy<Value = (usize, Vec<u32>)> {
    (1usize..=4, 0usize..120).prop_flat_map(|(d, n)| (Just(d), prop::collection::vec(1u32..=12, n * d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn backends_agree((d, pts) in points_strategy(), boxes in prop::collection::vec(prop::collection::vec((0u32..=14, 0u32..=14), 4), 1..20), leaf in 1usize..10) {
        let brute = BruteForce::new(&pts, d);
        let plain = build_range_tree(&pts, d, opts(false, leaf));
        let casc = build_range_tree(&pts, d, opts(true, leaf));
        let n = pts.len() / d;
        let tensor = if n > 0 && pts.iter().all(|&v| v as usize <= n) {
            build_prefix_tensor(&pts, d, 1 << 26).ok()
        } else {
            None
        };
        for b in &boxes {
            let lo: Vec<u32> = b[..d].iter().map(|&(a, c)| a.min(c)).collect();
            let hi: Vec<u32> = b[..d].iter().map(|&(a, c)| a.max(c)).collect();
            let want = brute.count_closed(&lo, &hi);
            prop_assert_eq!(plain.count_closed(&lo, &hi), want);
            prop_assert_eq!(casc.count_closed(&lo, &hi), want);
            if let Some(t) = &tensor {
                prop_assert_eq!(t.count_closed(&lo, &hi), want);
            }
        }
    }
}
