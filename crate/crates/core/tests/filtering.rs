use std::sync::Arc;

use agfrft::filtering::{filter_signal, grid_search, loss, wiener_h, FilterH, Grid};
use agfrft::harness::noise::standard_normal;
use agfrft::properties::random_symmetric_gso;
use agfrft::rotations::{AxisKind, Family};
use agfrft::spectral::{build_spectrum, Method, OperatorCache, TransformKind};
use proptest::prelude::*;

fn m(kind: TransformKind) -> Method {
    Method::new(kind, AxisKind::Pitch, Family::DegeneracyFriendly)
}

fn fixture(n: usize, seed: u64) -> (OperatorCache<f64>, Vec<f64>, Vec<f64>) {
    let cache = OperatorCache::new(Arc::new(build_spectrum(&random_symmetric_gso::<f64>(n, seed)).unwrap()));
    let x = standard_normal::<f64>(n, seed + 1);
    let y: Vec<f64> = x.iter().zip(standard_normal::<f64>(n, seed + 2)).map(|(a, e)| a + 0.4 * e).collect();
    (cache, y, x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn loss_is_nonnegative_and_identity_filter_is_plain_error(
        n in 2usize..10,
        seed in 0u64..500,
        theta in -3.0f64..3.0,
        alpha in 0.0f64..1.0,
        h in prop::collection::vec(-2.0f64..2.0, 10),
    ) {
        let (cache, y, x) = fixture(n, seed);
        let spec = cache.spectrum();
        let mm = m(TransformKind::AgfrftI);
        let l = loss(spec, &mm, &FilterH::new(h[..n].to_vec()).unwrap(), theta, alpha, 1.0, &y, &x).unwrap();
        prop_assert!(l >= 0.0);
        let plain: f64 = y.iter().zip(&x).map(|(a, b)| (a - b) * (a - b)).sum();
        let ones = loss(spec, &mm, &FilterH::ones(n), theta, alpha, 1.0, &y, &x).unwrap();
        prop_assert!((ones - plain).abs() <= 1e-8);
    }

    #[test]
    fn noiseless_wiener_filter_recovers_signal(n in 2usize..10, seed in 0u64..500, theta in -3.0f64..3.0) {
        let (cache, _, x) = fixture(n, seed);
        let op = cache.get(&m(TransformKind::AgfrftII), theta, 0.6, 1.0).unwrap();
        let h = wiener_h(&op, &x, &x).unwrap();
        let l = loss(cache.spectrum(), &m(TransformKind::AgfrftII), &h, theta, 0.6, 1.0, &x, &x).unwrap();
        prop_assert!(l <= 1e-12);
    }
}

#[test]
fn gfrft_search_equals_type_i_on_zero_angle_row() {
    for seed in 0..5 {
        let (cache, y, x) = fixture(8, 40 + seed);
        let grid = Grid::standard();
        let g = grid_search(&cache, &m(TransformKind::Gfrft), &y, &x, &grid).unwrap();
        let row = Grid::new(vec![0.0], grid.alpha.clone()).unwrap();
        let i = grid_search(&cache, &m(TransformKind::AgfrftI), &y, &x, &row).unwrap();
        assert_eq!((g.theta, g.alpha, g.mse), (i.theta, i.alpha, i.mse));
        assert_eq!(g.h, i.h);
    }
}

#[test]
fn grid_search_is_thread_count_independent() {
    let (cache, y, x) = fixture(10, 77);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| grid_search(&cache, &m(TransformKind::AgfrftII), &y, &x, &Grid::standard()).unwrap())
    };
    let a = run(1);
    let b = run(4);
    assert_eq!((a.theta, a.alpha, a.mse, a.h), (b.theta, b.alpha, b.mse, b.h));
}

#[test]
fn noiseless_grid_search_stops_at_first_cell() {
    let (cache, _, x) = fixture(6, 5);
    let r = grid_search(&cache, &m(TransformKind::AgfrftI), &x, &x, &Grid::standard()).unwrap();
    assert_eq!((r.theta, r.alpha, r.mse), (0.0, 0.0, 0.0));
}

#[test]
fn two_node_high_pass_is_removed() {
    let l = agfrft::Mat::from_rows(&[[1.0, -1.0], [-1.0, 1.0]]);
    let spec = build_spectrum(&l).unwrap();
    let op = agfrft::spectral::gft_operator(&spec);
    // eigenvalues ascend, so index 0 is the constant vector and (1, -1) sits at index 1
    let h = vec![1.0, 0.0];
    let out = filter_signal(&op, &FilterH::new(h).unwrap(), &[1.0, -1.0]).unwrap();
    assert!(out.signal.iter().all(|v| v.abs() < 1e-12));
}
