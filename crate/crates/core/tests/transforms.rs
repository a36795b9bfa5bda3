use agfrft::matcore::{expm_skew, frac_power_unitary};
use agfrft::properties::{random_skew, random_symmetric_gso};
use agfrft::rotations::{AxisKind, Family, RotationSpec};
use agfrft::spectral::{build_operator, build_spectrum, Method, TransformKind};
use agfrft::{Complex, Mat};
use proptest::prelude::*;

fn kind_strategy() -> impl Strategy<Value = TransformKind> {
    prop_oneof![
        Just(TransformKind::Gft),
        Just(TransformKind::Gfrft),
        Just(TransformKind::Agft),
        Just(TransformKind::AgfrftI),
        Just(TransformKind::AgfrftII),
    ]
}

fn axis_strategy() -> impl Strategy<Value = AxisKind> {
    prop_oneof![Just(AxisKind::Roll), Just(AxisKind::Pitch), Just(AxisKind::Yaw)]
}

fn norm(v: &[Complex<f64>]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operators_preserve_norm_and_invert(
        n in 2usize..12,
        seed in 0u64..1000,
        kind in kind_strategy(),
        axis in axis_strategy(),
        theta in -3.2f64..3.2,
        alpha in -1.5f64..1.5,
        x in prop::collection::vec(-5.0f64..5.0, 12),
    ) {
        let spec = build_spectrum(&random_symmetric_gso::<f64>(n, seed)).unwrap();
        let op = build_operator(&spec, &Method::new(kind, axis, Family::DegeneracyFriendly), theta, alpha, 1.0).unwrap();
        let x = &x[..n];
        let xh = op.apply(x).unwrap();
        let xn = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assert!((norm(&xh) - xn).abs() <= 1e-9 * (1.0 + xn));
        let back = op.apply_inverse(&xh).unwrap();
        for (b, &v) in back.iter().zip(x) {
            prop_assert!((b.re - v).abs() <= 1e-8 && b.im.abs() <= 1e-8);
        }
    }

    #[test]
    fn zero_angle_zero_order_is_identity(
        n in 1usize..10,
        seed in 0u64..1000,
        kind in prop_oneof![Just(TransformKind::Gfrft), Just(TransformKind::AgfrftI), Just(TransformKind::AgfrftII)],
        axis in axis_strategy(),
    ) {
        let spec = build_spectrum(&random_symmetric_gso::<f64>(n, seed)).unwrap();
        let op = build_operator(&spec, &Method::new(kind, axis, Family::DegeneracyFriendly), 0.0, 0.0, 1.0).unwrap();
        prop_assert!(op.forward.distance_to_identity() <= 1e-10);
    }

    #[test]
    fn df_rotations_are_special_orthogonal(
        n in 1usize..40,
        axis in axis_strategy(),
        theta in -7.0f64..7.0,
        kappa in 0.1f64..3.0,
    ) {
        let r = RotationSpec::degeneracy_friendly(axis, theta, kappa).matrix(n).unwrap();
        prop_assert!(r.orthogonality_residual() <= 1e-9);
        prop_assert!((r.det() - 1.0).abs() <= 1e-7);
    }

    #[test]
    fn skew_exponential_is_orthogonal(n in 1usize..24, seed in 0u64..1000, phi in -10.0f64..10.0) {
        let q = expm_skew(&random_skew::<f64>(n, seed), phi).unwrap();
        prop_assert!(q.orthogonality_residual() <= 1e-10);
    }

    #[test]
    fn planar_fractional_powers_scale_the_angle(t in -3.0f64..3.0, a in -1.0f64..1.0) {
        // principal branch: the half-angle stays inside (-pi, pi]
        let q = frac_power_unitary(&agfrft::rotations::planar_rotation::<f64>(t).to_complex(), a).unwrap();
        let want = agfrft::rotations::planar_rotation::<f64>(a * t).to_complex();
        prop_assert!(agfrft::matrix::complex_distance(&q, &want) <= 1e-10);
    }
}

#[test]
fn type_ii_orders_are_not_additive_in_general() {
    let a = Mat::from_rows(&[
        [0.0, 1.0, 0.3, 0.0],
        [1.0, 0.0, 0.5, 0.0],
        [0.3, 0.5, 0.0, 2.0],
        [0.0, 0.0, 2.0, 0.0],
    ]);
    let l = Mat::from_fn(4, 4, |i, j| if i == j { a.row(i).iter().sum() } else { -a[(i, j)] });
    let spec = build_spectrum(&l).unwrap();
    let m = Method::new(TransformKind::AgfrftII, AxisKind::Yaw, Family::DegeneracyFriendly);
    let op = |alpha| build_operator(&spec, &m, 1.0, alpha, 1.0).unwrap().forward;
    let gap = agfrft::matrix::complex_distance(&op(0.3).matmul(&op(0.4)), &op(0.7));
    assert!(gap > 1e-4, "gap {gap}");
}

#[test]
fn legacy_agft_differs_from_gft_at_zero_angle() {
    let spec = build_spectrum(&random_symmetric_gso::<f64>(4, 11)).unwrap();
    let gft = build_operator(&spec, &Method::new(TransformKind::Gft, AxisKind::Yaw, Family::Legacy), 0.0, 1.0, 1.0)
        .unwrap();
    let legacy = build_operator(&spec, &Method::new(TransformKind::Agft, AxisKind::Yaw, Family::Legacy), 0.0, 1.0, 1.0)
        .unwrap();
    let d = agfrft::matrix::complex_distance(&legacy.forward, &gft.forward);
    assert!(d > 0.1 * gft.forward.frobenius_norm());
}
