use std::f64::consts::{FRAC_PI_4, PI, TAU};

use pinchwork::linalg::{hermitian_eig, ComplexMatrix, Tolerances, C64};
use pinchwork::numrange::{
    contains_disc, numerical_range_hull, perturb_to_cover, realize_value, schur_horn_feasible, support_point,
    MajorizationWitness,
};
use pinchwork::random::{gaussian_matrix, random_frame, random_hermitian, random_unitary, rng_from_seed};
use proptest::prelude::*;
use rand::Rng;

fn shift(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| if j == i + 1 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
}

#[test]
fn shift3_support_is_angle_independent() {
    let a = shift(3);
    for k in 0..12 {
        let s = support_point(&a, TAU * k as f64 / 12.0).unwrap();
        assert!((s.support - FRAC_PI_4.cos()).abs() < 1e-12, "θ index {k}: {}", s.support);
    }
}

#[test]
fn shift10_hull_is_a_circle() {
    let hull = numerical_range_hull(&shift(10), 64).unwrap();
    let r = (PI / 11.0).cos();
    assert!((hull.max_modulus() - r).abs() < 1e-6);
    for s in &hull.samples {
        assert!((s.point.norm() - r).abs() < 1e-9);
        assert!((s.support - (C64::from_polar(1.0, -s.theta) * s.point).re).abs() < 1e-10);
    }
}

#[test]
fn shift100_disc_margins() {
    let a = shift(100);
    let c = contains_disc(&a, 0.9, 720).unwrap();
    assert!((c.margin - ((PI / 101.0).cos() - 0.9)).abs() < 1e-9);
    assert!(c.holds());
    let c = contains_disc(&a, 1.0, 720).unwrap();
    assert!(c.margin < 0.0);
}

#[test]
fn hull_samples_are_consistent() {
    let mut rng = rng_from_seed(11);
    let a = gaussian_matrix(9, 9, &mut rng);
    let hull = numerical_range_hull(&a, 90).unwrap();
    for s in &hull.samples {
        let norm = s.vector.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-10);
        assert!((a.quadratic_form(&s.vector) - s.point).norm() < 1e-12);
    }
    assert!(hull.convexity_defect() > -1e-8);
}

#[test]
fn realize_centroids_of_boundary_points() {
    let mut rng = rng_from_seed(12);
    let tol = Tolerances::default();
    for _ in 0..20 {
        let a = gaussian_matrix(12, 12, &mut rng);
        let picks: Vec<C64> = (0..3)
            .map(|_| support_point(&a, rng.gen_range(0.0..TAU)).unwrap().point)
            .collect();
        let lambda = picks.iter().sum::<C64>() / 3.0;
        let h = realize_value(&a, lambda, &tol).unwrap();
        let n = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((n - 1.0).abs() < 1e-12);
        assert!((a.quadratic_form(&h) - lambda).norm() <= 1e-8);
    }
}

#[test]
fn perturbation_places_targets_on_the_diagonal() {
    let mut rng = rng_from_seed(13);
    let a = gaussian_matrix(8, 8, &mut rng);
    let f = random_frame(8, 3, &mut rng);
    let hull = numerical_range_hull(&a, 16).unwrap();
    let pts = hull.points();
    let targets: Vec<C64> = (0..3).map(|j| (pts[j] + pts[j + 5] + pts[j + 10]) / 3.0).collect();
    let r = perturb_to_cover(&a, &f, &targets).unwrap();
    let b = &a + &r;
    for (j, t) in targets.iter().enumerate() {
        assert!((b.quadratic_form(&f.column(j)) - t).norm() < 1e-10);
    }
    let expected = (0..3)
        .map(|j| (targets[j] - a.quadratic_form(&f.column(j))).norm())
        .fold(0.0, f64::max);
    assert!((r.op_norm() - expected).abs() < 1e-9);
}

#[test]
fn schur_horn_accepts_diagonals_of_conjugates() {
    let mut rng = rng_from_seed(14);
    for n in 1..=4 {
        for _ in 0..25 {
            let spectrum: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let u = random_unitary(n, &mut rng);
            let d = &(&u * &ComplexMatrix::from_real_diag(&spectrum)) * &u.adjoint();
            let diagonal: Vec<f64> = d.diag().iter().map(|z| z.re).collect();
            assert!(schur_horn_feasible(&spectrum, &diagonal).unwrap().feasible);
        }
    }
    let diag: Vec<f64> = (1..=4).map(|n| 1.0 - 1.0 / (n * n) as f64).collect();
    let v = schur_horn_feasible(&[1.0, 1.0, 0.0, 0.0], &diag).unwrap();
    assert!(matches!(v.witness, Some(MajorizationWitness::SumMismatch { .. })));
}

fn small_matrix() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..6, any::<u64>()).prop_map(|(n, seed)| gaussian_matrix(n, n, &mut rng_from_seed(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn support_is_rotation_translation_equivariant(
        a in small_matrix(),
        theta in 0.0..TAU,
        mu_re in -2.0..2.0f64,
        mu_im in -2.0..2.0f64,
        phi in 0.0..TAU,
    ) {
        let mu = C64::new(mu_re, mu_im);
        let n = a.rows();
        let b = &a.scale(C64::from_polar(1.0, theta)) + &ComplexMatrix::identity(n).scale(mu);
        let lhs = support_point(&b, phi).unwrap().support;
        let rhs = support_point(&a, (phi - theta).rem_euclid(TAU)).unwrap().support
            + (C64::from_polar(1.0, -phi) * mu).re;
        prop_assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn hermitian_hull_is_the_spectral_segment(seed in any::<u64>(), n in 1usize..7) {
        let h = random_hermitian(n, &mut rng_from_seed(seed));
        let eig = hermitian_eig(&h, &Tolerances::default()).unwrap();
        let hull = numerical_range_hull(&h, 16).unwrap();
        for s in &hull.samples {
            prop_assert!(s.point.im.abs() < 1e-10);
            prop_assert!(s.point.re >= eig.values[0] - 1e-10);
            prop_assert!(s.point.re <= eig.values[n - 1] + 1e-10);
        }
        prop_assert!((hull.samples[0].point.re - eig.values[n - 1]).abs() < 1e-10);
        prop_assert!((hull.samples[8].point.re - eig.values[0]).abs() < 1e-10);
    }

    #[test]
    fn realized_values_lie_in_the_hull(seed in any::<u64>(), w in proptest::array::uniform3(0.05..1.0f64)) {
        let mut rng = rng_from_seed(seed);
        let a = gaussian_matrix(6, 6, &mut rng);
        let hull = numerical_range_hull(&a, 48).unwrap();
        let pts = hull.points();
        let total: f64 = w.iter().sum();
        let lambda = (pts[0] * w[0] + pts[16] * w[1] + pts[32] * w[2]) / total;
        let h = realize_value(&a, lambda, &Tolerances::default()).unwrap();
        let value = a.quadratic_form(&h);
        prop_assert!((value - lambda).norm() <= 1e-8);
        prop_assert!(hull.distance_outside(value) <= 1e-8);
    }
}
