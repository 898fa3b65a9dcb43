use std::f64::consts::PI;

use pinchwork::dilation::{halmos_dilation, isometry_realize};
use pinchwork::linalg::{compress, ComplexMatrix, C64};
use pinchwork::pinching::{
    choose_walsh_level, equalize_blocks, parker_equalize, pinch, pinch_normal, realize_contraction_compression,
    realize_diagonal_compression, realize_with_mass, walsh_matrix, PinchMode,
};
use pinchwork::random::{gaussian_matrix, random_contraction, random_unit_vector, rng_from_seed};
use pinchwork::Error;
use proptest::prelude::*;

fn shift(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| if j == i + 1 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn residual(a: &ComplexMatrix, f: &pinchwork::Frame, x: &ComplexMatrix) -> f64 {
    (&compress(a, f).unwrap() - x).op_norm()
}

#[test]
fn diagonal_compression_on_shift() {
    let a = shift(64);
    let f = realize_diagonal_compression(&a, &[c(0.1, 0.0), c(-0.2, 0.0)], 0.9).unwrap();
    assert_eq!((f.ambient_dim(), f.rank()), (64, 2));
    let target = ComplexMatrix::from_real_diag(&[0.1, -0.2]);
    assert!(compress(&a, &f).unwrap().max_abs_diff(&target) <= 1e-8);
    assert!(f.orthonormality_error() <= 1e-10);
}

#[test]
fn diagonal_compression_edge_cases() {
    assert_eq!(realize_diagonal_compression(&shift(16), &[], 0.9).unwrap().rank(), 0);
    assert!(matches!(
        realize_diagonal_compression(&shift(8), &[c(0.999, 0.0)], 0.95),
        Err(Error::ValueOutsideRange { .. })
    ));
    // shift(8) has numerical radius cos(π/9) < 0.95
    assert!(matches!(
        realize_diagonal_compression(&shift(8), &[c(0.5, 0.0)], 0.95),
        Err(Error::MarginLost { .. })
    ));
}

#[test]
fn contraction_compressions() {
    let a = shift(128);
    let scalar = ComplexMatrix::from_real_diag(&[0.3]);
    let f = realize_contraction_compression(&a, &scalar, 0.9).unwrap();
    assert!(residual(&a, &f, &scalar) <= 1e-8);

    let nil = ComplexMatrix::from_real_rows(&[[0.0, 0.5], [0.0, 0.0]]);
    let f = realize_contraction_compression(&a, &nil, 0.9).unwrap();
    assert!(residual(&a, &f, &nil) <= 1e-8);

    let x = ComplexMatrix::from_real_diag(&[0.3, 0.4]);
    let v = isometry_realize(&a, &x, 0.9).unwrap();
    assert!(residual(&a, &v, &x) <= 1e-8);
    assert!(v.orthonormality_error() <= 1e-10);

    let big = ComplexMatrix::from_real_diag(&[0.95, 0.0]);
    assert!(matches!(isometry_realize(&shift(8), &big, 0.9), Err(Error::NotStrictContraction { .. })));
}

#[test]
fn mass_bound_scalar_target() {
    let a = shift(256);
    let x = ComplexMatrix::from_real_diag(&[0.3]);
    let h = random_unit_vector(256, &mut rng_from_seed(5));
    let r = realize_with_mass(&a, &x, &h, 0.8, 1.0).unwrap();
    assert!(r.plan.l >= choose_walsh_level(0.3, 0.8).unwrap().l);
    assert!(residual(&a, &r.frame, &x) <= 1e-7);
    assert!(r.mass >= r.plan.epsilon - 1e-8, "mass {} < {}", r.mass, r.plan.epsilon);
}

#[test]
fn pinch_three_targets() {
    let a = shift(512);
    let (s, co) = (PI / 3.0).sin_cos();
    let rotation = ComplexMatrix::from_real_rows(&[[co, -s], [s, co]]).scale_real(0.5);
    let jordan = ComplexMatrix::from_real_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]]).scale_real(0.4);
    let targets = vec![ComplexMatrix::from_real_diag(&[0.3]), rotation, jordan];
    let cert = pinch(&a, &targets, 0.9, PinchMode::Fast).unwrap();
    assert!(cert.max_residual() <= 1e-7, "{:?}", cert.residuals);
    assert!(cert.orthogonality <= 1e-10);
    assert!(cert.mass_bounds.is_none());
    assert!((cert.coverage - 6.0 / 512.0).abs() < 1e-15);

    let q = cert.stacked_frame().unwrap();
    let b = compress(&a, &q).unwrap();
    let mut off = 0;
    for x in &targets {
        let d = x.rows();
        assert!(b.submatrix(off, off, d, d).max_abs_diff(x) <= 1e-7);
        off += d;
    }
}

#[test]
fn pinch_edge_cases() {
    let cert = pinch(&shift(32), &[], 0.9, PinchMode::Fast).unwrap();
    assert!(cert.frames.is_empty());
    assert_eq!(cert.coverage, 0.0);
    let targets = vec![ComplexMatrix::from_real_diag(&[0.1, 0.1]); 10];
    assert!(matches!(
        pinch(&shift(16), &targets, 0.9, PinchMode::Fast),
        Err(Error::HostTooSmall { target: Some(_), .. })
    ));
}

#[test]
fn pinch_normal_targets() {
    let a = shift(128);
    let targets = vec![
        ComplexMatrix::from_diag(&[c(0.0, 0.5), c(-0.5, 0.0)]),
        ComplexMatrix::from_real_diag(&[0.3]),
    ];
    let cert = pinch_normal(&a, &targets, 0.9).unwrap();
    assert!(cert.max_residual() <= 1e-8);
    assert!(cert.orthogonality <= 1e-10);

    let zero = pinch_normal(&a, &[ComplexMatrix::zeros(1, 1)], 0.9).unwrap();
    assert!(zero.max_residual() <= 1e-8);

    let nil = ComplexMatrix::from_real_rows(&[[0.0, 0.5], [0.0, 0.0]]);
    assert!(matches!(pinch_normal(&a, &[nil], 0.9), Err(Error::NotNormal { .. })));
}

#[test]
fn faithful_pinch_records_masses() {
    let a = shift(512);
    let targets = vec![
        ComplexMatrix::from_real_diag(&[0.3]),
        ComplexMatrix::from_diag(&[c(0.0, -0.2)]),
    ];
    let cert = pinch(&a, &targets, 0.8, PinchMode::Faithful).unwrap();
    let masses = cert.mass_bounds.as_ref().unwrap();
    assert_eq!(masses.len(), 2);
    for m in masses {
        assert!(m.mass >= m.epsilon - 1e-8);
    }
    assert!(cert.max_residual() <= 1e-7);
    assert!(cert.orthogonality <= 1e-10);
}

#[test]
fn parker_on_random_matrices() {
    let mut rng = rng_from_seed(31);
    let a = gaussian_matrix(24, 24, &mut rng);
    let (b, u) = parker_equalize(&a).unwrap();
    let mean = a.trace() / 24.0;
    assert!(b.diag().iter().all(|z| (z - mean).norm() < 1e-9));
    assert!((&(&u * &a) * &u.adjoint()).max_abs_diff(&b) < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn walsh_orthogonality(k in 1usize..=8) {
        let v = walsh_matrix(k).unwrap();
        let gram = &v * &v.transpose();
        prop_assert!(gram.max_abs_diff(&ComplexMatrix::identity(1 << k)) <= 1e-12);
        let mag = 2f64.powf(-(k as f64) / 2.0);
        prop_assert!(v.as_slice().iter().all(|z| z.re.abs() == mag && z.im == 0.0));
    }

    #[test]
    fn equalization_preserves_singular_values(seed in any::<u64>(), k in 1usize..=3) {
        let mut rng = rng_from_seed(seed);
        let blocks: Vec<_> = (0..1 << k).map(|_| gaussian_matrix(2, 2, &mut rng)).collect();
        let (conj, w) = equalize_blocks(&blocks).unwrap();
        let d = ComplexMatrix::block_diag(&blocks);
        let mean = blocks.iter().fold(ComplexMatrix::zeros(2, 2), |acc, b| &acc + b).scale_real(1.0 / (1 << k) as f64);
        for i in 0..1 << k {
            prop_assert!(conj.submatrix(2 * i, 2 * i, 2, 2).max_abs_diff(&mean) <= 1e-10);
        }
        let tol = pinchwork::Tolerances::default();
        let sv = |m: &ComplexMatrix| pinchwork::linalg::hermitian_eig(&m.adjoint_matmul(m), &tol).unwrap().values;
        for (x, y) in sv(&conj).iter().zip(sv(&d)) {
            prop_assert!((x - y).abs() <= 1e-9);
        }
        prop_assert!((&w * &w.adjoint()).max_abs_diff(&ComplexMatrix::identity(2 << k)) <= 1e-12);
    }

    #[test]
    fn dilation_invariants(seed in any::<u64>(), d in 1usize..=8, frac in 0.0..0.99f64) {
        let mut rng = rng_from_seed(seed);
        let x = random_contraction(d, 0.9 * frac, &mut rng);
        let r = halmos_dilation(&x, 0.9).unwrap();
        let n = 2 * d;
        prop_assert!(r.unitary.adjoint_matmul(&r.unitary).max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
        prop_assert!(r.normal.submatrix(0, 0, d, d).max_abs_diff(&x) <= 1e-12);
        prop_assert!(r.normal.normality_deviation() <= 1e-10);
    }
}
