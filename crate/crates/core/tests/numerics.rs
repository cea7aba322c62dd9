use detmax::numerics::{self, VectorSet};
use detmax::Error;
use nalgebra::{DMatrix, DVector};
use rand::Rng;

fn random_set(rng: &mut impl Rng, n: usize, d: usize) -> VectorSet {
    let v: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect();
    VectorSet::new(d, &v).unwrap()
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

#[test]
fn vector_set_rejects_malformed_input() {
    assert!(matches!(VectorSet::new(0, &[vec![]]), Err(Error::Input(_))));
    assert!(matches!(VectorSet::new(2, &[]), Err(Error::Input(_))));
    assert!(matches!(VectorSet::new(2, &[vec![1.0]]), Err(Error::Input(_))));
    assert!(matches!(VectorSet::new(1, &[vec![f64::NAN]]), Err(Error::Input(_))));
    let v = VectorSet::new(2, &[vec![3.0, 4.0], vec![1.0, 0.0]]).unwrap();
    assert_eq!((v.n(), v.d()), (2, 2));
    assert_eq!(v.get(1), &[1.0, 0.0]);
    assert_eq!(v.max_norm(), 5.0);
}

#[test]
fn weighted_gram_is_a_sum_of_outer_products() {
    let mut rng = detmax::seed::rng(1);
    let v = random_set(&mut rng, 7, 3);
    let w: Vec<f64> = (0..7).map(|_| rng.gen_range(0.0..1.0)).collect();
    let mut expected = DMatrix::zeros(3, 3);
    for i in 0..7 {
        let vi = DVector::from_column_slice(v.get(i));
        expected += w[i] * &vi * vi.transpose();
    }
    assert!((numerics::weighted_gram(&v, &w) - &expected).amax() < 1e-12);
    let z: Vec<f64> = (0..7).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let xw: Vec<f64> = w.iter().zip(&z).map(|(a, b)| a * b.exp()).collect();
    assert!((numerics::assemble_x(&v, &w, &z) - numerics::weighted_gram(&v, &xw)).amax() < 1e-12);
}

#[test]
fn det_of_subset_matches_cofactor_expansion() {
    let mut rng = detmax::seed::rng(2);
    let v = random_set(&mut rng, 5, 3);
    let x: Vec<f64> = (0..5).map(|_| rng.gen_range(0.1..1.0)).collect();
    let s = [0, 2, 4];
    let cols: Vec<&[f64]> = s.iter().map(|&i| v.get(i)).collect();
    let m = [
        [cols[0][0], cols[1][0], cols[2][0]],
        [cols[0][1], cols[1][1], cols[2][1]],
        [cols[0][2], cols[1][2], cols[2][2]],
    ];
    let expected = x[0] * x[2] * x[4] * det3(&m).powi(2);
    let got = numerics::det_of_subset(&v, &s, &x).unwrap();
    assert!((got - expected).abs() <= 1e-12 * expected.abs());
    assert!(numerics::det_of_subset(&v, &[0, 1], &x).is_err());
}

#[test]
fn logdet_agrees_with_determinant() {
    let mut rng = detmax::seed::rng(3);
    for d in 1..=5 {
        let v = random_set(&mut rng, d + 3, d);
        let a = numerics::weighted_gram(&v, &vec![1.0; d + 3]);
        let ld = numerics::logdet(&a).unwrap();
        assert!((ld - a.determinant().ln()).abs() < 1e-10);
    }
    let singular = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
    assert_eq!(numerics::logdet(&singular).unwrap(), f64::NEG_INFINITY);
    assert_eq!(numerics::logdet(&DMatrix::zeros(3, 3)).unwrap(), f64::NEG_INFINITY);
    let skew = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
    assert!(matches!(numerics::logdet(&skew), Err(Error::Input(_))));
}

#[test]
fn cauchy_binet_holds_and_guards_scale() {
    let mut rng = detmax::seed::rng(4);
    for (n, d) in [(3, 3), (6, 2), (9, 3), (12, 4)] {
        let v = random_set(&mut rng, n, d);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
        assert!(numerics::cauchy_binet_residual(&v, &x).unwrap() <= 1e-10);
    }
    let big = random_set(&mut rng, 21, 2);
    assert!(matches!(numerics::cauchy_binet_residual(&big, &[1.0; 21]), Err(Error::Scale { .. })));
}

#[test]
fn finite_differences_are_exact_on_quadratics() {
    let f = |p: &[f64]| 3.0 * p[0] * p[0] - 2.0 * p[0] * p[1] + p[1];
    let g = numerics::finite_difference_gradient(f, &[0.5, -1.0], 1e-3);
    assert!((g[0] - (3.0 + 2.0)).abs() < 1e-9);
    assert!((g[1] - (-1.0 + 1.0)).abs() < 1e-9);
}
