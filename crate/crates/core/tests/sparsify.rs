mod common;

use detmax::matroid;
use detmax::numerics;
use detmax::sparsify::{self, SparsifyConfig};

#[test]
fn bound_and_counting() {
    assert_eq!(sparsify::fractional_bound(1), 4);
    assert_eq!(sparsify::fractional_bound(2), 10);
    assert_eq!(sparsify::fractional_bound(3), 18);
    assert_eq!(sparsify::count_fractional(&[0.0, 1e-9, 0.5, 1.0 - 1e-9, 1.0, 0.3], 1e-6), 2);
}

#[test]
fn relaxed_point_is_feasible_for_its_own_lp() {
    for idx in [0, 7, 13] {
        let s = common::solve(&common::corpus()[idx].1, idx as u64);
        let lp = sparsify::build_lp(&s.pre, &s.cp.x, &s.cp.z, 1e-4).unwrap();
        let x_u: Vec<f64> = lp.support.iter().map(|&i| s.cp.x[i]).collect();
        assert!(lp.residual(&x_u).unwrap() <= 1e-6, "instance {idx}");
        assert!(lp.decomposition_error <= 1e-4);
        let scaled: Vec<f64> = x_u.iter().zip(&lp.coeffs).map(|(a, b)| a * b).collect();
        assert!(matroid::base_polytope_membership(&lp.m_star, &scaled, 1e-6).unwrap().is_inside());
    }
}

#[test]
fn sparse_points_keep_value_and_feasibility() {
    for (i, (name, inst)) in common::corpus().into_iter().enumerate().step_by(2) {
        let s = common::solve(&inst, 50 + i as u64);
        let sp = common::sparsify(&s, i as u64);
        let x = &sp.x_hat;
        assert!(sp.fractional_support.len() <= sparsify::fractional_bound(inst.d()), "{name}");
        assert_eq!(sp.fractional_support.len(), sparsify::count_fractional(x, 1e-6));
        assert!(sp.value_check <= 1e-4, "{name}: {}", sp.value_check);
        assert!(sp.matrix_residual <= 1e-6, "{name}: {}", sp.matrix_residual);
        assert!(matroid::base_polytope_membership(&s.pre.matroid, x, 1e-6).unwrap().is_inside(), "{name}");
        // The moment matrix is preserved, so the value is too.
        let before = numerics::assemble_x(&s.pre.vectors, &s.cp.x, &s.cp.z);
        let after = numerics::assemble_x(&s.pre.vectors, x, &s.cp.z);
        assert!((&before - &after).amax() <= 1e-6 * before.amax());
        if let Some(cert) = &sp.certificate {
            assert!(cert.is_vertex(), "{name}");
        }
    }
}

#[test]
fn sparsification_is_reproducible() {
    let s = common::solve(&common::corpus()[9].1, 3);
    let a = common::sparsify(&s, 17);
    let b = common::sparsify(&s, 17);
    assert_eq!(a, b);
}

#[test]
fn certificates_of_vertices_have_full_rank() {
    let s = common::solve(&common::corpus()[4].1, 1);
    let lp = sparsify::build_lp(&s.pre, &s.cp.x, &s.cp.z, 1e-4).unwrap();
    let ep = lp.extreme_point(0).unwrap();
    assert!(ep.decomposition_residual <= 1e-6);
    if let Some((x, cert)) = lp.polish(&ep.x, 1e-9).unwrap() {
        assert!(cert.is_vertex());
        assert_eq!(cert.rows.len(), cert.rank);
        assert!(lp.residual(&x).unwrap() <= 1e-6);
    }
    // x* itself is typically interior, so its tight rows cannot pin it down.
    let x_u: Vec<f64> = lp.support.iter().map(|&i| s.cp.x[i]).collect();
    let cert = lp.certify(&x_u, 1e-9).unwrap();
    assert!(cert.rank <= cert.support_size);
}

#[test]
fn sparsify_rejects_mismatched_input() {
    let s = common::solve(&common::corpus()[0].1, 0);
    let mut cp = s.cp.clone();
    cp.x.pop();
    assert!(sparsify::sparsify(&s.pre, &cp, &SparsifyConfig::default()).is_err());
}
