mod common;

use detmax::instances;
use detmax::matroid::Matroid;
use detmax::numerics;
use detmax::oracle::{self, ChainBound};
use rand::Rng;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn basis_counts_match_closed_forms() {
    assert_eq!(oracle::enumerate_bases(&Matroid::uniform(9, 4)).unwrap().len(), binomial(9, 4));
    // Cayley: K4 has 4^2 spanning trees.
    assert_eq!(oracle::enumerate_bases(&Matroid::graphic(4, common::K4.to_vec())).unwrap().len(), 16);
    let p = Matroid::partition(vec![0, 0, 0, 1, 1, 1, 1], vec![2, 1]);
    assert_eq!(oracle::enumerate_bases(&p).unwrap().len(), binomial(3, 2) * 4);
    let bases = oracle::enumerate_bases(&Matroid::uniform(5, 2)).unwrap();
    assert!(bases.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn opt_exact_is_the_maximum_over_bases() {
    let inst = instances::gen_experimental_design(8, 2, Matroid::uniform(8, 3), 4).unwrap();
    let res = oracle::opt_exact(&inst).unwrap();
    let best = oracle::enumerate_bases(&inst.matroid)
        .unwrap()
        .iter()
        .map(|b| inst.objective(b))
        .fold(f64::NEG_INFINITY, f64::max);
    assert_eq!(res.opt_value, best);
    assert_eq!(inst.objective(&res.opt_basis), best);
    assert_eq!(res.basis_count, binomial(8, 3));
}

#[test]
fn opt_ties_go_to_the_smallest_basis() {
    let v = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![0.0, 1.0]];
    let inst = instances::Instance::new(numerics::VectorSet::new(2, &v).unwrap(), Matroid::uniform(4, 2), Default::default()).unwrap();
    assert_eq!(oracle::opt_exact(&inst).unwrap().opt_basis, vec![0, 1]);
}

#[test]
fn id_sum_is_cauchy_binet_on_uniform_matroids() {
    // When every d-subset is independent, the sum is det(sum_i x_i v_i v_i^T).
    let mut rng = detmax::seed::rng(5);
    for (n, d, k) in [(6, 2, 3), (7, 3, 3), (8, 3, 5)] {
        let inst = instances::gen_experimental_design(n, d, Matroid::uniform(n, k), n as u64).unwrap();
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
        let expected = numerics::weighted_gram(&inst.vectors, &x).determinant();
        let got = oracle::id_sum(&inst, &x).unwrap();
        assert!((got - expected).abs() <= 1e-10 * expected.abs());
    }
}

#[test]
fn chain_report_flags_each_inequality() {
    let ok = oracle::chain_report(2.0, 1.0, 1.5, 2, ChainBound::General, 1e-2);
    assert!(ok.all_pass());
    assert!(!oracle::chain_report(3.0, 1.0, 1.0, 2, ChainBound::General, 1e-2).opt_le_exp_f);
    assert!(!oracle::chain_report(2.0, 1.0, 2.5, 2, ChainBound::General, 1e-2).expectation_le_opt);
    let tiny = oracle::chain_report(2.0, 1.0, 1e-9, 2, ChainBound::Partition, 1e-2);
    assert!(!tiny.expectation_ge_exp_f_over_c);
    assert!((tiny.constant - 6f64.exp()).abs() < 1e-9);
    assert!(!oracle::chain_report(1e-9, 1.0, 1e-9, 2, ChainBound::General, 1e-2).exp_f_le_c_opt);
    let e = std::f64::consts::E;
    assert!((ChainBound::General.constant(2) - (4.0 * e.powi(5)).powi(2)).abs() < 1e-6);
}

#[test]
fn verification_chain_on_a_solved_instance() {
    let s = common::solve(&common::corpus()[3].1, 1);
    let sp = common::sparsify(&s, 1);
    let input = detmax::rounding::RoundingInput::new(&s.pre, &sp.x_hat, 1e-6).unwrap();
    let e = detmax::rounding::expected_value_exact(&input).unwrap().expectation;
    let report = oracle::verify_estimation_chain(&s.pre, &s.cp, e, ChainBound::General, 1e-2).unwrap();
    assert!(report.all_pass(), "{report:?}");
}
