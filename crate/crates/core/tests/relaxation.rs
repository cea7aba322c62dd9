mod common;

use detmax::instances::{self, Instance};
use detmax::matroid::{self, Matroid};
use detmax::numerics::VectorSet;
use detmax::oracle;
use detmax::relaxation::{self, CpConfig, Relaxation, StepRule};
use rand::Rng;

fn instance(vecs: &[Vec<f64>], m: Matroid) -> Instance {
    Instance::new(VectorSet::new(vecs[0].len(), vecs).unwrap(), m, Default::default()).unwrap()
}

#[test]
fn one_dimensional_relaxation_is_exact() {
    // With d = 1 the inner infimum sits at z = 0 and the outer problem is linear,
    // so the relaxation equals log of the best basis weight.
    let v: Vec<Vec<f64>> = [1.0, -2.0, 0.5, 1.5, 3.0, -0.25].iter().map(|a| vec![*a]).collect();
    for m in [Matroid::uniform(6, 2), Matroid::partition(vec![0, 0, 1, 1, 2, 2], vec![1, 1, 1])] {
        let inst = instance(&v, m);
        let opt = oracle::opt_exact(&inst).unwrap().opt_value;
        let cp = relaxation::solve_cp(&inst, &CpConfig::default()).unwrap();
        assert!((cp.f_value - opt.ln()).abs() < 1e-3, "{} vs {}", cp.f_value, opt.ln());
    }
}

#[test]
fn single_basis_relaxation_is_exact() {
    let mut rng = detmax::seed::rng(8);
    for d in 2..=4 {
        let v: Vec<Vec<f64>> = (0..d).map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        let inst = instance(&v, Matroid::uniform(d, d));
        let cp = relaxation::solve_cp(&inst, &CpConfig::default()).unwrap();
        let all: Vec<usize> = (0..d).collect();
        assert!((cp.f_value - inst.objective(&all).ln()).abs() < 1e-6);
        assert!(cp.x.iter().all(|xi| (xi - 1.0).abs() < 1e-12));
    }
}

#[test]
fn relaxation_sandwiches_the_optimum() {
    for (i, (name, inst)) in common::corpus().into_iter().enumerate().step_by(3) {
        let s = common::solve(&inst, i as u64);
        let opt = oracle::opt_exact(&inst).unwrap().opt_value;
        let c = oracle::ChainBound::General.constant(inst.d());
        assert!(opt.ln() <= s.cp.f_value + 1e-2, "{name}");
        assert!(s.cp.f_value <= (c * opt).ln() + 1e-2, "{name}");
        assert!(s.cp.outer_gap <= s.cp.config.eps * (1.0 + s.cp.f_value.abs()) || s.cp.stalled, "{name}");
    }
}

#[test]
fn solution_is_feasible_and_certified() {
    let inst = &common::corpus()[14].1;
    let s = common::solve(inst, 4);
    let cp = &s.cp;
    assert!(matroid::base_polytope_membership(&s.pre.matroid, &cp.x, 1e-9).unwrap().is_inside());
    // z is feasible with a tight set.
    let (_, min) = matroid::min_weight_size_d_independent(&s.pre.matroid, &cp.z, s.pre.d()).unwrap();
    assert!(min.abs() < 1e-8);
    assert!((relaxation::g_value(&s.pre, &cp.x, &cp.z) - cp.f_value).abs() < 1e-9);
    // The decomposition reproduces x.
    let mut sum = vec![0.0; s.pre.n()];
    for wb in &cp.decomposition {
        assert!(s.pre.matroid.indep(&wb.basis) && wb.basis.len() == s.pre.k());
        wb.basis.iter().for_each(|&e| sum[e] += wb.weight);
    }
    assert!(sum.iter().zip(&cp.x).all(|(a, b)| (a - b).abs() < 1e-9));
    // Copies agree after symmetrization.
    assert!(cp.symmetrized);
    assert!(cp.x.chunks(2).all(|c| (c[0] - c[1]).abs() < 1e-12));
    let kkt = relaxation::check_kkt(&s.pre, &cp.x, &cp.z, 1e-4).unwrap();
    assert!(kkt.is_optimal_certificate, "{:?}", kkt.membership);
    assert!((kkt.sum_w - s.pre.d() as f64).abs() < 1e-4);
}

#[test]
fn inner_value_lies_below_every_feasible_point() {
    let mut rng = detmax::seed::rng(12);
    let inst = instances::gen_experimental_design(7, 2, Matroid::uniform(7, 3), 5).unwrap();
    let x = vec![3.0 / 7.0; 7];
    let inner = relaxation::inner_infimum(&inst, &x, 1e-10).unwrap();
    assert!(inner.gap <= 1e-6);
    for _ in 0..200 {
        let z: Vec<f64> = (0..7).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let (z, _) = relaxation::shift_to_feasible(&inst, &z).unwrap();
        assert!(relaxation::g_value(&inst, &x, &z) >= inner.value - inner.gap - 1e-9);
    }
}

#[test]
fn solver_is_deterministic_and_step_rules_agree() {
    let inst = &common::corpus()[7].1;
    let a = common::solve(inst, 21);
    let b = common::solve(inst, 21);
    assert_eq!(a.cp, b.cp);
    let harmonic = relaxation::solve_cp(
        &a.pre,
        &CpConfig {
            step: StepRule::Harmonic,
            eps: 1e-3,
            max_outer: 20_000,
            ..CpConfig::default()
        },
    )
    .unwrap();
    assert!((harmonic.f_value - a.cp.f_value).abs() <= 1e-2 * (1.0 + a.cp.f_value.abs()));
}

#[test]
fn warm_start_reaches_the_same_value() {
    let inst = &common::corpus()[2].1;
    let s = common::solve(inst, 2);
    let relax = Relaxation::new(&s.pre, None).unwrap();
    let cfg = CpConfig::default();
    let warm = relax.solve_warm(&cfg, s.cp.decomposition.clone(), Some(&s.cp.z)).unwrap();
    assert!((warm.f_value - s.cp.f_value).abs() <= 2.0 * cfg.eps * (1.0 + s.cp.f_value.abs()));
}

#[test]
fn rank_deficient_instances_are_rejected() {
    let inst = instance(&[vec![1.0, 0.0], vec![2.0, 0.0], vec![-1.0, 0.0]], Matroid::uniform(3, 2));
    assert!(relaxation::solve_cp(&inst, &CpConfig::default()).is_err());
}
