mod common;

use detmax::instances::{self, PerturbationParams};
use detmax::matroid::{self, Matroid};
use detmax::{oracle, Error};

#[test]
fn design_instances_are_reproducible() {
    let make = |seed| instances::gen_experimental_design(8, 3, Matroid::uniform(8, 4), seed).unwrap();
    assert_eq!(make(5), make(5));
    assert_ne!(make(5).vectors, make(6).vectors);
    let i = make(5);
    assert_eq!((i.n(), i.d(), i.k()), (8, 3, 4));
    assert_eq!(i.metadata.seed, Some(5));
    assert!(instances::gen_experimental_design(2, 3, Matroid::uniform(2, 1), 0).is_err());
    assert!(instances::gen_experimental_design(5, 2, Matroid::uniform(4, 2), 0).is_err());
}

#[test]
fn instance_objective_is_the_gram_determinant() {
    let inst = instances::gen_experimental_design(6, 2, Matroid::uniform(6, 3), 1).unwrap();
    let s = [0, 3, 5];
    let mut a = [[0.0; 2]; 2];
    for &i in &s {
        let v = inst.vectors.get(i);
        for r in 0..2 {
            for c in 0..2 {
                a[r][c] += v[r] * v[c];
            }
        }
    }
    let expected = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    assert!((inst.objective(&s) - expected).abs() < 1e-12 * expected.abs().max(1.0));
}

#[test]
fn nsw_optimum_is_the_best_allocation_product() {
    let utilities = vec![vec![3.0, 1.0, 2.0, 0.5], vec![1.0, 2.0, 0.0, 4.0], vec![0.5, 0.5, 1.0, 1.0]];
    let inst = instances::gen_nsw(&utilities, None).unwrap();
    assert_eq!((inst.d(), inst.n(), inst.k()), (3, 12, 4));
    // Enumerate every assignment of the four goods to the three agents.
    let mut best: f64 = 0.0;
    for code in 0..81usize {
        let mut bundle = [0.0; 3];
        let mut c = code;
        for j in 0..4 {
            bundle[c % 3] += utilities[c % 3][j];
            c /= 3;
        }
        best = best.max(bundle.iter().product());
    }
    let opt = oracle::opt_exact(&inst).unwrap().opt_value;
    assert!((opt - best).abs() < 1e-9 * best);
    assert!(matches!(
        instances::gen_nsw(&[vec![1.0, 0.0], vec![1.0, 0.0]], None),
        Err(Error::Degenerate(_))
    ));
    assert!(instances::gen_nsw(&[vec![1.0, -1.0]], None).is_err());
}

#[test]
fn nsw_with_goods_matroid_restricts_the_allocated_goods() {
    let utilities = vec![vec![1.0, 2.0, 3.0], vec![2.0, 1.0, 1.0]];
    let inst = instances::gen_nsw(&utilities, Some(Matroid::uniform(3, 2))).unwrap();
    assert_eq!(inst.k(), 2);
    // Two goods, one per agent at best: 3 * 2.
    assert!((oracle::opt_exact(&inst).unwrap().opt_value - 6.0).abs() < 1e-9);
}

#[test]
fn spanning_tree_objective_is_its_weight_product() {
    let weights = [1.0, 2.0, 0.5, 3.0, 1.5, 4.0];
    let inst = instances::gen_network_design(4, &common::K4, &weights, None).unwrap();
    assert_eq!((inst.d(), inst.k()), (3, 3));
    let trees = oracle::enumerate_bases(&inst.matroid).unwrap();
    assert_eq!(trees.len(), 16);
    for t in &trees {
        let product: f64 = t.iter().map(|&e| weights[e]).product();
        assert!((inst.objective(t) - product).abs() < 1e-9 * product);
    }
    assert!(instances::gen_network_design(4, &[(0, 1), (2, 3)], &[1.0, 1.0], None).is_err());
    assert!(instances::gen_network_design(3, &[(0, 1), (1, 2)], &[1.0], None).is_err());
}

#[test]
fn adversarial_point_lies_in_the_base_polytope() {
    for m in [2, 5, 8] {
        for i in [0, m - 1] {
            let adv = instances::gen_adversarial(m, i).unwrap();
            let inst = &adv.instance;
            assert_eq!((inst.n(), inst.d(), inst.k()), (2 * m, 2, m + 1));
            let nonzero: Vec<usize> = (0..inst.n()).filter(|&e| inst.vectors.get(e).iter().any(|a| *a != 0.0)).collect();
            assert_eq!(nonzero, vec![2 * i, 2 * i + 1]);
            let membership = matroid::base_polytope_membership(&inst.matroid, &adv.x_star, 1e-12).unwrap();
            assert!(membership.is_inside(), "{membership:?}");
            // Any spanning tree using both distinguished edges has objective 16.
            let opt = oracle::opt_exact(inst).unwrap();
            assert!((opt.opt_value - 16.0).abs() < 1e-12);
        }
    }
    assert!(instances::gen_adversarial(1, 0).is_err());
    assert!(instances::gen_adversarial(4, 4).is_err());
}

#[test]
fn preprocessing_doubles_and_perturbs_slightly() {
    let inst = instances::gen_experimental_design(6, 2, Matroid::partition(vec![0, 0, 0, 1, 1, 1], vec![1, 1]), 3).unwrap();
    let params = PerturbationParams::auto(&inst, 9);
    let pre = instances::preprocess(&inst, &params).unwrap();
    assert_eq!(pre, instances::preprocess(&inst, &params).unwrap());
    assert_eq!((pre.n(), pre.k(), pre.copies()), (12, 2, 2));
    let info = pre.metadata.preprocessing.as_ref().unwrap();
    assert_eq!(info.original_n, 6);
    assert_eq!(info.general_position, Some(true));
    for i in 0..12 {
        let (a, b) = (pre.vectors.get(i), inst.vectors.get(i / 2));
        for (p, q) in a.iter().zip(b) {
            assert!((p - q).abs() <= 8.0 * params.sigma);
        }
    }
    // Each original basis lifts to 2^k bases of nearly the same value.
    let opt = oracle::opt_exact(&inst).unwrap().opt_value;
    let opt_pre = oracle::opt_exact(&pre).unwrap().opt_value;
    assert!((opt_pre - opt).abs() <= 1e-4 * opt);
    assert!(instances::preprocess(&inst, &PerturbationParams { sigma: 0.0, seed: 0 }).is_err());
}

#[test]
fn support_restriction_and_copy_merging() {
    let inst = instances::gen_experimental_design(6, 2, Matroid::uniform(6, 3), 2).unwrap();
    let x = [0.5, 0.0, 1.0, 1e-12, 0.75, 0.75];
    let (sub, ids) = instances::restrict_to_support(&inst, &x).unwrap();
    assert_eq!(ids, vec![0, 2, 4, 5]);
    assert_eq!(sub.n(), 4);
    assert_eq!(sub.vectors.get(1), inst.vectors.get(2));
    assert_eq!(sub.k(), 3);
    assert!(instances::restrict_to_support(&inst, &[1.0]).is_err());
    assert_eq!(instances::merge_copies(&[0.25, 0.5, 1.0, 0.0], 2), vec![0.75, 1.0]);
}

#[test]
fn positivity_and_spanning_basis() {
    let good = instances::gen_experimental_design(5, 2, Matroid::uniform(5, 3), 4).unwrap();
    assert!(instances::check_opt_positive(&good));
    let b = instances::spanning_basis(&good).unwrap();
    assert_eq!(b.len(), 3);
    assert!(good.objective(&b) > 0.0);

    // All usable vectors are parallel, so every basis is singular.
    let flat = detmax::instances::Instance::new(
        detmax::numerics::VectorSet::new(2, &[vec![1.0, 0.0], vec![2.0, 0.0], vec![0.0, 1.0]]).unwrap(),
        Matroid::partition(vec![0, 0, 1], vec![2, 0]),
        Default::default(),
    )
    .unwrap();
    assert!(!instances::check_opt_positive(&flat));
    assert!(instances::spanning_basis(&flat).is_none());
}
