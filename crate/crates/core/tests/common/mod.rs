#![allow(dead_code)]

use detmax::instances::{self, Instance, PerturbationParams};
use detmax::matroid::Matroid;
use detmax::relaxation::{self, CpConfig, CpResult};
use detmax::sparsify::{self, SparseSolution, SparsifyConfig};

pub const K4: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)];
/// K4 plus a fifth vertex joined to three others.
pub const HOUSE: [(usize, usize); 9] = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3), (4, 0), (4, 1), (4, 2)];
/// Wheel on a 4-cycle hub 4, plus one chord.
pub const WHEEL: [(usize, usize); 9] = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3), (0, 2)];

/// Twenty seeded instances: n <= 12, d in {2, 3}; uniform, partition, graphic.
pub fn corpus() -> Vec<(String, Instance)> {
    let specs: Vec<(usize, Matroid, u64)> = vec![
        (2, Matroid::uniform(8, 3), 1),
        (2, Matroid::uniform(8, 3), 2),
        (2, Matroid::uniform(10, 4), 3),
        (3, Matroid::uniform(9, 4), 4),
        (3, Matroid::uniform(10, 3), 5),
        (3, Matroid::uniform(12, 4), 6),
        (2, Matroid::partition(vec![0, 0, 0, 1, 1, 1, 2, 2], vec![1, 1, 1]), 7),
        (2, Matroid::partition(vec![0, 0, 0, 0, 1, 1, 1, 2, 2, 2], vec![2, 1, 1]), 8),
        (2, Matroid::partition(vec![0, 0, 1, 1, 2, 2, 3, 3, 3], vec![1, 1, 1, 2]), 9),
        (3, Matroid::partition(vec![0, 0, 0, 1, 1, 1, 2, 2, 2], vec![1, 1, 1]), 10),
        (3, Matroid::partition(vec![0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3], vec![1, 1, 1, 1]), 11),
        (3, Matroid::partition(vec![0, 0, 0, 0, 1, 1, 1, 2, 2, 2], vec![2, 1, 1]), 12),
        (2, Matroid::graphic(4, K4.to_vec()), 13),
        (3, Matroid::graphic(4, K4.to_vec()), 14),
        (2, Matroid::graphic(5, HOUSE.to_vec()), 15),
        (3, Matroid::graphic(5, HOUSE.to_vec()), 16),
        (2, Matroid::graphic(5, WHEEL.to_vec()), 17),
        (3, Matroid::graphic(5, WHEEL.to_vec()), 18),
        (2, Matroid::partition(vec![0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2], vec![1, 2, 1]), 19),
        (3, Matroid::uniform(11, 5), 20),
    ];
    specs
        .into_iter()
        .map(|(d, m, seed)| {
            let name = format!("{}-n{}-d{d}-s{seed}", m.kind_name(), m.ground_size());
            let inst = instances::gen_experimental_design(m.ground_size(), d, m, seed).unwrap();
            (name, inst)
        })
        .collect()
}

/// Ten partition-matroid instances.
pub fn partition_corpus() -> Vec<(String, Instance)> {
    corpus()
        .into_iter()
        .filter(|(_, i)| i.matroid.kind_name() == "partition")
        .chain([
            ("partition-extra-a".to_string(), extra(2, vec![0, 0, 0, 1, 1, 1], vec![1, 1], 31)),
            ("partition-extra-b".to_string(), extra(3, vec![0, 0, 1, 1, 2, 2, 3, 3], vec![1, 1, 1, 1], 32)),
            ("partition-extra-c".to_string(), extra(2, vec![0, 0, 0, 0, 0, 1, 1, 1], vec![2, 1], 33)),
        ])
        .collect()
}

fn extra(d: usize, parts: Vec<usize>, caps: Vec<usize>, seed: u64) -> Instance {
    let m = Matroid::partition(parts, caps);
    instances::gen_experimental_design(m.ground_size(), d, m, seed).unwrap()
}

pub struct Solved {
    pub inst: Instance,
    pub pre: Instance,
    pub cp: CpResult,
}

pub fn solve(inst: &Instance, seed: u64) -> Solved {
    let pre = instances::preprocess(inst, &PerturbationParams::auto(inst, seed)).unwrap();
    let cp = relaxation::solve_cp(&pre, &CpConfig { seed, ..CpConfig::default() }).unwrap();
    Solved { inst: inst.clone(), pre, cp }
}

pub fn sparsify(s: &Solved, seed: u64) -> SparseSolution {
    sparsify::sparsify(&s.pre, &s.cp, &SparsifyConfig { seed, ..SparsifyConfig::default() }).unwrap()
}

/// Checks the independence axioms by exhaustive enumeration (ground set <= 12).
pub fn check_axioms(m: &Matroid) -> Result<(), String> {
    let n = m.ground_size();
    assert!(n <= 12, "exhaustive check is exponential");
    let sets: Vec<Vec<usize>> = (0u32..1 << n).map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect()).collect();
    let indep: Vec<bool> = sets.iter().map(|s| m.indep(s)).collect();
    if !indep[0] {
        return Err("empty set is dependent".into());
    }
    for mask in 0..sets.len() {
        if !indep[mask] {
            continue;
        }
        for i in 0..n {
            if mask >> i & 1 == 1 && !indep[mask & !(1 << i)] {
                return Err(format!("hereditary axiom fails at {:?} minus {i}", sets[mask]));
            }
        }
        for other in 0..sets.len() {
            if !indep[other] || sets[other].len() <= sets[mask].len() {
                continue;
            }
            let extendable = (0..n).any(|e| other >> e & 1 == 1 && mask >> e & 1 == 0 && indep[mask | 1 << e]);
            if !extendable {
                return Err(format!("exchange axiom fails for {:?} and {:?}", sets[mask], sets[other]));
            }
        }
        let r = m.rank_of(&sets[mask]);
        if r != sets[mask].len() {
            return Err(format!("rank of independent {:?} is {r}", sets[mask]));
        }
    }
    Ok(())
}
