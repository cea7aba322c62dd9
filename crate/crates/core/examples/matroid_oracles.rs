//! The matroid toolkit on its own: constructions, rank, greedy, intersection
//! and base polytope membership.
//!
//! cargo run --example matroid_oracles

use detmax::matroid::{self, Matroid};

fn main() -> detmax::Result<()> {
    let k4 = Matroid::graphic(4, vec![(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)]);
    println!("K4: rank {}, triangle {{0,1,4}} has rank {}", k4.full_rank(), k4.rank_of(&[0, 1, 4]));

    let w = [3.0, 1.0, 2.0, 5.0, 4.0, 0.5];
    println!("max-weight spanning tree: {:?}", k4.max_weight_basis(&w)?);

    let colors = Matroid::partition(vec![0, 0, 1, 1, 2, 2], vec![1, 1, 1]);
    let rainbow = matroid::matroid_intersection(&k4, &colors)?;
    println!("rainbow spanning forest: {rainbow:?}");

    let doubled = k4.double().truncate(2);
    println!("{} on {} elements, rank {}", doubled.kind_name(), doubled.ground_size(), doubled.full_rank());

    let x = [0.5, 0.5, 1.0, 0.5, 0.0, 0.5];
    println!("{x:?}: {:?}", matroid::base_polytope_membership(&k4, &x, 1e-9)?);
    let y = [0.8, 0.8, 0.3, 0.3, 0.8, 0.0];
    println!("{y:?}: {:?}", matroid::base_polytope_membership(&k4, &y, 1e-9)?);
    Ok(())
}
