//! Instance builders shared by the benchmarks.

use matchflip::msdd::MsddInstance;
use matchflip::rng::Rng;
use matchflip::solver::{random_outerplanar_instance, SpmrInstance};

pub fn outerplanar(n: usize, density: f64, seed: u64) -> SpmrInstance {
    random_outerplanar_instance(n, density, seed).expect("valid generator parameters")
}

/// Random tree with lengths in `0..=2` and roughly half the edges deletable.
pub fn random_tree(n: usize, seed: u64) -> MsddInstance {
    let mut rng = Rng::seeded(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.below(v), v));
    }
    let tree = matchflip::graph::Multigraph::new(n, edges).expect("valid tree");
    let lengths = (0..n - 1).map(|_| rng.below(3) as u64).collect();
    let deletable = (0..n - 1).filter(|_| rng.chance(0.5)).collect();
    MsddInstance::new(tree, deletable, lengths).expect("valid instance")
}
