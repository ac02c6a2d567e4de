//! Instances shared by the benchmarks.

use propb_core::{generate, target_q_counts, GenSpec, Hypergraph};

/// Mixed-size instance with `q` close to `q_target` on `n` vertices.
pub fn mixed_instance(n: usize, q_target: f64, sizes: &[usize], seed: u64) -> Hypergraph {
    let profile = target_q_counts(q_target, sizes).into_iter().collect();
    generate(&GenSpec::Mixture { n, profile, seed }).expect("valid benchmark instance")
}
