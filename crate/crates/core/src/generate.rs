//! Random hypergraph instances with prescribed size profiles.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::GenerateError;
use crate::hypergraph::edge_weight;
use crate::rng;
use crate::Hypergraph;

/// What to generate. Edges are drawn independently and uniformly among all
/// `j`-subsets of the vertex set, with replacement across edges.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    Uniform { k: usize, n: usize, m: usize, seed: u64 },
    /// Edges are laid out in profile order: all of the first size, then the next.
    Mixture { n: usize, profile: Vec<(usize, usize)>, seed: u64 },
}

impl GenSpec {
    fn parts(&self) -> (usize, Vec<(usize, usize)>, u64) {
        match self {
            GenSpec::Uniform { k, n, m, seed } => (*n, vec![(*k, *m)], *seed),
            GenSpec::Mixture { n, profile, seed } => (*n, profile.clone(), *seed),
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<Hypergraph, GenerateError> {
    let (n, profile, seed) = spec.parts();
    for &(j, _) in &profile {
        if j < 2 {
            return Err(GenerateError::EdgeSizeTooSmall(j));
        }
        if j > n {
            return Err(GenerateError::EdgeLargerThanVertexSet { size: j, n });
        }
    }
    let mut edges = Vec::with_capacity(profile.iter().map(|p| p.1).sum());
    let mut index = 0u64;
    for &(j, count) in &profile {
        for _ in 0..count {
            edges.push(random_subset(n, j, &mut rng::substream(seed, index)));
            index += 1;
        }
    }
    Ok(Hypergraph::new(n, edges).expect("generated edges are valid"))
}

/// Uniform `j`-subset of `0..n` by a partial Fisher-Yates shuffle over a
/// virtual identity array; only the displaced slots are stored.
pub fn random_subset(n: usize, j: usize, rng: &mut impl Rng) -> Vec<usize> {
    debug_assert!(j <= n);
    let mut displaced: Vec<(usize, usize)> = Vec::with_capacity(2 * j);
    let slot = |displaced: &[(usize, usize)], i: usize| {
        displaced.iter().rev().find(|(at, _)| *at == i).map_or(i, |&(_, v)| v)
    };
    let mut out = Vec::with_capacity(j);
    for i in 0..j {
        let r = rng.random_range(i..n);
        let picked = slot(&displaced, r);
        let current = slot(&displaced, i);
        displaced.push((r, current));
        displaced.push((i, picked));
        out.push(picked);
    }
    out
}

/// Edge counts per size so that `q` lands just below `q_target`.
///
/// The target is split evenly across the distinct sizes and rounded down,
/// then the remainder is filled greedily from the smallest size (largest
/// per-edge contribution) upward. The result satisfies
/// `sum <= q_target < sum + max_j 2^(1-j)`.
pub fn target_q_counts(q_target: f64, sizes: &[usize]) -> BTreeMap<usize, usize> {
    let mut counts: BTreeMap<usize, usize> = sizes.iter().map(|&j| (j, 0)).collect();
    if counts.is_empty() || !(q_target > 0.0) {
        return counts;
    }
    let share = q_target / counts.len() as f64;
    for (&j, count) in counts.iter_mut() {
        *count = (share / edge_weight(j)).floor() as usize;
    }
    let mut remainder = q_target - total_q(&counts);
    for (&j, count) in counts.iter_mut() {
        let unit = edge_weight(j);
        let extra = (remainder / unit).floor().max(0.0) as usize;
        *count += extra;
        remainder -= extra as f64 * unit;
    }
    counts
}

fn total_q(counts: &BTreeMap<usize, usize>) -> f64 {
    counts.iter().map(|(&j, &c)| c as f64 * edge_weight(j)).sum()
}
