//! Single-pass random greedy coloring.
//!
//! Vertices are visited by increasing weight. Each one is colored blue unless
//! that would complete a blue edge, i.e. it tops an edge whose other vertices
//! are all blue already, in which case it is colored red. Blue edges can
//! therefore never appear; a run fails exactly when some edge ends up red.

use std::collections::BTreeSet;

use crate::two_phase::{mono_color, Color, Schedule};
use crate::{rng, Hypergraph};

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyTrace {
    pub order: Vec<usize>,
    pub colors: Vec<Color>,
    /// Vertices colored red because blue would have completed a blue edge.
    pub forced_red: Vec<usize>,
    /// Edges entirely red at the end.
    pub failing_edges: Vec<usize>,
}

impl GreedyTrace {
    pub fn failed(&self) -> bool {
        !self.failing_edges.is_empty()
    }
}

/// Samples vertex weights from `seed` and runs the greedy pass.
///
/// The weights are the ones [`crate::sample_initial`] would produce for the
/// same seed; the initial colors are ignored.
pub fn greedy_run(h: &Hypergraph, seed: u64) -> GreedyTrace {
    let init = crate::two_phase::sample_initial_from(h.vertex_count(), &mut rng::stream(seed));
    greedy_with_weights(h, &init.weights)
}

pub fn greedy_with_weights(h: &Hypergraph, weights: &[f64]) -> GreedyTrace {
    greedy_with_schedule(h, &Schedule::from_weights(h, weights))
}

pub fn greedy_with_schedule(h: &Hypergraph, schedule: &Schedule) -> GreedyTrace {
    let mut colors = vec![Color::Blue; h.vertex_count()];
    let mut forced = vec![false; h.vertex_count()];
    greedy_into(h, schedule, &mut colors, &mut forced);
    let failing_edges = h
        .edges()
        .enumerate()
        .filter(|(_, e)| mono_color(e, &colors) == Some(Color::Red))
        .map(|(i, _)| i)
        .collect();
    GreedyTrace {
        order: schedule.order.clone(),
        forced_red: (0..forced.len()).filter(|&v| forced[v]).collect(),
        colors,
        failing_edges,
    }
}

/// Core pass; `colors` and `forced` must have length n.
pub(crate) fn greedy_into(h: &Hypergraph, schedule: &Schedule, colors: &mut [Color], forced: &mut [bool]) {
    for &v in &schedule.order {
        // Edges topped by v have every other vertex colored already.
        let completes_blue = schedule
            .edges_topped_by(v)
            .iter()
            .any(|&f| h.edge(f).iter().all(|&u| u == v || colors[u] == Color::Blue));
        forced[v] = completes_blue;
        colors[v] = if completes_blue { Color::Red } else { Color::Blue };
    }
}

/// Default threshold `p = ln(4q)/k`, clamped to [0, 1].
pub fn default_threshold(q: f64, k: usize) -> f64 {
    if !(q > 0.0) {
        return 0.0;
    }
    ((4.0 * q).ln() / k as f64).clamp(0.0, 1.0)
}

/// Light and heavy edges and conflicting pairs for one weight assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyDiagnostics {
    pub p: f64,
    /// Edges whose heaviest vertex weighs at most `(1-p)/2`.
    pub light_edges: Vec<usize>,
    /// Edges all of whose vertices weigh at least `(1+p)/2`.
    pub heavy_edges: Vec<usize>,
    /// Ordered pairs `(f1, f2)`, `f1 != f2`, where the heaviest vertex of
    /// `f1` is the lightest vertex of `f2`.
    pub conflicting_pairs: Vec<(usize, usize)>,
}

impl GreedyDiagnostics {
    pub fn has_conflict_into(&self, f2: usize) -> bool {
        self.conflicting_pairs.iter().any(|&(_, g)| g == f2)
    }
}

pub fn greedy_diagnostics(h: &Hypergraph, weights: &[f64], p: f64) -> GreedyDiagnostics {
    assert!((0.0..=1.0).contains(&p), "threshold p must lie in [0, 1]");
    let schedule = Schedule::from_weights(h, weights);
    let low = (1.0 - p) / 2.0;
    let high = (1.0 + p) / 2.0;

    let mut light_edges = Vec::new();
    let mut heavy_edges = Vec::new();
    for f in 0..h.edge_count() {
        if weights[schedule.heaviest[f]] <= low {
            light_edges.push(f);
        }
        if weights[schedule.lightest[f]] >= high {
            heavy_edges.push(f);
        }
    }

    let mut lightest_of: Vec<Vec<usize>> = vec![Vec::new(); h.vertex_count()];
    for f in 0..h.edge_count() {
        lightest_of[schedule.lightest[f]].push(f);
    }
    let mut conflicting_pairs = BTreeSet::new();
    for f1 in 0..h.edge_count() {
        for &f2 in &lightest_of[schedule.heaviest[f1]] {
            if f1 != f2 {
                conflicting_pairs.insert((f1, f2));
            }
        }
    }
    GreedyDiagnostics {
        p,
        light_edges,
        heavy_edges,
        conflicting_pairs: conflicting_pairs.into_iter().collect(),
    }
}
