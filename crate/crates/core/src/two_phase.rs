//! Two-phase random recoloring.
//!
//! Phase one samples an initial color and a weight in (0,1) for every vertex.
//! Phase two walks the vertices by increasing weight; a vertex is flipped to
//! the other color exactly when it is the heaviest vertex of some initially
//! monochromatic edge that has no flipped vertex yet.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::rng;
use crate::Hypergraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub fn complement(self) -> Color {
        match self {
            Color::Blue => Color::Red,
            Color::Red => Color::Blue,
        }
    }
}

/// Per-vertex initial colors and weights.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialState {
    pub colors: Vec<Color>,
    pub weights: Vec<f64>,
}

impl InitialState {
    pub fn new(colors: Vec<Color>, weights: Vec<f64>) -> Self {
        assert_eq!(colors.len(), weights.len(), "colors and weights must cover the same vertices");
        debug_assert!(weights.iter().all(|w| *w > 0.0 && *w < 1.0));
        Self { colors, weights }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Same weights, every initial color flipped.
    pub fn flipped(&self) -> InitialState {
        InitialState {
            colors: self.colors.iter().map(|c| c.complement()).collect(),
            weights: self.weights.clone(),
        }
    }
}

/// Samples independent initial colors and weights for every vertex.
///
/// For each vertex in id order: one 64-bit draw whose top bit selects the
/// color (1 = red), then a 53-bit open-interval weight.
pub fn sample_initial(h: &Hypergraph, seed: u64) -> InitialState {
    sample_initial_from(h.vertex_count(), &mut rng::stream(seed))
}

pub fn sample_initial_from(n: usize, rng: &mut impl rand::RngCore) -> InitialState {
    let mut colors = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for _ in 0..n {
        colors.push(if rng.next_u64() >> 63 == 1 { Color::Red } else { Color::Blue });
        weights.push(rng::open_unit(rng));
    }
    InitialState { colors, weights }
}

/// Total order on vertices by `(weight, id)`.
pub fn weight_order(weights: &[f64], a: usize, b: usize) -> Ordering {
    weights[a].total_cmp(&weights[b]).then(a.cmp(&b))
}

/// Processing order plus, for every edge, its heaviest and lightest vertex.
///
/// Everything here depends on the weights only through comparisons.
#[derive(Debug, Clone)]
pub struct Schedule {
    /// Vertices by increasing `(weight, id)`.
    pub order: Vec<usize>,
    /// `rank[v]` is the position of `v` in `order`.
    pub rank: Vec<usize>,
    pub heaviest: Vec<usize>,
    pub lightest: Vec<usize>,
    /// Edge indices grouped by their heaviest vertex, ascending.
    by_heaviest: Vec<Vec<usize>>,
}

impl Schedule {
    pub fn from_weights(h: &Hypergraph, weights: &[f64]) -> Self {
        assert_eq!(weights.len(), h.vertex_count());
        let mut order: Vec<usize> = (0..weights.len()).collect();
        order.sort_unstable_by(|&a, &b| weight_order(weights, a, b));
        Self::from_order(h, order)
    }

    /// `order` must be a permutation of the vertices, lightest first.
    pub fn from_order(h: &Hypergraph, order: Vec<usize>) -> Self {
        let n = h.vertex_count();
        assert_eq!(order.len(), n);
        let mut rank = vec![0; n];
        for (position, &v) in order.iter().enumerate() {
            rank[v] = position;
        }
        let mut heaviest = Vec::with_capacity(h.edge_count());
        let mut lightest = Vec::with_capacity(h.edge_count());
        let mut by_heaviest = vec![Vec::new(); n];
        for (index, edge) in h.edges().enumerate() {
            let top = *edge.iter().max_by_key(|&&v| rank[v]).expect("edges are nonempty");
            let bottom = *edge.iter().min_by_key(|&&v| rank[v]).expect("edges are nonempty");
            heaviest.push(top);
            lightest.push(bottom);
            by_heaviest[top].push(index);
        }
        Self { order, rank, heaviest, lightest, by_heaviest }
    }

    /// Edges whose heaviest vertex is `v`, in increasing index order.
    pub fn edges_topped_by(&self, v: usize) -> &[usize] {
        &self.by_heaviest[v]
    }
}

/// Full provenance of one recoloring run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringTrace {
    pub initial: Vec<Color>,
    pub colors: Vec<Color>,
    /// Recolored vertices in increasing id order.
    pub recolored: Vec<usize>,
    /// For each vertex, every edge that was a reason to recolor it.
    pub reasons: Vec<Vec<usize>>,
    pub initially_mono: Vec<usize>,
    pub final_mono: Vec<usize>,
}

impl ColoringTrace {
    pub fn is_proper(&self) -> bool {
        self.final_mono.is_empty()
    }

    pub fn is_recolored(&self, v: usize) -> bool {
        self.colors[v] != self.initial[v]
    }
}

/// Color shared by every vertex of `edge`, if any.
pub fn mono_color(edge: &[usize], colors: &[Color]) -> Option<Color> {
    let (&first, rest) = edge.split_first()?;
    let c = colors[first];
    rest.iter().all(|&v| colors[v] == c).then_some(c)
}

/// Scratch buffers for repeated runs on the same hypergraph.
#[derive(Debug, Default)]
pub(crate) struct RecolorScratch {
    pub mono: Vec<bool>,
    pub recolored: Vec<bool>,
}

/// Runs the recoloring phase, filling `scratch.recolored`. If `reasons` is
/// given it receives every reason edge per vertex.
pub(crate) fn recolor_into(
    h: &Hypergraph,
    schedule: &Schedule,
    initial: &[Color],
    scratch: &mut RecolorScratch,
    mut reasons: Option<&mut Vec<Vec<usize>>>,
) {
    let n = h.vertex_count();
    scratch.mono.clear();
    scratch.mono.extend(h.edges().map(|e| mono_color(e, initial).is_some()));
    scratch.recolored.clear();
    scratch.recolored.resize(n, false);

    for &v in &schedule.order {
        let mut flip = false;
        for &f in schedule.edges_topped_by(v) {
            // Every other vertex of f is lighter than v and already settled.
            if scratch.mono[f] && !h.edge(f).iter().any(|&u| scratch.recolored[u]) {
                flip = true;
                match reasons.as_deref_mut() {
                    Some(r) => r[v].push(f),
                    None => break,
                }
            }
        }
        scratch.recolored[v] = flip;
    }
}

pub fn recolor(h: &Hypergraph, init: &InitialState) -> ColoringTrace {
    let schedule = Schedule::from_weights(h, &init.weights);
    recolor_with_schedule(h, &schedule, &init.colors)
}

pub fn recolor_with_schedule(h: &Hypergraph, schedule: &Schedule, initial: &[Color]) -> ColoringTrace {
    assert_eq!(initial.len(), h.vertex_count());
    let mut scratch = RecolorScratch::default();
    let mut reasons = vec![Vec::new(); h.vertex_count()];
    recolor_into(h, schedule, initial, &mut scratch, Some(&mut reasons));

    let colors: Vec<Color> = initial
        .iter()
        .zip(&scratch.recolored)
        .map(|(&c, &flip)| if flip { c.complement() } else { c })
        .collect();
    let recolored = (0..h.vertex_count()).filter(|&v| scratch.recolored[v]).collect();
    let initially_mono = (0..h.edge_count()).filter(|&f| scratch.mono[f]).collect();
    let final_mono = monochromatic_edges(h, &colors);
    ColoringTrace { initial: initial.to_vec(), colors, recolored, reasons, initially_mono, final_mono }
}

/// Indices of edges that are monochromatic under `colors`.
pub fn monochromatic_edges(h: &Hypergraph, colors: &[Color]) -> Vec<usize> {
    h.edges()
        .enumerate()
        .filter(|(_, e)| mono_color(e, colors).is_some())
        .map(|(i, _)| i)
        .collect()
}

/// Whether `colors` is a proper two-coloring, with the offending edges.
pub fn is_proper(h: &Hypergraph, colors: &[Color]) -> (bool, Vec<usize>) {
    let mono = monochromatic_edges(h, colors);
    (mono.is_empty(), mono)
}
