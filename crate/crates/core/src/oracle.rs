//! Exact ground truth for tiny instances.
//!
//! Both procedures use the weights only through comparisons, and i.i.d.
//! continuous weights make all `n!` vertex orders equally likely. Enumerating
//! every order (and, for the two-phase procedure, every initial coloring)
//! therefore yields exact outcome probabilities.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::TooLarge;
use crate::greedy::greedy_into;
use crate::two_phase::{mono_color, recolor_into, Color, RecolorScratch, Schedule};
use crate::Hypergraph;

pub const TWO_COLORABLE_LIMIT: usize = 30;
pub const TWO_PHASE_LIMIT: usize = 8;
pub const GREEDY_LIMIT: usize = 10;

/// A probability as an exact reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Fraction {
    pub numerator: u128,
    pub denominator: u128,
}

impl Fraction {
    pub fn new(numerator: u128, denominator: u128) -> Self {
        assert!(denominator > 0, "zero denominator");
        let g = numerator.gcd(&denominator).max(1);
        Self { numerator: numerator / g, denominator: denominator / g }
    }

    pub fn to_f64(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// `1 - self`.
    pub fn complement(self) -> Self {
        Self::new(self.denominator - self.numerator, self.denominator)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    /// Fraction of traces ending in a proper coloring.
    pub success_prob: Fraction,
    /// Fraction of traces with at least one monochromatic edge, counted separately.
    pub failure_prob: Fraction,
    /// Fraction of traces where the focal edge ends all red.
    pub edge_red_prob: Option<Fraction>,
    pub trace_count: u128,
}

/// Backtracking search for a proper two-coloring. Vertex 0 is fixed blue.
pub fn is_two_colorable(h: &Hypergraph) -> Result<Option<Vec<Color>>, TooLarge> {
    let n = h.vertex_count();
    if n > TWO_COLORABLE_LIMIT {
        return Err(TooLarge { what: "two-colorability search", n, limit: TWO_COLORABLE_LIMIT });
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    // Edges grouped by their largest vertex: checkable once that vertex is set.
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (index, edge) in h.edges().enumerate() {
        closing[*edge.last().expect("edges are nonempty")].push(index);
    }
    let mut colors = vec![Color::Blue; n];
    let mut next_choice = vec![0u8; n];
    let mut v = 0usize;
    loop {
        let choices = if v == 0 { 1 } else { 2 };
        if next_choice[v] >= choices {
            next_choice[v] = 0;
            if v == 0 {
                return Ok(None);
            }
            v -= 1;
            continue;
        }
        colors[v] = if next_choice[v] == 0 { Color::Blue } else { Color::Red };
        next_choice[v] += 1;
        let ok = closing[v].iter().all(|&f| mono_color(h.edge(f), &colors[..]).is_none());
        if ok {
            if v + 1 == n {
                return Ok(Some(colors));
            }
            v += 1;
        }
    }
}

/// Advances `items` to the next lexicographic permutation; false when done.
pub fn next_permutation(items: &mut [usize]) -> bool {
    let Some(pivot) = items.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let successor = items.iter().rposition(|&x| x > items[pivot]).expect("pivot has a successor");
    items.swap(pivot, successor);
    items[pivot + 1..].reverse();
    true
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Runs `visit` on every vertex order, partitioned by the first vertex
/// across threads, and sums the returned count vectors.
fn over_all_orders<const K: usize, F>(n: usize, visit: F) -> [u128; K]
where
    F: Fn(&[usize], &mut [u128; K]) + Sync,
{
    if n == 0 {
        let mut counts = [0; K];
        visit(&[], &mut counts);
        return counts;
    }
    (0..n)
        .into_par_iter()
        .map(|first| {
            let mut counts = [0u128; K];
            let mut rest: Vec<usize> = (0..n).filter(|&v| v != first).collect();
            let mut order = Vec::with_capacity(n);
            loop {
                order.clear();
                order.push(first);
                order.extend_from_slice(&rest);
                visit(&order, &mut counts);
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            counts
        })
        .reduce(|| [0; K], |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        })
}

/// Ranks of `order` scaled into (0, 1): vertex at position `i` gets `(i+1)/(n+1)`.
pub fn rank_weights(order: &[usize]) -> Vec<f64> {
    let n = order.len();
    let mut weights = vec![0.0; n];
    for (position, &v) in order.iter().enumerate() {
        weights[v] = (position + 1) as f64 / (n + 1) as f64;
    }
    weights
}

/// Exact outcome probabilities of the two-phase procedure over all
/// `2^n * n!` (initial coloring, order) pairs.
pub fn exact_two_phase(h: &Hypergraph, focal_edge: Option<usize>) -> Result<ExactResult, TooLarge> {
    let n = h.vertex_count();
    if n > TWO_PHASE_LIMIT {
        return Err(TooLarge { what: "two-phase enumeration", n, limit: TWO_PHASE_LIMIT });
    }
    if let Some(e) = focal_edge {
        assert!(e < h.edge_count(), "focal edge {e} out of range");
    }
    let [proper, improper, red] = over_all_orders::<3, _>(n, |order, counts| {
        let schedule = Schedule::from_weights(h, &rank_weights(order));
        let mut scratch = RecolorScratch::default();
        let mut initial = vec![Color::Blue; n];
        let mut colors = vec![Color::Blue; n];
        for mask in 0u32..(1 << n) {
            for (v, c) in initial.iter_mut().enumerate() {
                *c = if mask >> v & 1 == 1 { Color::Red } else { Color::Blue };
            }
            recolor_into(h, &schedule, &initial, &mut scratch, None);
            for v in 0..n {
                colors[v] = if scratch.recolored[v] { initial[v].complement() } else { initial[v] };
            }
            let any_mono = h.edges().any(|e| mono_color(e, &colors).is_some());
            let all_bichromatic = h.edges().all(|e| mono_color(e, &colors).is_none());
            counts[0] += all_bichromatic as u128;
            counts[1] += any_mono as u128;
            if let Some(e) = focal_edge {
                counts[2] += (mono_color(h.edge(e), &colors) == Some(Color::Red)) as u128;
            }
        }
    });
    let total = (1u128 << n) * factorial(n);
    Ok(ExactResult {
        success_prob: Fraction::new(proper, total),
        failure_prob: Fraction::new(improper, total),
        edge_red_prob: focal_edge.map(|_| Fraction::new(red, total)),
        trace_count: total,
    })
}

/// Exact outcome probabilities of random greedy coloring over all `n!` orders.
pub fn exact_greedy(h: &Hypergraph, focal_edge: Option<usize>) -> Result<ExactResult, TooLarge> {
    let n = h.vertex_count();
    if n > GREEDY_LIMIT {
        return Err(TooLarge { what: "greedy enumeration", n, limit: GREEDY_LIMIT });
    }
    if let Some(e) = focal_edge {
        assert!(e < h.edge_count(), "focal edge {e} out of range");
    }
    let [proper, improper, red] = over_all_orders::<3, _>(n, |order, counts| {
        let schedule = Schedule::from_order(h, order.to_vec());
        let mut colors = vec![Color::Blue; n];
        let mut forced = vec![false; n];
        greedy_into(h, &schedule, &mut colors, &mut forced);
        counts[0] += h.edges().all(|e| mono_color(e, &colors).is_none()) as u128;
        counts[1] += h.edges().any(|e| mono_color(e, &colors).is_some()) as u128;
        if let Some(e) = focal_edge {
            counts[2] += (mono_color(h.edge(e), &colors) == Some(Color::Red)) as u128;
        }
    });
    let total = factorial(n);
    Ok(ExactResult {
        success_prob: Fraction::new(proper, total),
        failure_prob: Fraction::new(improper, total),
        edge_red_prob: focal_edge.map(|_| Fraction::new(red, total)),
        trace_count: total,
    })
}
