//! Invariants of the two coloring procedures on random small instances.

use proptest::prelude::*;
use propb_core::greedy::{greedy_diagnostics, greedy_with_weights};
use propb_core::two_phase::{mono_color, Schedule};
use propb_core::{recolor, Color, Hypergraph, InitialState};

fn arb_instance(max_n: usize, max_m: usize) -> impl Strategy<Value = (Hypergraph, InitialState)> {
    (2usize..=max_n).prop_flat_map(move |n| {
        let edge = proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 2..=n.min(6));
        let edges = proptest::collection::vec(edge, 0..=max_m);
        let colors = proptest::collection::vec(prop_oneof![Just(Color::Blue), Just(Color::Red)], n);
        let weights = proptest::collection::vec(0.001f64..0.999, n);
        (edges, colors, weights).prop_map(move |(edges, colors, weights)| {
            (Hypergraph::new(n, edges).unwrap(), InitialState::new(colors, weights))
        })
    })
}

/// Straight transcription of the recoloring rule, used as a reference.
fn reference_recolor(h: &Hypergraph, init: &InitialState) -> Vec<Color> {
    let n = h.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| init.weights[a].total_cmp(&init.weights[b]).then(a.cmp(&b)));
    let key = |v: usize| (init.weights[v], v);
    let mut color: Vec<Option<Color>> = vec![None; n];
    for &v in &order {
        let has_reason = h.edges().any(|e| {
            let heaviest = *e.iter().max_by(|&&a, &&b| key(a).partial_cmp(&key(b)).unwrap()).unwrap();
            heaviest == v
                && e.iter().all(|&u| init.colors[u] == init.colors[v])
                && e.iter().all(|&u| u == v || color[u] == Some(init.colors[u]))
        });
        color[v] = Some(if has_reason { init.colors[v].complement() } else { init.colors[v] });
    }
    color.into_iter().map(Option::unwrap).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn matches_reference((h, init) in arb_instance(9, 10)) {
        prop_assert_eq!(recolor(&h, &init).colors, reference_recolor(&h, &init));
    }

    #[test]
    fn trace_invariants((h, init) in arb_instance(10, 12)) {
        let t = recolor(&h, &init);
        let schedule = Schedule::from_weights(&h, &init.weights);
        for v in 0..h.vertex_count() {
            prop_assert_eq!(t.recolored.contains(&v), t.colors[v] != init.colors[v]);
            for &f in &t.reasons[v] {
                prop_assert!(t.initially_mono.contains(&f));
                prop_assert_eq!(schedule.heaviest[f], v);
            }
            prop_assert_eq!(t.reasons[v].is_empty(), !t.recolored.contains(&v));
        }
        // Every initially monochromatic edge gets a recolored vertex.
        for &f in &t.initially_mono {
            prop_assert!(h.edge(f).iter().any(|v| t.recolored.contains(v)));
        }
        prop_assert!(t.recolored.len() <= t.initially_mono.len());
        // An initially red edge never ends red.
        for &f in &t.initially_mono {
            if mono_color(h.edge(f), &init.colors) == Some(Color::Red) {
                prop_assert_ne!(mono_color(h.edge(f), &t.colors), Some(Color::Red));
            }
        }
    }

    #[test]
    fn depends_only_on_order((h, init) in arb_instance(9, 10)) {
        let n = h.vertex_count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| init.weights[a].total_cmp(&init.weights[b]).then(a.cmp(&b)));
        let mut ranked = vec![0.0; n];
        for (i, &v) in order.iter().enumerate() {
            ranked[v] = (i + 1) as f64 / (n + 1) as f64;
        }
        let other = InitialState::new(init.colors.clone(), ranked);
        prop_assert_eq!(recolor(&h, &init), recolor(&h, &other));
        prop_assert_eq!(greedy_with_weights(&h, &init.weights), greedy_with_weights(&h, &other.weights));
    }

    #[test]
    fn color_symmetry((h, init) in arb_instance(9, 10)) {
        let a = recolor(&h, &init);
        let b = recolor(&h, &init.flipped());
        let flipped: Vec<Color> = a.colors.iter().map(|c| c.complement()).collect();
        prop_assert_eq!(b.colors, flipped);
        prop_assert_eq!(a.recolored, b.recolored);
    }

    #[test]
    fn greedy_invariants((h, init) in arb_instance(10, 12)) {
        let t = greedy_with_weights(&h, &init.weights);
        for e in h.edges() {
            prop_assert_ne!(mono_color(e, &t.colors), Some(Color::Blue));
        }
        for &v in &t.forced_red {
            prop_assert_eq!(t.colors[v], Color::Red);
        }
        if t.failed() {
            let d = greedy_diagnostics(&h, &init.weights, 0.0);
            for &f in &t.failing_edges {
                prop_assert!(d.has_conflict_into(f), "failing edge {} has no conflicting pair", f);
            }
        }
    }

    #[test]
    fn diagnostics_definitions((h, init) in arb_instance(10, 12), p in 0.0f64..=1.0) {
        let d = greedy_diagnostics(&h, &init.weights, p);
        let w = &init.weights;
        for (f, e) in h.edges().enumerate() {
            let max = e.iter().map(|&v| w[v]).fold(f64::MIN, f64::max);
            let min = e.iter().map(|&v| w[v]).fold(f64::MAX, f64::min);
            prop_assert_eq!(d.light_edges.contains(&f), max <= (1.0 - p) / 2.0);
            prop_assert_eq!(d.heavy_edges.contains(&f), min >= (1.0 + p) / 2.0);
        }
        let schedule = Schedule::from_weights(&h, w);
        for f1 in 0..h.edge_count() {
            for f2 in 0..h.edge_count() {
                let expected = f1 != f2 && schedule.heaviest[f1] == schedule.lightest[f2];
                prop_assert_eq!(d.conflicting_pairs.contains(&(f1, f2)), expected);
            }
        }
    }
}
