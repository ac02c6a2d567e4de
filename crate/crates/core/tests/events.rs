//! Event-monitor invariants: pointwise dominations on random samples and
//! expectation identities checked by exhaustive enumeration of colorings.

use std::collections::BTreeMap;

use proptest::prelude::*;
use propb_core::events::{
    build_threat, check_red_edge_conditions, event_report, focus_report, p_threshold, second_weight_deficit,
    AlphaParams,
};
use propb_core::{generate, recolor, sample_initial, Color, GenSpec, Hypergraph, InitialState};

fn arb_instance() -> impl Strategy<Value = (Hypergraph, InitialState, usize)> {
    (4usize..=12).prop_flat_map(|n| {
        let edge = proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 2..=n.min(5));
        let edges = proptest::collection::vec(edge, 1..=14);
        let colors = proptest::collection::vec(prop_oneof![Just(Color::Blue), Just(Color::Red)], n);
        let weights = proptest::collection::vec(0.001f64..0.999, n);
        (edges, colors, weights).prop_flat_map(move |(edges, colors, weights)| {
            let m = edges.len();
            let h = Hypergraph::new(n, edges).unwrap();
            (Just(h), Just(InitialState::new(colors, weights)), 0..m)
        })
    })
}

fn arb_alphas() -> impl Strategy<Value = AlphaParams> {
    (1.0f64..32.0, 1.0f64..32.0, 1.0f64..32.0, 1.0f64..32.0).prop_map(|(a, b, c, d)| AlphaParams { a, b, c, d })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn dominations((h, init, e) in arb_instance(), alphas in arb_alphas()) {
        let q = h.stats().q;
        let report = event_report(&h, &init, &alphas);
        let threat = build_threat(&h, e);
        let focus = focus_report(&threat, &init, &alphas, q);
        for (&j, &r) in &focus.r_counts {
            prop_assert!(r <= report.q_count(j), "R_{} = {} > Q_{}", j, r, j);
        }
        let log = (alphas.b * q).ln();
        if log >= 0.0 {
            prop_assert!(focus.x <= log * report.y * (1.0 + 1e-12) + 1e-12);
        }
        let lower: f64 = focus
            .endangered
            .iter()
            .map(|v| 1.0 / (threat.edges[v.lightest_threat].vertices.len() + 1) as f64)
            .sum();
        prop_assert!(focus.y_e >= lower - 1e-12);
        prop_assert!(focus.y_e <= report.y + 1e-12);
    }

    #[test]
    fn delta_below_deficit_once_heaviest((h, init, e) in arb_instance()) {
        let q = h.stats().q;
        let alphas = AlphaParams::default();
        let threat = build_threat(&h, e);
        let focus = focus_report(&threat, &init, &alphas, q);
        for v in &focus.endangered {
            let t = &threat.edges[v.lightest_threat];
            let top = t.vertices.iter().map(|&u| init.weights[u]).fold(0.0, f64::max);
            // Complete the sample: v initially blue and heavier than f_v.
            for w in [top + (1.0 - top) * 0.25, top + (1.0 - top) * 0.9] {
                let mut completed = init.clone();
                completed.colors[v.vertex] = Color::Blue;
                completed.weights[v.vertex] = w;
                let h_v = h.edge(t.extension_edge);
                let d2 = second_weight_deficit(h_v, &completed);
                prop_assert!(v.delta <= d2 + 1e-12, "delta {} > d2 {}", v.delta, d2);
                prop_assert!((v.delta - d2).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn severity_and_endangerment((h, init, e) in arb_instance()) {
        let threat = build_threat(&h, e);
        let focus = focus_report(&threat, &init, &AlphaParams::default(), h.stats().q);
        for &v in h.edge(e) {
            let endangering: Vec<usize> = threat
                .edges
                .iter()
                .filter(|t| t.extension_vertex == v && t.vertices.iter().all(|&u| init.colors[u] == Color::Blue))
                .map(|t| t.extension_size)
                .collect();
            match focus.endangered_vertex(v) {
                Some(info) => prop_assert_eq!(Some(info.severity), endangering.iter().copied().min()),
                None => prop_assert!(endangering.is_empty()),
            }
        }
    }

    #[test]
    fn necessary_conditions_hold((h, init, e) in arb_instance(), alphas in arb_alphas()) {
        let q = h.stats().q;
        let trace = recolor(&h, &init);
        let report = event_report(&h, &init, &alphas);
        let focus = focus_report(&build_threat(&h, e), &init, &alphas, q);
        prop_assert_eq!(check_red_edge_conditions(&h, e, &init, &trace, &report, &focus, &alphas), Ok(()));
    }
}

/// All `2^n` initial colorings; weights are irrelevant for these statistics.
fn colorings(n: usize) -> impl Iterator<Item = InitialState> {
    (0u32..1 << n).map(move |mask| {
        InitialState::new(
            (0..n).map(|v| if mask >> v & 1 == 1 { Color::Red } else { Color::Blue }).collect(),
            (0..n).map(|v| (v + 1) as f64 / (n + 1) as f64).collect(),
        )
    })
}

#[test]
fn exact_color_expectations() {
    for seed in 0..25 {
        let h = generate(&GenSpec::Mixture { n: 10, profile: vec![(2, 3), (3, 4), (4, 3), (5, 2)], seed })
            .unwrap();
        let stats = h.stats();
        let alphas = AlphaParams::default();
        let n = h.vertex_count();
        let count = (1u64 << n) as f64;
        let mut mono = 0.0;
        let mut y = 0.0;
        let mut y_e = BTreeMap::new();
        let threats: Vec<_> = (0..h.edge_count()).map(|e| build_threat(&h, e)).collect();
        for init in colorings(n) {
            let r = event_report(&h, &init, &alphas);
            mono += r.mono_count as f64;
            y += r.y;
            for (e, t) in threats.iter().enumerate() {
                *y_e.entry(e).or_insert(0.0) += focus_report(t, &init, &alphas, stats.q).y_e;
            }
        }
        assert!((mono / count - stats.q).abs() < 1e-12, "E[mono] != q");
        assert!(y / count <= 2.0 * stats.q + 1e-12, "E[Y] > 2q");
        let k = stats.s_min.unwrap() as f64;
        for (e, total) in y_e {
            let mean = total / count;
            if threats[e].edges.is_empty() {
                assert_eq!(mean, 0.0);
            } else {
                assert!(mean < stats.q / k, "E[Y_e] = {mean} >= q/k for edge {e}");
            }
        }
    }
}

#[test]
fn light_edges_use_strict_weight_threshold() {
    let h = Hypergraph::new(2, [[0, 1]]).unwrap();
    let alphas = AlphaParams { b: 4.0, ..AlphaParams::default() };
    let p = p_threshold(4.0, 0.5, 2);
    let at = InitialState::new(vec![Color::Red; 2], vec![0.1, 1.0 - p]);
    assert!(event_report(&h, &at, &alphas).light_edges.is_empty());
}

#[test]
fn light_edge_rate_is_below_budget() {
    // alpha_b q > 1: the expected number of light edges is at most 1/alpha_b.
    let h = generate(&GenSpec::Mixture { n: 40, profile: vec![(3, 8), (4, 8), (6, 16)], seed: 4 }).unwrap();
    let alphas = AlphaParams { b: 4.0, ..AlphaParams::default() };
    let trials = 20_000;
    let mut total = 0.0;
    let mut sq = 0.0;
    for seed in 0..trials {
        let light = event_report(&h, &sample_initial(&h, seed), &alphas).light_count() as f64;
        total += light;
        sq += light * light;
    }
    let mean = total / trials as f64;
    let se = ((sq / trials as f64 - mean * mean) / trials as f64).sqrt();
    assert!(alphas.b * h.stats().q > 1.0);
    assert!(mean < 1.0 / alphas.b + 5.0 * se, "mean light count {mean}");
}
