use propb_core::oracle::{exact_greedy, exact_two_phase, is_two_colorable, rank_weights, Fraction};
use propb_core::two_phase::{is_proper, mono_color};
use propb_core::{fixtures, generate, greedy_run, montecarlo, recolor, sample_initial, Color, GenSpec, Hypergraph, InitialState, Procedure};

fn small_instance(seed: u64, n: usize, m: usize) -> Hypergraph {
    let twos = m / 2 + (seed as usize % 2);
    let profile = vec![(2, twos.min(m)), (3, m - twos.min(m))];
    generate(&GenSpec::Mixture { n, profile, seed }).unwrap()
}

/// Brute force over every coloring: independent of the backtracking search.
fn colorable_by_brute_force(h: &Hypergraph) -> bool {
    let n = h.vertex_count();
    (0u32..1 << n).any(|mask| {
        let colors: Vec<Color> = (0..n).map(|v| if mask >> v & 1 == 1 { Color::Red } else { Color::Blue }).collect();
        is_proper(h, &colors).0
    })
}

#[test]
fn fano_is_not_two_colorable_by_brute_force() {
    assert!(!colorable_by_brute_force(&fixtures::fano()));
    assert!(!colorable_by_brute_force(&fixtures::triangle()));
    assert!(colorable_by_brute_force(&fixtures::complete_3_uniform_on_4()));
}

#[test]
fn backtracking_agrees_with_brute_force() {
    for seed in 0..200 {
        let h = small_instance(seed, 5 + (seed as usize % 4), 4 + (seed as usize % 9));
        let found = is_two_colorable(&h).unwrap();
        assert_eq!(found.is_some(), colorable_by_brute_force(&h), "seed {seed}");
        if let Some(w) = found {
            assert!(is_proper(&h, &w).0);
        }
    }
}

#[test]
fn order_only_dependence() {
    for seed in 0..100u64 {
        let n = 3 + (seed as usize % 6);
        let h = small_instance(seed, n, 2 + (seed as usize % 5));
        let init = sample_initial(&h, seed);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| init.weights[a].total_cmp(&init.weights[b]).then(a.cmp(&b)));
        let ranked = InitialState::new(init.colors.clone(), rank_weights(&order));
        assert_eq!(recolor(&h, &init), recolor(&h, &ranked), "seed {seed}");
    }
}

/// Direct hand enumeration for f1 = {0,1}, e = {1,2}: the transcription of
/// the rule is done here independently of the library.
#[test]
fn path_oracle_by_independent_enumeration() {
    let edges = [[0usize, 1], [1, 2]];
    let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut proper = 0;
    let mut e_red = 0;
    for mask in 0..8u32 {
        let ic: Vec<bool> = (0..3).map(|v| mask >> v & 1 == 1).collect();
        for order in orders {
            let pos = |v: usize| order.iter().position(|&x| x == v).unwrap();
            let mut flipped = [false; 3];
            for &v in &order {
                flipped[v] = edges.iter().any(|f| {
                    let top = if pos(f[0]) > pos(f[1]) { f[0] } else { f[1] };
                    top == v && ic[f[0]] == ic[f[1]] && !flipped[f[0]] && !flipped[f[1]]
                });
            }
            let c: Vec<bool> = (0..3).map(|v| ic[v] ^ flipped[v]).collect();
            if edges.iter().all(|f| c[f[0]] != c[f[1]]) {
                proper += 1;
            }
            if c[1] && c[2] {
                e_red += 1;
            }
        }
    }
    assert_eq!((proper, e_red), (36, 3));

    let r = exact_two_phase(&fixtures::path2(), Some(1)).unwrap();
    assert_eq!(r.success_prob, Fraction::new(36, 48));
    assert_eq!(r.edge_red_prob, Some(Fraction::new(3, 48)));
}

#[test]
fn greedy_on_path_always_succeeds() {
    // Golden value from the 3! enumeration: every order yields a proper coloring.
    let r = exact_greedy(&fixtures::path2(), Some(0)).unwrap();
    assert_eq!(r.trace_count, 6);
    assert_eq!(r.success_prob, Fraction::new(1, 1));
    assert_eq!(r.edge_red_prob, Some(Fraction::new(0, 1)));
}

#[test]
fn complements_sum_to_one() {
    for seed in 0..30 {
        let h = small_instance(seed, 4 + (seed as usize % 3), 2 + (seed as usize % 4));
        for r in [exact_two_phase(&h, None).unwrap(), exact_greedy(&h, None).unwrap()] {
            let total = r.success_prob.numerator * (r.trace_count / r.success_prob.denominator)
                + r.failure_prob.numerator * (r.trace_count / r.failure_prob.denominator);
            assert_eq!(total, r.trace_count);
            assert_eq!(r.success_prob.complement(), r.failure_prob);
        }
    }
}

#[test]
fn fano_procedures_always_fail() {
    let h = fixtures::fano();
    assert_eq!(exact_two_phase(&h, None).unwrap().success_prob.numerator, 0);
    assert_eq!(exact_greedy(&h, None).unwrap().success_prob.numerator, 0);
    for seed in 0..100 {
        assert!(!recolor(&h, &sample_initial(&h, seed)).is_proper());
        assert!(greedy_run(&h, seed).failed());
    }
}

#[test]
fn monte_carlo_converges_to_exact() {
    for seed in 0..6 {
        let h = small_instance(seed, 6, 4);
        for procedure in [Procedure::TwoPhase, Procedure::Greedy] {
            let exact = match procedure {
                Procedure::TwoPhase => exact_two_phase(&h, None),
                Procedure::Greedy => exact_greedy(&h, None),
            }
            .unwrap()
            .success_prob
            .to_f64();
            let mc = montecarlo(&h, 100_000, seed, procedure);
            let se = (exact * (1.0 - exact) / 100_000.0).sqrt();
            assert!((mc.estimate - exact).abs() <= 4.0 * se, "seed {seed} {procedure:?}: {} vs {exact}", mc.estimate);
        }
    }
}

#[test]
fn focal_red_probability_matches_direct_count() {
    let h = fixtures::path2();
    let r = exact_two_phase(&h, Some(0)).unwrap();
    // Recount with the public recolor entry point on rank weights.
    let mut count = 0u32;
    let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for mask in 0..8u32 {
        for order in orders {
            let colors = (0..3).map(|v| if mask >> v & 1 == 1 { Color::Red } else { Color::Blue }).collect();
            let t = recolor(&h, &InitialState::new(colors, rank_weights(&order)));
            count += (mono_color(h.edge(0), &t.colors) == Some(Color::Red)) as u32;
        }
    }
    assert_eq!(r.edge_red_prob, Some(Fraction::new(count as u128, 48)));
}
