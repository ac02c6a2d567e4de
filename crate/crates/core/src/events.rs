//! Bad-event instrumentation for the two-phase procedure.
//!
//! [`event_report`] evaluates the global quantities of one sampled initial
//! state: initially monochromatic edges, light edges, almost monochromatic
//! edge counts `Q_j` with `Y = sum Q_j / j`, and second weight deficits
//! `d2`/`D2`. [`focus_report`] evaluates the quantities tied to one fixed
//! edge `e` through its threat hypergraph: endangered vertices, severities,
//! `R_j^e`, `X` and `Y_e`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::two_phase::{mono_color, weight_order, Color, ColoringTrace, InitialState};
use crate::Hypergraph;

/// Markov thresholds for the four bad events.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Default for AlphaParams {
    fn default() -> Self {
        Self::uniform(16.0)
    }
}

impl AlphaParams {
    pub fn uniform(alpha: f64) -> Self {
        Self { a: alpha, b: alpha, c: alpha, d: alpha }
    }

    pub fn is_valid(&self) -> bool {
        [self.a, self.b, self.c, self.d].iter().all(|x| *x > 0.0 && x.is_finite())
    }

    /// Upper bound on the probability that any bad event fires:
    /// `1/a + 1/b + 2/c + 2/d`.
    pub fn failure_budget(&self) -> f64 {
        1.0 / self.a + 1.0 / self.b + 2.0 / self.c + 2.0 / self.d
    }
}

/// `p_j = ln(alpha_b * q) / j` clamped to [0, 1]; zero when `alpha_b * q <= 1`.
pub fn p_threshold(alpha_b: f64, q: f64, j: usize) -> f64 {
    let log = (alpha_b * q).ln();
    if log > 0.0 {
        (log / j as f64).min(1.0)
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EventFlags {
    /// More than `alpha_a * q` initially monochromatic edges.
    pub a: bool,
    /// Some light monochromatic edge.
    pub b: bool,
    /// `Y > alpha_c * q`.
    pub c: bool,
    /// `D2 > alpha_d * q`.
    pub d: bool,
}

impl EventFlags {
    pub fn any(&self) -> bool {
        self.a || self.b || self.c || self.d
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventReport {
    pub q: f64,
    pub mono_count: usize,
    /// Size `j` to `p_j`, for every edge size present.
    pub p_schedule: BTreeMap<usize, f64>,
    /// False when `alpha_b * q <= 1`; the light-edge test is then disabled.
    pub light_test_enabled: bool,
    /// Set when `q = 0`, where `p_j` is undefined and reported as 0.
    pub q_undefined: bool,
    pub light_edges: Vec<usize>,
    /// Size `j` to the number of almost monochromatic edges of size `j`.
    pub q_counts: BTreeMap<usize, usize>,
    pub y: f64,
    /// Second weight deficit per edge.
    pub d2: Vec<f64>,
    pub d2_total: f64,
    pub flags: EventFlags,
}

impl EventReport {
    pub fn light_count(&self) -> usize {
        self.light_edges.len()
    }

    pub fn q_count(&self, j: usize) -> usize {
        self.q_counts.get(&j).copied().unwrap_or(0)
    }

    pub fn p(&self, j: usize) -> f64 {
        self.p_schedule.get(&j).copied().unwrap_or(0.0)
    }
}

/// `f` is almost monochromatic when removing some vertex leaves it monochromatic.
pub fn is_almost_monochromatic(edge: &[usize], colors: &[Color]) -> bool {
    let blue = edge.iter().filter(|&&v| colors[v] == Color::Blue).count();
    blue + 1 >= edge.len() || blue <= 1
}

/// Weight of the second heaviest vertex of an edge (ties by id).
pub fn second_heaviest_weight(edge: &[usize], weights: &[f64]) -> f64 {
    let mut top = edge[0];
    let mut second: Option<usize> = None;
    for &v in &edge[1..] {
        if weight_order(weights, v, top).is_gt() {
            second = Some(top);
            top = v;
        } else if second.is_none_or(|s| weight_order(weights, v, s).is_gt()) {
            second = Some(v);
        }
    }
    weights[second.expect("edges have at least two vertices")]
}

/// `(|f| + 1) * (1 - w2(f))` for initially monochromatic `f`, else 0.
pub fn second_weight_deficit(edge: &[usize], init: &InitialState) -> f64 {
    if mono_color(edge, &init.colors).is_none() {
        return 0.0;
    }
    (edge.len() + 1) as f64 * (1.0 - second_heaviest_weight(edge, &init.weights))
}

pub fn event_report(h: &Hypergraph, init: &InitialState, alphas: &AlphaParams) -> EventReport {
    let stats = h.stats();
    event_report_with_q(h, init, alphas, stats.q)
}

/// As [`event_report`] with `q` supplied by the caller.
pub fn event_report_with_q(h: &Hypergraph, init: &InitialState, alphas: &AlphaParams, q: f64) -> EventReport {
    assert_eq!(init.len(), h.vertex_count());
    let light_test_enabled = (alphas.b * q).ln() > 0.0;
    let mut p_schedule = BTreeMap::new();
    let mut q_counts = BTreeMap::new();
    let mut mono_count = 0;
    let mut light_edges = Vec::new();
    let mut d2 = Vec::with_capacity(h.edge_count());

    for (index, edge) in h.edges().enumerate() {
        let j = edge.len();
        let p = *p_schedule.entry(j).or_insert_with(|| p_threshold(alphas.b, q, j));
        let q_count = q_counts.entry(j).or_insert(0usize);
        if is_almost_monochromatic(edge, &init.colors) {
            *q_count += 1;
        }
        if mono_color(edge, &init.colors).is_some() {
            mono_count += 1;
            if light_test_enabled && edge.iter().all(|&v| init.weights[v] < 1.0 - p) {
                light_edges.push(index);
            }
            d2.push((j + 1) as f64 * (1.0 - second_heaviest_weight(edge, &init.weights)));
        } else {
            d2.push(0.0);
        }
    }

    let y = q_counts.iter().map(|(&j, &c)| c as f64 / j as f64).fold(0.0, |a, b| a + b);
    let d2_total = d2.iter().fold(0.0, |a, b| a + b);
    let flags = EventFlags {
        a: mono_count as f64 > alphas.a * q,
        b: !light_edges.is_empty(),
        c: y > alphas.c * q,
        d: d2_total > alphas.d * q,
    };
    EventReport {
        q,
        mono_count,
        p_schedule,
        light_test_enabled,
        q_undefined: q == 0.0,
        light_edges,
        q_counts,
        y,
        d2,
        d2_total,
        flags,
    }
}

/// One edge `f_e = f \ e` of the threat hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreatEdge {
    pub vertices: Vec<usize>,
    /// Index of `f` in the original hypergraph.
    pub extension_edge: usize,
    /// The unique vertex of `f ∩ e`.
    pub extension_vertex: usize,
    /// `|f|`, i.e. `vertices.len() + 1`.
    pub extension_size: usize,
}

/// The multihypergraph on `V \ e` formed by `f \ e` for every `f` meeting
/// `e` in exactly one vertex. Equal vertex sets stay separate entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreatHypergraph {
    pub base_edge: usize,
    pub base_vertices: Vec<usize>,
    pub edges: Vec<ThreatEdge>,
}

pub fn build_threat(h: &Hypergraph, e: usize) -> ThreatHypergraph {
    let base = h.edge(e);
    let mut in_base = vec![false; h.vertex_count()];
    for &v in base {
        in_base[v] = true;
    }
    let mut edges = Vec::new();
    for (index, f) in h.edges().enumerate() {
        let mut common = f.iter().filter(|&&v| in_base[v]);
        let (Some(&shared), None) = (common.next(), common.next()) else {
            continue;
        };
        edges.push(ThreatEdge {
            vertices: f.iter().copied().filter(|&v| !in_base[v]).collect(),
            extension_edge: index,
            extension_vertex: shared,
            extension_size: f.len(),
        });
    }
    ThreatHypergraph { base_edge: e, base_vertices: base.to_vec(), edges }
}

/// Per endangered vertex of the focal edge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EndangeredVertex {
    pub vertex: usize,
    /// Smallest `|f|` over the extension edges endangering this vertex.
    pub severity: usize,
    /// Index into the threat edges of the lightest endangering edge, i.e.
    /// the one whose heaviest vertex is lightest.
    pub lightest_threat: usize,
    /// `(|f_v| + 2) * (1 - w(f_v))` for that lightest edge `f_v`.
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FocusReport {
    pub base_edge: usize,
    /// Endangered vertices of `e`, increasing id.
    pub endangered: Vec<EndangeredVertex>,
    /// Severity `j` to `R_j^e`.
    pub r_counts: BTreeMap<usize, usize>,
    /// `X = sum_j R_j^e * p_j`.
    pub x: f64,
    /// `Y_e`: sum of `1 / (|f_e| + 1)` over blue threat edges.
    pub y_e: f64,
    /// Indices of the blue threat edges.
    pub blue_threats: Vec<usize>,
}

impl FocusReport {
    pub fn endangered_vertex(&self, v: usize) -> Option<&EndangeredVertex> {
        self.endangered.iter().find(|x| x.vertex == v)
    }

    pub fn r_count(&self, j: usize) -> usize {
        self.r_counts.get(&j).copied().unwrap_or(0)
    }
}

/// Quantities tied to the focal edge. Reads `init` only outside `e`.
///
/// `q` fixes the thresholds `p_j` entering `X`.
pub fn focus_report(threat: &ThreatHypergraph, init: &InitialState, alphas: &AlphaParams, q: f64) -> FocusReport {
    let weights = &init.weights;
    let heaviest_of = |t: &ThreatEdge| {
        *t.vertices
            .iter()
            .max_by(|&&a, &&b| weight_order(weights, a, b))
            .expect("threat edges are nonempty")
    };

    let mut blue_threats = Vec::new();
    let mut y_e = 0.0;
    // Per extension vertex: (severity, lightest threat index, its heaviest vertex).
    let mut per_vertex: BTreeMap<usize, (usize, usize, usize)> = BTreeMap::new();
    for (index, t) in threat.edges.iter().enumerate() {
        if !t.vertices.iter().all(|&v| init.colors[v] == Color::Blue) {
            continue;
        }
        blue_threats.push(index);
        y_e += 1.0 / (t.vertices.len() + 1) as f64;
        let top = heaviest_of(t);
        per_vertex
            .entry(t.extension_vertex)
            .and_modify(|(severity, lightest, lightest_top)| {
                *severity = (*severity).min(t.extension_size);
                if weight_order(weights, top, *lightest_top).is_lt() {
                    *lightest = index;
                    *lightest_top = top;
                }
            })
            .or_insert((t.extension_size, index, top));
    }

    let mut r_counts = BTreeMap::new();
    let mut endangered = Vec::with_capacity(per_vertex.len());
    for (vertex, (severity, lightest, top)) in per_vertex {
        *r_counts.entry(severity).or_insert(0usize) += 1;
        let size = threat.edges[lightest].vertices.len();
        endangered.push(EndangeredVertex {
            vertex,
            severity,
            lightest_threat: lightest,
            delta: (size + 2) as f64 * (1.0 - weights[top]),
        });
    }
    let x = r_counts.iter().map(|(&j, &r)| r as f64 * p_threshold(alphas.b, q, j)).fold(0.0, |a, b| a + b);
    FocusReport { base_edge: threat.base_edge, endangered, r_counts, x, y_e, blue_threats }
}

/// A violated necessary condition for the focal edge ending all red.
#[derive(Debug, Clone, PartialEq)]
pub enum NecessaryViolation {
    NoInitiallyBlueVertex,
    TooManyInitiallyBlue { count: usize, limit: f64 },
    NotEndangered { vertex: usize },
    TooLight { vertex: usize, weight: f64, needed: f64 },
}

/// Checks the conditions every run must meet when `e` ends all red and no
/// bad event fired: between 1 and `alpha_a * q` initially blue vertices in
/// `e`, each endangered, and each at least `1 - p_j` heavy where `j` is its
/// severity. The weight condition is only checked when the light-edge test
/// is enabled.
pub fn check_red_edge_conditions(
    h: &Hypergraph,
    e: usize,
    init: &InitialState,
    trace: &ColoringTrace,
    report: &EventReport,
    focus: &FocusReport,
    alphas: &AlphaParams,
) -> Result<(), NecessaryViolation> {
    if mono_color(h.edge(e), &trace.colors) != Some(Color::Red) || report.flags.any() {
        return Ok(());
    }
    let blue: Vec<usize> = h.edge(e).iter().copied().filter(|&v| init.colors[v] == Color::Blue).collect();
    if blue.is_empty() {
        return Err(NecessaryViolation::NoInitiallyBlueVertex);
    }
    let limit = alphas.a * report.q;
    if blue.len() as f64 > limit {
        return Err(NecessaryViolation::TooManyInitiallyBlue { count: blue.len(), limit });
    }
    for v in blue {
        let Some(info) = focus.endangered_vertex(v) else {
            return Err(NecessaryViolation::NotEndangered { vertex: v });
        };
        if report.light_test_enabled {
            let needed = 1.0 - p_threshold(alphas.b, report.q, info.severity);
            if init.weights[v] < needed {
                return Err(NecessaryViolation::TooLight { vertex: v, weight: init.weights[v], needed });
            }
        }
    }
    Ok(())
}
