//! Seeded Monte Carlo campaigns.
//!
//! Trial `i` draws its initial state from the stream keyed by
//! `mix(master_seed, i)`. Trials are grouped into fixed-size blocks in index
//! order; blocks run in parallel and are merged in index order, so results
//! are bit-identical for any number of worker threads.

use std::ops::Range;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::events::{build_threat, event_report_with_q, focus_report, AlphaParams, ThreatHypergraph};
use crate::greedy::greedy_into;
use crate::two_phase::{mono_color, recolor_into, sample_initial_from, Color, InitialState, RecolorScratch, Schedule};
use crate::{rng, Hypergraph};

/// Trials per block. Part of the reproducibility contract: changing it
/// changes floating-point summation order.
pub const BLOCK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Procedure {
    TwoPhase,
    Greedy,
}

impl FromStr for Procedure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "twophase" | "two-phase" => Ok(Procedure::TwoPhase),
            "greedy" => Ok(Procedure::Greedy),
            other => Err(format!("unknown procedure {other:?}, expected twophase or greedy")),
        }
    }
}

impl Procedure {
    pub fn name(self) -> &'static str {
        match self {
            Procedure::TwoPhase => "twophase",
            Procedure::Greedy => "greedy",
        }
    }
}

/// Initial state of trial `index`.
pub fn trial_state(h: &Hypergraph, master_seed: u64, index: u64) -> InitialState {
    sample_initial_from(h.vertex_count(), &mut rng::substream(master_seed, index))
}

/// Whether one run of `procedure` from `init` ends in a proper coloring.
pub fn run_succeeds(h: &Hypergraph, init: &InitialState, procedure: Procedure) -> bool {
    let schedule = Schedule::from_weights(h, &init.weights);
    let colors = match procedure {
        Procedure::TwoPhase => {
            let mut scratch = RecolorScratch::default();
            recolor_into(h, &schedule, &init.colors, &mut scratch, None);
            init.colors
                .iter()
                .zip(&scratch.recolored)
                .map(|(&c, &flip)| if flip { c.complement() } else { c })
                .collect::<Vec<Color>>()
        }
        Procedure::Greedy => {
            let mut colors = vec![Color::Blue; h.vertex_count()];
            let mut forced = vec![false; h.vertex_count()];
            greedy_into(h, &schedule, &mut colors, &mut forced);
            colors
        }
    };
    h.edges().all(|e| mono_color(e, &colors).is_none())
}

/// Running sum and sum of squares.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Moments {
    pub sum: f64,
    pub sum_sq: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.sum += x;
        self.sum_sq += x * x;
    }

    fn merge(&mut self, other: &Moments) {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
    }

    pub fn estimate(&self, n: u64) -> MeanEstimate {
        let nf = n as f64;
        let mean = self.sum / nf;
        let var = if n > 1 { ((self.sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0) } else { 0.0 };
        MeanEstimate { mean, std_err: (var / nf).sqrt() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanEstimate {
    pub mean: f64,
    pub std_err: f64,
}

/// Mergeable per-block tallies.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Accumulator {
    pub trials: u64,
    pub successes: u64,
    pub mono_count: Moments,
    pub y: Moments,
    pub d2: Moments,
    pub x: Moments,
    pub y_e: Moments,
    /// Trials where bad events A, B, C, D fired.
    pub flag_counts: [u64; 4],
}

impl Accumulator {
    pub fn merge(&mut self, other: &Accumulator) {
        self.trials += other.trials;
        self.successes += other.successes;
        self.mono_count.merge(&other.mono_count);
        self.y.merge(&other.y);
        self.d2.merge(&other.d2);
        self.x.merge(&other.x);
        self.y_e.merge(&other.y_e);
        for (a, b) in self.flag_counts.iter_mut().zip(other.flag_counts) {
            *a += b;
        }
    }
}

/// What a campaign measures besides success.
#[derive(Debug, Clone)]
pub struct CampaignPlan<'a> {
    pub hypergraph: &'a Hypergraph,
    pub master_seed: u64,
    pub procedure: Procedure,
    /// Event statistics are collected only when set.
    pub alphas: Option<AlphaParams>,
    pub focal_edge: Option<usize>,
}

impl CampaignPlan<'_> {
    /// Runs trials `range` sequentially.
    pub fn run_range(&self, range: Range<u64>) -> Accumulator {
        let h = self.hypergraph;
        let q = h.stats().q;
        let threat: Option<ThreatHypergraph> = self.focal_edge.map(|e| build_threat(h, e));
        let mut acc = Accumulator::default();
        for i in range {
            let init = trial_state(h, self.master_seed, i);
            acc.trials += 1;
            acc.successes += run_succeeds(h, &init, self.procedure) as u64;
            let Some(alphas) = &self.alphas else {
                continue;
            };
            let report = event_report_with_q(h, &init, alphas, q);
            acc.mono_count.push(report.mono_count as f64);
            acc.y.push(report.y);
            acc.d2.push(report.d2_total);
            for (count, fired) in acc.flag_counts.iter_mut().zip([
                report.flags.a,
                report.flags.b,
                report.flags.c,
                report.flags.d,
            ]) {
                *count += fired as u64;
            }
            if let Some(threat) = &threat {
                let focus = focus_report(threat, &init, alphas, q);
                acc.x.push(focus.x);
                acc.y_e.push(focus.y_e);
            }
        }
        acc
    }

    /// Runs trials `0..trials` in parallel blocks with a deterministic merge.
    pub fn run(&self, trials: u64) -> Accumulator {
        let blocks = trials.div_ceil(BLOCK);
        let partials: Vec<Accumulator> = (0..blocks)
            .into_par_iter()
            .map(|b| self.run_range(b * BLOCK..((b + 1) * BLOCK).min(trials)))
            .collect();
        let mut total = Accumulator::default();
        for partial in &partials {
            total.merge(partial);
        }
        total
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EventMeans {
    pub mono_count: MeanEstimate,
    pub y: MeanEstimate,
    pub d2: MeanEstimate,
    /// Present when a focal edge was given.
    pub x: Option<MeanEstimate>,
    pub y_e: Option<MeanEstimate>,
    /// Empirical rates of bad events A, B, C, D.
    pub flag_rates: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloResult {
    pub procedure: Procedure,
    pub master_seed: u64,
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    /// `sqrt(p (1 - p) / trials)` at the estimate.
    pub std_err: f64,
    pub events: Option<EventMeans>,
    pub q: f64,
    pub s_min: Option<usize>,
}

impl MonteCarloResult {
    fn from_accumulator(plan: &CampaignPlan<'_>, acc: &Accumulator) -> Self {
        let stats = plan.hypergraph.stats();
        let n = acc.trials;
        let estimate = acc.successes as f64 / n as f64;
        let events = plan.alphas.map(|_| EventMeans {
            mono_count: acc.mono_count.estimate(n),
            y: acc.y.estimate(n),
            d2: acc.d2.estimate(n),
            x: plan.focal_edge.map(|_| acc.x.estimate(n)),
            y_e: plan.focal_edge.map(|_| acc.y_e.estimate(n)),
            flag_rates: acc.flag_counts.map(|c| c as f64 / n as f64),
        });
        Self {
            procedure: plan.procedure,
            master_seed: plan.master_seed,
            trials: n,
            successes: acc.successes,
            estimate,
            std_err: (estimate * (1.0 - estimate) / n as f64).sqrt(),
            events,
            q: stats.q,
            s_min: stats.s_min,
        }
    }

    /// Column names of [`Self::csv_record`], in order.
    pub const CSV_HEADER: [&'static str; 23] = [
        "experiment",
        "seed",
        "trials",
        "estimate",
        "std_err",
        "mono_count_mean",
        "mono_count_se",
        "y_mean",
        "y_se",
        "d2_mean",
        "d2_se",
        "x_mean",
        "x_se",
        "y_e_mean",
        "y_e_se",
        "rate_a",
        "rate_b",
        "rate_c",
        "rate_d",
        "q",
        "ref_mono_count",
        "ref_d2",
        "ref_y_e",
    ];

    /// One CSV row; absent statistics are empty fields. The reference
    /// columns are `q`, `2q` and `q/k`, the expectations the corresponding
    /// means are compared with.
    pub fn csv_record(&self, experiment: &str) -> Vec<String> {
        let mut row = vec![
            experiment.to_string(),
            self.master_seed.to_string(),
            self.trials.to_string(),
            self.estimate.to_string(),
            self.std_err.to_string(),
        ];
        let cell = |m: Option<MeanEstimate>| match m {
            Some(m) => [m.mean.to_string(), m.std_err.to_string()],
            None => [String::new(), String::new()],
        };
        let ev = self.events.as_ref();
        row.extend(cell(ev.map(|e| e.mono_count)));
        row.extend(cell(ev.map(|e| e.y)));
        row.extend(cell(ev.map(|e| e.d2)));
        row.extend(cell(ev.and_then(|e| e.x)));
        row.extend(cell(ev.and_then(|e| e.y_e)));
        for i in 0..4 {
            row.push(ev.map(|e| e.flag_rates[i].to_string()).unwrap_or_default());
        }
        row.push(self.q.to_string());
        row.push(self.q.to_string());
        row.push((2.0 * self.q).to_string());
        row.push(self.s_min.map(|k| (self.q / k as f64).to_string()).unwrap_or_default());
        row
    }
}

/// Success rate of `procedure` over `trials` seeded runs.
pub fn montecarlo(h: &Hypergraph, trials: u64, master_seed: u64, procedure: Procedure) -> MonteCarloResult {
    assert!(trials >= 1, "at least one trial is required");
    let plan = CampaignPlan { hypergraph: h, master_seed, procedure, alphas: None, focal_edge: None };
    MonteCarloResult::from_accumulator(&plan, &plan.run(trials))
}

/// Success rate plus event statistics and bad-event rates.
pub fn event_campaign(
    h: &Hypergraph,
    trials: u64,
    master_seed: u64,
    procedure: Procedure,
    alphas: AlphaParams,
    focal_edge: Option<usize>,
) -> MonteCarloResult {
    assert!(trials >= 1, "at least one trial is required");
    if let Some(e) = focal_edge {
        assert!(e < h.edge_count(), "focal edge {e} out of range");
    }
    let plan = CampaignPlan { hypergraph: h, master_seed, procedure, alphas: Some(alphas), focal_edge };
    MonteCarloResult::from_accumulator(&plan, &plan.run(trials))
}
