//! Random recoloring procedures for two-coloring nonuniform hypergraphs.
//!
//! The crate contains:
//!
//! - [`Hypergraph`] with its statistics (`q`, per-size `q_j`) and the `.hg`
//!   text format ([`format`]);
//! - random instance generators ([`generate`]);
//! - the two-phase recoloring procedure ([`two_phase`]) and single-pass
//!   random greedy coloring ([`greedy`]);
//! - bad-event and edge-focused instrumentation ([`events`]);
//! - closed-form bounds ([`bounds`]);
//! - exact enumeration oracles for tiny instances ([`oracle`]);
//! - seeded, parallel Monte Carlo campaigns ([`experiment`]).

// `!(x >= 0.0)` style checks are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod events;
pub mod experiment;
pub mod fixtures;
pub mod format;
pub mod generate;
pub mod greedy;
pub mod hypergraph;
pub mod oracle;
pub mod rng;
pub mod two_phase;

pub use error::{DomainError, GenerateError, HypergraphError, TooLarge};
pub use events::{build_threat, event_report, focus_report, AlphaParams, EventReport, FocusReport, ThreatHypergraph};
pub use experiment::{event_campaign, montecarlo, MonteCarloResult, Procedure};
pub use generate::{generate, target_q_counts, GenSpec};
pub use greedy::{greedy_diagnostics, greedy_run, GreedyDiagnostics, GreedyTrace};
pub use hypergraph::{Hypergraph, HypergraphStats};
pub use oracle::{exact_greedy, exact_two_phase, is_two_colorable, ExactResult, Fraction};
pub use two_phase::{is_proper, recolor, sample_initial, Color, ColoringTrace, InitialState};
