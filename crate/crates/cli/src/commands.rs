use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use propb_core::bounds::{
    convex_envelope, greedy_failure_bound, improved_conditional_bound, improved_edge_bound, series_cap,
    simple_conditional_bound, simple_edge_bound, simple_regime_holds, uniform_edge_bound, BoundValue,
};
use propb_core::events::event_report_with_q;
use propb_core::experiment::trial_state;
use propb_core::format::{parse, serialize};
use propb_core::greedy::greedy_with_weights;
use propb_core::oracle::{exact_greedy, exact_two_phase, ExactResult};
use propb_core::{
    build_threat, event_campaign, focus_report, generate, recolor, sample_initial,
    target_q_counts, DomainError, GenSpec, Hypergraph, MonteCarloResult, Procedure,
};
use rayon::prelude::*;
use serde_json::json;

use crate::{BoundArgs, BoundKind, ColorArgs, EventsArgs, GenArgs, GenKind, McArgs, OracleArgs, Usage};

fn load(path: &Path) -> Result<Hypergraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn sink(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn check_edge(h: &Hypergraph, edge: Option<usize>) -> Result<()> {
    match edge {
        Some(e) if e >= h.edge_count() => {
            Err(DomainError(format!("edge {e} out of range (m = {})", h.edge_count())).into())
        }
        _ => Ok(()),
    }
}

fn parse_list(text: &str, what: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Usage(format!("bad {what} entry {t:?}")).into()))
        .collect()
}

fn parse_profile(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .map(|entry| {
            let bad = || Usage(format!("bad profile entry {entry:?}, expected size:count"));
            let (j, c) = entry.split_once(':').ok_or_else(bad)?;
            Ok((j.trim().parse().map_err(|_| bad())?, c.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

pub fn gen(args: GenArgs) -> Result<()> {
    let spec = match args.kind {
        GenKind::Uniform => {
            let (Some(k), Some(m)) = (args.k, args.m) else {
                return Err(Usage("uniform generation needs --k and --m".into()).into());
            };
            GenSpec::Uniform { k, n: args.n, m, seed: args.seed }
        }
        GenKind::Mixture => {
            let profile = match (&args.profile, args.q, &args.sizes) {
                (Some(p), None, None) => parse_profile(p)?,
                (None, Some(q), Some(sizes)) => {
                    if q.is_nan() || q <= 0.0 || q.is_infinite() {
                        return Err(DomainError(format!("target q must be positive, got {q}")).into());
                    }
                    target_q_counts(q, &parse_list(sizes, "size")?).into_iter().collect()
                }
                _ => return Err(Usage("mixture generation needs either --profile or --q with --sizes".into()).into()),
            };
            GenSpec::Mixture { n: args.n, profile, seed: args.seed }
        }
    };
    let h = generate(&spec)?;
    let mut out = sink(args.output.as_ref())?;
    out.write_all(serialize(&h).as_bytes())?;
    out.flush()?;
    Ok(())
}

pub fn stats(file: &Path) -> Result<()> {
    let s = load(file)?.stats();
    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
    println!("n {}", s.n);
    println!("m {}", s.m);
    println!("s_min {}", opt(s.s_min));
    println!("s_max {}", opt(s.s_max));
    println!("q {}", s.q);
    for (j, qj) in &s.q_profile {
        println!("q_{j} {qj} ({} edges)", s.size_counts[j]);
    }
    Ok(())
}

pub fn color(args: ColorArgs) -> Result<()> {
    let h = load(&args.file)?;
    let init = sample_initial(&h, args.seed);
    let mut out = sink(args.output.as_ref())?;
    let summary = match Procedure::from(args.procedure) {
        Procedure::TwoPhase => {
            let t = recolor(&h, &init);
            if args.trace {
                for v in 0..h.vertex_count() {
                    let record = json!({
                        "id": v,
                        "w": init.weights[v],
                        "ic": init.colors[v],
                        "c": t.colors[v],
                        "reasons": t.reasons[v],
                    });
                    writeln!(out, "{record}")?;
                }
            }
            json!({
                "procedure": "twophase",
                "seed": args.seed,
                "proper": t.is_proper(),
                "initially_mono": t.initially_mono,
                "recolored": t.recolored,
                "final_mono": t.final_mono,
            })
        }
        Procedure::Greedy => {
            let t = greedy_with_weights(&h, &init.weights);
            if args.trace {
                for v in 0..h.vertex_count() {
                    let record = json!({
                        "id": v,
                        "w": init.weights[v],
                        "c": t.colors[v],
                        "forced": t.forced_red.contains(&v),
                    });
                    writeln!(out, "{record}")?;
                }
            }
            json!({
                "procedure": "greedy",
                "seed": args.seed,
                "proper": !t.failed(),
                "forced_red": t.forced_red,
                "failing_edges": t.failing_edges,
            })
        }
    };
    if args.trace {
        eprintln!("{summary}");
    } else {
        writeln!(out, "{summary}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn mc(args: McArgs) -> Result<()> {
    let h = load(&args.file)?;
    check_edge(&h, args.edge)?;
    if args.trials == 0 {
        return Err(Usage("--trials must be positive".into()).into());
    }
    let alphas = args.alphas.params()?;
    let result = event_campaign(&h, args.trials, args.seed, args.procedure.into(), alphas, args.edge);
    let id = args.id.unwrap_or_else(|| {
        args.file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
    });
    let mut writer = csv::Writer::from_writer(sink(args.output.as_ref())?);
    writer.write_record(MonteCarloResult::CSV_HEADER)?;
    writer.write_record(result.csv_record(&id))?;
    writer.flush()?;
    Ok(())
}

pub fn events(args: EventsArgs) -> Result<()> {
    let h = load(&args.file)?;
    let edge = args.edge.unwrap_or(0);
    if h.edge_count() > 0 {
        check_edge(&h, Some(edge))?;
    }
    let alphas = args.alphas.params()?;
    let q = h.stats().q;
    let threat = (h.edge_count() > 0).then(|| build_threat(&h, edge));
    let rows: Vec<Vec<String>> = (0..args.trials)
        .into_par_iter()
        .map(|i| {
            let init = trial_state(&h, args.seed, i);
            let report = event_report_with_q(&h, &init, &alphas, q);
            let focus = threat.as_ref().map(|t| focus_report(t, &init, &alphas, q));
            let f = &report.flags;
            vec![
                args.seed.to_string(),
                i.to_string(),
                report.mono_count.to_string(),
                report.light_count().to_string(),
                num(report.y),
                num(report.d2_total),
                fmt_opt(focus.as_ref().map(|r| r.x)),
                fmt_opt(focus.as_ref().map(|r| r.y_e)),
                (f.a as u8).to_string(),
                (f.b as u8).to_string(),
                (f.c as u8).to_string(),
                (f.d as u8).to_string(),
            ]
        })
        .collect();
    let mut writer = csv::Writer::from_writer(sink(args.output.as_ref())?);
    writer.write_record([
        "seed", "trial", "mono_count", "light", "y", "d2", "x", "y_e", "flag_a", "flag_b", "flag_c", "flag_d",
    ])?;
    for row in rows {
        writer.write_record(row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Shortest round-trip decimal, switching to exponent form outside
/// `[1e-6, 1e15)` so extreme bounds stay readable.
fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !x.is_finite() || (1e-6..1e15).contains(&a) {
        (x + 0.0).to_string()
    } else {
        format!("{x:e}")
    }
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Usage(format!("this bound needs --{flag}")).into())
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

pub fn bound(args: BoundArgs) -> Result<()> {
    let alphas = args.alphas.params()?;
    let mut header: Vec<&str> = vec!["kind"];
    let mut row: Vec<String> = vec![];
    let mut push = |name: &'static str, value: String| {
        header.push(name);
        row.push(value);
    };
    let value_cols = |push: &mut dyn FnMut(&'static str, String), prefix: &'static str, b: BoundValue| {
        let (log, value) = match prefix {
            "" => ("log_value", "value"),
            "truncated" => ("truncated_log", "truncated"),
            "exponential" => ("exponential_log", "exponential"),
            "cosh" => ("cosh_log", "cosh"),
            "exp" => ("exp_log", "exp"),
            "conflict" => ("conflict_log", "conflict"),
            _ => ("extreme_log", "extreme"),
        };
        push(log, num(b.log));
        push(value, num(b.value));
    };
    let kind = match args.kind {
        BoundKind::Simple => {
            let (k, q) = (need(args.k, "k")?, need(args.q, "q")?);
            let s = args.s.unwrap_or(k);
            let b = simple_edge_bound(k, q, s, &alphas)?;
            push("k", k.to_string());
            push("q", num(q));
            push("s", s.to_string());
            value_cols(&mut push, "", b);
            push("regime_holds", simple_regime_holds(k, q, &alphas)?.to_string());
            "simple"
        }
        BoundKind::Improved => {
            let (k, q) = (need(args.k, "k")?, need(args.q, "q")?);
            let s = args.s.unwrap_or(k);
            let b = improved_edge_bound(k, q, s, &alphas)?;
            push("k", k.to_string());
            push("q", num(q));
            push("s", s.to_string());
            value_cols(&mut push, "cosh", b.cosh_form);
            value_cols(&mut push, "exp", b.exp_form);
            push("q_threshold", num(b.q_threshold));
            push("within_threshold", b.within_threshold.to_string());
            push("target_met", b.target_met.to_string());
            "improved"
        }
        BoundKind::Greedy => {
            let (k, q) = (need(args.k, "k")?, need(args.q, "q")?);
            let big_k = args.big_k.unwrap_or(k);
            let b = greedy_failure_bound(k, big_k, q)?;
            push("k", k.to_string());
            push("K", big_k.to_string());
            push("q", num(q));
            push("p", num(b.p));
            value_cols(&mut push, "conflict", b.conflict_term);
            value_cols(&mut push, "extreme", b.extreme_term);
            value_cols(&mut push, "", b.total);
            "greedy"
        }
        BoundKind::Uniform => {
            let (k, q) = (need(args.k, "k")?, need(args.q, "q")?);
            let b = uniform_edge_bound(k, q, alphas.b)?;
            push("k", k.to_string());
            push("q", num(q));
            value_cols(&mut push, "", b.value);
            push("epsilon", num(b.epsilon));
            push("q_threshold", num(b.q_threshold));
            push("within_threshold", b.within_threshold.to_string());
            "uniform"
        }
        BoundKind::Envelope => {
            let (f0, fm, lambda) = (need(args.f0, "f0")?, need(args.fm, "fm")?, need(args.lambda, "lambda")?);
            let v = convex_envelope(f0, fm, lambda)?;
            push("f0", num(f0));
            push("fm", num(fm));
            push("lambda", num(lambda));
            push("log_value", num(v.ln()));
            push("value", num(v));
            "envelope"
        }
        BoundKind::Conditional => {
            let s = need(args.s.or(args.k), "s")?;
            let cap = args.cap.unwrap_or_else(|| args.q.map_or(u64::MAX, |q| series_cap(alphas.a, q)));
            let (variant, b) = match (args.x, args.y, args.q) {
                (Some(x), None, _) => ("x", simple_conditional_bound(x, s, cap)?),
                (None, Some(y), Some(q)) => ("y_e", improved_conditional_bound(y, q, s, alphas.d, cap)?),
                _ => return Err(Usage("conditional bound needs either --x, or --y with --q".into()).into()),
            };
            push("variant", variant.to_string());
            push("x", fmt_opt(args.x));
            push("y", fmt_opt(args.y));
            push("q", fmt_opt(args.q));
            push("s", s.to_string());
            push("cap", cap.to_string());
            value_cols(&mut push, "truncated", b.truncated);
            value_cols(&mut push, "exponential", b.exponential);
            "conditional"
        }
    };
    row.insert(0, kind.to_string());
    let mut writer = csv::Writer::from_writer(io::stdout().lock());
    writer.write_record(&header)?;
    writer.write_record(&row)?;
    writer.flush()?;
    Ok(())
}

pub fn oracle(args: OracleArgs) -> Result<()> {
    let h = load(&args.file)?;
    check_edge(&h, args.edge)?;
    let r: ExactResult = match Procedure::from(args.procedure) {
        Procedure::TwoPhase => exact_two_phase(&h, args.edge)?,
        Procedure::Greedy => exact_greedy(&h, args.edge)?,
    };
    println!("traces {}", r.trace_count);
    println!("success {} {}", r.success_prob, r.success_prob.to_f64());
    println!("failure {} {}", r.failure_prob, r.failure_prob.to_f64());
    if let (Some(e), Some(p)) = (args.edge, r.edge_red_prob) {
        println!("edge_{e}_red {p} {}", p.to_f64());
    }
    Ok(())
}
