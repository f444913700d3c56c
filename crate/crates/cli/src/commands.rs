//! The five subcommands. Each returns a rendered body plus the report of
//! internal cross-checks; `main` decides the exit code from the report.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use circres::closed_form::{self, MIN_C12_N};
use circres::report::{self, Check, Quantity, VerificationReport};
use circres::{oracle, spectral, walk, CirculantSpec};

use crate::config::{CheckGroup, Format, Mode, RunConfig, UsageError};
use crate::output::{csv_table, text_value};
use crate::routes::{self, CROSS_CHECK_TOL, KIRCHHOFF_CROSS_TOL};

pub const SWEEP_HEADER: [&str; 7] = [
    "n",
    "l",
    "resistance_exact",
    "resistance_float",
    "fpt_exact",
    "kirchhoff_exact",
    "mfpt_exact",
];

/// Minimum N for the hitting relation.
const HITTING_MIN_N: usize = 7;

#[derive(Debug, Clone)]
pub struct Rendered {
    pub body: String,
    pub report: VerificationReport,
}

fn usage(e: circres::Error) -> UsageError {
    UsageError(e.to_string())
}

fn build(n: usize, jumps: &[usize]) -> Result<CirculantSpec, UsageError> {
    CirculantSpec::new(n, jumps).map_err(usage)
}

fn offsets(spec: &CirculantSpec, l: Option<usize>) -> Result<Vec<usize>, UsageError> {
    match l {
        Some(l) if l >= spec.n() => Err(UsageError(format!(
            "offset {l} out of range for n = {}",
            spec.n()
        ))),
        Some(l) => Ok(vec![l]),
        None => Ok((1..spec.n()).collect()),
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Exact => "exact",
        Mode::Float => "float",
    }
}

/// Picks the value to show and records the exact~float cross-check.
fn choose(
    name: String,
    mode: Mode,
    exact: Option<Quantity>,
    float: Quantity,
    tol: f64,
    report: &mut VerificationReport,
) -> Quantity {
    match exact {
        Some(e) => {
            report.push(routes::cross_check(name, &e, &float, tol));
            match mode {
                Mode::Exact => e,
                Mode::Float => float,
            }
        }
        None => float,
    }
}

fn labelled(rows: &[(usize, Quantity)]) -> Value {
    Value::Array(
        rows.iter()
            .map(|(l, q)| json!({"l": l, "value": q.to_json()}))
            .collect(),
    )
}

fn json_doc(spec: &CirculantSpec, results: Value, report: &VerificationReport) -> String {
    report::to_canonical_json(&report::document(
        report::graph_json(spec.n(), spec.jumps()),
        results,
        report,
    ))
}

pub fn resist(cfg: &RunConfig) -> Result<Rendered, UsageError> {
    let spec = build(cfg.require_n()?, &cfg.jumps)?;
    let mode = routes::resolve_mode(&spec, cfg.mode)?;
    let mut report = VerificationReport::new();
    let mut rows = Vec::new();
    for l in offsets(&spec, cfg.l)? {
        let q = choose(
            format!("resistance l={l} exact~float"),
            mode,
            routes::exact_resistance(&spec, l),
            routes::float_resistance(&spec, l),
            cfg.cross_tol.unwrap_or(CROSS_CHECK_TOL),
            &mut report,
        );
        rows.push((l, q));
    }
    let body = match cfg.format {
        Format::Text if cfg.l.is_some() => format!("{}\n", text_value(&rows[0].1)),
        Format::Text => rows
            .iter()
            .map(|(l, q)| format!("{l} {}\n", text_value(q)))
            .collect(),
        Format::Csv => csv_table(
            &["n", "l", "resistance"],
            rows.iter()
                .map(|(l, q)| vec![spec.n().to_string(), l.to_string(), text_value(q)]),
        ),
        Format::Json => json_doc(
            &spec,
            json!({"mode": mode_name(mode), "resistance": labelled(&rows)}),
            &report,
        ),
    };
    Ok(Rendered { body, report })
}

pub fn walk(cfg: &RunConfig) -> Result<Rendered, UsageError> {
    let spec = build(cfg.require_n()?, &cfg.jumps)?;
    let mode = routes::resolve_mode(&spec, cfg.mode)?;
    if cfg.trials > 0 && cfg.l.is_none() {
        return Err(UsageError("--trials requires --l".into()));
    }
    let mut report = VerificationReport::new();

    let targets = match (cfg.l, cfg.mfpt) {
        (None, true) => Vec::new(),
        (l, _) => offsets(&spec, l)?,
    };
    let mut fpt = Vec::new();
    let mut commute = Vec::new();
    for &l in &targets {
        let q = choose(
            format!("fpt l={l} exact~float"),
            mode,
            routes::exact_fpt(&spec, l),
            routes::float_fpt(&spec, l),
            cfg.cross_tol.unwrap_or(CROSS_CHECK_TOL),
            &mut report,
        );
        commute.push((l, routes::double(&q)));
        fpt.push((l, q));
    }

    let mfpt = if cfg.mfpt || cfg.l.is_none() {
        Some(choose(
            "mfpt exact~float".into(),
            mode,
            routes::exact_mfpt(&spec),
            routes::float_mfpt(&spec),
            cfg.cross_tol.unwrap_or(CROSS_CHECK_TOL),
            &mut report,
        ))
    } else {
        None
    };

    let mc = match cfg.l {
        Some(l) if cfg.trials > 0 => {
            Some(walk::simulate_fpt(&spec, l, cfg.trials, cfg.seed).map_err(usage)?)
        }
        _ => None,
    };

    let body = match cfg.format {
        Format::Text => {
            let mut out = String::new();
            if targets.is_empty() {
                if let Some(m) = &mfpt {
                    out.push_str(&format!("{}\n", text_value(m)));
                }
            } else if cfg.l.is_some() {
                out.push_str(&format!("fpt {}\n", text_value(&fpt[0].1)));
                out.push_str(&format!("commute {}\n", text_value(&commute[0].1)));
                if let Some(m) = &mfpt {
                    out.push_str(&format!("mfpt {}\n", text_value(m)));
                }
            } else {
                for ((l, f), (_, c)) in fpt.iter().zip(&commute) {
                    out.push_str(&format!("{l} {} {}\n", text_value(f), text_value(c)));
                }
                if let Some(m) = &mfpt {
                    out.push_str(&format!("mfpt {}\n", text_value(m)));
                }
            }
            if let Some(mc) = &mc {
                out.push_str(&format!("mc_mean {}\n", mc.mean));
                out.push_str(&format!("mc_std_error {}\n", mc.std_error));
                out.push_str(&format!("mc_trials {}\n", mc.trials));
                out.push_str(&format!("mc_seed {}\n", mc.seed));
            }
            out
        }
        Format::Csv => {
            let mut header = vec!["n", "l", "fpt", "commute"];
            if mfpt.is_some() {
                header.push("mfpt");
            }
            if mc.is_some() {
                header.extend(["mc_mean", "mc_std_error", "mc_trials", "mc_seed"]);
            }
            if targets.is_empty() {
                let m = mfpt.as_ref().map(text_value).unwrap_or_default();
                csv_table(
                    &["n", "mfpt"],
                    std::iter::once(vec![spec.n().to_string(), m]),
                )
            } else {
                let rows = fpt.iter().zip(&commute).map(|((l, f), (_, c))| {
                    let mut row = vec![
                        spec.n().to_string(),
                        l.to_string(),
                        text_value(f),
                        text_value(c),
                    ];
                    if let Some(m) = &mfpt {
                        row.push(text_value(m));
                    }
                    if let Some(mc) = &mc {
                        row.extend([
                            mc.mean.to_string(),
                            mc.std_error.to_string(),
                            mc.trials.to_string(),
                            mc.seed.to_string(),
                        ]);
                    }
                    row
                });
                csv_table(&header, rows)
            }
        }
        Format::Json => {
            let mut results = Map::new();
            results.insert("mode".into(), json!(mode_name(mode)));
            if !targets.is_empty() {
                results.insert("fpt".into(), labelled(&fpt));
                results.insert("commute".into(), labelled(&commute));
            }
            if let Some(m) = &mfpt {
                results.insert("mfpt".into(), m.to_json());
            }
            if let (Some(mc), Some(l)) = (&mc, cfg.l) {
                results.insert(
                    "monte_carlo".into(),
                    json!({
                        "l": l,
                        "mean": report::float_value(mc.mean),
                        "std_error": report::float_value(mc.std_error),
                        "trials": mc.trials,
                        "seed": mc.seed,
                    }),
                );
            }
            json_doc(&spec, Value::Object(results), &report)
        }
    };
    Ok(Rendered { body, report })
}

pub fn kirchhoff(cfg: &RunConfig) -> Result<Rendered, UsageError> {
    let spec = build(cfg.require_n()?, &cfg.jumps)?;
    let mode = routes::resolve_mode(&spec, cfg.mode)?;
    let mut report = VerificationReport::new();
    let exact = routes::exact_kirchhoff(&spec);
    if let (Some(Quantity::Exact(k)), [1, 2]) = (&exact, spec.jumps()) {
        let summed = closed_form::c12_profile(spec.n())
            .map_err(usage)?
            .kirchhoff()
            .value;
        report.push(Check::exact("kirchhoff closed~profile", k.clone(), summed));
    }
    let k = choose(
        "kirchhoff exact~float".into(),
        mode,
        exact,
        routes::float_kirchhoff(&spec),
        cfg.cross_tol.unwrap_or(KIRCHHOFF_CROSS_TOL),
        &mut report,
    );
    let body = match cfg.format {
        Format::Text => format!("{}\n", text_value(&k)),
        Format::Csv => csv_table(
            &["n", "kirchhoff"],
            std::iter::once(vec![spec.n().to_string(), text_value(&k)]),
        ),
        Format::Json => json_doc(
            &spec,
            json!({"mode": mode_name(mode), "kirchhoff": k.to_json()}),
            &report,
        ),
    };
    Ok(Rendered { body, report })
}

/// Runs one check group at one N. `None` means the group does not apply.
fn run_group(
    group: CheckGroup,
    n: usize,
    jumps: &[usize],
) -> Result<Option<VerificationReport>, circres::Error> {
    let mut r = VerificationReport::new();
    match group {
        CheckGroup::Identities => {
            if n < MIN_C12_N {
                return Ok(None);
            }
            r.merge(closed_form::fibonacci_symmetry_checks(n)?);
        }
        CheckGroup::Trig => {
            r.push(closed_form::sine_reciprocal_check(n)?);
            r.push(closed_form::cosine_fibonacci_check(n)?);
        }
        CheckGroup::Schwatt => {
            for j in 1..=3 * n as u64 {
                let exact = spectral::trig_power_sum_exact(n as u64, j)?;
                let direct = spectral::trig_power_sum_direct(n as u64, j);
                r.push(Check::relative(
                    format!("sine power sum N={n} J={j}"),
                    Quantity::Float(direct),
                    Quantity::Exact(exact),
                    closed_form::TRIG_IDENTITY_TOL,
                ));
            }
        }
        CheckGroup::Foster => {
            let spec = match CirculantSpec::new(n, jumps) {
                Ok(s) if s.is_connected() => s,
                _ => return Ok(None),
            };
            if jumps == [1, 2] && n >= MIN_C12_N {
                r.push(closed_form::c12_foster_check(n)?);
            }
            r.merge(oracle::foster_audit(&spec)?);
        }
        CheckGroup::Equivalence => {
            let mut sets = vec![jumps.to_vec(), vec![1], vec![2]];
            sets.dedup();
            sets.sort();
            sets.dedup();
            sets.retain(|s| CirculantSpec::new(n, s).is_ok());
            if sets.is_empty() {
                return Ok(None);
            }
            r.merge(oracle::equivalence_sweep(n..=n, &sets));
        }
        CheckGroup::Hitting => {
            if n < HITTING_MIN_N {
                return Ok(None);
            }
            r.push(walk::hitting_relation_check(n)?);
        }
        CheckGroup::Recursion => {
            if n < MIN_C12_N {
                return Ok(None);
            }
            r.merge(closed_form::c12_recursion_checks(n)?);
            if n % 2 == 1 {
                r.merge(closed_form::c2_recursion_checks(n)?);
            }
        }
        CheckGroup::Kirchhoff => {
            if n < MIN_C12_N {
                return Ok(None);
            }
            let k = closed_form::c12_kirchhoff(n)?.value;
            let summed = closed_form::c12_profile(n)?.kirchhoff().value;
            r.push(Check::exact(
                format!("kirchhoff closed~profile N={n}"),
                k.clone(),
                summed,
            ));
            let mfpt = walk::mfpt_closed(n)?;
            let from_k = walk::mfpt_from_kirchhoff(n)?;
            r.push(Check::exact(
                format!("mfpt closed~4K/N N={n}"),
                mfpt.clone(),
                from_k,
            ));
            let spec = CirculantSpec::new(n, &[1, 2])?;
            r.push(Check::relative(
                format!("mfpt closed~eigentime N={n}"),
                Quantity::Float(spectral::eigentime_mfpt(&spec)?),
                Quantity::Exact(mfpt),
                CROSS_CHECK_TOL,
            ));
        }
        CheckGroup::C2 => {
            if n < MIN_C12_N {
                return Ok(None);
            }
            if n.is_multiple_of(2) {
                r.merge(oracle::c2_even_checks(n)?);
            } else {
                r.merge(oracle::equivalence_sweep(n..=n, &[vec![2]]));
            }
        }
    }
    Ok(Some(r))
}

#[derive(Default)]
struct GroupSummary {
    report: VerificationReport,
    skipped_n: Vec<usize>,
}

pub fn verify(cfg: &RunConfig) -> Result<Rendered, UsageError> {
    let (lo, hi) = cfg.require_range()?;
    if lo < 2 {
        return Err(UsageError(format!(
            "n-range must start at 2 or more, got {lo}"
        )));
    }
    let mut groups: BTreeMap<&'static str, GroupSummary> = BTreeMap::new();
    let mut report = VerificationReport::new();
    for &group in &cfg.checks {
        let summary = groups.entry(group.name()).or_default();
        for n in lo..=hi {
            match run_group(group, n, &cfg.jumps).map_err(usage)? {
                Some(r) => summary.report.merge(r),
                None => summary.skipped_n.push(n),
            }
        }
        report.merge(summary.report.clone());
    }

    let body = match cfg.format {
        Format::Json => {
            let group_json: Map<String, Value> = groups
                .iter()
                .map(|(name, s)| {
                    (
                        name.to_string(),
                        json!({
                            "total": s.report.len(),
                            "passed": s.report.passed(),
                            "failed": s.report.len() - s.report.passed(),
                            "worst_residual": report::float_value(s.report.worst_residual()),
                            "skipped_n": s.skipped_n,
                        }),
                    )
                })
                .collect();
            let mut graph = report::graph_json(lo, &cfg.jumps);
            graph["n_max"] = json!(hi);
            report::to_canonical_json(&report::document(
                graph,
                json!({
                    "n_range": [lo, hi],
                    "total": report.len(),
                    "passed": report.passed(),
                    "failed": report.len() - report.passed(),
                    "worst_residual": report::float_value(report.worst_residual()),
                    "groups": Value::Object(group_json),
                }),
                &report,
            ))
        }
        Format::Text | Format::Csv => {
            let mut out = String::new();
            if cfg.format == Format::Csv {
                out = csv_table(
                    &["name", "lhs", "rhs", "residual", "tolerance", "pass"],
                    report.checks.iter().map(|c| {
                        vec![
                            c.name.clone(),
                            c.lhs.to_string(),
                            c.rhs.to_string(),
                            report::format_float(c.residual),
                            report::format_float(c.tolerance),
                            c.pass.to_string(),
                        ]
                    }),
                );
                return Ok(Rendered { body: out, report });
            }
            for c in &report.checks {
                out.push_str(&format!(
                    "{} {}: lhs={} rhs={} residual={:e} tol={:e}\n",
                    if c.pass { "ok  " } else { "FAIL" },
                    c.name,
                    text_value(&c.lhs),
                    text_value(&c.rhs),
                    c.residual,
                    c.tolerance
                ));
            }
            for (name, s) in &groups {
                if !s.skipped_n.is_empty() {
                    out.push_str(&format!("skipped {name} for N in {:?}\n", s.skipped_n));
                }
            }
            out.push_str(&format!(
                "{} of {} checks passed, worst residual {:e}\n",
                report.passed(),
                report.len(),
                report.worst_residual()
            ));
            out
        }
    };
    Ok(Rendered { body, report })
}

struct SweepRow {
    n: usize,
    l: usize,
    cells: [Option<Quantity>; 5],
}

fn sweep_rows(
    spec: &CirculantSpec,
    mode: Option<Mode>,
    tol: f64,
    report: &mut VerificationReport,
) -> Vec<SweepRow> {
    let want_exact = mode != Some(Mode::Float);
    let want_float = mode != Some(Mode::Exact);
    let n = spec.n();
    let exact_or_none = |q: Option<Quantity>| if want_exact { q } else { None };
    let kirchhoff = exact_or_none(routes::exact_kirchhoff(spec));
    let mfpt = exact_or_none(routes::exact_mfpt(spec));
    (1..n)
        .map(|l| {
            let exact = routes::exact_resistance(spec, l);
            let float = routes::float_resistance(spec, l);
            if let Some(e) = &exact {
                report.push(routes::cross_check(
                    format!("resistance N={n} l={l} exact~float"),
                    e,
                    &float,
                    tol,
                ));
            }
            SweepRow {
                n,
                l,
                cells: [
                    exact_or_none(exact),
                    want_float.then_some(float),
                    exact_or_none(routes::exact_fpt(spec, l)),
                    kirchhoff.clone(),
                    mfpt.clone(),
                ],
            }
        })
        .collect()
}

pub fn sweep(cfg: &RunConfig) -> Result<Rendered, UsageError> {
    let (lo, hi) = cfg.require_range()?;
    let mut report = VerificationReport::new();
    let mut rows = Vec::new();
    let mut last_spec = None;
    for n in lo..=hi {
        let spec = build(n, &cfg.jumps)?;
        if cfg.mode == Some(Mode::Exact) {
            routes::resolve_mode(&spec, cfg.mode)?;
        }
        rows.extend(sweep_rows(
            &spec,
            cfg.mode,
            cfg.cross_tol.unwrap_or(CROSS_CHECK_TOL),
            &mut report,
        ));
        last_spec = Some(spec);
    }
    let cell = |c: &Option<Quantity>| c.as_ref().map(text_value).unwrap_or_default();
    let body = match cfg.format {
        Format::Json => {
            let spec = last_spec.expect("range is non-empty");
            let table: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut obj = Map::new();
                    obj.insert("n".into(), json!(r.n));
                    obj.insert("l".into(), json!(r.l));
                    for (key, c) in SWEEP_HEADER[2..].iter().zip(&r.cells) {
                        obj.insert(
                            key.to_string(),
                            c.as_ref().map(Quantity::to_json).unwrap_or(Value::Null),
                        );
                    }
                    Value::Object(obj)
                })
                .collect();
            let mut graph = report::graph_json(lo, spec.jumps());
            graph["n_max"] = json!(hi);
            report::to_canonical_json(&report::document(
                graph,
                json!({"n_range": [lo, hi], "rows": table}),
                &report,
            ))
        }
        Format::Csv | Format::Text => csv_table(
            &SWEEP_HEADER,
            rows.iter().map(|r| {
                let mut row = vec![r.n.to_string(), r.l.to_string()];
                row.extend(r.cells.iter().map(cell));
                row
            }),
        ),
    };
    Ok(Rendered { body, report })
}
