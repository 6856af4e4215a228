//! Verification runs over the `affmult` library, driven by TOML job and grid
//! files, reporting JSON lines or a plain table.

use std::fmt;
use std::time::Instant;

use affmult::affine::{affine_multiplet, AffinePairContext, AffineWeight};
use affmult::fin_multiplets::multiplet;
use affmult::scalar::{format_rational, q};

pub mod checks;
pub mod grid;
pub mod job;
pub mod report;

pub use affmult::scalar::parse_rational;
pub use grid::{parse_grid, sweep};
pub use job::parse_job;

use checks::{Check, Instance};
use job::{Format, Job, Overrides};
use report::{Params, Record};

/// Anything wrong with the input rather than with the mathematics; exit 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// Rendered output and the exit code it implies.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub text: String,
    pub code: i32,
    pub path: Option<String>,
}

fn weight_label(check: Check, inst: &Instance) -> String {
    if check.is_affine() {
        AffineWeight::new(inst.finite.clone(), inst.level.clone(), inst.delta.clone()).to_string()
    } else if check == Check::Masternok {
        format!("{}, k = {}", inst.finite, format_rational(inst.level))
    } else if check.uses_finite_weight() {
        inst.finite.to_string()
    } else {
        "-".to_string()
    }
}

/// Runs one check on one instance and tags the result.
pub fn record(check: Check, inst: &Instance) -> Result<Record, InputError> {
    let start = Instant::now();
    let outcome = checks::run(check, inst)?;
    let params = Params {
        ambient: inst.pair.ambient().label(),
        pair: inst.pair.label(),
        aut: inst.aut.to_string(),
        weight: weight_label(check, inst),
        max_length: inst.max_length,
        depth: format_rational(inst.depth),
        precision: inst.precision,
    };
    Ok(Record {
        check: check.name().to_string(),
        status: outcome.status,
        residual: outcome.residual,
        detail: outcome.detail,
        params,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs every check of a resolved job, in check-name order.
pub fn run_job(job: &Job) -> Result<Vec<Record>, InputError> {
    let level = job.level.clone().unwrap_or_else(|| q(1));
    let inst = Instance {
        pair: &job.pair,
        aut: &job.aut,
        finite: &job.finite,
        level: &level,
        delta: &job.delta,
        max_length: job.max_length,
        depth: &job.depth,
        precision: job.precision,
    };
    job.checks.iter().map(|&c| record(c, &inst)).collect()
}

/// `verify <job>`: parse, run, render.
pub fn verify(text: &str, over: &Overrides) -> Result<RunOutput, InputError> {
    let job = parse_job(text)?.resolve(over)?;
    let records = run_job(&job)?;
    Ok(RunOutput {
        text: report::render(&records, job.format),
        code: report::exit_code(records.iter().map(|r| &r.status)),
        path: job.path,
    })
}

/// `multiplet <job>`: the affine multiplet when the job gives a level,
/// otherwise the finite one.
pub fn multiplet_table(text: &str, over: &Overrides) -> Result<RunOutput, InputError> {
    let job = parse_job(text)?.resolve(over)?;
    let err = |e: affmult::Error| InputError(e.to_string());
    let mut rows: Vec<serde_json::Value> = Vec::new();
    let mut code = report::EXIT_OK;
    match &job.level {
        Some(level) => {
            let ctx = AffinePairContext::new(&job.pair, &job.aut).map_err(err)?;
            let lambda = AffineWeight::new(job.finite.clone(), level.clone(), job.delta.clone());
            let m = affine_multiplet(&ctx, &lambda, job.max_length).map_err(err)?;
            if !m.closed {
                code = report::EXIT_UNCLOSED;
            }
            for e in &m.entries {
                rows.push(serde_json::json!({
                    "rep": e.rep.to_string(),
                    "sign": e.sign,
                    "top": e.top.to_string(),
                    "mu": e.mu.to_string(),
                }));
            }
        }
        None => {
            let m = multiplet(&job.pair, &job.finite).map_err(err)?;
            for e in m.entries() {
                rows.push(serde_json::json!({
                    "rep": e.rep.to_string(),
                    "sign": e.sign,
                    "weight": e.weight.to_string(),
                    "dim": e.dim.to_string(),
                    "qdim": e.qdim.as_ref().map(|d| d.to_string()),
                }));
            }
        }
    }
    let text = match job.format {
        Format::Json => rows.iter().map(|r| format!("{r}\n")).collect(),
        Format::Table => plain_table(&rows),
    };
    Ok(RunOutput {
        text,
        code,
        path: job.path,
    })
}

fn plain_table(rows: &[serde_json::Value]) -> String {
    let Some(first) = rows.first().and_then(|r| r.as_object()) else {
        return String::new();
    };
    let keys: Vec<&String> = first.keys().collect();
    let cell = |v: &serde_json::Value| match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Null => "-".into(),
        other => other.to_string(),
    };
    let mut out = keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join("\t");
    out.push('\n');
    for r in rows {
        let cells: Vec<String> = keys.iter().map(|k| cell(&r[k.as_str()])).collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}
