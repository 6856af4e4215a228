//! Sweeps: every check over a cartesian grid of algebras, pairs,
//! automorphisms and weights.

use serde::Deserialize;

use affmult::affine::{AffineSystem, AffineWeight};
use affmult::fin_multiplets::dominant_weights_up_to_height;
use affmult::pairs::{enumerate_pairs, Pair};
use affmult::rootsys::{RootSystem, SimpleType};
use affmult::scalar::{parse_rational, q, ExactScalar};
use affmult::twisted::AutType;
use affmult::Weight;

use crate::checks::{Check, Instance};
use crate::job::{
    root_system, AmbientSpec, Cutoffs, Format, OutputSpec, Overrides, DEFAULT_MAX_LENGTH, DEFAULT_PRECISION,
};
use crate::report::{self, Record};
use crate::{record, InputError, RunOutput};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub checks: Vec<String>,
    /// Type letters, e.g. ["A", "G"].
    pub types: Vec<String>,
    /// Explicit ranks; otherwise every valid rank up to `max_rank`.
    pub ranks: Option<Vec<usize>>,
    pub max_rank: Option<usize>,
    pub normalization: Option<String>,
    /// Largest order m of σ; 1 means σ = id only.
    pub max_order: Option<u64>,
    /// "improper", "proper", "semisimple" (proper and semisimple) or "all".
    pub pairs: Option<String>,
    /// Finite weights of height at most this, for checks that take λ̄.
    pub max_height: Option<u32>,
    /// k for masternok; affine checks use the least k with kΛ0 dominant integral.
    pub level: Option<String>,
    #[serde(default)]
    pub cutoffs: Cutoffs,
    #[serde(default)]
    pub output: OutputSpec,
}

pub fn parse_grid(text: &str) -> Result<GridSpec, InputError> {
    toml::from_str(text).map_err(|e| InputError(format!("grid file: {e}")))
}

fn systems(spec: &GridSpec) -> Result<Vec<RootSystem>, InputError> {
    let mut out = Vec::new();
    for t in &spec.types {
        let ty: SimpleType = t.parse().map_err(|e| InputError(format!("types: {e}")))?;
        let ranks: Vec<usize> = match (&spec.ranks, spec.max_rank) {
            (Some(r), _) => r.iter().copied().filter(|&r| ty.is_valid_rank(r)).collect(),
            (None, Some(m)) => ty.ranks_up_to(m),
            (None, None) => return Err(InputError("grid: give ranks or max_rank".into())),
        };
        for r in ranks {
            let ambient = AmbientSpec {
                ty: ty.to_string(),
                rank: Some(r),
                normalization: spec.normalization.clone(),
            };
            out.push(root_system(&ambient)?);
        }
    }
    Ok(out)
}

fn pairs(rs: &RootSystem, mode: &str) -> Result<Vec<Pair>, InputError> {
    let all = || enumerate_pairs(rs).into_iter();
    Ok(match mode {
        "improper" => vec![Pair::improper(rs)],
        "proper" => all().filter(|p| !p.is_improper()).collect(),
        "semisimple" => all().filter(|p| !p.is_improper() && p.is_semisimple()).collect(),
        "all" => all().collect(),
        other => {
            return Err(InputError(format!(
                "pairs: unknown mode {other:?} (expected improper, proper, semisimple or all)"
            )))
        }
    })
}

/// Least positive integer k with kΛ0 dominant integral for σ.
pub fn minimal_level(rs: &RootSystem, aut: &AutType) -> Option<ExactScalar> {
    let sys = AffineSystem::new(rs, aut).ok()?;
    (1..=64).map(q).find(|k| {
        sys.check_dominant_integral(&AffineWeight::new(Weight::zero(rs.rank()), k.clone(), q(0)))
            .is_ok()
    })
}

/// One row of the sweep per (check, algebra, pair, σ, weight) the check depends on.
pub fn run_grid(spec: &GridSpec, over: &Overrides) -> Result<(Vec<Record>, Format), InputError> {
    let mut checks = spec
        .checks
        .iter()
        .map(|c| c.parse::<Check>())
        .collect::<Result<Vec<_>, _>>()?;
    checks.sort();
    checks.dedup();
    let max_length = over
        .max_length
        .or(spec.cutoffs.max_length)
        .unwrap_or(DEFAULT_MAX_LENGTH);
    let precision = over.precision.or(spec.cutoffs.precision).unwrap_or(DEFAULT_PRECISION);
    let depth = match (&over.depth, &spec.cutoffs.depth) {
        (Some(d), _) => d.clone(),
        (None, Some(s)) => parse_rational(s).map_err(|e| InputError(format!("cutoffs.depth: {e}")))?,
        (None, None) => q(1),
    };
    let level = match &spec.level {
        Some(s) => parse_rational(s).map_err(|e| InputError(format!("level: {e}")))?,
        None => q(1),
    };
    let format = match (over.format, &spec.output.format) {
        (Some(f), _) => f,
        (None, Some(s)) => s.parse()?,
        (None, None) => Format::Json,
    };
    let mode = spec.pairs.as_deref().unwrap_or("proper");
    let max_order = spec.max_order.unwrap_or(1);
    let height = spec.max_height.unwrap_or(0);
    let zero = q(0);

    let mut records = Vec::new();
    for rs in systems(spec)? {
        let all_pairs = pairs(&rs, mode)?;
        let improper = vec![Pair::improper(&rs)];
        let all_auts = AutType::all_up_to(&rs, max_order);
        let identity = vec![AutType::identity(&rs)];
        let weights = dominant_weights_up_to_height(rs.rank(), height);
        let origin = vec![Weight::zero(rs.rank())];
        for &check in &checks {
            let ps = if check.uses_pair() { &all_pairs } else { &improper };
            let auts = if check.uses_aut() { &all_auts } else { &identity };
            let ws = if check.uses_finite_weight() { &weights } else { &origin };
            for aut in auts {
                let k = if check.is_affine() {
                    match minimal_level(&rs, aut) {
                        Some(k) => k,
                        None => continue,
                    }
                } else {
                    level.clone()
                };
                for pair in ps {
                    for w in ws {
                        let inst = Instance {
                            pair,
                            aut,
                            finite: w,
                            level: &k,
                            delta: &zero,
                            max_length,
                            depth: &depth,
                            precision,
                        };
                        records.push(record(check, &inst)?);
                    }
                }
            }
        }
    }
    if records.is_empty() {
        return Err(InputError("empty grid: no cells to run".into()));
    }
    Ok((records, format))
}

/// `sweep <grid>`: parse, run, render.
pub fn sweep(text: &str, over: &Overrides) -> Result<RunOutput, InputError> {
    let spec = parse_grid(text)?;
    let (records, format) = run_grid(&spec, over)?;
    let code = report::exit_code(records.iter().map(|r| &r.status));
    let mut text = report::render(&records, format);
    if format == Format::Table {
        let count = |s: report::Status| records.iter().filter(|r| r.status == s).count();
        text.push_str(&format!(
            "\n{} cells: {} verified, {} violated, {} inapplicable, {} unclosed\n",
            records.len(),
            count(report::Status::Verified),
            count(report::Status::Violated),
            count(report::Status::Inapplicable),
            count(report::Status::Unclosed),
        ));
    }
    Ok(RunOutput {
        text,
        code,
        path: spec.output.path.clone(),
    })
}
