//! Job files: one ambient algebra, one pair, one automorphism, one weight
//! and a list of checks.

use serde::Deserialize;

use affmult::pairs::Pair;
use affmult::rootsys::{Normalization, RootSystem};
use affmult::scalar::{parse_rational, ExactScalar};
use affmult::twisted::AutType;
use affmult::Weight;

use crate::checks::Check;
use crate::InputError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub checks: Vec<String>,
    pub ambient: AmbientSpec,
    #[serde(default)]
    pub pair: PairSpec,
    pub aut: Option<AutSpec>,
    #[serde(default)]
    pub weight: WeightSpec,
    #[serde(default)]
    pub cutoffs: Cutoffs,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientSpec {
    /// "F4", or a bare letter together with `rank`.
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: Option<usize>,
    /// "theta" ((θ, θ) = 2, the default) or "killing".
    pub normalization: Option<String>,
}

/// At most one of `steps`, `keep`, `roots` and `kind` may be given; none
/// means a = g.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    /// Extended-diagram removals, applied in order.
    pub steps: Option<Vec<usize>>,
    /// Simple roots of g kept (a Levi subalgebra).
    pub keep: Option<Vec<usize>>,
    /// Explicit roots of a in fundamental-weight coordinates.
    pub roots: Option<Vec<Vec<String>>>,
    /// "improper" or "torus".
    pub kind: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutSpec {
    pub s: Vec<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSpec {
    pub finite: Option<Vec<String>>,
    pub level: Option<String>,
    pub delta: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cutoffs {
    pub max_length: Option<usize>,
    pub depth: Option<String>,
    pub precision: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub format: Option<String>,
    pub path: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

impl std::str::FromStr for Format {
    type Err = InputError;
    fn from_str(s: &str) -> Result<Self, InputError> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            _ => Err(InputError(format!("unknown format {s:?} (expected json or table)"))),
        }
    }
}

pub const DEFAULT_MAX_LENGTH: usize = 6;
pub const DEFAULT_PRECISION: usize = 256;

/// A job with every field resolved against the library types.
#[derive(Debug, Clone)]
pub struct Job {
    pub rs: RootSystem,
    pub pair: Pair,
    pub aut: AutType,
    pub finite: Weight,
    /// None when the job gave no level; affine checks then use 1.
    pub level: Option<ExactScalar>,
    pub delta: ExactScalar,
    pub checks: Vec<Check>,
    pub max_length: usize,
    pub depth: ExactScalar,
    pub precision: usize,
    pub format: Format,
    pub path: Option<String>,
}

/// Command-line overrides; `None` keeps the job file's value.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub max_length: Option<usize>,
    pub depth: Option<ExactScalar>,
    pub precision: Option<usize>,
    pub format: Option<Format>,
}

/// Parses the TOML text of a job file. Errors carry line and column.
pub fn parse_job(text: &str) -> Result<JobSpec, InputError> {
    toml::from_str(text).map_err(|e| InputError(format!("job file: {e}")))
}

fn rational(field: &str, s: &str) -> Result<ExactScalar, InputError> {
    parse_rational(s).map_err(|e| InputError(format!("{field}: {e}")))
}

fn weight(field: &str, coords: &[String], rank: usize) -> Result<Weight, InputError> {
    if coords.len() != rank {
        return Err(InputError(format!(
            "{field}: expected {rank} coordinates, got {}",
            coords.len()
        )));
    }
    let c = coords
        .iter()
        .map(|s| rational(field, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Weight::new(c))
}

pub fn root_system(spec: &AmbientSpec) -> Result<RootSystem, InputError> {
    let normalization = match spec.normalization.as_deref() {
        None | Some("theta") => Normalization::ThetaSquaredTwo,
        Some("killing") => Normalization::Killing,
        Some(other) => {
            return Err(InputError(format!(
                "unknown normalization {other:?} (expected theta or killing)"
            )))
        }
    };
    let label = match spec.rank {
        Some(r) => format!("{}{r}", spec.ty),
        None => spec.ty.clone(),
    };
    RootSystem::from_label(&label, normalization).map_err(|e| InputError(format!("ambient: {e}")))
}

fn pair(rs: &RootSystem, spec: &PairSpec) -> Result<Pair, InputError> {
    let given = [
        spec.steps.is_some(),
        spec.keep.is_some(),
        spec.roots.is_some(),
        spec.kind.is_some(),
    ];
    if given.iter().filter(|g| **g).count() > 1 {
        return Err(InputError("pair: give only one of steps, keep, roots, kind".into()));
    }
    let err = |e: affmult::Error| InputError(format!("pair: {e}"));
    if let Some(steps) = &spec.steps {
        return Pair::borel_de_siebenthal(rs, steps).map_err(err);
    }
    if let Some(keep) = &spec.keep {
        return Pair::improper(rs).restrict_to_simple(keep).map_err(err);
    }
    if let Some(roots) = &spec.roots {
        let ws = roots
            .iter()
            .map(|r| weight("pair.roots", r, rs.rank()))
            .collect::<Result<Vec<_>, _>>()?;
        return Pair::from_roots(rs, &ws).map_err(err);
    }
    match spec.kind.as_deref() {
        None | Some("improper") => Ok(Pair::improper(rs)),
        Some("torus") => Ok(Pair::torus(rs)),
        Some(other) => Err(InputError(format!(
            "pair: unknown kind {other:?} (expected improper or torus)"
        ))),
    }
}

impl JobSpec {
    pub fn resolve(&self, over: &Overrides) -> Result<Job, InputError> {
        if self.checks.is_empty() {
            return Err(InputError("checks: empty list".into()));
        }
        let mut checks = self
            .checks
            .iter()
            .map(|c| c.parse::<Check>())
            .collect::<Result<Vec<_>, _>>()?;
        checks.sort();
        checks.dedup();
        let rs = root_system(&self.ambient)?;
        let pair = pair(&rs, &self.pair)?;
        let aut = match &self.aut {
            Some(a) => AutType::new(&rs, a.s.clone()).map_err(|e| InputError(format!("aut: {e}")))?,
            None => AutType::identity(&rs),
        };
        let finite = match &self.weight.finite {
            Some(c) => weight("weight.finite", c, rs.rank())?,
            None => Weight::zero(rs.rank()),
        };
        let level = match &self.weight.level {
            Some(s) => Some(rational("weight.level", s)?),
            None => None,
        };
        let delta = match &self.weight.delta {
            Some(s) => rational("weight.delta", s)?,
            None => ExactScalar::from_integer(0.into()),
        };
        let max_length = over
            .max_length
            .or(self.cutoffs.max_length)
            .unwrap_or(DEFAULT_MAX_LENGTH);
        let depth = match (&over.depth, &self.cutoffs.depth) {
            (Some(d), _) => d.clone(),
            (None, Some(s)) => rational("cutoffs.depth", s)?,
            (None, None) => ExactScalar::from_integer(1.into()),
        };
        if depth < ExactScalar::from_integer(0.into()) {
            return Err(InputError("cutoffs.depth: must be non-negative".into()));
        }
        let precision = over.precision.or(self.cutoffs.precision).unwrap_or(DEFAULT_PRECISION);
        if max_length == 0 || precision == 0 {
            return Err(InputError("cutoffs: max_length and precision must be positive".into()));
        }
        let format = match (over.format, &self.output.format) {
            (Some(f), _) => f,
            (None, Some(s)) => s.parse()?,
            (None, None) => Format::Json,
        };
        Ok(Job {
            rs,
            pair,
            aut,
            finite,
            level,
            delta,
            checks,
            max_length,
            depth,
            precision,
            format,
            path: self.output.path.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_resolves() {
        let text = r#"
checks = ["vsf", "gkrs"]
[ambient]
type = "F4"
[pair]
steps = [4]
[weight]
finite = ["0", "0", "0", "0"]
"#;
        let job = parse_job(text).unwrap().resolve(&Overrides::default()).unwrap();
        assert_eq!(job.pair.label(), "F4 > B4");
        assert_eq!(job.checks.len(), 2);
        assert_eq!(job.max_length, DEFAULT_MAX_LENGTH);
    }

    #[test]
    fn reports_position_and_names() {
        let err = parse_job("checks = [\n  1,\n]").unwrap_err();
        assert!(err.0.contains("line 2"), "{}", err.0);
        let spec = parse_job("checks = [\"foo\"]\n[ambient]\ntype = \"A1\"\n").unwrap();
        let err = spec.resolve(&Overrides::default()).unwrap_err();
        assert!(err.0.contains("vsf"), "{}", err.0);
    }

    #[test]
    fn rejects_bad_fields() {
        let base = "checks = [\"vsf\"]\n[ambient]\ntype = \"A2\"\n";
        let bad = [
            format!("{base}[weight]\nfinite = [\"1\"]\n"),
            format!("{base}[weight]\nlevel = \"1/0\"\n"),
            format!("{base}[aut]\ns = [2, 0, 2]\n"),
            format!("{base}[pair]\nsteps = [9]\n"),
            format!("{base}[pair]\nsteps = [1]\nkind = \"torus\"\n"),
            "checks = [\"vsf\"]\n[ambient]\ntype = \"Q3\"\n".to_string(),
        ];
        for text in bad {
            let r = parse_job(&text).and_then(|s| s.resolve(&Overrides::default()));
            assert!(r.is_err(), "{text}");
        }
    }
}
