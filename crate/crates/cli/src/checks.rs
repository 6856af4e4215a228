//! The registered verifiers and how each maps library results to a status.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use affmult::affine::{
    affine_multiplet, casimir_scalar, entry_casimir, spin_weights, verify_hwk, AffinePairContext, AffineSystem,
    AffineWeight,
};
use affmult::asdim::{signed_asdim_sum, MIN_PRECISION};
use affmult::fin_multiplets::{multiplet, signed_dim_sum, signed_qdim_sum, verify_gkrs};
use affmult::pairs::Pair;
use affmult::rootsys::RootSystem;
use affmult::scalar::{format_rational, q, ExactScalar};
use affmult::twisted::{self, AutType};
use affmult::{Error, Weight};

use crate::report::{Outcome, Status};
use crate::InputError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    AffineMultiplet,
    Asdim,
    Casimir,
    CentralCharge,
    Gkrs,
    Hwk,
    Masternok,
    Masterrho,
    Rhorho,
    SignedDimSum,
    SignedQdimSum,
    SpinWeights,
    Vsf,
}

pub const REGISTRY: [Check; 13] = [
    Check::AffineMultiplet,
    Check::Asdim,
    Check::Casimir,
    Check::CentralCharge,
    Check::Gkrs,
    Check::Hwk,
    Check::Masternok,
    Check::Masterrho,
    Check::Rhorho,
    Check::SignedDimSum,
    Check::SignedQdimSum,
    Check::SpinWeights,
    Check::Vsf,
];

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::AffineMultiplet => "affine_multiplet",
            Check::Asdim => "asdim",
            Check::Casimir => "casimir",
            Check::CentralCharge => "central_charge",
            Check::Gkrs => "gkrs",
            Check::Hwk => "hwk",
            Check::Masternok => "masternok",
            Check::Masterrho => "masterrho",
            Check::Rhorho => "rhorho",
            Check::SignedDimSum => "signed_dim_sum",
            Check::SignedQdimSum => "signed_qdim_sum",
            Check::SpinWeights => "spin_weights",
            Check::Vsf => "vsf",
        }
    }

    /// Whether the result depends on the subalgebra a.
    pub fn uses_pair(self) -> bool {
        !matches!(self, Check::Vsf | Check::Rhorho)
    }

    /// Whether the result depends on σ.
    pub fn uses_aut(self) -> bool {
        !matches!(
            self,
            Check::SignedDimSum | Check::SignedQdimSum | Check::Gkrs | Check::CentralCharge
        )
    }

    /// Whether the check runs on the finite weight λ̄ alone.
    pub fn uses_finite_weight(self) -> bool {
        matches!(
            self,
            Check::SignedDimSum | Check::SignedQdimSum | Check::Gkrs | Check::Masternok
        )
    }

    /// Whether the check runs on an affine weight Λ = λ̄ + kΛ0 + xδ.
    pub fn is_affine(self) -> bool {
        matches!(
            self,
            Check::AffineMultiplet | Check::Asdim | Check::Casimir | Check::Hwk | Check::SpinWeights
        )
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn registered_names() -> String {
    REGISTRY.iter().map(|c| c.name()).collect::<Vec<_>>().join(", ")
}

impl FromStr for Check {
    type Err = InputError;
    fn from_str(s: &str) -> Result<Self, InputError> {
        REGISTRY.iter().copied().find(|c| c.name() == s).ok_or_else(|| {
            InputError(format!(
                "unknown check {s:?}; registered checks: {}",
                registered_names()
            ))
        })
    }
}

/// Everything a single check can look at.
#[derive(Debug, Clone)]
pub struct Instance<'a> {
    pub pair: &'a Pair,
    pub aut: &'a AutType,
    pub finite: &'a Weight,
    pub level: &'a ExactScalar,
    pub delta: &'a ExactScalar,
    pub max_length: usize,
    pub depth: &'a ExactScalar,
    pub precision: usize,
}

impl Instance<'_> {
    fn rs(&self) -> &RootSystem {
        self.pair.ambient()
    }

    fn affine_weight(&self) -> AffineWeight {
        AffineWeight::new(self.finite.clone(), self.level.clone(), self.delta.clone())
    }

    fn context(&self) -> Result<AffinePairContext, Error> {
        AffinePairContext::new(self.pair, self.aut)
    }
}

fn exact(residual: ExactScalar) -> Outcome {
    let status = if residual.is_zero() {
        Status::Verified
    } else {
        Status::Violated
    };
    Outcome::new(status, format_rational(&residual))
}

fn closed_or(closed: bool, holds: bool) -> Status {
    match (holds, closed) {
        (false, _) => Status::Violated,
        (true, false) => Status::Unclosed,
        (true, true) => Status::Verified,
    }
}

/// Maps a library error to a status, or passes it on as an input error.
fn classify(err: Error) -> Result<Outcome, InputError> {
    match err {
        Error::ImproperPair | Error::NotSemisimple | Error::SearchFailure(_) => {
            Ok(Outcome::new(Status::Inapplicable, String::new()).with_detail(err.to_string()))
        }
        Error::Unclosed(_) => Ok(Outcome::new(Status::Unclosed, String::new()).with_detail(err.to_string())),
        other => Err(InputError(other.to_string())),
    }
}

pub fn run(check: Check, inst: &Instance) -> Result<Outcome, InputError> {
    match body(check, inst) {
        Ok(o) => Ok(o),
        Err(e) => classify(e),
    }
}

fn body(check: Check, inst: &Instance) -> Result<Outcome, Error> {
    let rs = inst.rs();
    match check {
        Check::SignedDimSum => {
            let m = multiplet(inst.pair, inst.finite)?;
            let s = signed_dim_sum(&m)?;
            let status = if s.is_zero() {
                Status::Verified
            } else {
                Status::Violated
            };
            Ok(Outcome::new(status, s.to_string()).with_detail(format!("{} members", m.len())))
        }
        Check::SignedQdimSum => {
            let m = multiplet(inst.pair, inst.finite)?;
            if inst.pair.is_improper() {
                return Err(Error::ImproperPair);
            }
            let r = inst.pair.choose_r_vee()?;
            let s = signed_qdim_sum(&m, &r)?;
            let status = if s.is_zero() {
                Status::Verified
            } else {
                Status::Violated
            };
            Ok(Outcome::new(status, s.to_string()).with_detail(format!("r = {r}")))
        }
        Check::Gkrs => {
            let rep = verify_gkrs(inst.pair, inst.finite)?;
            let status = if rep.holds { Status::Verified } else { Status::Violated };
            Ok(Outcome::new(status, rep.diff.len().to_string()).with_detail(format!("{} members", rep.multiplet_size)))
        }
        Check::Vsf => Ok(exact(twisted::verify_vsf(rs, inst.aut))),
        Check::Rhorho => {
            let mut bad: Vec<String> = twisted::rho_alpha_residuals(rs, inst.aut)
                .iter()
                .filter(|r| !r.is_zero())
                .map(format_rational)
                .collect();
            let sys = AffineSystem::new(rs, inst.aut)?;
            for (i, b) in sys.simple_roots().iter().enumerate() {
                let c = sys.coroot_pairing(sys.rho_hat(), &b.weight());
                if !c.is_one() {
                    bad.push(format!("β{i}: {}", format_rational(&c)));
                }
            }
            let status = if bad.is_empty() {
                Status::Verified
            } else {
                Status::Violated
            };
            Ok(Outcome::new(
                status,
                if bad.is_empty() { "0".into() } else { bad.join("; ") },
            ))
        }
        Check::Masterrho => Ok(exact(twisted::verify_masterrho(inst.pair, inst.aut))),
        Check::Masternok => Ok(exact(twisted::verify_masternok(
            inst.pair,
            inst.aut,
            inst.finite,
            inst.level,
        )?)),
        Check::CentralCharge => {
            let c = twisted::central_charge(inst.pair, &q(0))?;
            let sym = inst.pair.is_symmetric();
            let status = if c.is_zero() == sym {
                Status::Verified
            } else {
                Status::Violated
            };
            Ok(Outcome::new(status, format_rational(&c)).with_detail(format!("symmetric = {sym}")))
        }
        Check::AffineMultiplet => {
            let ctx = inst.context()?;
            let m = affine_multiplet(&ctx, &inst.affine_weight(), inst.max_length)?;
            let (holds, residual) = match m.check_invariants(&ctx) {
                Ok(()) => (true, "0".to_string()),
                Err(e) => (false, e.to_string()),
            };
            Ok(Outcome::new(closed_or(m.closed, holds), residual).with_detail(format!("{} members", m.entries.len())))
        }
        Check::Casimir => {
            let ctx = inst.context()?;
            let lambda = inst.affine_weight();
            let m = affine_multiplet(&ctx, &lambda, inst.max_length)?;
            let scalar = casimir_scalar(&ctx, &lambda);
            let values: BTreeSet<ExactScalar> = m.entries.iter().map(|e| entry_casimir(&ctx, &e.mu)).collect();
            let holds = values.iter().all(|v| *v == scalar);
            let residual = values
                .iter()
                .map(|v| format_rational(&(v - &scalar)))
                .collect::<Vec<_>>()
                .join(",");
            Ok(Outcome::new(closed_or(m.closed, holds), residual)
                .with_detail(format!("scalar = {}", format_rational(&scalar))))
        }
        Check::SpinWeights => {
            let ctx = inst.context()?;
            spin_membership(&ctx, inst.depth)
        }
        Check::Hwk => {
            let ctx = inst.context()?;
            let rep = verify_hwk(&ctx, &inst.affine_weight(), inst.depth, inst.max_length)?;
            let status = if rep.holds { Status::Verified } else { Status::Violated };
            Ok(Outcome::new(status, rep.diff.len().to_string()).with_detail(format!("{} representatives", rep.reps)))
        }
        Check::Asdim => {
            if inst.precision < MIN_PRECISION {
                return Err(Error::Parse(format!(
                    "asdim needs precision of at least {MIN_PRECISION} bits"
                )));
            }
            let ctx = inst.context()?;
            if !inst.pair.is_improper() && inst.pair.is_semisimple() && !inst.aut.is_identity() {
                return Ok(Outcome::new(Status::Inapplicable, String::new())
                    .with_detail("asymptotic dimensions are only evaluated for σ = id".into()));
            }
            let rep = signed_asdim_sum(&ctx, &inst.affine_weight(), inst.max_length, inst.precision)?;
            let status = if rep.within_bound() {
                Status::Verified
            } else {
                Status::Violated
            };
            Ok(Outcome::new(status, format!("log2 |sum|/max = {}", rep.log2_ratio()))
                .with_detail(format!("{} terms", rep.terms.len())))
        }
    }
}

// Every spin weight must be ρ̂_σ minus a sum of distinct p-modes, and the
// depth-0 stratum must have total dimension 2^(number of depth-0 modes).
fn spin_membership(ctx: &AffinePairContext, depth: &ExactScalar) -> Result<Outcome, Error> {
    let sys = ctx.system();
    let top = ctx.rho_hat_sigma();
    let modes: Vec<_> = sys
        .positive_roots_to_depth(depth)
        .into_iter()
        .filter(|r| r.is_real() && ctx.pair().p_roots().contains(r.finite()))
        .collect();
    let mut reachable: BTreeSet<AffineWeight> = BTreeSet::from([AffineWeight::zero(sys.rank())]);
    for m in &modes {
        let w = m.weight();
        let next: Vec<AffineWeight> = reachable
            .iter()
            .map(|s| s + &w)
            .filter(|s| &s.delta().clone() <= depth)
            .collect();
        reachable.extend(next);
    }
    let ch = spin_weights(ctx, depth);
    let outside = ch.iter().filter(|(w, _)| !reachable.contains(&(top - w))).count();
    let depth0 = modes.iter().filter(|m| m.s().is_zero()).count();
    let total0: num_bigint::BigInt = ch.stratum(&q(0)).values().sum();
    let holds = outside == 0 && total0 == num_bigint::BigInt::one() << depth0;
    let status = if holds { Status::Verified } else { Status::Violated };
    Ok(Outcome::new(status, outside.to_string())
        .with_detail(format!("{} weights, depth-0 dimension {total0}", ch.len())))
}
