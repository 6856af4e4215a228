//! Asymptotic dimensions a(Λ) ∝ Π_{α>0} sin π(Λ̄+ρ, α)/(k+g) of integrable
//! modules and the signed sum over a multiplet (semisimple equal-rank a).

use astro_float::{BigFloat, Consts, RoundingMode};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::affine::{enumerate_coset_reps, AffinePairContext, AffineWeight};
use crate::error::{Error, Result};
use crate::pairs::Factor;
use crate::rootsys::{RootSystem, WeylWord};
use crate::scalar::{format_rational, is_integer, q, ExactScalar};
use crate::weight::Weight;

/// Smallest precision accepted, in bits.
pub const MIN_PRECISION: usize = 256;

const RM: RoundingMode = RoundingMode::ToEven;

fn check_precision(p: usize) -> Result<()> {
    if p < MIN_PRECISION {
        return Err(Error::PreconditionViolated(format!(
            "precision {p} is below {MIN_PRECISION} bits"
        )));
    }
    Ok(())
}

fn consts() -> Consts {
    Consts::new().expect("astro-float constants")
}

fn big_int(x: &num_bigint::BigInt, p: usize) -> BigFloat {
    match x.to_i64() {
        Some(v) => BigFloat::from_i64(v, p),
        None => BigFloat::parse(&x.to_string(), astro_float::Radix::Dec, p, RM, &mut consts()),
    }
}

/// sin(π x) for rational x, reduced exactly mod 2 first.
pub fn sin_pi(x: &ExactScalar, p: usize, cc: &mut Consts) -> BigFloat {
    let two_den = x.denom() * 2;
    let reduced = ExactScalar::new(x.numer().mod_floor(&two_den), x.denom().clone());
    if reduced.is_zero() || reduced == q(1) {
        return BigFloat::from_i64(0, p);
    }
    let wp = p + 32;
    let num = big_int(reduced.numer(), wp);
    let den = big_int(reduced.denom(), wp);
    let arg = cc.pi(wp, RM).mul(&num, wp, RM).div(&den, wp, RM);
    let mut s = arg.sin(wp, RM, cc);
    s.set_precision(p, RM).expect("precision");
    s
}

/// Π_{α∈Δ⁺_S} sin π(Λ̄+ρ_S, α)/(k+g_S), with b(k) = 1. The centre gives 1.
pub fn asdim_irrep(
    rs: &RootSystem,
    factor: &Factor,
    lambda_bar: &Weight,
    k: &ExactScalar,
    precision: usize,
) -> Result<BigFloat> {
    check_precision(precision)?;
    if factor.is_torus() {
        return Ok(BigFloat::from_i64(1, precision));
    }
    if lambda_bar.rank() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: lambda_bar.rank(),
        });
    }
    let kg = k + factor.casimir();
    if !kg.is_positive() {
        return Err(Error::NonPositiveLevel(format_rational(k)));
    }
    for a in factor.simple_roots() {
        let c = rs.coroot_pairing(lambda_bar, a);
        if !is_integer(&c) {
            return Err(Error::NotIntegral(lambda_bar.to_string()));
        }
        if c.is_negative() {
            return Err(Error::NotDominant(lambda_bar.to_string()));
        }
    }
    let mut rho = Weight::zero(rs.rank());
    for a in factor.positive_roots() {
        rho = rho.add_scaled(&crate::scalar::frac(1, 2), a);
    }
    let shifted = lambda_bar + &rho;
    let mut cc = consts();
    let mut out = BigFloat::from_i64(1, precision);
    for a in factor.positive_roots() {
        let x = rs.form(&shifted, a) / &kg;
        out = out.mul(&sin_pi(&x, precision, &mut cc), precision, RM);
    }
    Ok(out)
}

/// Terms and total of Σ_{w∈Ŵ′} (−1)^{ℓ(w)} asdim V(μ_w).
#[derive(Clone, Debug)]
pub struct AsdimReport {
    pub terms: Vec<(WeylWord, BigFloat)>,
    pub sum: BigFloat,
    pub max_term: BigFloat,
    pub precision: usize,
}

impl AsdimReport {
    /// log2(|sum| / max term); −∞ for an exact zero.
    pub fn log2_ratio(&self) -> f64 {
        if self.sum.is_zero() {
            return f64::NEG_INFINITY;
        }
        let e_sum = self.sum.exponent().unwrap_or(0) as f64;
        let e_max = self.max_term.exponent().unwrap_or(0) as f64;
        e_sum - e_max
    }

    /// |sum| < 2^{−precision/2} · max term.
    pub fn within_bound(&self) -> bool {
        self.log2_ratio() < -((self.precision / 2) as f64)
    }

    /// Upper bound on log10 |sum|.
    pub fn log10_abs_sum(&self) -> f64 {
        if self.sum.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.sum.exponent().unwrap_or(0) as f64 * std::f64::consts::LOG10_2
    }
}

/// Σ_{w∈Ŵ′} (−1)^{ℓ(w)} asdim V(φ*_a(w(Λ+ρ̂_σ)) − ρ̂_{aσ}) for semisimple a and σ = id.
pub fn signed_asdim_sum(
    ctx: &AffinePairContext,
    lambda: &AffineWeight,
    max_length: usize,
    precision: usize,
) -> Result<AsdimReport> {
    signed_asdim_sum_scaled(ctx, lambda, max_length, precision, &q(1))
}

/// As [`signed_asdim_sum`] with every term multiplied by the positive constant `b`.
pub fn signed_asdim_sum_scaled(
    ctx: &AffinePairContext,
    lambda: &AffineWeight,
    max_length: usize,
    precision: usize,
    b: &ExactScalar,
) -> Result<AsdimReport> {
    check_precision(precision)?;
    let pair = ctx.pair();
    if pair.is_improper() {
        return Err(Error::ImproperPair);
    }
    if !pair.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    if !ctx.aut().is_identity() {
        return Err(Error::PreconditionViolated("asymptotic dimensions need σ = id".into()));
    }
    if !b.is_positive() {
        return Err(Error::PreconditionViolated("scale must be positive".into()));
    }
    ctx.system().check_dominant_integral(lambda)?;
    let reps = enumerate_coset_reps(ctx, max_length);
    if !reps.closed {
        return Err(Error::Unclosed(format!("length {max_length}")));
    }
    let m = crate::affine::affine_multiplet(ctx, lambda, max_length)?;
    let rs = pair.ambient();
    let scale = big_int(b.numer(), precision).div(&big_int(b.denom(), precision), precision, RM);
    let mut terms = Vec::new();
    let mut sum = BigFloat::from_i64(0, precision);
    let mut max_term = BigFloat::from_i64(0, precision);
    for e in &m.entries {
        let mut t = scale.clone();
        for (i, f) in pair.factors().iter().enumerate() {
            let a = asdim_irrep(rs, f, &e.mu.finite, &e.mu.levels[i], precision)?;
            t = t.mul(&a, precision, RM);
        }
        if t.abs().cmp(&max_term) == Some(1) {
            max_term = t.abs();
        }
        let signed = if e.sign < 0 { t.neg() } else { t.clone() };
        sum = sum.add(&signed, precision, RM);
        terms.push((e.rep.clone(), t));
    }
    Ok(AsdimReport {
        terms,
        sum,
        max_term,
        precision,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::Pair;
    use crate::twisted::AutType;

    fn close(a: &BigFloat, b: &BigFloat, p: usize) -> bool {
        let d = a.sub(b, p, RM).abs();
        d.is_zero() || d.exponent().unwrap() < -((p as i32) - 16)
    }

    #[test]
    fn sl2_level_ratios() {
        let a1 = RootSystem::from_label("A1", Default::default()).unwrap();
        let pair = Pair::improper(&a1);
        let f = &pair.factors()[0];
        let p = 256;
        let a0 = asdim_irrep(&a1, f, &Weight::from_ints(&[0]), &q(1), p).unwrap();
        let a1w = asdim_irrep(&a1, f, &Weight::from_ints(&[1]), &q(1), p).unwrap();
        assert!(close(&a0, &a1w, p));
        let l0 = asdim_irrep(&a1, f, &Weight::from_ints(&[0]), &q(2), p).unwrap();
        let l1 = asdim_irrep(&a1, f, &Weight::from_ints(&[1]), &q(2), p).unwrap();
        let l2 = asdim_irrep(&a1, f, &Weight::from_ints(&[2]), &q(2), p).unwrap();
        assert!(close(&l0, &l2, p));
        let r = l1.div(&l0, p, RM);
        let sqrt2 = BigFloat::from_i64(2, p).sqrt(p, RM);
        assert!(close(&r, &sqrt2, p));
    }

    #[test]
    fn torus_is_one() {
        let a1 = RootSystem::from_label("A1", Default::default()).unwrap();
        let t = Pair::torus(&a1);
        let v = asdim_irrep(&a1, &t.factors()[0], &Weight::from_ints(&[5]), &q(3), 256).unwrap();
        assert_eq!(v, BigFloat::from_i64(1, 256));
    }

    #[test]
    fn errors() {
        let a1 = RootSystem::from_label("A1", Default::default()).unwrap();
        let pair = Pair::improper(&a1);
        let f = &pair.factors()[0];
        assert!(matches!(
            asdim_irrep(&a1, f, &Weight::from_ints(&[0]), &q(-2), 256),
            Err(Error::NonPositiveLevel(_))
        ));
        assert!(matches!(
            asdim_irrep(&a1, f, &Weight::from_ints(&[-1]), &q(1), 256),
            Err(Error::NotDominant(_))
        ));
        assert!(asdim_irrep(&a1, f, &Weight::from_ints(&[0]), &q(1), 64).is_err());
        let ctx = AffinePairContext::new(&pair, &AutType::identity(&a1)).unwrap();
        assert_eq!(
            signed_asdim_sum(&ctx, &AffineWeight::lambda0(1), 4, 256).unwrap_err(),
            Error::ImproperPair
        );
        let ctx = AffinePairContext::new(&Pair::torus(&a1), &AutType::identity(&a1)).unwrap();
        assert_eq!(
            signed_asdim_sum(&ctx, &AffineWeight::lambda0(1), 4, 256).unwrap_err(),
            Error::NotSemisimple
        );
    }

    #[test]
    fn g2_pair_sum_vanishes() {
        let g2 = RootSystem::from_label("G2", Default::default()).unwrap();
        let pair = Pair::borel_de_siebenthal(&g2, &[2]).unwrap();
        let ctx = AffinePairContext::new(&pair, &AutType::identity(&g2)).unwrap();
        let r = signed_asdim_sum(&ctx, &AffineWeight::lambda0(2), 30, 256).unwrap();
        assert!(r.within_bound(), "log2 ratio {}", r.log2_ratio());
        assert!(r.log10_abs_sum() < -60.0);
    }
}
