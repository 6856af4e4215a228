use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::character::TruncatedCharacter;
use super::{AffinePairContext, AffineSystem, AffineWeight};
use crate::scalar::ExactScalar;

// Every fermionic mode lowers the vacuum ρ̂_σ by one positive root; `modes`
// lists them with repetition. `zero_modes` more modes have weight 0.
fn expand(
    top: &AffineWeight,
    modes: &[AffineWeight],
    zero_modes: usize,
    depth: &ExactScalar,
    signed: bool,
) -> TruncatedCharacter {
    let mut terms: BTreeMap<AffineWeight, BigInt> = BTreeMap::from([(top.clone(), BigInt::one())]);
    for m in modes {
        let mut next = terms.clone();
        for (w, c) in &terms {
            let lowered = w - m;
            if &lowered.depth_below(top) > depth {
                continue;
            }
            let c = if signed { -c } else { c.clone() };
            *next.entry(lowered).or_insert_with(BigInt::zero) += c;
        }
        next.retain(|_, c| !c.is_zero());
        terms = next;
    }
    if signed && zero_modes > 0 {
        // (1 − 1)^{zero_modes}
        terms.clear();
    } else {
        let f = BigInt::one() << zero_modes;
        for c in terms.values_mut() {
            *c *= &f;
        }
    }
    TruncatedCharacter::from_terms(top.delta().clone(), depth.clone(), terms)
}

fn p_modes(ctx: &AffinePairContext, depth: &ExactScalar) -> Vec<AffineWeight> {
    ctx.system()
        .positive_roots_to_depth(depth)
        .into_iter()
        .filter(|r| r.is_real() && ctx.pair().p_roots().contains(r.finite()))
        .map(|r| r.weight())
        .collect()
}

fn all_modes(sys: &AffineSystem, depth: &ExactScalar) -> Vec<AffineWeight> {
    let mut out = Vec::new();
    for r in sys.positive_roots_to_depth(depth) {
        for _ in 0..r.mult() {
            out.push(r.weight());
        }
    }
    out
}

/// Weights (with multiplicity) of the spin module F(p̄) down to δ-depth
/// `depth`: ρ̂_σ minus sums of distinct positive affine roots with finite part
/// in Δ_p. h ∩ p = 0 for equal rank, so there are no Cartan modes.
pub fn spin_weights(ctx: &AffinePairContext, depth: &ExactScalar) -> TruncatedCharacter {
    expand(ctx.rho_hat_sigma(), &p_modes(ctx, depth), 0, depth, false)
}

/// Weights of F(ḡ): every positive affine root with its multiplicity, plus
/// ⌈n/2⌉ Cartan modes of weight 0 at depth 0.
pub fn spin_weights_full(sys: &AffineSystem, depth: &ExactScalar) -> TruncatedCharacter {
    let zero = sys.rank().div_ceil(2);
    expand(sys.rho_hat(), &all_modes(sys, depth), zero, depth, false)
}

/// ch F⁺ − ch F⁻ for F(p̄), the vacuum in F⁺.
pub fn spin_signed(ctx: &AffinePairContext, depth: &ExactScalar) -> TruncatedCharacter {
    expand(ctx.rho_hat_sigma(), &p_modes(ctx, depth), 0, depth, true)
}
