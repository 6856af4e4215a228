use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};

use super::{AffineRoot, AffineSystem, AffineWeight};
use crate::error::{Error, Result};
use crate::pairs::Pair;
use crate::rootsys::WeylWord;
use crate::scalar::{format_rational, is_integer, q, ExactScalar};
use crate::twisted::{factor_z, rho_a_sigma, AutType};
use crate::weight::Weight;

/// A weight of L̂(a, σ): finite part, one level per factor of a (the centre
/// included) and the d_a eigenvalue.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ASideWeight {
    pub finite: Weight,
    pub levels: Vec<ExactScalar>,
    pub delta: ExactScalar,
}

impl fmt::Display for ASideWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let levels: Vec<String> = self.levels.iter().map(format_rational).collect();
        write!(
            f,
            "{} + [{}]Λ0 + {}δ",
            self.finite,
            levels.join(", "),
            format_rational(&self.delta)
        )
    }
}

impl fmt::Debug for ASideWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The affine system of g together with the data of an equal-rank pair (g, a).
#[derive(Clone, Debug)]
pub struct AffinePairContext {
    sys: AffineSystem,
    pair: Pair,
    rho_a_sigma: Weight,
    g_s: Vec<ExactScalar>,
    z_s: Vec<ExactScalar>,
    a_simple: Vec<(AffineRoot, usize)>,
}

impl AffinePairContext {
    pub fn new(pair: &Pair, aut: &AutType) -> Result<Self> {
        let sys = AffineSystem::new(pair.ambient(), aut)?;
        let rho_a_sigma = rho_a_sigma(pair, aut);
        let g_s = pair.factors().iter().map(|f| f.casimir().clone()).collect();
        let z_s = pair.factors().iter().map(|f| factor_z(pair, f, aut)).collect();
        let a_simple = a_simple_roots(&sys, pair);
        Ok(AffinePairContext {
            sys,
            pair: pair.clone(),
            rho_a_sigma,
            g_s,
            z_s,
            a_simple,
        })
    }

    pub fn system(&self) -> &AffineSystem {
        &self.sys
    }

    pub fn pair(&self) -> &Pair {
        &self.pair
    }

    pub fn aut(&self) -> &AutType {
        self.sys.aut()
    }

    pub fn rho_hat_sigma(&self) -> &AffineWeight {
        self.sys.rho_hat()
    }

    pub fn rho_a_sigma(&self) -> &Weight {
        &self.rho_a_sigma
    }

    /// g_S for every factor, in the order of [`Pair::factors`].
    pub fn factor_casimirs(&self) -> &[ExactScalar] {
        &self.g_s
    }

    /// z(a_S, σ) for every factor.
    pub fn factor_z(&self) -> &[ExactScalar] {
        &self.z_s
    }

    /// ρ̂_{aσ} = ρ_{aσ} + Σ_S g_S Λ0^S.
    pub fn rho_hat_a_sigma(&self) -> ASideWeight {
        ASideWeight {
            finite: self.rho_a_sigma.clone(),
            levels: self.g_s.clone(),
            delta: q(0),
        }
    }

    /// Simple roots of Δ̂⁺_a, each with the index of its factor.
    pub fn a_simple_roots(&self) -> &[(AffineRoot, usize)] {
        &self.a_simple
    }

    /// Whether an ambient root rδ + ᾱ belongs to Δ̂_a.
    pub fn is_a_root(&self, w: &AffineWeight) -> bool {
        self.sys.is_root_weight(w) && (w.finite().is_zero() || self.pair.sub_roots().contains(w.finite()))
    }

    /// φ*_a: every K_S ↦ K, d_a ↦ d, identity on the Cartan.
    pub fn phi_star(&self, w: &AffineWeight) -> ASideWeight {
        ASideWeight {
            finite: w.finite().clone(),
            levels: vec![w.level().clone(); self.g_s.len()],
            delta: w.delta().clone(),
        }
    }

    /// Inverse of φ*_a on weights with equal levels.
    pub fn phi_star_inverse(&self, w: &ASideWeight) -> Option<AffineWeight> {
        let level = w.levels.first().cloned().unwrap_or_else(|| q(0));
        if w.levels.iter().any(|l| l != &level) {
            return None;
        }
        Some(AffineWeight::new(w.finite.clone(), level, w.delta.clone()))
    }

    pub fn a_pairing(&self, w: &ASideWeight, root: &AffineRoot, factor: usize) -> ExactScalar {
        self.sys.finite().form(&w.finite, root.finite()) + root.s() * &w.levels[factor]
    }

    /// Whether ⟨μ, γ∨⟩ ∈ ℤ≥0 for every simple root γ of Δ̂⁺_a.
    pub fn is_a_dominant_integral(&self, w: &ASideWeight) -> bool {
        self.a_simple.iter().all(|(r, f)| {
            let c = q(2) * self.a_pairing(w, r, *f) / self.sys.finite().norm2(r.finite());
            is_integer(&c) && !c.is_negative()
        })
    }

    /// Level of the ambient weight shared by the multiplet.
    fn shifted_level(&self, lambda: &AffineWeight) -> ExactScalar {
        lambda.level() + self.sys.dual_coxeter()
    }
}

// Simple roots of Δ̂⁺_a: the positive a-roots with δ-coefficient in [0, 1]
// that are not a sum of two positive a-roots. Every simple root of an affine
// factor has δ-coefficient at most 1 because the factor's null root is δ.
fn a_simple_roots(sys: &AffineSystem, pair: &Pair) -> Vec<(AffineRoot, usize)> {
    let rank = sys.rank();
    let mut cands: Vec<AffineWeight> = sys
        .positive_roots_to_depth(&q(1))
        .into_iter()
        .filter(|r| !r.is_real() || pair.sub_roots().contains(r.finite()))
        .map(|r| r.weight())
        .collect();
    cands.sort();
    let set: HashSet<&AffineWeight> = cands.iter().collect();
    let mut out = Vec::new();
    for c in &cands {
        if c.finite().is_zero() {
            continue;
        }
        let decomposable = cands.iter().any(|d| d != c && set.contains(&(c - d)));
        if decomposable {
            continue;
        }
        let factor = pair
            .factors()
            .iter()
            .position(|f| f.roots().contains(c.finite()))
            .expect("a-root lies in a factor");
        out.push((AffineRoot::new(c.delta().clone(), c.finite().clone(), 1), factor));
    }
    debug_assert!(out.iter().all(|(r, _)| r.finite().rank() == rank));
    out
}

/// Minimal right coset representatives found by the enumeration.
#[derive(Clone, Debug)]
pub struct CosetReps {
    pub words: Vec<WeylWord>,
    /// True when the enumeration found every representative, not only those
    /// inside the length or depth limit.
    pub closed: bool,
}

/// Representatives w ∈ Ŵ′ (w⁻¹Δ̂⁺_a ⊂ Δ̂⁺) with ℓ(w) ≤ `max_length`.
///
/// Ŵ′ is closed under prefixes and w s_j ∈ Ŵ′ iff w ∈ Ŵ′ and w(β_j) is a
/// positive root outside Δ̂_a, so BFS over the weak order finds all of them.
pub fn enumerate_coset_reps(ctx: &AffinePairContext, max_length: usize) -> CosetReps {
    let base = ctx.rho_hat_sigma().clone();
    coset_bfs(ctx, &base, |w, _| (w.length() <= max_length).then_some(true))
}

/// Representatives w ∈ Ŵ′ with w(Λ+ρ̂_σ) at δ-depth at most `depth` below
/// Λ+ρ̂_σ. Along the BFS the depth of w(Λ+ρ̂_σ) never decreases, so the
/// search is complete unless `max_length` cuts it off.
pub fn enumerate_coset_reps_to_depth(
    ctx: &AffinePairContext,
    lambda: &AffineWeight,
    depth: &ExactScalar,
    max_length: usize,
) -> CosetReps {
    let top = lambda + ctx.rho_hat_sigma();
    coset_bfs(ctx, &top, |w, img| {
        if &img.depth_below(&top) > depth {
            Some(false)
        } else {
            (w.length() <= max_length).then_some(true)
        }
    })
}

// `keep(w, w(base))`: Some(true) keeps and expands w, Some(false) drops it
// (and everything above it), None drops it and marks the result unclosed.
fn coset_bfs(
    ctx: &AffinePairContext,
    base: &AffineWeight,
    keep: impl Fn(&WeylWord, &AffineWeight) -> Option<bool>,
) -> CosetReps {
    let sys = &ctx.sys;
    let rho = sys.rho_hat().clone();
    let mut seen: HashSet<AffineWeight> = HashSet::from([rho.clone()]);
    let mut words = vec![WeylWord::identity()];
    let mut queue = VecDeque::from([WeylWord::identity()]);
    let mut closed = true;
    while let Some(w) = queue.pop_front() {
        for j in 0..=sys.rank() {
            let img = sys.apply(&w, &sys.simple_roots()[j].weight());
            if !sys.is_positive(&img) || ctx.is_a_root(&img) {
                continue;
            }
            let next = w.times(j);
            if !seen.insert(sys.apply(&next, &rho)) {
                continue;
            }
            match keep(&next, &sys.apply(&next, base)) {
                Some(true) => {
                    words.push(next.clone());
                    queue.push_back(next);
                }
                Some(false) => {}
                None => closed = false,
            }
        }
    }
    CosetReps { words, closed }
}

/// V(μ_w) with μ_w = φ*_a(w(Λ+ρ̂_σ)) − ρ̂_{aσ}.
#[derive(Clone, Debug)]
pub struct AffineMultipletEntry {
    pub rep: WeylWord,
    /// w(Λ+ρ̂_σ)
    pub top: AffineWeight,
    pub mu: ASideWeight,
    pub sign: i64,
}

#[derive(Clone, Debug)]
pub struct AffineMultiplet {
    pub lambda: AffineWeight,
    pub entries: Vec<AffineMultipletEntry>,
    pub closed: bool,
}

pub fn affine_multiplet(ctx: &AffinePairContext, lambda: &AffineWeight, max_length: usize) -> Result<AffineMultiplet> {
    ctx.sys.check_dominant_integral(lambda)?;
    let reps = enumerate_coset_reps(ctx, max_length);
    Ok(multiplet_from(ctx, lambda, reps))
}

pub(crate) fn multiplet_from(ctx: &AffinePairContext, lambda: &AffineWeight, reps: CosetReps) -> AffineMultiplet {
    let shifted = lambda + ctx.rho_hat_sigma();
    let rho_a = ctx.rho_hat_a_sigma();
    let entries = reps
        .words
        .into_iter()
        .map(|w| {
            let top = ctx.sys.apply(&w, &shifted);
            let img = ctx.phi_star(&top);
            let mu = ASideWeight {
                finite: &img.finite - &rho_a.finite,
                levels: img.levels.iter().zip(&rho_a.levels).map(|(a, b)| a - b).collect(),
                delta: img.delta.clone(),
            };
            AffineMultipletEntry {
                sign: w.sign(),
                rep: w,
                top,
                mu,
            }
        })
        .collect();
    AffineMultiplet {
        lambda: lambda.clone(),
        entries,
        closed: reps.closed,
    }
}

/// ½(||Λ+ρ̂_σ||² − ||ρ_{aσ}||²) + Σ_S (k+g−g_S) z(a_S, σ).
pub fn casimir_scalar(ctx: &AffinePairContext, lambda: &AffineWeight) -> ExactScalar {
    let sys = &ctx.sys;
    let kg = ctx.shifted_level(lambda);
    let mut out = (sys.norm2(&(lambda + sys.rho_hat())) - sys.finite().norm2(&ctx.rho_a_sigma)) / q(2);
    for (gs, z) in ctx.g_s.iter().zip(&ctx.z_s) {
        out += (&kg - gs) * z;
    }
    out
}

/// Eigenvalue of C(a) on V(μ): ½(μ̄ + 2ρ_{aσ}, μ̄) + (k+g) μ(d_a) + Σ_S k_S z(a_S, σ),
/// where k_S = k + g − g_S is the level of μ on a_S.
pub fn entry_casimir(ctx: &AffinePairContext, mu: &ASideWeight) -> ExactScalar {
    let rs = ctx.sys.finite();
    let two_rho = ctx.rho_a_sigma.scale(&q(2));
    let mut out = rs.form(&(&mu.finite + &two_rho), &mu.finite) / q(2);
    let kg = match (mu.levels.first(), ctx.g_s.first()) {
        (Some(l), Some(g)) => l + g,
        _ => ExactScalar::zero(),
    };
    out += kg * &mu.delta;
    for (l, z) in mu.levels.iter().zip(&ctx.z_s) {
        out += l * z;
    }
    out
}

impl AffineMultiplet {
    /// Dominance, norm constancy and Casimir constancy for every entry.
    pub fn check_invariants(&self, ctx: &AffinePairContext) -> Result<()> {
        let sys = ctx.system();
        let norm = sys.norm2(&(&self.lambda + sys.rho_hat()));
        let cas = casimir_scalar(ctx, &self.lambda);
        for e in &self.entries {
            if !ctx.is_a_dominant_integral(&e.mu) {
                return Err(Error::NotDominant(e.mu.to_string()));
            }
            if sys.norm2(&e.top) != norm {
                return Err(Error::PreconditionViolated(format!("norm of {} differs", e.top)));
            }
            if entry_casimir(ctx, &e.mu) != cas {
                return Err(Error::PreconditionViolated(format!("Casimir of {} differs", e.mu)));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootSystem;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label, Default::default()).unwrap()
    }

    #[test]
    fn a_simple_counts() {
        let g2 = rs("G2");
        let id = AutType::identity(&g2);
        let a2 = Pair::borel_de_siebenthal(&g2, &[1]).unwrap();
        let ctx = AffinePairContext::new(&a2, &id).unwrap();
        assert_eq!(ctx.a_simple_roots().len(), 3);
        let a1a1 = Pair::borel_de_siebenthal(&g2, &[2]).unwrap();
        assert_eq!(AffinePairContext::new(&a1a1, &id).unwrap().a_simple_roots().len(), 4);
        let full = AffinePairContext::new(&Pair::improper(&g2), &id).unwrap();
        assert_eq!(full.a_simple_roots().len(), 3);
        let a1 = rs("A1");
        let t = AffinePairContext::new(&Pair::torus(&a1), &AutType::identity(&a1)).unwrap();
        assert!(t.a_simple_roots().is_empty());
    }

    #[test]
    fn improper_pair_has_one_rep() {
        let b2 = rs("B2");
        let ctx = AffinePairContext::new(&Pair::improper(&b2), &AutType::identity(&b2)).unwrap();
        let reps = enumerate_coset_reps(&ctx, 10);
        assert_eq!(reps.words.len(), 1);
        assert!(reps.closed);
        let m = affine_multiplet(&ctx, &AffineWeight::lambda0(2), 10).unwrap();
        assert_eq!(m.entries.len(), 1);
        assert_eq!(m.entries[0].sign, 1);
        let mu = &m.entries[0].mu;
        assert_eq!(ctx.phi_star_inverse(mu), Some(AffineWeight::lambda0(2)));
    }

    #[test]
    fn torus_multiplet_in_sl2() {
        let a1 = rs("A1");
        let ctx = AffinePairContext::new(&Pair::torus(&a1), &AutType::identity(&a1)).unwrap();
        let m = affine_multiplet(&ctx, &AffineWeight::lambda0(1), 3).unwrap();
        // the infinite dihedral group has two elements of each positive length
        assert_eq!(m.entries.len(), 7);
        assert!(!m.closed);
        m.check_invariants(&ctx).unwrap();
        assert_eq!(
            casimir_scalar(&ctx, &AffineWeight::lambda0(1)),
            crate::scalar::frac(1, 4)
        );
    }

    #[test]
    fn g2_a2_multiplet() {
        let g2 = rs("G2");
        let pair = Pair::borel_de_siebenthal(&g2, &[1]).unwrap();
        let ctx = AffinePairContext::new(&pair, &AutType::identity(&g2)).unwrap();
        let m = affine_multiplet(&ctx, &AffineWeight::lambda0(2), 6).unwrap();
        assert!(m.closed);
        m.check_invariants(&ctx).unwrap();
    }

    #[test]
    fn rejects_non_dominant() {
        let a1 = rs("A1");
        let ctx = AffinePairContext::new(&Pair::torus(&a1), &AutType::identity(&a1)).unwrap();
        let bad = AffineWeight::new(Weight::from_ints(&[3]), q(1), q(0));
        assert!(affine_multiplet(&ctx, &bad, 2).is_err());
    }
}
