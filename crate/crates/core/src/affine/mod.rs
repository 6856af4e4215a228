//! The twisted affine system L̂(g, σ) for an inner σ of type (s;1): weights,
//! roots, the Weyl group action and ρ̂_σ = ρ_σ + gΛ0.

mod character;
mod multiplet;
mod spin;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

pub use character::{truncated_char, verify_hwk, weyl_kac, HwkReport, TruncatedCharacter};
pub use multiplet::{
    affine_multiplet, casimir_scalar, entry_casimir, enumerate_coset_reps, enumerate_coset_reps_to_depth, ASideWeight,
    AffineMultiplet, AffineMultipletEntry, AffinePairContext, CosetReps,
};
pub use spin::{spin_signed, spin_weights, spin_weights_full};

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, WeylWord};
use crate::scalar::{format_rational, frac, is_integer, q, to_i64, ExactScalar};
use crate::twisted::{rho_sigma, AutType};
use crate::weight::Weight;

/// λ̄ + kΛ0 + xδ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeight {
    finite: Weight,
    level: ExactScalar,
    delta: ExactScalar,
}

impl AffineWeight {
    pub fn new(finite: Weight, level: ExactScalar, delta: ExactScalar) -> Self {
        AffineWeight { finite, level, delta }
    }

    pub fn zero(rank: usize) -> Self {
        AffineWeight::new(Weight::zero(rank), q(0), q(0))
    }

    /// Λ0
    pub fn lambda0(rank: usize) -> Self {
        AffineWeight::new(Weight::zero(rank), q(1), q(0))
    }

    /// δ
    pub fn delta_root(rank: usize) -> Self {
        AffineWeight::new(Weight::zero(rank), q(0), q(1))
    }

    pub fn finite(&self) -> &Weight {
        &self.finite
    }

    pub fn level(&self) -> &ExactScalar {
        &self.level
    }

    pub fn delta(&self) -> &ExactScalar {
        &self.delta
    }

    pub fn rank(&self) -> usize {
        self.finite.rank()
    }

    pub fn scale(&self, c: &ExactScalar) -> AffineWeight {
        AffineWeight::new(self.finite.scale(c), &self.level * c, &self.delta * c)
    }

    pub fn add_scaled(&self, c: &ExactScalar, other: &AffineWeight) -> AffineWeight {
        AffineWeight::new(
            self.finite.add_scaled(c, &other.finite),
            &self.level + c * &other.level,
            &self.delta + c * &other.delta,
        )
    }

    /// δ-depth of `self` below `top`.
    pub fn depth_below(&self, top: &AffineWeight) -> ExactScalar {
        &top.delta - &self.delta
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}Λ0 + {}δ",
            self.finite,
            format_rational(&self.level),
            format_rational(&self.delta)
        )
    }
}

impl fmt::Debug for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &AffineWeight {
    type Output = AffineWeight;
    fn add(self, rhs: &AffineWeight) -> AffineWeight {
        AffineWeight::new(
            &self.finite + &rhs.finite,
            &self.level + &rhs.level,
            &self.delta + &rhs.delta,
        )
    }
}

impl Sub for &AffineWeight {
    type Output = AffineWeight;
    fn sub(self, rhs: &AffineWeight) -> AffineWeight {
        AffineWeight::new(
            &self.finite - &rhs.finite,
            &self.level - &rhs.level,
            &self.delta - &rhs.delta,
        )
    }
}

impl Neg for &AffineWeight {
    type Output = AffineWeight;
    fn neg(self) -> AffineWeight {
        AffineWeight::new(-&self.finite, -&self.level, -&self.delta)
    }
}

/// sδ + ᾱ with its multiplicity; imaginary when ᾱ = 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    s: ExactScalar,
    finite: Weight,
    mult: usize,
}

impl AffineRoot {
    pub fn new(s: ExactScalar, finite: Weight, mult: usize) -> Self {
        AffineRoot { s, finite, mult }
    }

    pub fn s(&self) -> &ExactScalar {
        &self.s
    }

    pub fn finite(&self) -> &Weight {
        &self.finite
    }

    pub fn mult(&self) -> usize {
        self.mult
    }

    pub fn is_real(&self) -> bool {
        !self.finite.is_zero()
    }

    /// The root as a level-0 weight.
    pub fn weight(&self) -> AffineWeight {
        AffineWeight::new(self.finite.clone(), q(0), self.s.clone())
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}δ + {}", format_rational(&self.s), self.finite)
    }
}

/// L̂(g, σ) with simple roots β_0 = (s_0/m)δ − θ, β_i = (s_i/m)δ + α_i.
#[derive(Clone, Debug)]
pub struct AffineSystem {
    rs: RootSystem,
    aut: AutType,
    simple: Vec<AffineRoot>,
    rho_hat: AffineWeight,
}

impl AffineSystem {
    pub fn new(rs: &RootSystem, aut: &AutType) -> Result<Self> {
        if aut.s().len() != rs.rank() + 1 {
            return Err(Error::InvalidAut(format!("{aut} does not fit {}", rs.label())));
        }
        let m = aut.order() as i64;
        let mut simple = vec![AffineRoot::new(frac(aut.s()[0] as i64, m), -rs.highest_root(), 1)];
        for (i, a) in rs.simple_roots().iter().enumerate() {
            simple.push(AffineRoot::new(frac(aut.s()[i + 1] as i64, m), a.clone(), 1));
        }
        let rho_hat = AffineWeight::new(rho_sigma(rs, aut), rs.dual_coxeter().clone(), q(0));
        Ok(AffineSystem {
            rs: rs.clone(),
            aut: aut.clone(),
            simple,
            rho_hat,
        })
    }

    pub fn finite(&self) -> &RootSystem {
        &self.rs
    }

    pub fn aut(&self) -> &AutType {
        &self.aut
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn simple_roots(&self) -> &[AffineRoot] {
        &self.simple
    }

    /// ρ̂_σ = ρ_σ + gΛ0
    pub fn rho_hat(&self) -> &AffineWeight {
        &self.rho_hat
    }

    pub fn dual_coxeter(&self) -> &ExactScalar {
        self.rs.dual_coxeter()
    }

    /// (λ̄ + kΛ0 + xδ, μ̄ + lΛ0 + yδ) = (λ̄, μ̄) + ky + lx
    pub fn form(&self, a: &AffineWeight, b: &AffineWeight) -> ExactScalar {
        self.rs.form(&a.finite, &b.finite) + &a.level * &b.delta + &b.level * &a.delta
    }

    pub fn norm2(&self, a: &AffineWeight) -> ExactScalar {
        self.form(a, a)
    }

    /// ⟨λ, α∨⟩ = 2(λ, α)/(α, α)
    pub fn coroot_pairing(&self, lambda: &AffineWeight, alpha: &AffineWeight) -> ExactScalar {
        q(2) * self.form(lambda, alpha) / self.norm2(alpha)
    }

    /// λ − ⟨λ, α∨⟩α for a real root α.
    pub fn reflect(&self, lambda: &AffineWeight, alpha: &AffineRoot) -> Result<AffineWeight> {
        if !alpha.is_real() {
            return Err(Error::ImaginaryRoot);
        }
        let a = alpha.weight();
        Ok(reflect_in(self, lambda, &a))
    }

    pub fn simple_reflection(&self, i: usize, lambda: &AffineWeight) -> AffineWeight {
        reflect_in(self, lambda, &self.simple[i].weight())
    }

    /// Acts with the word, last letter first.
    pub fn apply(&self, w: &WeylWord, lambda: &AffineWeight) -> AffineWeight {
        let mut out = lambda.clone();
        for &i in w.letters().iter().rev() {
            out = self.simple_reflection(i, &out);
        }
        out
    }

    /// Coordinates in β_0, …, β_n of a level-0 weight rδ + ᾱ with ᾱ in the
    /// root lattice; `None` if ᾱ is not in the root lattice.
    pub fn simple_coords(&self, w: &AffineWeight) -> Option<Vec<ExactScalar>> {
        let c = self.rs.simple_coords(&w.finite);
        let ints: Option<Vec<i64>> = c.iter().map(to_i64).collect();
        Some(self.aut.n_coords(&self.rs, &w.delta, &ints?))
    }

    /// Whether rδ + ᾱ is a root (real or imaginary).
    pub fn is_root(&self, r: &ExactScalar, finite: &Weight) -> bool {
        if finite.is_zero() {
            return !r.is_zero() && is_integer(r);
        }
        match self.aut.grade(&self.rs, finite) {
            Some(g) => is_integer(&(r - frac(g as i64, self.aut.order() as i64))),
            None => false,
        }
    }

    /// Positive roots are the non-negative combinations of β_0, …, β_n.
    pub fn is_positive(&self, w: &AffineWeight) -> bool {
        if w.finite.is_zero() {
            return w.delta.is_positive();
        }
        match self.simple_coords(w) {
            Some(n) => n.iter().all(|x| !x.is_negative()),
            None => false,
        }
    }

    /// Whether a level-0 weight is a root.
    pub fn is_root_weight(&self, w: &AffineWeight) -> bool {
        w.level.is_zero() && self.is_root(&w.delta, &w.finite)
    }

    /// All positive roots rδ + ᾱ with 0 ≤ r ≤ depth, ordered by r.
    pub fn positive_roots_to_depth(&self, depth: &ExactScalar) -> Vec<AffineRoot> {
        let m = self.aut.order() as i64;
        let mut out = Vec::new();
        let mut step = 0i64;
        loop {
            let r = frac(step, m);
            if &r > depth {
                break;
            }
            if step > 0 && step % m == 0 {
                out.push(AffineRoot::new(r.clone(), Weight::zero(self.rank()), self.rank()));
            }
            for a in self.rs.roots() {
                if !self.is_root(&r, a) {
                    continue;
                }
                let w = AffineWeight::new(a.clone(), q(0), r.clone());
                if self.is_positive(&w) {
                    out.push(AffineRoot::new(r.clone(), a.clone(), 1));
                }
            }
            step += 1;
        }
        out
    }

    /// ⟨Λ, β_i∨⟩ for every simple root.
    pub fn labels(&self, lambda: &AffineWeight) -> Vec<ExactScalar> {
        self.simple
            .iter()
            .map(|b| self.coroot_pairing(lambda, &b.weight()))
            .collect()
    }

    pub fn check_dominant_integral(&self, lambda: &AffineWeight) -> Result<()> {
        if lambda.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: lambda.rank(),
            });
        }
        let labels = self.labels(lambda);
        if labels.iter().any(|x| !is_integer(x)) {
            return Err(Error::NotIntegral(lambda.to_string()));
        }
        if labels.iter().any(|x| x.is_negative()) {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        Ok(())
    }
}

fn reflect_in(sys: &AffineSystem, lambda: &AffineWeight, alpha: &AffineWeight) -> AffineWeight {
    let c = sys.coroot_pairing(lambda, alpha);
    lambda.add_scaled(&-c, alpha)
}

/// Moves `x` into the dominant chamber of the reflection group generated by
/// `simple` (given as level-0 weights). Returns the chamber representative and
/// the parity of the number of reflections used. Needs x of positive level.
pub(crate) fn reduce_to_dominant(sys: &AffineSystem, simple: &[AffineWeight], x: &AffineWeight) -> (AffineWeight, i64) {
    let mut cur = x.clone();
    let mut sign = 1;
    'outer: loop {
        for a in simple {
            if sys.form(&cur, a).is_negative() {
                cur = reflect_in(sys, &cur, a);
                sign = -sign;
                continue 'outer;
            }
        }
        return (cur, sign);
    }
}
