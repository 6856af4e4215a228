use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::multiplet::enumerate_coset_reps_to_depth;
use super::spin::spin_signed;
use super::{reduce_to_dominant, AffinePairContext, AffineSystem, AffineWeight};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, frac, q, to_i64, ExactScalar};

/// A formal character cut off below a fixed δ-depth under its leading term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCharacter {
    top: ExactScalar,
    cutoff: ExactScalar,
    terms: BTreeMap<AffineWeight, BigInt>,
}

impl TruncatedCharacter {
    /// Terms deeper than `cutoff` below δ-coefficient `top` are dropped.
    pub fn from_terms(top: ExactScalar, cutoff: ExactScalar, terms: BTreeMap<AffineWeight, BigInt>) -> Self {
        let mut out = TruncatedCharacter {
            top,
            cutoff,
            terms: BTreeMap::new(),
        };
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn empty(top: ExactScalar, cutoff: ExactScalar) -> Self {
        TruncatedCharacter::from_terms(top, cutoff, BTreeMap::new())
    }

    /// δ-coefficient of the leading term.
    pub fn top(&self) -> &ExactScalar {
        &self.top
    }

    pub fn cutoff(&self) -> &ExactScalar {
        &self.cutoff
    }

    pub fn depth_of(&self, w: &AffineWeight) -> ExactScalar {
        &self.top - w.delta()
    }

    pub fn add_term(&mut self, w: AffineWeight, c: BigInt) {
        if c.is_zero() || self.depth_of(&w) > self.cutoff {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn get(&self, w: &AffineWeight) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AffineWeight, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Terms at exactly the given depth.
    pub fn stratum(&self, depth: &ExactScalar) -> BTreeMap<AffineWeight, BigInt> {
        self.terms
            .iter()
            .filter(|(w, _)| &self.depth_of(w) == depth)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect()
    }

    /// `self + factor · other`, keeping the smaller cutoff.
    pub fn add(&self, other: &TruncatedCharacter, factor: i64) -> TruncatedCharacter {
        let cutoff = self.cutoff.clone().min(&other.top - &self.top + &other.cutoff);
        let mut out = TruncatedCharacter::empty(self.top.clone(), cutoff);
        for (w, c) in self.terms.iter() {
            out.add_term(w.clone(), c.clone());
        }
        for (w, c) in other.terms.iter() {
            out.add_term(w.clone(), c * factor);
        }
        out
    }

    /// Truncated product; the cutoff is the smaller of the two.
    pub fn mul(&self, other: &TruncatedCharacter) -> TruncatedCharacter {
        let cutoff = self.cutoff.clone().min(other.cutoff.clone());
        let mut out = TruncatedCharacter::empty(&self.top + &other.top, cutoff);
        for (a, ca) in &self.terms {
            let da = self.depth_of(a);
            if da > out.cutoff {
                continue;
            }
            for (b, cb) in &other.terms {
                if &da + other.depth_of(b) > out.cutoff {
                    continue;
                }
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

// Coordinates of rδ + ᾱ (ᾱ in the root lattice) in β_0, …, β_n.
fn n_vector(sys: &AffineSystem, w: &AffineWeight) -> Vec<i64> {
    sys.simple_coords(w)
        .expect("root lattice element")
        .iter()
        .map(|x| to_i64(x).expect("integral coordinates"))
        .collect()
}

fn depth_of_n(sys: &AffineSystem, n: &[i64]) -> ExactScalar {
    let m = sys.aut().order() as i64;
    let total: i64 = n.iter().zip(sys.aut().s()).map(|(a, &s)| a * s as i64).sum();
    frac(total, m)
}

fn lowering(sys: &AffineSystem, n: &[i64]) -> AffineWeight {
    let mut out = AffineWeight::zero(sys.rank());
    for (c, b) in n.iter().zip(sys.simple_roots()) {
        out = out.add_scaled(&q(*c), &b.weight());
    }
    out
}

// All η = Σ n_i β_i (n_i ≥ 0) of depth ≤ `depth` with ||top − η||² ≤ ||top||².
// The weights of an integrable module with highest weight top − ρ satisfy
// this norm bound, so the recursion never needs anything outside.
fn region(sys: &AffineSystem, top: &AffineWeight, depth: &ExactScalar) -> Vec<Vec<i64>> {
    let rs = sys.finite();
    let n = sys.rank();
    let m = sys.aut().order() as i64;
    let level = top.level();
    let top_norm = rs.norm2(top.finite());
    let to_f = |x: &ExactScalar| x.to_f64().unwrap_or(f64::MAX);
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut step = 0i64;
    loop {
        let d = frac(step, m);
        if &d > depth {
            break;
        }
        let r2 = &top_norm + q(2) * level * &d;
        let radius = to_f(&top_norm).sqrt() + to_f(&r2).max(0.0).sqrt();
        let bounds: Vec<i64> = (0..n)
            .map(|i| {
                let dual = 4.0 * to_f(&rs.gram()[i][i]) / to_f(&rs.simple_gram()[i][i]).powi(2);
                (radius * dual.sqrt()).floor() as i64 + 1
            })
            .collect();
        let mut c: Vec<i64> = bounds.iter().map(|b| -b).collect();
        'odometer: loop {
            let n_coords = sys.aut().n_coords(rs, &d, &c);
            if n_coords.iter().all(|x| x.is_integer() && !x.is_negative()) {
                let eta = rs.from_simple_coords(&c.iter().map(|&x| q(x)).collect::<Vec<_>>());
                if rs.norm2(&(top.finite() - &eta)) <= r2 {
                    out.push(n_coords.iter().map(|x| to_i64(x).unwrap()).collect());
                }
            }
            for i in 0..n {
                if c[i] < bounds[i] {
                    c[i] += 1;
                    continue 'odometer;
                }
                c[i] = -bounds[i];
            }
            break;
        }
        step += 1;
    }
    out.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    out
}

/// Truncated character Σ_w ε(w) e^{w(top)} / Π_{α>0} (1 − e^{−α})^{mult α},
/// multiplied by e^{−shift}, down to δ-depth `depth` below `top`.
///
/// `simple` generates the Weyl group (as level-0 weights) and `positive` lists
/// its positive roots with multiplicity to at least that depth. `top` must
/// be regular dominant for `simple` and of positive level.
pub fn weyl_kac(
    sys: &AffineSystem,
    simple: &[AffineWeight],
    positive: &[(AffineWeight, usize)],
    top: &AffineWeight,
    shift: &AffineWeight,
    depth: &ExactScalar,
) -> Result<TruncatedCharacter> {
    if !top.level().is_positive() {
        return Err(Error::NonPositiveLevel(format_rational(top.level())));
    }
    let denom = denominator(sys, positive, depth);
    let top_norm = sys.norm2(top);
    let mut coeff: HashMap<Vec<i64>, BigInt> = HashMap::new();
    let mut out = TruncatedCharacter::empty(top.delta() - shift.delta(), depth.clone());
    for eta in region(sys, top, depth) {
        let x = top - &lowering(sys, &eta);
        let mut c = BigInt::zero();
        if sys.norm2(&x) == top_norm {
            let (dom, sign) = reduce_to_dominant(sys, simple, &x);
            if &dom == top {
                c += sign;
            }
        }
        for (nu, d) in &denom {
            if nu.iter().all(|v| *v == 0) {
                continue;
            }
            if nu.iter().zip(&eta).any(|(a, b)| a > b) {
                continue;
            }
            let higher: Vec<i64> = eta.iter().zip(nu).map(|(a, b)| a - b).collect();
            if let Some(h) = coeff.get(&higher) {
                c -= d * h;
            }
        }
        if !c.is_zero() {
            out.add_term(&x - shift, c.clone());
            coeff.insert(eta, c);
        }
    }
    Ok(out)
}

// Π (1 − e^{−α})^{mult α} in β-coordinates, truncated at `depth`.
fn denominator(
    sys: &AffineSystem,
    positive: &[(AffineWeight, usize)],
    depth: &ExactScalar,
) -> HashMap<Vec<i64>, BigInt> {
    let mut poly: HashMap<Vec<i64>, BigInt> = HashMap::from([(vec![0; sys.rank() + 1], BigInt::one())]);
    for (root, mult) in positive {
        let v = n_vector(sys, root);
        if &depth_of_n(sys, &v) > depth {
            continue;
        }
        for _ in 0..*mult {
            let mut next = poly.clone();
            for (k, c) in &poly {
                let shifted: Vec<i64> = k.iter().zip(&v).map(|(a, b)| a + b).collect();
                if &depth_of_n(sys, &shifted) > depth {
                    continue;
                }
                *next.entry(shifted).or_insert_with(BigInt::zero) -= c;
            }
            next.retain(|_, c| !c.is_zero());
            poly = next;
        }
    }
    poly
}

/// ch L(Λ) down to δ-depth `depth` below Λ.
pub fn truncated_char(sys: &AffineSystem, lambda: &AffineWeight, depth: &ExactScalar) -> Result<TruncatedCharacter> {
    sys.check_dominant_integral(lambda)?;
    let simple: Vec<AffineWeight> = sys.simple_roots().iter().map(|r| r.weight()).collect();
    let positive: Vec<(AffineWeight, usize)> = sys
        .positive_roots_to_depth(depth)
        .into_iter()
        .map(|r| (r.weight(), r.mult()))
        .collect();
    weyl_kac(sys, &simple, &positive, &(lambda + sys.rho_hat()), sys.rho_hat(), depth)
}

/// Outcome of comparing both sides of the homogeneous Weyl–Kac identity.
#[derive(Clone, Debug)]
pub struct HwkReport {
    pub holds: bool,
    /// ch L(Λ)·(ch F⁺ − ch F⁻) minus the signed multiplet sum, both shifted by ρ̂_{aσ}.
    pub diff: TruncatedCharacter,
    pub lhs: TruncatedCharacter,
    pub reps: usize,
}

/// ch L(Λ)·(ch F⁺ − ch F⁻) = Σ_{w∈Ŵ′} (−1)^{ℓ(w)} ch V(φ*_a(w(Λ+ρ̂_σ)) − ρ̂_{aσ})
/// as a-characters to δ-depth `depth`. Both sides are compared after adding
/// ρ̂_{aσ}, which turns every a-weight that occurs into φ*_a of an ambient weight.
pub fn verify_hwk(
    ctx: &AffinePairContext,
    lambda: &AffineWeight,
    depth: &ExactScalar,
    max_length: usize,
) -> Result<HwkReport> {
    let sys = ctx.system();
    let lhs = truncated_char(sys, lambda, depth)?.mul(&spin_signed(ctx, depth));
    let reps = enumerate_coset_reps_to_depth(ctx, lambda, depth, max_length);
    if !reps.closed {
        return Err(Error::Unclosed(format!("length {max_length}")));
    }
    let top = lambda + sys.rho_hat();
    let simple: Vec<AffineWeight> = ctx.a_simple_roots().iter().map(|(r, _)| r.weight()).collect();
    let a_positive: Vec<(AffineWeight, usize)> = sys
        .positive_roots_to_depth(depth)
        .into_iter()
        .filter(|r| ctx.is_a_root(&r.weight()))
        .map(|r| (r.weight(), r.mult()))
        .collect();
    let zero = AffineWeight::zero(sys.rank());
    let mut rhs = TruncatedCharacter::empty(top.delta().clone(), depth.clone());
    for w in &reps.words {
        let top_w = sys.apply(w, &top);
        let d_w = top_w.depth_below(&top);
        let ch = weyl_kac(sys, &simple, &a_positive, &top_w, &zero, &(depth - &d_w))?;
        rhs = rhs.add(&ch, w.sign());
    }
    let diff = lhs.add(&rhs, -1);
    Ok(HwkReport {
        holds: diff.is_empty(),
        diff,
        lhs,
        reps: reps.words.len(),
    })
}
