//! Finite multiplets {U(w(λ+ρ) − ρ_a) : w ∈ W′} and their signed sums.

mod qlaurent;

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use qlaurent::QLaurent;

use crate::error::{Error, Result};
use crate::pairs::Pair;
use crate::rootsys::{freudenthal, Character, WeylWord};
use crate::scalar::{q, ExactScalar};
use crate::weight::Weight;

/// Minimal-length representatives of the right cosets W_a\W: the w with
/// w⁻¹(γ) > 0 for every positive root γ of a, in BFS (length) order.
///
/// The set is closed under prefixes: extending w by s_j adds exactly the
/// root w(α_j) to {γ > 0 : w⁻¹γ < 0}, so w s_j is accepted iff w(α_j) is a
/// positive root outside Δ_a.
pub fn minimal_coset_reps(pair: &Pair) -> Vec<WeylWord> {
    let rs = pair.ambient();
    let n = rs.rank();
    let sub: HashSet<&Weight> = pair.sub_roots().iter().collect();
    let mut seen: HashSet<Weight> = HashSet::from([rs.rho().clone()]);
    let mut out = vec![WeylWord::identity()];
    // (w, w(ρ), [w(α_i)]); w s_j sends α_i to w(α_i) − ⟨α_i, α_j∨⟩ w(α_j) and ρ to w(ρ) − w(α_j)
    let start = (WeylWord::identity(), rs.rho().clone(), rs.simple_roots().to_vec());
    let mut queue = VecDeque::from([start]);
    while let Some((w, rho_w, imgs)) = queue.pop_front() {
        for j in 0..n {
            let img = &imgs[j];
            if !rs.is_positive(img) || sub.contains(img) {
                continue;
            }
            let rho_next = &rho_w - img;
            if !seen.insert(rho_next.clone()) {
                continue;
            }
            let next = w.times(j);
            let next_imgs = (0..n)
                .map(|i| imgs[i].add_scaled(&q(-rs.cartan()[i][j]), img))
                .collect();
            out.push(next.clone());
            queue.push_back((next, rho_next, next_imgs));
        }
    }
    out
}

/// One member U(μ_w) of a multiplet.
#[derive(Clone, Debug)]
pub struct MultipletEntry {
    pub rep: WeylWord,
    pub weight: Weight,
    pub sign: i64,
    pub dim: BigInt,
    /// dim_q at the r∨_a of [`Pair::choose_r_vee`]; absent if no r was found.
    pub qdim: Option<QLaurent>,
}

/// The multiplet attached to V(λ) by the pair.
#[derive(Clone, Debug)]
pub struct Multiplet {
    pair: Pair,
    lambda: Weight,
    entries: Vec<MultipletEntry>,
    r: Option<Weight>,
}

impl Multiplet {
    pub fn entries(&self) -> &[MultipletEntry] {
        &self.entries
    }

    pub fn pair(&self) -> &Pair {
        &self.pair
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The multiset {(μ_w, sign)} sorted, for comparisons.
    pub fn signed_weights(&self) -> Vec<(Weight, i64)> {
        let mut v: Vec<(Weight, i64)> = self.entries.iter().map(|e| (e.weight.clone(), e.sign)).collect();
        v.sort();
        v
    }

    /// Checks that every μ_w is Δ⁺_a-dominant integral and that all entries
    /// share ||μ_w + ρ_a||² = ||λ + ρ||².
    pub fn check_invariants(&self) -> Result<()> {
        let rs = self.pair.ambient();
        let data = self.pair.sub_data();
        let target = rs.norm2(&(&self.lambda + rs.rho()));
        for e in &self.entries {
            if !data.is_dominant_integral(rs, &e.weight) {
                return Err(Error::PreconditionViolated(format!(
                    "multiplet weight {} is not a-dominant integral",
                    e.weight
                )));
            }
            if rs.norm2(&(&e.weight + self.pair.rho_a())) != target {
                return Err(Error::PreconditionViolated(format!(
                    "norm of {} + ρ_a differs from ||λ+ρ||²",
                    e.weight
                )));
            }
        }
        Ok(())
    }
}

/// Multiplet of the g-module V(λ).
pub fn multiplet(pair: &Pair, lambda: &Weight) -> Result<Multiplet> {
    let rs = pair.ambient();
    rs.check_dominant_integral(lambda)?;
    let reps = minimal_coset_reps(pair);
    from_words(pair, lambda, &reps)
}

/// Builds multiplet entries from arbitrary Weyl words using the sign rule
/// for non-minimal representatives: w(λ+ρ) is moved into the a-dominant
/// chamber by u ∈ W_a and the sign picks up (−1)^{ℓ_a(u)}.
pub fn from_words(pair: &Pair, lambda: &Weight, words: &[WeylWord]) -> Result<Multiplet> {
    let rs = pair.ambient();
    rs.check_dominant_integral(lambda)?;
    let data = pair.sub_data();
    let r = pair.choose_r_vee().ok();
    let dims = DimData::new(pair, r.as_ref());
    let lr = lambda + rs.rho();
    let mut entries = Vec::with_capacity(words.len());
    for w in words {
        let mut nu = w.apply(rs, &lr);
        let mut flips = 0usize;
        while let Some(b) = data.simple().iter().find(|b| rs.form(&nu, b) < ExactScalar::zero()) {
            nu = rs.reflect(&nu, b);
            flips += 1;
        }
        let weight = &nu - pair.rho_a();
        let sign = if (w.length() + flips).is_multiple_of(2) { 1 } else { -1 };
        let (dim, qdim) = dims.eval(&weight);
        entries.push(MultipletEntry {
            rep: w.clone(),
            weight,
            sign,
            dim,
            qdim,
        });
    }
    Ok(Multiplet {
        pair: pair.clone(),
        lambda: lambda.clone(),
        entries,
        r,
    })
}

// Per-pair constants for dim and dim_q: for each α ∈ Δ⁺_a the vector u_α
// with ⟨μ, α∨⟩ = Σ μ_i u_α,i, the values ⟨ρ_a, α∨⟩, and r − ρ∨_a.
struct DimData {
    coroots: Vec<Vec<ExactScalar>>,
    den: Vec<ExactScalar>,
    shift: Option<Weight>,
    pair: Pair,
}

impl DimData {
    fn new(pair: &Pair, r: Option<&Weight>) -> Self {
        let rs = pair.ambient();
        let n = rs.rank();
        let coroots: Vec<Vec<ExactScalar>> = pair
            .sub_positive()
            .iter()
            .map(|a| {
                let c = q(2) / rs.norm2(a);
                (0..n).map(|i| &c * rs.form(&Weight::fundamental(n, i), a)).collect()
            })
            .collect();
        let den = coroots.iter().map(|u| pair_with(pair.rho_a(), u)).collect();
        DimData {
            coroots,
            den,
            shift: r.map(|r| r - &pair.rho_vee_a()),
            pair: pair.clone(),
        }
    }

    fn eval(&self, mu: &Weight) -> (BigInt, Option<QLaurent>) {
        let mr = mu + self.pair.rho_a();
        let num: Vec<ExactScalar> = self.coroots.iter().map(|u| pair_with(&mr, u)).collect();
        let mut dim = ExactScalar::one();
        for (a, b) in num.iter().zip(&self.den) {
            dim *= a / b;
        }
        debug_assert!(dim.is_integer());
        let qdim = self.shift.as_ref().map(|sh| {
            let e = self.pair.ambient().form(mu, sh);
            laurent_quotient(&num, &self.den).shift(&e)
        });
        (dim.to_integer(), qdim)
    }
}

fn pair_with(w: &Weight, u: &[ExactScalar]) -> ExactScalar {
    w.coords()
        .iter()
        .zip(u)
        .filter(|(a, _)| !a.is_zero())
        .fold(ExactScalar::zero(), |acc, (a, b)| acc + a * b)
}

fn laurent_quotient(num: &[ExactScalar], den: &[ExactScalar]) -> QLaurent {
    if let Some(quot) = integer_quotient(num, den) {
        return quot;
    }
    let mut n = QLaurent::one();
    let mut d = QLaurent::one();
    for (a, b) in num.iter().zip(den) {
        n = &n * &QLaurent::half_difference(a);
        d = &d * &QLaurent::half_difference(b);
    }
    n.div_exact(&d)
        .expect("Weyl denominator divides the numerator for dominant integral μ")
}

/// dim_q U(μ) = q^{μ(r − ρ∨_a)} · Π_{α∈Δ⁺_a} [⟨μ+ρ_a, α∨⟩]_q / [⟨ρ_a, α∨⟩]_q.
pub fn qdim(pair: &Pair, mu: &Weight, r: &Weight) -> QLaurent {
    DimData::new(pair, Some(r)).eval(mu).1.expect("shift is set")
}

fn positive_int(x: &ExactScalar) -> Option<usize> {
    if x.is_integer() && x > &ExactScalar::zero() {
        x.to_integer().try_into().ok()
    } else {
        None
    }
}

// Π (q^{n/2} − q^{−n/2}) / Π (q^{m/2} − q^{−m/2}) for positive integers n, m,
// as q^{(Σm − Σn)/2} Π (qⁿ − 1) / Π (qᵐ − 1) with dense integer coefficients.
fn integer_quotient(num: &[ExactScalar], den: &[ExactScalar]) -> Option<QLaurent> {
    let mut ns = num.iter().map(positive_int).collect::<Option<Vec<usize>>>()?;
    let ds = den.iter().map(positive_int).collect::<Option<Vec<usize>>>()?;
    let offset = ExactScalar::new(
        BigInt::from(ds.iter().sum::<usize>()) - BigInt::from(ns.iter().sum::<usize>()),
        BigInt::from(2),
    );
    let mut rest = Vec::new();
    for d in ds {
        match ns.iter().position(|&n| n == d) {
            Some(i) => {
                ns.swap_remove(i);
            }
            None => rest.push(d),
        }
    }
    let mut poly = vec![BigInt::from(1)];
    for n in ns {
        // times (qⁿ − 1)
        let mut next = vec![BigInt::zero(); poly.len() + n];
        for (k, c) in poly.iter().enumerate() {
            next[k + n] += c;
            next[k] -= c;
        }
        poly = next;
    }
    for m in rest {
        // P = Q·(qᵐ − 1) gives Q_k = Q_{k−m} − P_k
        if poly.len() <= m {
            return None;
        }
        let qlen = poly.len() - m;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in 0..qlen {
            let prev = if k >= m { quot[k - m].clone() } else { BigInt::zero() };
            quot[k] = prev - &poly[k];
        }
        for k in qlen..poly.len() {
            if quot[k - m] != poly[k] {
                return None;
            }
        }
        poly = quot;
    }
    let mut out = QLaurent::zero();
    for (k, c) in poly.into_iter().enumerate() {
        out.add_term(
            ExactScalar::from_integer(BigInt::from(k)) + &offset,
            ExactScalar::from_integer(c),
        );
    }
    Some(out)
}

/// Σ sign · dim over the multiplet; zero for every proper equal-rank pair.
pub fn signed_dim_sum(m: &Multiplet) -> Result<BigInt> {
    if m.pair.is_improper() {
        return Err(Error::ImproperPair);
    }
    Ok(m.entries
        .iter()
        .fold(BigInt::zero(), |acc, e| acc + BigInt::from(e.sign) * &e.dim))
}

/// Σ sign · dim_q at r; the zero element for every proper equal-rank pair
/// when r comes from [`Pair::choose_r_vee`].
pub fn signed_qdim_sum(m: &Multiplet, r: &Weight) -> Result<QLaurent> {
    let pair = &m.pair;
    if pair.is_improper() {
        return Err(Error::ImproperPair);
    }
    let rs = pair.ambient();
    for s in pair.sub_simple() {
        if rs.form(s, r) != q(1) {
            return Err(Error::InvalidRVee(format!("α(r) ≠ 1 for simple a-root {s}")));
        }
    }
    let dims = DimData::new(pair, Some(r));
    let mut acc = QLaurent::zero();
    for e in &m.entries {
        let d = match (&e.qdim, &m.r) {
            (Some(d), Some(mr)) if mr == r => d.clone(),
            _ => dims.eval(&e.weight).1.expect("shift is set"),
        };
        acc = &acc + &d.scale(&q(e.sign));
    }
    Ok(acc)
}

/// Outcome of the homogeneous Weyl character formula check.
#[derive(Clone, Debug)]
pub struct GkrsReport {
    pub holds: bool,
    /// ch V(λ)·(ch F⁺ − ch F⁻) − Σ sign · ch U(μ_w); empty when the identity holds.
    pub diff: Character,
    pub multiplet_size: usize,
}

/// ch V(λ)·(ch F⁺ − ch F⁻) = Σ_{w∈W′} (−1)^{ℓ(w)} ch U(w(λ+ρ) − ρ_a), compared
/// weight by weight on the common Cartan.
pub fn verify_gkrs(pair: &Pair, lambda: &Weight) -> Result<GkrsReport> {
    let rs = pair.ambient();
    let v = rs.dominant_character(lambda)?;
    let (plus, minus) = pair.spin_characters_fin()?;
    let mut spin = plus;
    spin.add(&minus, -1);
    let mut diff = v.mul(&spin);
    let m = multiplet(pair, lambda)?;
    let data = pair.sub_data();
    for e in m.entries() {
        let u = freudenthal(rs, &data, &e.weight)?;
        diff.add(&u, -e.sign);
    }
    Ok(GkrsReport {
        holds: diff.is_empty(),
        diff,
        multiplet_size: m.len(),
    })
}

/// Specializes a character at e^r: e^ν ↦ q^{(ν, r)}.
pub fn specialize(pair: &Pair, ch: &Character, r: &Weight) -> QLaurent {
    let rs = pair.ambient();
    let mut out = QLaurent::zero();
    for (w, m) in ch.iter() {
        out.add_term(rs.form(w, r), q(*m));
    }
    out
}

/// Dominant weights of height at most `h` (sum of fundamental coordinates).
pub fn dominant_weights_up_to_height(rank: usize, h: u32) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if i == cur.len() {
            out.push(Weight::from_ints(cur));
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, h as i64, &mut cur, &mut out);
    out.sort_by_key(|w| (w.height(), w.clone()));
    out
}
