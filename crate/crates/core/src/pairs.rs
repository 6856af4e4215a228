//! Equal-rank reductive pairs (g, a) given by closed root subsystems.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{Character, RootData, RootSystem, SimpleType};
use crate::scalar::{frac, q, ExactScalar};
use crate::weight::Weight;

/// Kind of a simple ideal of a, or its centre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Simple(SimpleType, usize),
    Torus(usize),
}

/// One simple ideal a_S of a, or the centre of a.
#[derive(Clone, Debug)]
pub struct Factor {
    kind: FactorKind,
    roots: Vec<Weight>,
    positive: Vec<Weight>,
    simple: Vec<Weight>,
    casimir: ExactScalar,
    short: bool,
}

impl Factor {
    pub fn kind(&self) -> FactorKind {
        self.kind
    }

    pub fn is_torus(&self) -> bool {
        matches!(self.kind, FactorKind::Torus(_))
    }

    pub fn rank(&self) -> usize {
        match self.kind {
            FactorKind::Simple(_, r) | FactorKind::Torus(r) => r,
        }
    }

    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple
    }

    /// g_S = (ρ_S, θ_S) + (θ_S, θ_S)/2 in the ambient form; 0 on the centre.
    pub fn casimir(&self) -> &ExactScalar {
        &self.casimir
    }

    pub fn dim(&self) -> usize {
        self.roots.len() + self.rank()
    }

    /// True when the factor consists of short roots of the ambient system.
    pub fn is_short(&self) -> bool {
        self.short
    }

    pub fn label(&self) -> String {
        match self.kind {
            FactorKind::Simple(t, r) => format!("{t}{r}{}", if self.short { "~" } else { "" }),
            FactorKind::Torus(r) => format!("T{r}"),
        }
    }
}

/// An equal-rank pair (g, a): a closed symmetric subsystem Δ_a of the roots
/// of g together with the whole Cartan subalgebra.
#[derive(Clone, Debug)]
pub struct Pair {
    ambient: RootSystem,
    sub_roots: Vec<Weight>,
    sub_positive: Vec<Weight>,
    sub_simple: Vec<Weight>,
    factors: Vec<Factor>,
    p_roots: Vec<Weight>,
    p_positive: Vec<Weight>,
    rho_a: Weight,
    rho_p: Weight,
}

impl Pair {
    /// Pair with Δ_a equal to `roots`, which must be a closed symmetric
    /// subset of the roots of `rs`.
    pub fn from_roots(rs: &RootSystem, roots: &[Weight]) -> Result<Pair> {
        let set: BTreeSet<Weight> = roots.iter().cloned().collect();
        for r in &set {
            if r.rank() != rs.rank() {
                return Err(Error::DimensionMismatch {
                    expected: rs.rank(),
                    got: r.rank(),
                });
            }
            if !rs.is_root(r) {
                return Err(Error::NotClosed(format!("{r} is not a root")));
            }
            if !set.contains(&-r) {
                return Err(Error::NotClosed(format!("{r} present but not its negative")));
            }
        }
        for a in &set {
            for b in &set {
                let s = a + b;
                if rs.is_root(&s) && !set.contains(&s) {
                    return Err(Error::NotClosed(format!("{a} + {b} = {s} is missing")));
                }
            }
        }
        Ok(Self::assemble(rs, set.into_iter().collect()))
    }

    /// The torus pair: Δ_a = ∅.
    pub fn torus(rs: &RootSystem) -> Pair {
        Self::assemble(rs, Vec::new())
    }

    /// The improper pair a = g.
    pub fn improper(rs: &RootSystem) -> Pair {
        Self::assemble(rs, rs.roots().to_vec())
    }

    /// Borel–de Siebenthal construction.
    ///
    /// The extended diagram at each stage lists the lowest roots −θ_C of the
    /// current components first, then the current simple roots in order; the
    /// initial diagram is therefore `[−θ, α_1, …, α_n]`. Removing a simple
    /// root of component C replaces it by −θ_C (placed first in the new simple
    /// system); removing a lowest root changes nothing.
    pub fn borel_de_siebenthal(rs: &RootSystem, steps: &[usize]) -> Result<Pair> {
        let mut simple: Vec<Weight> = rs.simple_roots().to_vec();
        for &step in steps {
            simple = bds_step(rs, &simple, step)?;
        }
        let roots = roots_of_simple(rs, &simple);
        Ok(Self::assemble(rs, roots))
    }

    /// Subsystem of Δ_a spanned by the canonical simple roots with the given
    /// indices (a Levi-type subalgebra of a, with the rest of the Cartan as centre).
    pub fn restrict_to_simple(&self, keep: &[usize]) -> Result<Pair> {
        let mut simple = Vec::new();
        for &i in keep {
            let s = self.sub_simple.get(i).ok_or(Error::StepOutOfRange {
                step: i,
                nodes: self.sub_simple.len(),
            })?;
            simple.push(s.clone());
        }
        Ok(Self::assemble(&self.ambient, roots_of_simple(&self.ambient, &simple)))
    }

    fn assemble(rs: &RootSystem, mut sub_roots: Vec<Weight>) -> Pair {
        sub_roots.sort();
        sub_roots.dedup();
        let sub_set: HashSet<&Weight> = sub_roots.iter().collect();
        let sub_positive: Vec<Weight> = sub_roots.iter().filter(|r| rs.is_positive(r)).cloned().collect();
        let pos_set: HashSet<&Weight> = sub_positive.iter().collect();
        let sub_simple: Vec<Weight> = sub_positive
            .iter()
            .filter(|r| !sub_positive.iter().any(|a| pos_set.contains(&(*r - a))))
            .cloned()
            .collect();
        let p_roots: Vec<Weight> = rs.roots().iter().filter(|r| !sub_set.contains(r)).cloned().collect();
        let p_positive: Vec<Weight> = p_roots.iter().filter(|r| rs.is_positive(r)).cloned().collect();
        let half = frac(1, 2);
        let sum = |v: &[Weight]| v.iter().fold(Weight::zero(rs.rank()), |acc, w| &acc + w);
        let rho_a = sum(&sub_positive).scale(&half);
        let rho_p = sum(&p_positive).scale(&half);
        let factors = build_factors(rs, &sub_simple, &sub_positive);
        Pair {
            ambient: rs.clone(),
            sub_roots,
            sub_positive,
            sub_simple,
            factors,
            p_roots,
            p_positive,
            rho_a,
            rho_p,
        }
    }

    pub fn ambient(&self) -> &RootSystem {
        &self.ambient
    }

    /// Δ_a, sorted.
    pub fn sub_roots(&self) -> &[Weight] {
        &self.sub_roots
    }

    /// Δ⁺_a = Δ_a ∩ Δ⁺.
    pub fn sub_positive(&self) -> &[Weight] {
        &self.sub_positive
    }

    /// Canonical simple system: positive a-roots that are not sums of two positive a-roots.
    pub fn sub_simple(&self) -> &[Weight] {
        &self.sub_simple
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn p_roots(&self) -> &[Weight] {
        &self.p_roots
    }

    pub fn p_positive(&self) -> &[Weight] {
        &self.p_positive
    }

    pub fn rho_a(&self) -> &Weight {
        &self.rho_a
    }

    pub fn rho_p(&self) -> &Weight {
        &self.rho_p
    }

    pub fn sub_data(&self) -> RootData {
        RootData::new(self.ambient.rank(), self.sub_simple.clone(), self.sub_positive.clone())
    }

    pub fn dim_a(&self) -> usize {
        self.sub_roots.len() + self.ambient.rank()
    }

    pub fn dim_p(&self) -> usize {
        self.p_roots.len()
    }

    /// a = g
    pub fn is_improper(&self) -> bool {
        self.p_roots.is_empty()
    }

    /// Rank of the semisimple part of a.
    pub fn semisimple_rank(&self) -> usize {
        self.sub_simple.len()
    }

    /// Dimension of the centre of a.
    pub fn center_dim(&self) -> usize {
        self.ambient.rank() - self.sub_simple.len()
    }

    pub fn is_semisimple(&self) -> bool {
        self.center_dim() == 0
    }

    /// Root-level symmetry test: (Δ_p + Δ_p) ∩ Δ ⊂ Δ_a.
    pub fn is_symmetric(&self) -> bool {
        let sub: HashSet<&Weight> = self.sub_roots.iter().collect();
        for a in &self.p_roots {
            for b in &self.p_roots {
                let s = a + b;
                if self.ambient.is_root(&s) && !sub.contains(&s) {
                    return false;
                }
            }
        }
        true
    }

    /// Closure, symmetry and the root-level [a, p] ⊂ p condition.
    pub fn check_invariants(&self) -> Result<()> {
        let rs = &self.ambient;
        let sub: HashSet<&Weight> = self.sub_roots.iter().collect();
        let p: HashSet<&Weight> = self.p_roots.iter().collect();
        if self.sub_roots.len() + self.p_roots.len() != rs.roots().len() {
            return Err(Error::NotClosed("Δ is not Δ_a ⊔ Δ_p".into()));
        }
        for a in &self.sub_roots {
            if !sub.contains(&-a) {
                return Err(Error::NotClosed(format!("{a} without its negative")));
            }
            for b in &self.sub_roots {
                let s = a + b;
                if rs.is_root(&s) && !sub.contains(&s) {
                    return Err(Error::NotClosed(format!("{a} + {b}")));
                }
            }
            for b in &self.p_roots {
                let s = a + b;
                if rs.is_root(&s) && !p.contains(&s) {
                    return Err(Error::NotClosed(format!("[a, p] ⊄ p at {a} + {b}")));
                }
            }
        }
        Ok(())
    }

    /// ρ∨_a = ½ Σ_{α∈Δ⁺_a} α∨, as a weight through the form.
    pub fn rho_vee_a(&self) -> Weight {
        let rs = &self.ambient;
        let mut out = Weight::zero(rs.rank());
        for a in &self.sub_positive {
            out = out.add_scaled(&(q(1) / rs.norm2(a)), a);
        }
        out
    }

    /// Element r with α(r) = 1 on every simple root of a and β(r) ∈ ℤ for
    /// some β ∈ Δ_p, represented as a weight through the form (β(r) = (β, r)).
    ///
    /// For semisimple a this is ρ∨_a. With a centre, r = ρ∨_a + t·h where h
    /// is the central part of some β ∈ Δ_p and t the value of least absolute
    /// size that makes some β(r) vanish; torus a gives r = 0.
    pub fn choose_r_vee(&self) -> Result<Weight> {
        let rs = &self.ambient;
        if self.is_improper() {
            return Ok(self.rho_vee_a());
        }
        if self.sub_roots.is_empty() {
            return Ok(Weight::zero(rs.rank()));
        }
        let rho_v = self.rho_vee_a();
        if self.is_semisimple() {
            if self.p_roots.iter().any(|b| rs.form(b, &rho_v).is_integer()) {
                return Ok(rho_v);
            }
            return Err(Error::SearchFailure("ρ∨_a is not integral on any root of p".into()));
        }
        if self.p_roots.iter().any(|b| rs.form(b, &rho_v).is_zero()) {
            return Ok(rho_v);
        }
        let bound = self.denominator_bound();
        let mut best: Option<(ExactScalar, Weight)> = None;
        for beta in &self.p_positive {
            let h = self.central_part(beta);
            let hh = rs.norm2(&h);
            if hh.is_zero() {
                continue;
            }
            let t = -rs.form(beta, &rho_v) / &hh;
            if t.denom() > &num_bigint::BigInt::from(bound) {
                continue;
            }
            let better = match &best {
                None => true,
                Some((bt, _)) => t.abs() < bt.abs() || (t.abs() == bt.abs() && t > *bt),
            };
            if better {
                best = Some((t.clone(), rho_v.add_scaled(&t, &h)));
            }
        }
        best.map(|(_, r)| r).ok_or_else(|| {
            Error::SearchFailure(format!(
                "no r = ρ∨_a + t·h with denominator ≤ {bound} vanishes on a root of p"
            ))
        })
    }

    fn denominator_bound(&self) -> i64 {
        self.ambient.marks().iter().fold(1i64, |acc, &m| acc.lcm(&m)) * 24
    }

    /// Component of `w` orthogonal to the span of Δ_a (the centre of a).
    pub fn central_part(&self, w: &Weight) -> Weight {
        let rs = &self.ambient;
        let basis = &self.sub_simple;
        if basis.is_empty() {
            return w.clone();
        }
        let n = basis.len();
        let gram: Vec<Vec<ExactScalar>> = basis
            .iter()
            .map(|a| basis.iter().map(|b| rs.form(a, b)).collect())
            .collect();
        let rhs: Vec<ExactScalar> = basis.iter().map(|a| rs.form(a, w)).collect();
        let c = crate::scalar::solve(&gram, &rhs).expect("simple roots are independent");
        let mut out = w.clone();
        for i in 0..n {
            out = out.add_scaled(&-&c[i], &basis[i]);
        }
        out
    }

    /// Characters of the even and odd halves of the spin module of p,
    /// restricted to the Cartan: each state has weight ½ Σ_{α∈Δ⁺_p} ±α and
    /// the vacuum ρ_p lies in F⁺.
    pub fn spin_characters_fin(&self) -> Result<(Character, Character)> {
        if self.dim_p() % 2 == 1 {
            return Err(Error::OddDimP(self.dim_p()));
        }
        // weight → (even count, odd count)
        let mut states: HashMap<Weight, (i64, i64)> = HashMap::new();
        states.insert(self.rho_p.clone(), (1, 0));
        for a in &self.p_positive {
            let mut next: HashMap<Weight, (i64, i64)> = HashMap::new();
            for (w, (e, o)) in states {
                let keep = next.entry(w.clone()).or_insert((0, 0));
                keep.0 += e;
                keep.1 += o;
                let flip = next.entry(&w - a).or_insert((0, 0));
                flip.0 += o;
                flip.1 += e;
            }
            states = next;
        }
        let mut plus = Character::new();
        let mut minus = Character::new();
        for (w, (e, o)) in states {
            plus.add_term(w.clone(), e);
            minus.add_term(w, o);
        }
        Ok((plus, minus))
    }

    /// Human-readable label such as `G2 > A1+A1~`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(Factor::label).collect();
        let sub = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        };
        format!("{} > {}", self.ambient.label(), sub)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All equal-rank pairs reachable from `rs`: iterated Borel–de Siebenthal
/// steps, then every subset of the canonical simple system of each result.
/// Deduplicated by root set; includes the torus and the improper pair.
pub fn enumerate_pairs(rs: &RootSystem) -> Vec<Pair> {
    let mut seen_ss: HashSet<Vec<Weight>> = HashSet::new();
    let mut semisimple: Vec<Pair> = Vec::new();
    let mut queue: VecDeque<Vec<Weight>> = VecDeque::from([rs.simple_roots().to_vec()]);
    while let Some(simple) = queue.pop_front() {
        let roots = {
            let mut r = roots_of_simple(rs, &simple);
            r.sort();
            r
        };
        if !seen_ss.insert(roots.clone()) {
            continue;
        }
        semisimple.push(Pair::assemble(rs, roots));
        let nodes = extended_nodes(rs, &simple).len();
        for step in 0..nodes {
            queue.push_back(bds_step(rs, &simple, step).expect("step in range"));
        }
    }
    let mut seen: HashSet<Vec<Weight>> = HashSet::new();
    let mut out = Vec::new();
    for p in semisimple {
        let n = p.sub_simple.len();
        for mask in (0u32..(1 << n)).rev() {
            let keep: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let sub = p.restrict_to_simple(&keep).expect("indices in range");
            if seen.insert(sub.sub_roots.clone()) {
                out.push(sub);
            }
        }
    }
    out
}

// [−θ_C for each component] ++ simple
fn extended_nodes(rs: &RootSystem, simple: &[Weight]) -> Vec<Weight> {
    let mut out: Vec<Weight> = components(rs, simple).iter().map(|c| -highest_root_of(rs, c)).collect();
    out.extend(simple.iter().cloned());
    out
}

/// One Borel–de Siebenthal step on the simple system `simple`. Removing a
/// lowest root leaves the system unchanged; removing a simple root of
/// component C replaces it by −θ_C, placed first.
fn bds_step(rs: &RootSystem, simple: &[Weight], step: usize) -> Result<Vec<Weight>> {
    let comps = components(rs, simple);
    let nodes = comps.len() + simple.len();
    if step >= nodes {
        return Err(Error::StepOutOfRange { step, nodes });
    }
    if step < comps.len() {
        return Ok(simple.to_vec());
    }
    let removed = &simple[step - comps.len()];
    let comp = comps
        .iter()
        .find(|c| c.contains(removed))
        .expect("every simple root lies in a component");
    let mut out = vec![-highest_root_of(rs, comp)];
    out.extend(simple.iter().filter(|w| *w != removed).cloned());
    Ok(out)
}

fn components(rs: &RootSystem, simple: &[Weight]) -> Vec<Vec<Weight>> {
    let n = simple.len();
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<Weight>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![];
        let mut stack = vec![start];
        comp[start] = id;
        while let Some(i) = stack.pop() {
            members.push(i);
            for j in 0..n {
                if comp[j] == usize::MAX && !rs.form(&simple[i], &simple[j]).is_zero() {
                    comp[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort();
        out.push(members.into_iter().map(|i| simple[i].clone()).collect());
    }
    out
}

/// All roots of the subsystem with simple system `simple` (reflection closure).
fn roots_of_simple(rs: &RootSystem, simple: &[Weight]) -> Vec<Weight> {
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut queue: VecDeque<Weight> = VecDeque::new();
    for s in simple {
        if seen.insert(s.clone()) {
            queue.push_back(s.clone());
        }
    }
    while let Some(r) = queue.pop_front() {
        for s in simple {
            let next = rs.reflect(&r, s);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort();
    out
}

/// Positive roots of the irreducible system with simple roots `simple`.
fn positive_of_simple(rs: &RootSystem, simple: &[Weight]) -> Vec<Weight> {
    let all: HashSet<Weight> = roots_of_simple(rs, simple).into_iter().collect();
    let mut seen: HashSet<Weight> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Weight> = simple.iter().cloned().collect();
    while let Some(r) = queue.pop_front() {
        for s in simple {
            let next = &r + s;
            if all.contains(&next) && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort();
    out
}

fn highest_root_of(rs: &RootSystem, simple: &[Weight]) -> Weight {
    let pos = positive_of_simple(rs, simple);
    let rho = pos
        .iter()
        .fold(Weight::zero(rs.rank()), |acc, w| &acc + w)
        .scale(&frac(1, 2));
    pos.into_iter()
        .max_by(|a, b| rs.form(a, &rho).cmp(&rs.form(b, &rho)))
        .expect("non-empty component")
}

fn build_factors(rs: &RootSystem, simple: &[Weight], positive: &[Weight]) -> Vec<Factor> {
    let long = rs.norm2(rs.highest_root());
    let mut out = Vec::new();
    for comp in components(rs, simple) {
        let pos: Vec<Weight> = positive
            .iter()
            .filter(|r| comp.iter().any(|s| !rs.form(r, s).is_zero()))
            .cloned()
            .collect();
        let mut roots: Vec<Weight> = pos.iter().cloned().chain(pos.iter().map(|r| -r)).collect();
        roots.sort();
        let rank = comp.len();
        let norms: Vec<ExactScalar> = roots.iter().map(|r| rs.norm2(r)).collect();
        let max = norms.iter().max().cloned().unwrap_or_else(|| q(0));
        let nlong = norms.iter().filter(|n| **n == max).count();
        let ty = identify(rank, roots.len(), nlong);
        let rho = pos
            .iter()
            .fold(Weight::zero(rs.rank()), |acc, w| &acc + w)
            .scale(&frac(1, 2));
        let theta = pos
            .iter()
            .max_by(|a, b| rs.form(a, &rho).cmp(&rs.form(b, &rho)))
            .expect("non-empty factor")
            .clone();
        let casimir = rs.form(&rho, &theta) + rs.norm2(&theta) / q(2);
        out.push(Factor {
            kind: FactorKind::Simple(ty, rank),
            roots,
            positive: pos,
            simple: comp,
            casimir,
            short: max < long,
        });
    }
    let center = rs.rank() - simple.len();
    if center > 0 {
        out.push(Factor {
            kind: FactorKind::Torus(center),
            roots: Vec::new(),
            positive: Vec::new(),
            simple: Vec::new(),
            casimir: q(0),
            short: false,
        });
    }
    out
}

fn identify(rank: usize, nroots: usize, nlong: usize) -> SimpleType {
    let r = rank;
    if nlong == nroots {
        match nroots {
            n if n == r * (r + 1) => SimpleType::A,
            n if r >= 4 && n == 2 * r * (r - 1) => SimpleType::D,
            72 if r == 6 => SimpleType::E,
            126 if r == 7 => SimpleType::E,
            240 if r == 8 => SimpleType::E,
            _ => unreachable!("irreducible simply-laced system of rank {r} with {nroots} roots"),
        }
    } else if r == 2 && nroots == 12 {
        SimpleType::G
    } else if r == 4 && nroots == 48 {
        SimpleType::F
    } else if nlong == 2 * r * (r - 1) {
        SimpleType::B
    } else {
        SimpleType::C
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label, Default::default()).unwrap()
    }

    #[test]
    fn g2_subalgebras() {
        let g2 = rs("G2");
        // Bourbaki G2: α1 short with mark 3, α2 long with mark 2
        let a2 = Pair::borel_de_siebenthal(&g2, &[1]).unwrap();
        assert_eq!(a2.label(), "G2 > A2");
        assert_eq!(a2.sub_roots().len(), 6);
        assert!(a2.sub_roots().iter().all(|r| g2.norm2(r) == q(2)));
        let a1a1 = Pair::borel_de_siebenthal(&g2, &[2]).unwrap();
        assert_eq!(a1a1.label(), "G2 > A1+A1~");
        a2.check_invariants().unwrap();
        a1a1.check_invariants().unwrap();
    }

    #[test]
    fn f4_b4() {
        let f4 = rs("F4");
        let b4 = Pair::borel_de_siebenthal(&f4, &[4]).unwrap();
        let a1c3 = Pair::borel_de_siebenthal(&f4, &[1]).unwrap();
        assert_eq!(a1c3.label(), "F4 > C3+A1");
        assert_eq!(b4.sub_roots().len(), 32);
        assert_eq!(b4.label(), "F4 > B4");
        assert_eq!(b4.factors()[0].casimir(), &q(7));
    }

    #[test]
    fn casimir_of_short_factor() {
        let g2 = rs("G2");
        let p = Pair::borel_de_siebenthal(&g2, &[2]).unwrap();
        let mut gs: Vec<ExactScalar> = p.factors().iter().map(|f| f.casimir().clone()).collect();
        gs.sort();
        // long A1 has g = 2; the short A1 has (θ, θ) = 2/3 so g = 2/3
        assert_eq!(gs, vec![frac(2, 3), q(2)]);
    }

    #[test]
    fn torus_pair() {
        let a1 = rs("A1");
        let t = Pair::from_roots(&a1, &[]).unwrap();
        assert_eq!(t.p_roots().len(), 2);
        assert_eq!(t.label(), "A1 > T1");
        assert_eq!(t.choose_r_vee().unwrap(), Weight::zero(1));
        let (plus, minus) = t.spin_characters_fin().unwrap();
        assert_eq!(plus, Character::single(Weight::new(vec![q(1)])));
        assert_eq!(minus, Character::single(Weight::new(vec![q(-1)])));
    }

    #[test]
    fn rejects_bad_root_lists() {
        let a2 = rs("A2");
        let a = a2.simple_root(0).clone();
        assert!(matches!(
            Pair::from_roots(&a2, std::slice::from_ref(&a)),
            Err(Error::NotClosed(_))
        ));
        let b = a2.simple_root(1).clone();
        let err = Pair::from_roots(&a2, &[a.clone(), -&a, b.clone(), -&b]);
        assert!(matches!(err, Err(Error::NotClosed(_))));
        assert!(matches!(
            Pair::borel_de_siebenthal(&a2, &[7]),
            Err(Error::StepOutOfRange { .. })
        ));
    }

    #[test]
    fn improper_spin_is_trivial() {
        let g2 = rs("G2");
        let p = Pair::improper(&g2);
        let (plus, minus) = p.spin_characters_fin().unwrap();
        assert_eq!(plus, Character::single(Weight::zero(2)));
        assert!(minus.is_empty());
    }

    #[test]
    fn levi_r_vee_vanishes_on_some_p_root() {
        let b3 = rs("B3");
        let full = Pair::improper(&b3);
        for keep in [vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]] {
            let p = full.restrict_to_simple(&keep).unwrap();
            let r = p.choose_r_vee().unwrap();
            for s in p.sub_simple() {
                assert_eq!(b3.form(s, &r), q(1));
            }
            assert!(p.p_roots().iter().any(|b| b3.form(b, &r).is_zero()));
        }
    }

    #[test]
    fn enumeration_is_closed_and_deduplicated() {
        for label in ["A2", "B2", "G2", "A3"] {
            let g = rs(label);
            let pairs = enumerate_pairs(&g);
            let keys: HashSet<&[Weight]> = pairs.iter().map(|p| p.sub_roots()).collect();
            assert_eq!(keys.len(), pairs.len());
            for p in &pairs {
                p.check_invariants().unwrap();
            }
            assert!(pairs.iter().any(|p| p.is_improper()));
            assert!(pairs.iter().any(|p| p.sub_roots().is_empty()));
        }
    }
}
