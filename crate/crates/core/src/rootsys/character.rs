use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_traits::{Signed, Zero};

use super::RootSystem;
use crate::error::{Error, Result};
use crate::scalar::{q, to_i64, ExactScalar};
use crate::weight::Weight;

/// Simple and positive roots of a (possibly reductive) subsystem, expressed
/// in the coordinates of an ambient root system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootData {
    rank: usize,
    simple: Vec<Weight>,
    positive: Vec<Weight>,
}

impl RootData {
    pub fn new(rank: usize, simple: Vec<Weight>, positive: Vec<Weight>) -> Self {
        RootData { rank, simple, positive }
    }

    /// Rank of the ambient coordinate space.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simple(&self) -> &[Weight] {
        &self.simple
    }

    pub fn positive(&self) -> &[Weight] {
        &self.positive
    }

    /// Half the sum of the positive roots.
    pub fn rho(&self) -> Weight {
        let mut out = Weight::zero(self.rank);
        for a in &self.positive {
            out += a;
        }
        out.scale(&crate::scalar::frac(1, 2))
    }

    pub fn is_dominant(&self, rs: &RootSystem, w: &Weight) -> bool {
        self.simple.iter().all(|b| !rs.coroot_pairing(w, b).is_negative())
    }

    pub fn is_dominant_integral(&self, rs: &RootSystem, w: &Weight) -> bool {
        self.simple.iter().all(|b| {
            let c = rs.coroot_pairing(w, b);
            c.is_integer() && !c.is_negative()
        })
    }

    /// Reflects `w` into the dominant chamber of this subsystem.
    pub fn to_dominant(&self, rs: &RootSystem, w: &Weight) -> Weight {
        let mut cur = w.clone();
        loop {
            let Some(b) = self.simple.iter().find(|b| rs.coroot_pairing(&cur, b).is_negative()) else {
                return cur;
            };
            cur = rs.reflect(&cur, b);
        }
    }
}

/// A finite formal sum of weights with integer multiplicities.
///
/// Zero multiplicities are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Character {
    terms: BTreeMap<Weight, i64>,
}

impl Character {
    pub fn new() -> Self {
        Character::default()
    }

    pub fn single(w: Weight) -> Self {
        let mut c = Character::new();
        c.add_term(w, 1);
        c
    }

    pub fn add_term(&mut self, w: Weight, m: i64) {
        if m == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(m);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += m;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn get(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all multiplicities (the dimension for an honest module).
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add(&mut self, other: &Character, factor: i64) {
        for (w, m) in &other.terms {
            self.add_term(w.clone(), m * factor);
        }
    }

    pub fn mul(&self, other: &Character) -> Character {
        let mut acc: HashMap<Weight, i64> = HashMap::new();
        for (a, ma) in &self.terms {
            for (b, mb) in &other.terms {
                *acc.entry(a + b).or_insert(0) += ma * mb;
            }
        }
        Character {
            terms: acc.into_iter().filter(|(_, m)| *m != 0).collect(),
        }
    }

    pub fn shift(&self, by: &Weight) -> Character {
        Character {
            terms: self.terms.iter().map(|(w, m)| (w + by, *m)).collect(),
        }
    }

    pub fn into_map(self) -> BTreeMap<Weight, i64> {
        self.terms
    }
}

impl FromIterator<(Weight, i64)> for Character {
    fn from_iter<T: IntoIterator<Item = (Weight, i64)>>(iter: T) -> Self {
        let mut c = Character::new();
        for (w, m) in iter {
            c.add_term(w, m);
        }
        c
    }
}

/// Orbit of `w` under the reflection group generated by `data.simple()`.
pub fn orbit(rs: &RootSystem, data: &RootData, w: &Weight) -> Vec<Weight> {
    let mut seen: HashSet<Weight> = HashSet::from([w.clone()]);
    let mut out = vec![w.clone()];
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(cur) = queue.pop_front() {
        for b in data.simple() {
            if rs.coroot_pairing(&cur, b).is_zero() {
                continue;
            }
            let next = rs.reflect(&cur, b);
            if seen.insert(next.clone()) {
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    out.sort();
    out
}

/// Full weight multiset of the irreducible module of highest weight λ for
/// the subsystem `data`, by Freudenthal's recursion on dominant weights.
pub fn freudenthal(rs: &RootSystem, data: &RootData, lambda: &Weight) -> Result<Character> {
    if lambda.rank() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: lambda.rank(),
        });
    }
    if !data.is_dominant(rs, lambda) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if !data.is_dominant_integral(rs, lambda) {
        return Err(Error::NotIntegral(lambda.to_string()));
    }
    let rho = data.rho();

    // dominant weights below λ are connected to λ by subtracting positive roots
    let mut dominant: Vec<Weight> = vec![lambda.clone()];
    let mut seen: HashSet<Weight> = HashSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(mu) = queue.pop_front() {
        for a in data.positive() {
            let nu = &mu - a;
            if data.is_dominant(rs, &nu) && seen.insert(nu.clone()) {
                dominant.push(nu.clone());
                queue.push_back(nu);
            }
        }
    }
    let mut keyed: Vec<(ExactScalar, Weight)> = dominant.into_iter().map(|w| (rs.form(&w, &rho), w)).collect();
    keyed.sort_by(|a, b| b.cmp(a));

    let top = rs.norm2(&(lambda + &rho));
    let mut mult: HashMap<Weight, i64> = HashMap::new();
    for (_, mu) in keyed {
        if &mu == lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mut sum = ExactScalar::zero();
        for a in data.positive() {
            let mut nu = &mu + a;
            loop {
                let d = data.to_dominant(rs, &nu);
                let Some(&m) = mult.get(&d) else { break };
                sum += q(m) * rs.form(&nu, a);
                nu = &nu + a;
            }
        }
        let denom = &top - rs.norm2(&(&mu + &rho));
        let m = q(2) * sum / denom;
        let m = to_i64(&m).expect("Freudenthal multiplicity is an integer");
        if m != 0 {
            mult.insert(mu, m);
        }
    }

    let mut out = Character::new();
    for (mu, m) in mult {
        for w in orbit(rs, data, &mu) {
            out.add_term(w, m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::SimpleType;

    #[test]
    fn a1_symmetric_square() {
        let rs = RootSystem::new(SimpleType::A, 1).unwrap();
        let ch = rs.dominant_character(&Weight::from_ints(&[2])).unwrap();
        let expect: Character = [(2, 1), (0, 1), (-2, 1)]
            .into_iter()
            .map(|(w, m)| (Weight::from_ints(&[w]), m))
            .collect();
        assert_eq!(ch, expect);
    }

    #[test]
    fn trivial_module() {
        for (ty, r) in [(SimpleType::A, 3), (SimpleType::G, 2), (SimpleType::F, 4)] {
            let rs = RootSystem::new(ty, r).unwrap();
            let ch = rs.dominant_character(&Weight::zero(r)).unwrap();
            assert_eq!(ch, Character::single(Weight::zero(r)));
        }
    }

    #[test]
    fn adjoint_zero_weight_is_rank() {
        for (ty, r) in [
            (SimpleType::A, 2),
            (SimpleType::B, 3),
            (SimpleType::G, 2),
            (SimpleType::F, 4),
        ] {
            let rs = RootSystem::new(ty, r).unwrap();
            let ch = rs.dominant_character(rs.highest_root()).unwrap();
            assert_eq!(ch.get(&Weight::zero(r)), r as i64);
            assert_eq!(ch.total() as usize, rs.dim());
        }
    }

    #[test]
    fn add_term_cancels() {
        let mut c = Character::single(Weight::from_ints(&[1]));
        c.add_term(Weight::from_ints(&[1]), -1);
        assert!(c.is_empty());
    }
}
