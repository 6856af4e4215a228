//! Finite root systems, their Weyl groups and invariant forms.

mod cartan;
mod character;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use cartan::SimpleType;
pub use character::{freudenthal, orbit, Character, RootData};

use crate::error::{Error, Result};
use crate::scalar::{det, invert, mat_mul, q, to_i64, ExactScalar};
use crate::weight::Weight;

/// Normalization of the invariant form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// Long roots (in particular θ) have squared length 2; g is the dual Coxeter number.
    #[default]
    ThetaSquaredTwo,
    /// The form dual to the Killing form; g = 1/2.
    Killing,
}

/// A word in the simple reflections, read as the product `s_{l[0]} s_{l[1]} ...`;
/// acting on a weight applies the last letter first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylWord {
    letters: Vec<usize>,
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| format!("s{l}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord::default()
    }

    pub fn from_letters(letters: Vec<usize>) -> Self {
        WeylWord { letters }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Number of letters; equal to ℓ(w) for words produced by the enumerators,
    /// which only emit reduced words.
    pub fn length(&self) -> usize {
        self.letters.len()
    }

    /// `(-1)^length`
    pub fn sign(&self) -> i64 {
        if self.letters.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The word for `w s_j`.
    pub fn times(&self, j: usize) -> WeylWord {
        let mut letters = self.letters.clone();
        letters.push(j);
        WeylWord { letters }
    }

    /// The word for `s_j w`.
    pub fn left_times(&self, j: usize) -> WeylWord {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(j);
        letters.extend_from_slice(&self.letters);
        WeylWord { letters }
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn apply(&self, rs: &RootSystem, w: &Weight) -> Weight {
        let mut out = w.clone();
        for &i in self.letters.iter().rev() {
            out = rs.simple_reflection(i, &out);
        }
        out
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, rs: &RootSystem) -> usize {
        rs.positive_roots()
            .iter()
            .filter(|a| !rs.is_positive(&self.apply(rs, a)))
            .count()
    }

    pub fn is_reduced(&self, rs: &RootSystem) -> bool {
        self.inversion_count(rs) == self.length()
    }
}

/// A finite simple root system with its invariant form.
#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: SimpleType,
    rank: usize,
    normalization: Normalization,
    // (α_i, α_j)
    simple_gram: Vec<Vec<ExactScalar>>,
    // ⟨α_i, α_j∨⟩; row i is α_i in fundamental coordinates
    cartan: Vec<Vec<i64>>,
    // (ω_i, ω_j)
    gram: Vec<Vec<ExactScalar>>,
    // fundamental coordinates → simple-root coordinates
    to_simple: Vec<Vec<ExactScalar>>,
    simple_roots: Vec<Weight>,
    roots: Vec<Weight>,
    root_coeffs: Vec<Vec<i64>>,
    positive: Vec<Weight>,
    theta: Weight,
    marks: Vec<i64>,
    rho: Weight,
    dual_coxeter: ExactScalar,
}

impl RootSystem {
    /// Builds the root system of type `ty` and rank `rank`.
    pub fn build(ty: SimpleType, rank: usize, normalization: Normalization) -> Result<Self> {
        let mut b = cartan::simple_gram(ty, rank)?;
        let n = rank;
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| to_i64(&(q(2) * &b[i][j] / &b[j][j])).expect("integral Cartan entry"))
                    .collect()
            })
            .collect();

        let coeffs = generate_roots(&cartan);
        let to_fund = |c: &[i64]| -> Weight {
            Weight::new((0..n).map(|k| q((0..n).map(|j| c[j] * cartan[j][k]).sum())).collect())
        };
        let mut pairs: Vec<(Weight, Vec<i64>)> = coeffs.into_iter().map(|c| (to_fund(&c), c)).collect();
        pairs.sort();
        let (roots, root_coeffs): (Vec<Weight>, Vec<Vec<i64>>) = pairs.into_iter().unzip();

        let positive: Vec<Weight> = roots
            .iter()
            .zip(&root_coeffs)
            .filter(|(_, c)| c.iter().all(|&x| x >= 0))
            .map(|(r, _)| r.clone())
            .collect();
        let (theta_idx, _) = root_coeffs
            .iter()
            .enumerate()
            .max_by_key(|(_, c)| c.iter().sum::<i64>())
            .expect("non-empty root system");
        let theta = roots[theta_idx].clone();
        let mut marks = vec![1];
        marks.extend(root_coeffs[theta_idx].iter().copied());

        let simple_roots: Vec<Weight> = (0..n)
            .map(|i| Weight::new(cartan[i].iter().map(|&x| q(x)).collect()))
            .collect();
        let m_rat: Vec<Vec<ExactScalar>> = cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let to_simple = invert(&m_rat).expect("Cartan matrix is invertible");

        let mut rs = RootSystem {
            ty,
            rank,
            normalization,
            simple_gram: b.clone(),
            cartan,
            gram: Vec::new(),
            to_simple,
            simple_roots,
            roots,
            root_coeffs,
            positive,
            theta,
            marks,
            rho: Weight::from_ints(&vec![1; n]),
            dual_coxeter: q(0),
        };
        rs.gram = rs.compute_gram(&b);
        let h_dual = rs.intrinsic_g();
        if normalization == Normalization::Killing {
            let s = (q(2) * h_dual).recip();
            for row in b.iter_mut() {
                for v in row.iter_mut() {
                    *v *= &s;
                }
            }
            rs.simple_gram = b.clone();
            rs.gram = rs.compute_gram(&b);
        }
        rs.dual_coxeter = rs.intrinsic_g();
        Ok(rs)
    }

    /// Builds the system with (θ, θ) = 2.
    pub fn new(ty: SimpleType, rank: usize) -> Result<Self> {
        Self::build(ty, rank, Normalization::ThetaSquaredTwo)
    }

    /// Parses labels such as `G2` or `a3`.
    pub fn from_label(label: &str, normalization: Normalization) -> Result<Self> {
        let label = label.trim();
        let mut chars = label.chars();
        let letter = chars.next().ok_or(Error::InvalidType {
            letter: String::new(),
            rank: 0,
        })?;
        let ty: SimpleType = letter.to_string().parse()?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidType {
            letter: label.to_string(),
            rank: 0,
        })?;
        Self::build(ty, rank, normalization)
    }

    fn compute_gram(&self, b: &[Vec<ExactScalar>]) -> Vec<Vec<ExactScalar>> {
        let n = self.rank;
        // G = D (Mᵀ)⁻¹ with D = diag((α_i, α_i)/2)
        let mt: Vec<Vec<ExactScalar>> = (0..n).map(|i| (0..n).map(|j| q(self.cartan[j][i])).collect()).collect();
        let mt_inv = invert(&mt).expect("Cartan matrix is invertible");
        let d: Vec<Vec<ExactScalar>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { &b[i][i] / q(2) } else { q(0) }).collect())
            .collect();
        mat_mul(&d, &mt_inv)
    }

    // g = ((θ, θ) + 2(ρ, θ)) / 2
    fn intrinsic_g(&self) -> ExactScalar {
        (self.norm2(&self.theta) + q(2) * self.form(&self.rho, &self.theta)) / q(2)
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.ty, self.rank)
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// The same system with the other normalization.
    pub fn renormalized(&self, normalization: Normalization) -> RootSystem {
        Self::build(self.ty, self.rank, normalization).expect("valid type")
    }

    /// (α_i, α_j) for simple roots.
    pub fn simple_gram(&self) -> &[Vec<ExactScalar>] {
        &self.simple_gram
    }

    /// Cartan matrix entries ⟨α_i, α_j∨⟩.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Gram matrix of the fundamental weights.
    pub fn gram(&self) -> &[Vec<ExactScalar>] {
        &self.gram
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.simple_roots[i]
    }

    /// All roots, sorted lexicographically in fundamental coordinates.
    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive
    }

    pub fn highest_root(&self) -> &Weight {
        &self.theta
    }

    /// Marks a_0 = 1, a_1, ..., a_n: coefficients of θ in the simple roots.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// The Casimir constant g; the dual Coxeter number when (θ, θ) = 2.
    pub fn dual_coxeter(&self) -> &ExactScalar {
        &self.dual_coxeter
    }

    pub fn dim(&self) -> usize {
        self.roots.len() + self.rank
    }

    pub fn form(&self, a: &Weight, b: &Weight) -> ExactScalar {
        let (a, b) = (a.coords(), b.coords());
        let mut acc = ExactScalar::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    acc += ai * bj * &self.gram[i][j];
                }
            }
        }
        acc
    }

    pub fn norm2(&self, a: &Weight) -> ExactScalar {
        self.form(a, a)
    }

    /// ⟨λ, β∨⟩ = 2(λ, β)/(β, β).
    pub fn coroot_pairing(&self, lambda: &Weight, beta: &Weight) -> ExactScalar {
        q(2) * self.form(lambda, beta) / self.norm2(beta)
    }

    pub fn reflect(&self, lambda: &Weight, beta: &Weight) -> Weight {
        let c = self.coroot_pairing(lambda, beta);
        lambda.add_scaled(&-c, beta)
    }

    pub fn simple_reflection(&self, i: usize, lambda: &Weight) -> Weight {
        let c = lambda.coords()[i].clone();
        if c.is_zero() {
            return lambda.clone();
        }
        let mut out = lambda.clone();
        for (k, &m) in self.cartan[i].iter().enumerate() {
            if m != 0 {
                *out.coord_mut(k) -= &c * q(m);
            }
        }
        out
    }

    /// Coordinates of `lambda` in the basis of simple roots.
    pub fn simple_coords(&self, lambda: &Weight) -> Vec<ExactScalar> {
        let f = lambda.coords();
        (0..self.rank)
            .map(|j| {
                f.iter()
                    .zip(&self.to_simple)
                    .fold(ExactScalar::zero(), |acc, (x, row)| acc + x * &row[j])
            })
            .collect()
    }

    /// The weight with the given simple-root coordinates.
    pub fn from_simple_coords(&self, c: &[ExactScalar]) -> Weight {
        let mut out = Weight::zero(self.rank);
        for (ci, a) in c.iter().zip(&self.simple_roots) {
            if !ci.is_zero() {
                out = out.add_scaled(ci, a);
            }
        }
        out
    }

    pub fn root_index(&self, w: &Weight) -> Option<usize> {
        self.roots.binary_search(w).ok()
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.root_index(w).is_some()
    }

    /// Integer simple-root coordinates of a root.
    pub fn root_coeffs(&self, root: &Weight) -> Option<&[i64]> {
        self.root_index(root).map(|i| self.root_coeffs[i].as_slice())
    }

    /// Positivity in the root lattice order (all simple coordinates ≥ 0, not all 0).
    pub fn is_positive(&self, w: &Weight) -> bool {
        if let Some(c) = self.root_coeffs(w) {
            return c.iter().all(|&x| x >= 0);
        }
        let c = self.simple_coords(w);
        c.iter().all(|x| !x.is_negative()) && c.iter().any(|x| !x.is_zero())
    }

    /// Order of the Weyl group from n!·Π a_i·det(Cartan).
    pub fn weyl_group_order(&self) -> BigInt {
        let m: Vec<Vec<ExactScalar>> = self.cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let d = det(&m).to_integer();
        let mut out = d;
        for k in 1..=self.rank {
            out *= BigInt::from(k);
        }
        for &a in &self.marks[1..] {
            out *= BigInt::from(a);
        }
        out
    }

    /// Moves `lambda` into the dominant chamber; returns the dominant weight
    /// and a word `w` with `w(lambda)` equal to it.
    pub fn to_dominant(&self, lambda: &Weight) -> (Weight, WeylWord) {
        let mut cur = lambda.clone();
        let mut word = WeylWord::identity();
        while let Some(i) = cur.coords().iter().position(|c| c.is_negative()) {
            cur = self.simple_reflection(i, &cur);
            word = word.left_times(i);
        }
        (cur, word)
    }

    pub fn check_dominant_integral(&self, lambda: &Weight) -> Result<()> {
        if lambda.rank() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: lambda.rank(),
            });
        }
        if !lambda.is_integral() {
            return Err(Error::NotIntegral(lambda.to_string()));
        }
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        Ok(())
    }

    /// Weyl dimension formula Π_{α>0} (λ+ρ, α)/(ρ, α).
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<BigInt> {
        self.check_dominant_integral(lambda)?;
        Ok(weyl_dim_of(self, &self.root_data(), lambda))
    }

    /// Weight multiset of the irreducible module of highest weight λ.
    pub fn dominant_character(&self, lambda: &Weight) -> Result<Character> {
        self.check_dominant_integral(lambda)?;
        freudenthal(self, &self.root_data(), lambda)
    }

    /// Simple and positive roots of the whole system, for the generic
    /// character routines.
    pub fn root_data(&self) -> RootData {
        RootData::new(self.rank, self.simple_roots.clone(), self.positive.clone())
    }

    /// Enumerates the Weyl group as reduced words, one per element, in BFS
    /// order. Refuses groups larger than `limit`.
    pub fn weyl_elements(&self, limit: usize) -> Option<Vec<WeylWord>> {
        let order = self.weyl_group_order();
        if order > BigInt::from(limit) {
            return None;
        }
        let mut seen: HashSet<Weight> = HashSet::new();
        seen.insert(self.rho.clone());
        let mut out = vec![WeylWord::identity()];
        let mut queue = VecDeque::from([WeylWord::identity()]);
        while let Some(w) = queue.pop_front() {
            for j in 0..self.rank {
                let next = w.times(j);
                if seen.insert(next.apply(self, &self.rho)) {
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Some(out)
    }
}

/// Π_{α>0} (λ+ρ, α)/(ρ, α) over the positive roots of `data`.
pub fn weyl_dim_of(rs: &RootSystem, data: &RootData, lambda: &Weight) -> BigInt {
    let rho = data.rho();
    let lr = lambda + &rho;
    let mut num = ExactScalar::one();
    for a in data.positive() {
        num *= rs.form(&lr, a) / rs.form(&rho, a);
    }
    debug_assert!(num.is_integer());
    num.to_integer()
}

fn generate_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(c) = queue.pop_front() {
        for i in 0..n {
            let p: i64 = (0..n).map(|j| c[j] * cartan[j][i]).sum();
            if p == 0 {
                continue;
            }
            let mut next = c.clone();
            next[i] -= p;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn all_types() -> Vec<RootSystem> {
        let mut out = Vec::new();
        for ty in SimpleType::ALL {
            for r in ty.ranks_up_to(8) {
                out.push(RootSystem::new(ty, r).unwrap());
            }
        }
        out
    }

    #[test]
    fn root_counts_and_dimensions() {
        let expect = [
            ("A1", 2, 3),
            ("A2", 6, 8),
            ("B2", 8, 10),
            ("C3", 18, 21),
            ("D4", 24, 28),
            ("G2", 12, 14),
            ("F4", 48, 52),
            ("E6", 72, 78),
            ("E7", 126, 133),
            ("E8", 240, 248),
        ];
        for (label, nroots, dim) in expect {
            let rs = RootSystem::from_label(label, Normalization::ThetaSquaredTwo).unwrap();
            assert_eq!(rs.roots().len(), nroots, "{label}");
            assert_eq!(rs.dim(), dim, "{label}");
        }
    }

    #[test]
    fn dual_coxeter_numbers() {
        let expect = [
            ("A3", 4),
            ("B3", 5),
            ("C3", 4),
            ("D5", 8),
            ("G2", 4),
            ("F4", 9),
            ("E6", 12),
            ("E7", 18),
            ("E8", 30),
        ];
        for (label, h) in expect {
            let rs = RootSystem::from_label(label, Normalization::ThetaSquaredTwo).unwrap();
            assert_eq!(rs.dual_coxeter(), &q(h), "{label}");
            assert_eq!(rs.norm2(rs.highest_root()), q(2));
            let k = rs.renormalized(Normalization::Killing);
            assert_eq!(k.dual_coxeter(), &frac(1, 2), "{label}");
        }
    }

    #[test]
    fn closure_and_highest_root() {
        for rs in all_types() {
            for i in 0..rs.rank() {
                for a in rs.roots() {
                    assert!(rs.is_root(&rs.simple_reflection(i, a)), "{}", rs.label());
                }
            }
            let theta = rs.highest_root();
            assert!(theta.is_dominant());
            let sum = rs
                .simple_roots()
                .iter()
                .zip(&rs.marks()[1..])
                .fold(Weight::zero(rs.rank()), |acc, (a, &m)| acc.add_scaled(&q(m), a));
            assert_eq!(&sum, theta);
            for a in rs.positive_roots() {
                assert!(rs.is_positive(&(theta - a)) || (theta - a) == Weight::zero(rs.rank()));
            }
        }
    }

    #[test]
    fn weyl_orders() {
        let expect = [
            ("A1", 2),
            ("A3", 24),
            ("B3", 48),
            ("G2", 12),
            ("F4", 1152),
            ("E6", 51840),
        ];
        for (label, order) in expect {
            let rs = RootSystem::from_label(label, Normalization::ThetaSquaredTwo).unwrap();
            assert_eq!(rs.weyl_group_order(), BigInt::from(order), "{label}");
        }
    }

    #[test]
    fn words_and_lengths() {
        let rs = RootSystem::new(SimpleType::B, 3).unwrap();
        let elems = rs.weyl_elements(100).unwrap();
        assert_eq!(elems.len(), 48);
        for w in &elems {
            assert!(w.is_reduced(&rs));
        }
        assert_eq!(elems.iter().map(WeylWord::length).max(), Some(9));
        assert!(rs.weyl_elements(10).is_none());
    }

    #[test]
    fn dominant_reduction() {
        let rs = RootSystem::new(SimpleType::A, 2).unwrap();
        let lam = Weight::from_ints(&[-3, 1]);
        let (dom, w) = rs.to_dominant(&lam);
        assert!(dom.is_dominant());
        assert_eq!(w.apply(&rs, &lam), dom);
        assert_eq!(dom, Weight::from_ints(&[1, 2]));
    }

    #[test]
    fn weyl_dimensions() {
        let a1 = RootSystem::new(SimpleType::A, 1).unwrap();
        assert_eq!(a1.weyl_dim(&Weight::from_ints(&[0])).unwrap(), BigInt::from(1));
        assert_eq!(a1.weyl_dim(&Weight::from_ints(&[1])).unwrap(), BigInt::from(2));
        let g2 = RootSystem::new(SimpleType::G, 2).unwrap();
        assert_eq!(g2.weyl_dim(&Weight::from_ints(&[1, 0])).unwrap(), BigInt::from(7));
        assert_eq!(g2.weyl_dim(&Weight::from_ints(&[0, 1])).unwrap(), BigInt::from(14));
        assert!(a1.weyl_dim(&Weight::from_ints(&[-1])).is_err());
        assert!(a1.weyl_dim(&Weight::new(vec![frac(1, 2)])).is_err());
    }

    #[test]
    fn parse_labels() {
        assert!(RootSystem::from_label("G3", Normalization::ThetaSquaredTwo).is_err());
        assert!(RootSystem::from_label("D3", Normalization::ThetaSquaredTwo).is_err());
        assert!(RootSystem::from_label("X1", Normalization::ThetaSquaredTwo).is_err());
        assert!(RootSystem::from_label("", Normalization::ThetaSquaredTwo).is_err());
        assert!(RootSystem::from_label("A9", Normalization::ThetaSquaredTwo).is_err());
        assert_eq!(
            RootSystem::from_label("c2", Normalization::Killing).unwrap().label(),
            "C2"
        );
    }
}
