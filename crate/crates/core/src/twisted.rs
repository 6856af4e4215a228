//! Finite-order inner automorphisms of type (s_0, …, s_n; 1) and the weight
//! constants attached to them.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::pairs::{Factor, Pair};
use crate::rootsys::{Normalization, RootSystem};
use crate::scalar::{frac, q, ExactScalar};
use crate::weight::Weight;

/// Inner automorphism σ of type (s_0, …, s_n; 1), of order m = Σ a_i s_i.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AutType {
    s: Vec<u64>,
    m: u64,
}

impl AutType {
    pub fn new(rs: &RootSystem, s: Vec<u64>) -> Result<Self> {
        if s.len() != rs.rank() + 1 {
            return Err(Error::InvalidAut(format!(
                "{} has rank {} so s needs {} entries, got {}",
                rs.label(),
                rs.rank(),
                rs.rank() + 1,
                s.len()
            )));
        }
        let g = s.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::InvalidAut(format!("gcd of s is {g}, expected 1")));
        }
        let m = s.iter().zip(rs.marks()).map(|(&si, &a)| si * a as u64).sum();
        Ok(AutType { s, m })
    }

    /// Type (1, 0, …, 0; 1).
    pub fn identity(rs: &RootSystem) -> Self {
        let mut s = vec![0; rs.rank() + 1];
        s[0] = 1;
        AutType { s, m: 1 }
    }

    pub fn s(&self) -> &[u64] {
        &self.s
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m == 1 && self.s[0] == 1
    }

    /// Grade of a root (residue of Σ c_i s_i mod m), `None` if `alpha` is not a root.
    pub fn grade(&self, rs: &RootSystem, alpha: &Weight) -> Option<u64> {
        let c = rs.root_coeffs(alpha)?;
        Some(self.raw_grade(c).rem_euclid(self.m as i64) as u64)
    }

    /// Σ c_i s_i without reduction.
    pub fn raw_grade(&self, coeffs: &[i64]) -> i64 {
        coeffs.iter().zip(&self.s[1..]).map(|(&c, &s)| c * s as i64).sum()
    }

    /// Coordinates (n_0, …, n_n) of the affine root rδ + α in the simple roots
    /// β_0 = (s_0/m)δ − θ, β_i = (s_i/m)δ + α_i. Integral whenever rδ + α is a root.
    pub fn n_coords(&self, rs: &RootSystem, r: &ExactScalar, alpha_coeffs: &[i64]) -> Vec<ExactScalar> {
        let total = q(self.raw_grade(alpha_coeffs));
        let n0 = r - total / q(self.m as i64);
        let mut out = vec![n0.clone()];
        for (c, &a) in alpha_coeffs.iter().zip(&rs.marks()[1..]) {
            out.push(q(*c) + &n0 * q(a));
        }
        out
    }

    /// All inner types with order at most `max_m`.
    pub fn all_up_to(rs: &RootSystem, max_m: u64) -> Vec<AutType> {
        let marks: Vec<u64> = rs.marks().iter().map(|&a| a as u64).collect();
        let mut out = Vec::new();
        let mut cur = vec![0u64; marks.len()];
        fn rec(i: usize, left: u64, marks: &[u64], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if i == marks.len() {
                out.push(cur.clone());
                return;
            }
            let mut v = 0;
            while v * marks[i] <= left {
                cur[i] = v;
                rec(i + 1, left - v * marks[i], marks, cur, out);
                v += 1;
            }
            cur[i] = 0;
        }
        let mut all = Vec::new();
        rec(0, max_m, &marks, &mut cur, &mut all);
        for s in all {
            if let Ok(a) = AutType::new(rs, s) {
                out.push(a);
            }
        }
        out.sort_by_key(|a| (a.m, a.s.clone()));
        out
    }
}

impl fmt::Display for AutType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.s.iter().map(u64::to_string).collect();
        write!(f, "({};1)", parts.join(","))
    }
}

/// Dimensions of the eigenspaces g^{j̄} and the grade of every root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenData {
    pub dims: Vec<usize>,
    pub root_grade: BTreeMap<Weight, u64>,
}

pub fn eigenspace_dims(rs: &RootSystem, aut: &AutType) -> EigenData {
    graded_dims(rs, aut, rs.roots(), rs.rank())
}

/// Eigenspace dimensions of the subalgebra spanned by `roots` and a Cartan of dimension `rank`.
pub fn graded_dims(rs: &RootSystem, aut: &AutType, roots: &[Weight], rank: usize) -> EigenData {
    let m = aut.order() as usize;
    let mut dims = vec![0usize; m];
    dims[0] = rank;
    let mut root_grade = BTreeMap::new();
    for r in roots {
        let g = aut.grade(rs, r).expect("root of the ambient system");
        dims[g as usize] += 1;
        root_grade.insert(r.clone(), g);
    }
    EigenData { dims, root_grade }
}

/// z = ½ Σ_{0≤j<1} j(1−j)/2 · dim g^{j̄}, with j = grade/m.
pub fn z_const(data: &EigenData) -> ExactScalar {
    let m = data.dims.len() as i64;
    let mut acc = ExactScalar::zero();
    for (g, &d) in data.dims.iter().enumerate() {
        let j = frac(g as i64, m);
        acc += &j * (q(1) - &j) / q(2) * q(d as i64);
    }
    acc / q(2)
}

/// Grade-0 roots α with 0·δ + α a positive affine root (all n-coordinates ≥ 0).
pub fn positive_grade_zero(rs: &RootSystem, aut: &AutType, roots: &[Weight]) -> Vec<Weight> {
    roots
        .iter()
        .filter(|r| aut.grade(rs, r) == Some(0))
        .filter(|r| {
            let c = rs.root_coeffs(r).expect("root");
            aut.n_coords(rs, &q(0), c).iter().all(|n| !n.is_negative())
        })
        .cloned()
        .collect()
}

// Σ_{0≤j≤½}(1−2j) ρ_{j̄} restricted to the roots in `roots`
fn twisted_rho(rs: &RootSystem, aut: &AutType, roots: &[Weight]) -> Weight {
    let m = aut.order() as i64;
    let mut out = Weight::zero(rs.rank());
    for r in positive_grade_zero(rs, aut, roots) {
        out = out.add_scaled(&frac(1, 2), &r);
    }
    for r in roots {
        let g = aut.grade(rs, r).expect("root") as i64;
        if g == 0 || 2 * g > m {
            continue;
        }
        let j = frac(g, m);
        let c = (q(1) - q(2) * j) / q(2);
        out = out.add_scaled(&c, r);
    }
    out
}

/// ρ_σ = ρ_0 + Σ_{0<j≤½} (1−2j) ρ_{j̄}.
pub fn rho_sigma(rs: &RootSystem, aut: &AutType) -> Weight {
    twisted_rho(rs, aut, rs.roots())
}

/// ρ_{aσ}, the same construction over the roots of a.
pub fn rho_a_sigma(pair: &Pair, aut: &AutType) -> Weight {
    twisted_rho(pair.ambient(), aut, pair.sub_roots())
}

/// z(a_S, σ) for one factor (0 for the centre).
pub fn factor_z(pair: &Pair, factor: &Factor, aut: &AutType) -> ExactScalar {
    if factor.is_torus() {
        return ExactScalar::zero();
    }
    z_const(&graded_dims(pair.ambient(), aut, factor.roots(), factor.rank()))
}

/// λ_s with κ(λ_s, α_i) = s_i/(2m); needs the Killing normalization.
pub fn lambda_s(rs: &RootSystem, aut: &AutType) -> Result<Weight> {
    if rs.normalization() != Normalization::Killing {
        return Err(Error::WrongNormalization("Killing"));
    }
    let m = aut.order() as i64;
    let coords = (0..rs.rank())
        .map(|i| q(aut.s()[i + 1] as i64) / (q(m) * &rs.simple_gram()[i][i]))
        .collect();
    Ok(Weight::new(coords))
}

/// κ(ρ−λ_s, ρ−λ_s) − (dim g/24 − (1/4m²) Σ_{j=1}^{m−1} j(m−j) dim g^{j̄}).
///
/// Evaluated in the Killing normalization whatever the input normalization is.
pub fn verify_vsf(rs: &RootSystem, aut: &AutType) -> ExactScalar {
    let k = rs.renormalized(Normalization::Killing);
    let ls = lambda_s(&k, aut).expect("Killing normalization");
    let d = k.rho() - &ls;
    let lhs = k.norm2(&d);
    let data = eigenspace_dims(&k, aut);
    let m = aut.order() as i64;
    let mut sum = ExactScalar::zero();
    for j in 1..m {
        sum += q(j * (m - j) * data.dims[j as usize] as i64);
    }
    let rhs = frac(k.dim() as i64, 24) - sum / q(4 * m * m);
    lhs - rhs
}

/// 2(ρ_σ, ᾱ_i) − ((α_i, α_i) − 2g s_i/m) for every affine simple root α_i;
/// all zero exactly when the identity holds.
pub fn rho_alpha_residuals(rs: &RootSystem, aut: &AutType) -> Vec<ExactScalar> {
    let rho = rho_sigma(rs, aut);
    let m = q(aut.order() as i64);
    let g = rs.dual_coxeter();
    let mut bars = vec![-rs.highest_root().clone()];
    bars.extend(rs.simple_roots().iter().cloned());
    bars.iter()
        .zip(aut.s())
        .map(|(a, &s)| q(2) * rs.form(&rho, a) - (rs.norm2(a) - q(2) * g * q(s as i64) / &m))
        .collect()
}

fn master_rhs(pair: &Pair, aut: &AutType) -> ExactScalar {
    let rs = pair.ambient();
    let g = rs.dual_coxeter();
    let zg = z_const(&eigenspace_dims(rs, aut));
    let mut rhs = g * q(rs.dim() as i64) / q(12) - q(2) * g * zg;
    for f in pair.factors() {
        if f.is_torus() {
            continue;
        }
        let gs = f.casimir();
        rhs -= gs * q(f.dim() as i64) / q(12) - q(2) * gs * factor_z(pair, f, aut);
    }
    rhs
}

/// ||ρ_σ||² − ||ρ_{aσ}||² − RHS of the generalized strange formula.
pub fn verify_masterrho(pair: &Pair, aut: &AutType) -> ExactScalar {
    let rs = pair.ambient();
    let lhs = rs.norm2(&rho_sigma(rs, aut)) - rs.norm2(&rho_a_sigma(pair, aut));
    lhs - master_rhs(pair, aut)
}

/// μ̄ = (Λ̄ + ρ_σ)|h_a − ρ_{aσ}; for equal rank the restriction is the identity.
pub fn mu_bar(pair: &Pair, aut: &AutType, lambda: &Weight) -> Weight {
    let rs = pair.ambient();
    &(lambda + &rho_sigma(rs, aut)) - &rho_a_sigma(pair, aut)
}

/// (μ̄+2ρ_{aσ}, μ̄) − (Λ̄+2ρ_σ, Λ̄) − RHS. The precondition (Λ̄+ρ_σ)|h_p = 0 is
/// vacuous because h_p = h ∩ p is zero for equal-rank pairs.
pub fn verify_masternok(pair: &Pair, aut: &AutType, lambda: &Weight, k: &ExactScalar) -> Result<ExactScalar> {
    let rs = pair.ambient();
    if lambda.rank() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: lambda.rank(),
        });
    }
    if (k + rs.dual_coxeter()).is_zero() {
        return Err(Error::NonPositiveLevel(crate::scalar::format_rational(k)));
    }
    let rho_s = rho_sigma(rs, aut);
    let rho_as = rho_a_sigma(pair, aut);
    let mu = mu_bar(pair, aut, lambda);
    let lhs = rs.form(&(&mu + &rho_as.scale(&q(2))), &mu) - rs.form(&(lambda + &rho_s.scale(&q(2))), lambda);
    Ok(lhs - master_rhs(pair, aut))
}

/// C = ½ dim p − Σ_S (1 − g_S/(k+g)) dim a_S, the centre counted with g_S = 0.
pub fn central_charge(pair: &Pair, k: &ExactScalar) -> Result<ExactScalar> {
    let g = pair.ambient().dual_coxeter();
    let kg = k + g;
    if kg.is_zero() {
        return Err(Error::NonPositiveLevel(crate::scalar::format_rational(k)));
    }
    let mut c = frac(pair.dim_p() as i64, 2);
    for f in pair.factors() {
        c -= (q(1) - f.casimir() / &kg) * q(f.dim() as i64);
    }
    Ok(c)
}
