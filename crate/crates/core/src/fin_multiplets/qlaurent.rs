use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{format_rational, frac, q, ExactScalar};

/// Finite Laurent polynomial in q with rational exponents and rational
/// coefficients. The zero element has empty support.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QLaurent {
    terms: BTreeMap<ExactScalar, ExactScalar>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent::default()
    }

    pub fn one() -> Self {
        QLaurent::monomial(q(0), q(1))
    }

    /// `coeff · q^exp`
    pub fn monomial(exp: ExactScalar, coeff: ExactScalar) -> Self {
        let mut out = QLaurent::zero();
        out.add_term(exp, coeff);
        out
    }

    /// q^{n/2} − q^{−n/2}
    pub fn half_difference(n: &ExactScalar) -> Self {
        let e = n * frac(1, 2);
        QLaurent::monomial(e.clone(), q(1)) + QLaurent::monomial(-e, q(-1))
    }

    /// [n]_q = (q^{n/2} − q^{−n/2}) / (q^{1/2} − q^{−1/2}) for a non-negative integer n.
    pub fn q_integer(n: u64) -> Self {
        let mut out = QLaurent::zero();
        for k in 0..n {
            // exponents (n−1)/2, (n−3)/2, …, −(n−1)/2
            out.add_term(frac(n as i64 - 1 - 2 * k as i64, 2), q(1));
        }
        out
    }

    pub fn add_term(&mut self, exp: ExactScalar, coeff: ExactScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &ExactScalar) -> ExactScalar {
        self.terms.get(exp).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExactScalar, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn max_exp(&self) -> Option<&ExactScalar> {
        self.terms.keys().next_back()
    }

    pub fn min_exp(&self) -> Option<&ExactScalar> {
        self.terms.keys().next()
    }

    /// Value at q = 1.
    pub fn at_one(&self) -> ExactScalar {
        self.terms.values().fold(ExactScalar::zero(), |acc, c| acc + c)
    }

    pub fn scale(&self, c: &ExactScalar) -> QLaurent {
        if c.is_zero() {
            return QLaurent::zero();
        }
        QLaurent {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by q^e.
    pub fn shift(&self, e: &ExactScalar) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(k, v)| (k + e, v.clone())).collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &QLaurent) -> Option<QLaurent> {
        let (dtop, dlead) = divisor.terms.iter().next_back()?;
        let dbottom = divisor.min_exp()?.clone();
        let Some(bottom) = self.min_exp().cloned() else {
            return Some(QLaurent::zero());
        };
        // every quotient exponent e satisfies e + dbottom ≥ bottom
        let floor = &bottom - &dbottom;
        let mut rem = self.clone();
        let mut quot = QLaurent::zero();
        while let Some((top, c)) = rem.terms.iter().next_back() {
            let e = top - dtop;
            if e < floor {
                return None;
            }
            let c = c / dlead;
            let step = divisor.shift(&e).scale(&c);
            quot.add_term(e, c);
            rem = &rem - &step;
        }
        Some(quot)
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{}", format_rational(c))?;
            } else if c.is_one() {
                write!(f, "q^{}", format_rational(e))?;
            } else {
                write!(f, "{}*q^{}", format_rational(c), format_rational(e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Add for QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: QLaurent) -> QLaurent {
        &self + &rhs
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Sub for QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: QLaurent) -> QLaurent {
        &self - &rhs
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        self.scale(&q(-1))
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: QLaurent) -> QLaurent {
        &self * &rhs
    }
}
