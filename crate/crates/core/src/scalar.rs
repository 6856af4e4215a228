//! Exact rational scalars and small helpers around them.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; all form values, constants and coordinates use it.
pub type ExactScalar = BigRational;

pub fn q(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> ExactScalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(x: &ExactScalar) -> bool {
    x.is_integer()
}

/// Integer value of `x`, if it is an integer that fits in `i64`.
pub fn to_i64(x: &ExactScalar) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn lcm_i64(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

/// Parses a rational literal such as `3`, `-2`, `7/4` or `-1/2`.
///
/// Whitespace around the literal and around the slash is accepted; a zero
/// denominator is rejected.
pub fn parse_rational(text: &str) -> Result<ExactScalar> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let parse_int = |s: &str| -> Result<BigInt> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("invalid integer `{s}` in `{t}`")));
        }
        if digits.len() > 4096 {
            return Err(Error::Parse("integer literal too long".into()));
        }
        BigInt::from_str(s).map_err(|e| Error::Parse(format!("{e} in `{t}`")))
    };
    let n = parse_int(num)?;
    let d = parse_int(den)?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{t}`")));
    }
    Ok(BigRational::new(n, d))
}

/// Renders `x` as `p` or `p/q`; the inverse of [`parse_rational`].
pub fn format_rational(x: &ExactScalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Nearest integers below and above `x` (equal when `x` is integral).
pub fn floor_ceil(x: &ExactScalar) -> (BigInt, BigInt) {
    (x.floor().to_integer(), x.ceil().to_integer())
}

pub fn abs(x: &ExactScalar) -> ExactScalar {
    x.abs()
}

/// Inverse of a square rational matrix, or `None` if it is singular.
pub fn invert(m: &[Vec<ExactScalar>]) -> Option<Vec<Vec<ExactScalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<ExactScalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { q(1) } else { q(0) }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (v, p) in a[r].iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant of a square rational matrix.
pub fn det(m: &[Vec<ExactScalar>]) -> ExactScalar {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = q(1);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return q(0);
        };
        if pivot != col {
            a.swap(col, pivot);
            d = -d;
        }
        d *= &a[col][col];
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                let pivot_row = a[col].clone();
                for (v, p) in a[r].iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
    }
    d
}

/// Solves `m x = b`, or `None` if `m` is singular.
pub fn solve(m: &[Vec<ExactScalar>], b: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
    let inv = invert(m)?;
    Some(
        inv.iter()
            .map(|row| row.iter().zip(b).fold(q(0), |acc, (x, y)| acc + x * y))
            .collect(),
    )
}

/// Product of two rational matrices.
pub fn mat_mul(a: &[Vec<ExactScalar>], b: &[Vec<ExactScalar>]) -> Vec<Vec<ExactScalar>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(q(0), |acc, (x, r)| acc + x * &r[j]))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals() {
        assert_eq!(parse_rational("3").unwrap(), q(3));
        assert_eq!(parse_rational(" -7 / 4 ").unwrap(), frac(-7, 4));
        assert_eq!(parse_rational("+2/6").unwrap(), frac(1, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/").is_err());
        assert!(parse_rational("a").is_err());
        assert!(parse_rational("--1").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn inverts_small_matrix() {
        let m = vec![vec![q(2), q(-1)], vec![q(-1), q(2)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![frac(2, 3), frac(1, 3)], vec![frac(1, 3), frac(2, 3)]]);
        assert!(invert(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
        assert_eq!(det(&m), q(3));
        assert_eq!(det(&[vec![q(0), q(1)], vec![q(1), q(0)]]), q(-1));
        assert_eq!(solve(&m, &[q(1), q(0)]).unwrap(), vec![frac(2, 3), frac(1, 3)]);
    }

    #[test]
    fn format_round_trip() {
        for x in [q(0), q(-5), frac(3, 8), frac(-1, 2)] {
            assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
    }
}
