//! Symmetrized Cartan data for the simple types, Bourbaki numbering.
//!
//! Each type is given by the squared lengths of its simple roots and the
//! non-zero off-diagonal products (α_i, α_j), in the normalization where
//! long roots have squared length 2.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{frac, q, ExactScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl SimpleType {
    pub fn letter(self) -> char {
        match self {
            SimpleType::A => 'A',
            SimpleType::B => 'B',
            SimpleType::C => 'C',
            SimpleType::D => 'D',
            SimpleType::E => 'E',
            SimpleType::F => 'F',
            SimpleType::G => 'G',
        }
    }

    pub fn is_valid_rank(self, rank: usize) -> bool {
        match self {
            SimpleType::A => (1..=8).contains(&rank),
            SimpleType::B | SimpleType::C => (2..=8).contains(&rank),
            SimpleType::D => (4..=8).contains(&rank),
            SimpleType::E => (6..=8).contains(&rank),
            SimpleType::F => rank == 4,
            SimpleType::G => rank == 2,
        }
    }

    /// All valid ranks up to `max_rank`.
    pub fn ranks_up_to(self, max_rank: usize) -> Vec<usize> {
        (1..=max_rank).filter(|&r| self.is_valid_rank(r)).collect()
    }

    pub const ALL: [SimpleType; 7] = [
        SimpleType::A,
        SimpleType::B,
        SimpleType::C,
        SimpleType::D,
        SimpleType::E,
        SimpleType::F,
        SimpleType::G,
    ];
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for SimpleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(SimpleType::A),
            "B" | "b" => Ok(SimpleType::B),
            "C" | "c" => Ok(SimpleType::C),
            "D" | "d" => Ok(SimpleType::D),
            "E" | "e" => Ok(SimpleType::E),
            "F" | "f" => Ok(SimpleType::F),
            "G" | "g" => Ok(SimpleType::G),
            other => Err(Error::InvalidType {
                letter: other.to_string(),
                rank: 0,
            }),
        }
    }
}

/// Symmetrized Gram matrix B_ij = (α_i, α_j) of the simple roots.
pub(crate) fn simple_gram(ty: SimpleType, n: usize) -> Result<Vec<Vec<ExactScalar>>> {
    if !ty.is_valid_rank(n) {
        return Err(Error::InvalidType {
            letter: ty.letter().to_string(),
            rank: n,
        });
    }
    let mut lengths = vec![q(2); n];
    // 1-based Bourbaki edges (i, j, (α_i, α_j))
    let mut edges: Vec<(usize, usize, ExactScalar)> = Vec::new();
    let chain = |edges: &mut Vec<(usize, usize, ExactScalar)>, upto: usize, v: ExactScalar| {
        for i in 1..upto {
            edges.push((i, i + 1, v.clone()));
        }
    };
    match ty {
        SimpleType::A => chain(&mut edges, n, q(-1)),
        SimpleType::B => {
            chain(&mut edges, n, q(-1));
            lengths[n - 1] = q(1);
        }
        SimpleType::C => {
            chain(&mut edges, n - 1, frac(-1, 2));
            edges.push((n - 1, n, q(-1)));
            for l in lengths.iter_mut().take(n - 1) {
                *l = q(1);
            }
        }
        SimpleType::D => {
            chain(&mut edges, n - 1, q(-1));
            edges.push((n - 2, n, q(-1)));
        }
        SimpleType::E => {
            edges.push((1, 3, q(-1)));
            edges.push((2, 4, q(-1)));
            for i in 3..n {
                edges.push((i, i + 1, q(-1)));
            }
        }
        SimpleType::F => {
            lengths = vec![q(2), q(2), q(1), q(1)];
            edges.push((1, 2, q(-1)));
            edges.push((2, 3, q(-1)));
            edges.push((3, 4, frac(-1, 2)));
        }
        SimpleType::G => {
            lengths = vec![frac(2, 3), q(2)];
            edges.push((1, 2, q(-1)));
        }
    }
    let mut b = vec![vec![q(0); n]; n];
    for (i, l) in lengths.into_iter().enumerate() {
        b[i][i] = l;
    }
    for (i, j, v) in edges {
        b[i - 1][j - 1] = v.clone();
        b[j - 1][i - 1] = v;
    }
    Ok(b)
}
