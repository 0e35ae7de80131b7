//! Exact arithmetic over multivariate rational functions plus fraction-free
//! sparse linear algebra with exceptional-specialization tracking.

pub mod gcd;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod span;

pub use gcd::{divides, poly_div_exact, poly_gcd, squarefree_part};
pub use matrix::{ExceptionalLocus, SparseMatrix};
pub use parse::{parse_polynomial, parse_rational};
pub use poly::{Coef, Monomial, Parameters, Polynomial};
pub use ratfunc::RationalFunction;
pub use span::{EchelonSpan, SparseVec};

use num::BigRational;

/// Super-dimension (even | odd).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, serde::Serialize, serde::Deserialize)]
pub struct SDim {
    pub even: usize,
    pub odd: usize,
}

impl SDim {
    pub fn new(even: usize, odd: usize) -> Self {
        SDim { even, odd }
    }

    pub fn total(&self) -> usize {
        self.even + self.odd
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }

    pub fn add(&self, other: &SDim) -> SDim {
        SDim::new(self.even + other.even, self.odd + other.odd)
    }
}

impl std::fmt::Display for SDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}|{})", self.even, self.odd)
    }
}

/// Parities of basis vectors.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, serde::Serialize, serde::Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn sign_if_both_odd(self, other: Parity) -> i64 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// The canonical context Q(a) with s1 = -1-a, s2 = 1, s3 = a.
pub fn context_a() -> (Parameters, [RationalFunction; 3]) {
    let p = Parameters::new(&["a"]);
    let a = RationalFunction::var(&p, "a");
    let one = RationalFunction::one(&p);
    let s1 = one.neg().sub(&a);
    let s2 = one;
    let s3 = a;
    (p, [s1, s2, s3])
}

/// The symmetric context Q(s1, s2) with s3 = -s1-s2.
pub fn context_s() -> (Parameters, [RationalFunction; 3]) {
    let p = Parameters::new(&["s1", "s2"]);
    let s1 = RationalFunction::var(&p, "s1");
    let s2 = RationalFunction::var(&p, "s2");
    let s3 = s1.neg().sub(&s2);
    (p, [s1, s2, s3])
}

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}
