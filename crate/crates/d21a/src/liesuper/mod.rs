//! Basis-indexed Lie superalgebras: construction of Gamma(s1,s2,s3),
//! super-Jacobi verification, invariant bilinear forms and symbol-level
//! Cauchy characteristics.

pub mod algebra;
pub mod cauchy;
pub mod forms;
pub mod gamma;
pub mod json;

pub use algebra::{BasisElement, BasisSuperalgebra, JacobiViolation};
pub use cauchy::cauchy_characteristics;
pub use forms::{invariant_form, killing_form, BilinearForm};
pub use gamma::{build_gamma, build_sl2};

use crate::scalars::{EchelonSpan, Parity, RationalFunction, SDim, SparseVec};

/// A subspace of a basis superalgebra, stored in echelon form.
#[derive(Clone)]
pub struct Subspace {
    span: EchelonSpan<usize>,
    sdim: SDim,
    names: Vec<String>,
}

impl Subspace {
    pub fn from_vectors(alg: &BasisSuperalgebra, vectors: &[SparseVec<usize>]) -> Self {
        let mut span = EchelonSpan::new(alg.params());
        let mut even = 0usize;
        let mut odd = 0usize;
        for v in vectors {
            if span.insert(v) {
                // Parity of a homogeneous vector.
                let p = v
                    .iter()
                    .map(|(i, _)| alg.parity(*i))
                    .fold(None, |acc: Option<Parity>, p| match acc {
                        None => Some(p),
                        Some(q) => {
                            assert_eq!(q, p, "subspace vector mixes parities");
                            Some(q)
                        }
                    })
                    .expect("nonzero vector");
                match p {
                    Parity::Even => even += 1,
                    Parity::Odd => odd += 1,
                }
            }
        }
        let names = span
            .rows()
            .iter()
            .map(|r| {
                let mut parts = Vec::new();
                for (i, c) in r.iter() {
                    if c.is_one() {
                        parts.push(alg.name(*i).to_string());
                    } else {
                        parts.push(format!("({})*{}", c, alg.name(*i)));
                    }
                }
                parts.join("+")
            })
            .collect();
        Subspace { span, sdim: SDim::new(even, odd), names }
    }

    pub fn sdim(&self) -> SDim {
        self.sdim
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn contains(&self, v: &SparseVec<usize>) -> bool {
        self.span.contains(v)
    }

    pub fn span(&self) -> &EchelonSpan<usize> {
        &self.span
    }

    pub fn describe(&self) -> Vec<String> {
        self.names.clone()
    }
}

/// Convenience: scalar helper for tests and callers.
pub fn one_of(alg: &BasisSuperalgebra) -> RationalFunction {
    RationalFunction::one(alg.params())
}
