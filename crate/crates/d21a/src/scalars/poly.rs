//! Multivariate polynomials with exact rational coefficients.
//!
//! The representation is sparse in terms and dense in exponents: every
//! monomial carries one exponent per parameter of the ambient context, so
//! term keys are directly comparable. The canonical term order is
//! lexicographic on exponent vectors (the `BTreeMap` key order); the leading
//! term is the largest key.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub type Coef = BigRational;

/// Ordered list of parameter names shared by all values of one scalar context.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Parameters(Arc<Vec<String>>);

impl Parameters {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let v: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        assert!(
            v.iter().collect::<std::collections::BTreeSet<_>>().len() == v.len(),
            "duplicate parameter names"
        );
        Parameters(Arc::new(v))
    }

    /// The empty context: scalars are plain rationals.
    pub fn none() -> Self {
        Parameters(Arc::new(Vec::new()))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

pub type Monomial = Vec<u16>;

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    params: Parameters,
    terms: BTreeMap<Monomial, Coef>,
}

impl Polynomial {
    pub fn zero(params: &Parameters) -> Self {
        Polynomial { params: params.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(params: &Parameters, c: Coef) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0u16; params.arity()], c);
        }
        Polynomial { params: params.clone(), terms }
    }

    pub fn one(params: &Parameters) -> Self {
        Self::from_int(params, 1)
    }

    pub fn from_int(params: &Parameters, n: i64) -> Self {
        Self::constant(params, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(params: &Parameters, name: &str) -> Self {
        let i = params
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown parameter `{name}`"));
        let mut exp = vec![0u16; params.arity()];
        exp[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, BigRational::one());
        Polynomial { params: params.clone(), terms }
    }

    pub fn params(&self) -> &Parameters {
        &self.params
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Coef> {
        &self.terms
    }

    pub(crate) fn from_terms(params: &Parameters, terms: BTreeMap<Monomial, Coef>) -> Self {
        let mut p = Polynomial { params: params.clone(), terms };
        p.terms.retain(|_, c| !c.is_zero());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Coef> {
        if self.is_zero() {
            Some(Coef::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m[var]).max().unwrap_or(0)
    }

    /// Leading (lex-largest) term.
    pub fn leading(&self) -> Option<(&Monomial, &Coef)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coef(&self) -> Coef {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Coef::zero)
    }

    fn assert_same(&self, other: &Self) {
        assert!(self.params == other.params, "mixed scalar contexts");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(Coef::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Polynomial { params: self.params.clone(), terms }
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        Polynomial { params: self.params.clone(), terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same(other);
        let mut terms: BTreeMap<Monomial, Coef> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2.iter()).map(|(a, b)| a + b).collect();
                let e = terms.entry(m).or_insert_with(Coef::zero);
                *e += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial { params: self.params.clone(), terms }
    }

    pub fn scale(&self, c: &Coef) -> Self {
        if c.is_zero() {
            return Self::zero(&self.params);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        Polynomial { params: self.params.clone(), terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.params);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut terms: BTreeMap<Monomial, Coef> = BTreeMap::new();
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            let e = m2[var];
            m2[var] = e - 1;
            let k = c * BigRational::from_integer(BigInt::from(e));
            let entry = terms.entry(m2).or_insert_with(Coef::zero);
            *entry += k;
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial { params: self.params.clone(), terms }
    }

    /// Exact evaluation at a full assignment of the parameters.
    pub fn eval(&self, point: &[Coef]) -> Coef {
        assert_eq!(point.len(), self.params.arity());
        let mut acc = Coef::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Monic associate: leading coefficient scaled to 1.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coef();
        self.scale(&lc.recip())
    }

    /// Associate with integer coefficients, content one and positive leading
    /// coefficient. This is the form used by the string grammar.
    pub fn integer_normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = num::integer::lcm(den_lcm, c.denom().clone());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den_lcm / c.denom());
            num_gcd = num::integer::gcd(num_gcd, n);
        }
        if num_gcd.is_zero() {
            num_gcd = BigInt::one();
        }
        let scale = BigRational::new(den_lcm, num_gcd);
        let mut out = self.scale(&scale.abs());
        if out.leading_coef().is_negative() {
            out = out.neg();
        }
        out
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    /// Renders with integer coefficients where possible; used by the
    /// serialization grammar after `integer_normalized`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending lex so leading term prints first.
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let is_const_term = m.iter().all(|&e| e == 0);
            let coef_is_one = mag.is_one();
            if !coef_is_one || is_const_term {
                if mag.denom().is_one() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
            }
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                write!(f, "{}", self.params.name(i))?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qa() -> Parameters {
        Parameters::new(&["a"])
    }

    #[test]
    fn arithmetic_and_display() {
        let p = qa();
        let a = Polynomial::var(&p, "a");
        let one = Polynomial::one(&p);
        let f = a.mul(&a).sub(&one); // a^2 - 1
        assert_eq!(format!("{}", f), "a^2-1");
        assert_eq!(f.total_degree(), 2);
        let g = a.add(&one);
        let h = f.mul(&g);
        assert_eq!(h.degree_in(0), 3);
        assert_eq!(h.eval(&[Coef::from_integer(2.into())]), Coef::from_integer(9.into()));
    }

    #[test]
    fn derivative_works() {
        let p = qa();
        let a = Polynomial::var(&p, "a");
        let f = a.pow(3).add(&a.scale(&Coef::from_integer(5.into())));
        let df = f.derivative(0);
        assert_eq!(format!("{}", df), "3a^2+5");
    }
}
