//! Rational functions in the parameters: the universal scalar field.
//!
//! Invariants: the denominator is nonzero, monic under the lex term order and
//! coprime to the numerator; zero is `0/1`.

use super::gcd::{poly_div_exact, poly_gcd};
use super::poly::{Coef, Parameters, Polynomial};
use crate::error::ScalarError;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        rf
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one(self.num.params());
            return;
        }
        let g = poly_gcd(&self.num, &self.den);
        if !g.is_constant() {
            self.num = poly_div_exact(&self.num, &g).expect("gcd divides");
            self.den = poly_div_exact(&self.den, &g).expect("gcd divides");
        }
        let lc = self.den.leading_coef();
        if !lc.is_one() {
            let inv = lc.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.params());
        RationalFunction { num: p, den }
    }

    pub fn zero(params: &Parameters) -> Self {
        Self::from_poly(Polynomial::zero(params))
    }

    pub fn one(params: &Parameters) -> Self {
        Self::from_poly(Polynomial::one(params))
    }

    pub fn from_int(params: &Parameters, n: i64) -> Self {
        Self::from_poly(Polynomial::from_int(params, n))
    }

    pub fn constant_from(params: &Parameters, c: Coef) -> Self {
        Self::from_poly(Polynomial::constant(params, c))
    }

    pub fn from_ratio(params: &Parameters, n: i64, d: i64) -> Self {
        assert!(d != 0);
        Self::from_poly(Polynomial::constant(
            params,
            BigRational::new(BigInt::from(n), BigInt::from(d)),
        ))
    }

    pub fn var(params: &Parameters, name: &str) -> Self {
        Self::from_poly(Polynomial::var(params, name))
    }

    pub fn params(&self) -> &Parameters {
        self.num.params()
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::new(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.mul(&Self::from_int(self.params(), n))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::new(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Self::one(self.params()).div(self)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.params());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact evaluation at a full assignment; reports poles.
    pub fn eval(&self, point: &[Coef]) -> Result<Coef, ScalarError> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(ScalarError::Pole);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Substitute rational functions (over a possibly different context) for
    /// the parameters.
    pub fn substitute(&self, images: &[RationalFunction]) -> Self {
        assert_eq!(images.len(), self.params().arity());
        let target = if images.is_empty() {
            Parameters::none()
        } else {
            images[0].params().clone()
        };
        let subst_poly = |p: &Polynomial| -> RationalFunction {
            let mut acc = RationalFunction::zero(&target);
            for (m, c) in p.terms() {
                let mut t = RationalFunction::from_poly(Polynomial::constant(&target, c.clone()));
                for (i, &e) in m.iter().enumerate() {
                    if e > 0 {
                        t = t.mul(&images[i].pow(e as u32));
                    }
                }
                acc = acc.add(&t);
            }
            acc
        };
        let n = subst_poly(&self.num);
        let d = subst_poly(&self.den);
        n.div(&d).expect("denominator specializes to zero")
    }

    /// Push a value from one context into a larger one by parameter name.
    pub fn extend_context(&self, target: &Parameters) -> Self {
        let map: Vec<RationalFunction> = self
            .params()
            .names()
            .iter()
            .map(|n| RationalFunction::var(target, n))
            .collect();
        if map.is_empty() {
            // constant context: rebuild the constant
            let c = self.num.constant_value().unwrap();
            let d = self.den.constant_value().unwrap();
            return RationalFunction::new(
                Polynomial::constant(target, c),
                Polynomial::constant(target, d),
            );
        }
        self.substitute(&map)
    }
}

impl fmt::Display for RationalFunction {
    /// Emits `poly` or `poly/poly` with integer coefficients, scaling
    /// numerator and denominator by a common rational.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_zero() {
            return write!(f, "0");
        }
        let mut den_lcm = BigInt::one();
        for c in self.num.terms().values().chain(self.den.terms().values()) {
            den_lcm = num::integer::lcm(den_lcm, c.denom().clone());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.num.terms().values().chain(self.den.terms().values()) {
            let n = c.numer() * (&den_lcm / c.denom());
            num_gcd = num::integer::gcd(num_gcd, n);
        }
        if num_gcd.is_zero() {
            num_gcd = BigInt::one();
        }
        let mut s = BigRational::new(den_lcm, num_gcd);
        if self.den.leading_coef().is_negative() {
            s = -s;
        }
        let n = self.num.scale(&s);
        let d = self.den.scale(&s);
        if d.is_constant() && d.constant_value().map(|c| c.is_one()).unwrap_or(false) {
            write!(f, "{}", n)
        } else {
            write!(f, "{}/{}", n, d)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qa() -> Parameters {
        Parameters::new(&["a"])
    }

    fn a() -> RationalFunction {
        RationalFunction::var(&qa(), "a")
    }

    #[test]
    fn canonical_reduction() {
        let p = qa();
        let one = RationalFunction::one(&p);
        // a/a -> 1
        let x = a().div(&a()).unwrap();
        assert_eq!(x, one);
        // x * 1 == x
        let y = a().add(&one);
        assert_eq!(y.mul(&one), y);
    }

    #[test]
    fn fraction_sum_hand_oracle() {
        // (1-a)/(1+a) + (1+a)/(1-a) compared against the cross-multiplied
        // oracle ((1-a)^2 + (1+a)^2) / ((1+a)(1-a)) = (2+2a^2)/(1-a^2).
        let p = qa();
        let one = RationalFunction::one(&p);
        let f = one.sub(&a()).div(&one.add(&a())).unwrap();
        let g = one.add(&a()).div(&one.sub(&a())).unwrap();
        let sum = f.add(&g);
        let two = RationalFunction::from_int(&p, 2);
        let expect = two
            .add(&two.mul(&a()).mul(&a()))
            .div(&one.sub(&a().mul(&a())))
            .unwrap();
        assert_eq!(sum, expect);
        // cross-multiplied identity, independent of the add/div path
        let lhs = sum.numer().mul(expect.denom());
        let rhs = expect.numer().mul(sum.denom());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_and_poles() {
        let p = qa();
        let one = RationalFunction::one(&p);
        let f = one.sub(&a()).div(&one.add(&a())).unwrap();
        let at0 = f.eval(&[Coef::zero()]).unwrap();
        assert_eq!(at0, Coef::one());
        let minus1 = Coef::from_integer((-1).into());
        assert!(matches!(f.eval(&[minus1]), Err(ScalarError::Pole)));
        let seven = RationalFunction::from_int(&p, 7);
        assert_eq!(seven.eval(&[Coef::from_integer(5.into())]).unwrap(), Coef::from_integer(7.into()));
    }
}
