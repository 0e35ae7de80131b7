//! Free supercommutative polynomial algebra on named even and odd
//! coordinates, and supervector fields acting as left derivations.

use crate::scalars::{Parameters, Parity, RationalFunction};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Coord {
    Even(usize),
    Odd(usize),
}

impl Coord {
    pub fn parity(self) -> Parity {
        match self {
            Coord::Even(_) => Parity::Even,
            Coord::Odd(_) => Parity::Odd,
        }
    }
}

#[derive(Debug)]
pub struct CoordSystemData {
    pub params: Parameters,
    pub evens: Vec<String>,
    pub odds: Vec<String>,
}

pub type CoordSystem = Arc<CoordSystemData>;

pub fn coord_system(params: &Parameters, evens: &[&str], odds: &[&str]) -> CoordSystem {
    Arc::new(CoordSystemData {
        params: params.clone(),
        evens: evens.iter().map(|s| s.to_string()).collect(),
        odds: odds.iter().map(|s| s.to_string()).collect(),
    })
}

impl CoordSystemData {
    pub fn coord(&self, name: &str) -> Coord {
        if let Some(i) = self.evens.iter().position(|n| n == name) {
            Coord::Even(i)
        } else if let Some(i) = self.odds.iter().position(|n| n == name) {
            Coord::Odd(i)
        } else {
            panic!("unknown coordinate `{name}`");
        }
    }

    pub fn name(&self, c: Coord) -> &str {
        match c {
            Coord::Even(i) => &self.evens[i],
            Coord::Odd(i) => &self.odds[i],
        }
    }

    pub fn all_coords(&self) -> Vec<Coord> {
        (0..self.evens.len())
            .map(Coord::Even)
            .chain((0..self.odds.len()).map(Coord::Odd))
            .collect()
    }
}

/// Monomial: even exponents (dense) and a sorted subset of odd indices.
pub type STerm = (Vec<u16>, Vec<usize>);

pub fn term_parity(t: &STerm) -> Parity {
    if t.1.len() % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

#[derive(Clone)]
pub struct SuperPolynomial {
    pub coords: CoordSystem,
    pub terms: BTreeMap<STerm, RationalFunction>,
}

impl SuperPolynomial {
    pub fn zero(coords: &CoordSystem) -> Self {
        SuperPolynomial { coords: coords.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(coords: &CoordSystem, c: RationalFunction) -> Self {
        let mut p = Self::zero(coords);
        if !c.is_zero() {
            p.terms.insert((vec![0; coords.evens.len()], vec![]), c);
        }
        p
    }

    pub fn one(coords: &CoordSystem) -> Self {
        Self::constant(coords, RationalFunction::one(&coords.params))
    }

    pub fn var(coords: &CoordSystem, name: &str) -> Self {
        let mut p = Self::zero(coords);
        let one = RationalFunction::one(&coords.params);
        match coords.coord(name) {
            Coord::Even(i) => {
                let mut e = vec![0u16; coords.evens.len()];
                e[i] = 1;
                p.terms.insert((e, vec![]), one);
            }
            Coord::Odd(i) => {
                p.terms.insert((vec![0; coords.evens.len()], vec![i]), one);
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, t: STerm, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&t) {
            Some(e) => {
                *e = e.add(&c);
                e.is_zero()
            }
            None => {
                self.terms.insert(t.clone(), c);
                false
            }
        };
        if remove {
            self.terms.remove(&t);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.insert(t.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = Self::zero(&self.coords);
        if c.is_zero() {
            return out;
        }
        for (t, v) in &self.terms {
            out.terms.insert(t.clone(), v.mul(c));
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&RationalFunction::from_int(&self.coords.params, n))
    }

    /// Koszul sign for merging two sorted odd subsets; None when they share
    /// an index (odd squares vanish).
    fn merge_odds(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i64)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut sign = 1i64;
        let mut i = 0;
        let mut j = 0;
        // Count inversions: elements of `a` that must move past elements of `b`.
        while i < a.len() && j < b.len() {
            if a[i] == b[j] {
                return None;
            }
            if a[i] < b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                // b[j] moves left past the remaining a[i..]
                if (a.len() - i) % 2 == 1 {
                    sign = -sign;
                }
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some((out, sign))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.coords);
        for ((e1, o1), c1) in &self.terms {
            for ((e2, o2), c2) in &other.terms {
                let Some((odds, sign)) = Self::merge_odds(o1, o2) else { continue };
                let evens: Vec<u16> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.insert((evens, odds), c1.mul(c2).scale_int(sign));
            }
        }
        out
    }

    /// Left partial derivative.
    pub fn derive(&self, c: Coord) -> Self {
        let mut out = Self::zero(&self.coords);
        for ((e, o), v) in &self.terms {
            match c {
                Coord::Even(i) => {
                    if e[i] == 0 {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2[i] -= 1;
                    out.insert((e2, o.clone()), v.scale_int(e[i] as i64));
                }
                Coord::Odd(i) => {
                    let Some(pos) = o.iter().position(|&k| k == i) else { continue };
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    let mut o2 = o.clone();
                    o2.remove(pos);
                    out.insert((e.clone(), o2), v.scale_int(sign));
                }
            }
        }
        out
    }

    /// Parity when homogeneous.
    pub fn parity(&self) -> Option<Parity> {
        let mut p = None;
        for t in self.terms.keys() {
            let tp = term_parity(t);
            match p {
                None => p = Some(tp),
                Some(q) if q == tp => {}
                _ => return None,
            }
        }
        p.or(Some(Parity::Even))
    }

    pub fn parity_or_panic(&self) -> Parity {
        self.parity().expect("inhomogeneous super polynomial")
    }
}

impl fmt::Display for SuperPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((e, o), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                write!(f, "{}", self.coords.evens[i])?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
            for &i in o {
                write!(f, "{}", self.coords.odds[i])?;
            }
        }
        Ok(())
    }
}

/// A supervector field: homogeneous parity, one coefficient polynomial per
/// coordinate direction.
#[derive(Clone)]
pub struct SuperVectorField {
    pub coords: CoordSystem,
    pub parity: Parity,
    pub coeffs: BTreeMap<Coord, SuperPolynomial>,
}

impl SuperVectorField {
    pub fn zero(coords: &CoordSystem, parity: Parity) -> Self {
        SuperVectorField { coords: coords.clone(), parity, coeffs: BTreeMap::new() }
    }

    /// Build from coefficients, inferring and validating the parity:
    /// |coeff_c| = |X| + |c|.
    pub fn from_coeffs(
        coords: &CoordSystem,
        coeffs: Vec<(Coord, SuperPolynomial)>,
    ) -> Self {
        let mut parity: Option<Parity> = None;
        for (c, p) in &coeffs {
            if p.is_zero() {
                continue;
            }
            let fp = p.parity_or_panic().add(c.parity());
            match parity {
                None => parity = Some(fp),
                Some(q) => assert_eq!(q, fp, "field mixes parities"),
            }
        }
        let mut out = Self::zero(coords, parity.unwrap_or(Parity::Even));
        for (c, p) in coeffs {
            if !p.is_zero() {
                out.coeffs.insert(c, p);
            }
        }
        out
    }

    pub fn partial(coords: &CoordSystem, name: &str) -> Self {
        let c = coords.coord(name);
        Self::from_coeffs(coords, vec![(c, SuperPolynomial::one(coords))])
    }

    pub fn coeff(&self, c: Coord) -> SuperPolynomial {
        self.coeffs
            .get(&c)
            .cloned()
            .unwrap_or_else(|| SuperPolynomial::zero(&self.coords))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.parity, other.parity, "adding fields of different parity");
        let mut out = self.clone();
        for (c, p) in &other.coeffs {
            let cur = out.coeff(*c).add(p);
            if cur.is_zero() {
                out.coeffs.remove(c);
            } else {
                out.coeffs.insert(*c, cur);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for p in out.coeffs.values_mut() {
            *p = p.neg();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Left multiplication by a polynomial (changes parity accordingly).
    pub fn scale_poly(&self, g: &SuperPolynomial) -> Self {
        let gp = g.parity_or_panic();
        let mut out = Self::zero(&self.coords, self.parity.add(gp));
        for (c, p) in &self.coeffs {
            let v = g.mul(p);
            if !v.is_zero() {
                out.coeffs.insert(*c, v);
            }
        }
        out
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = self.clone();
        for p in out.coeffs.values_mut() {
            *p = p.scale(c);
        }
        out.coeffs.retain(|_, p| !p.is_zero());
        out
    }

    /// Apply the derivation to a polynomial.
    pub fn apply(&self, f: &SuperPolynomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(&self.coords);
        for (c, p) in &self.coeffs {
            out = out.add(&p.mul(&f.derive(*c)));
        }
        out
    }

    /// Super commutator [X, Y] = X Y - (-1)^{|X||Y|} Y X, computed through
    /// the action on coordinate functions.
    pub fn bracket(&self, other: &Self) -> Self {
        let sign = self.parity.sign_if_both_odd(other.parity);
        let mut coeffs = Vec::new();
        for c in self.coords.all_coords() {
            let yc = other.coeff(c);
            let xc = self.coeff(c);
            let v = self.apply(&yc).sub(&other.apply(&xc).scale_int(sign));
            if !v.is_zero() {
                coeffs.push((c, v));
            }
        }
        let mut out = Self::from_coeffs(&self.coords, coeffs);
        if out.coeffs.is_empty() {
            out.parity = self.parity.add(other.parity);
        } else {
            assert_eq!(out.parity, self.parity.add(other.parity));
        }
        out
    }
}

impl fmt::Display for SuperVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, p) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{}] d/d{}", p, self.coords.name(*c))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Parameters;

    fn sys() -> CoordSystem {
        coord_system(&Parameters::none(), &["x"], &["u", "v"])
    }

    #[test]
    fn odd_squares_vanish_and_signs() {
        let s = sys();
        let u = SuperPolynomial::var(&s, "u");
        let v = SuperPolynomial::var(&s, "v");
        assert!(u.mul(&u).is_zero());
        let uv = u.mul(&v);
        let vu = v.mul(&u);
        assert_eq!(uv.terms, vu.neg().terms);
        // left derivative: d_v(uv) = -u
        let d = uv.derive(Coord::Odd(1));
        assert_eq!(d.terms, u.neg().terms);
    }

    #[test]
    fn derivation_brackets() {
        let s = sys();
        // anticommutator of d_u with u d_x is d_x
        let du = SuperVectorField::partial(&s, "u");
        let u = SuperPolynomial::var(&s, "u");
        let udx = SuperVectorField::partial(&s, "x").scale_poly(&u);
        let b = du.bracket(&udx);
        let dx = SuperVectorField::partial(&s, "x");
        assert_eq!(format!("{}", b), format!("{}", dx));
        // [d_u, d_u] = 0 on polynomials
        let b2 = du.bracket(&du);
        assert!(b2.is_zero());
        // [X, X] = 0 for even X
        let x = SuperVectorField::partial(&s, "x")
            .scale_poly(&SuperPolynomial::var(&s, "x"));
        assert!(x.bracket(&x).is_zero());
    }
}
