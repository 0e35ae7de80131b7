//! Multivariate gcd via primitive pseudo-remainder sequences, plus exact
//! division and squarefree parts. Inputs stay small (at most five parameters,
//! modest degrees), so the classical algorithms are enough.

use super::poly::{Coef, Monomial, Parameters, Polynomial};
use num::{One, Zero};
use std::collections::BTreeMap;

/// Exact division; `None` when `g` does not divide `f`.
pub fn poly_div_exact(f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    assert!(!g.is_zero(), "division by zero polynomial");
    let params = f.params().clone();
    let mut rem = f.clone();
    let mut quo: BTreeMap<Monomial, Coef> = BTreeMap::new();
    let (gm, gc) = {
        let (m, c) = g.leading()?;
        (m.clone(), c.clone())
    };
    while !rem.is_zero() {
        let (rm, rc) = {
            let (m, c) = rem.leading().unwrap();
            (m.clone(), c.clone())
        };
        if rm.iter().zip(gm.iter()).any(|(a, b)| a < b) {
            return None;
        }
        let qm: Monomial = rm.iter().zip(gm.iter()).map(|(a, b)| a - b).collect();
        let qc = &rc / &gc;
        let mut t = BTreeMap::new();
        t.insert(qm.clone(), qc.clone());
        let term = Polynomial::from_terms(&params, t);
        rem = rem.sub(&term.mul(g));
        let e = quo.entry(qm).or_insert_with(Coef::zero);
        *e += qc;
    }
    Some(Polynomial::from_terms(&params, quo))
}

pub fn divides(g: &Polynomial, f: &Polynomial) -> bool {
    if f.is_zero() {
        return true;
    }
    poly_div_exact(f, g).is_some()
}

/// Highest parameter index occurring in `f`, if any.
fn main_var(f: &Polynomial) -> Option<usize> {
    let mut best: Option<usize> = None;
    for m in f.terms().keys() {
        for (i, &e) in m.iter().enumerate().rev() {
            if e > 0 {
                best = Some(best.map_or(i, |b| b.max(i)));
                break;
            }
        }
    }
    best
}

/// Decompose `f` as a univariate polynomial in variable `v` with polynomial
/// coefficients (which may still involve variables other than `v`).
fn decompose(f: &Polynomial, v: usize) -> Vec<Polynomial> {
    let params = f.params().clone();
    let d = f.degree_in(v) as usize;
    let mut coeffs: Vec<BTreeMap<Monomial, Coef>> = vec![BTreeMap::new(); d + 1];
    for (m, c) in f.terms() {
        let k = m[v] as usize;
        let mut m2 = m.clone();
        m2[v] = 0;
        coeffs[k].insert(m2, c.clone());
    }
    coeffs
        .into_iter()
        .map(|t| Polynomial::from_terms(&params, t))
        .collect()
}

#[allow(dead_code)]
fn recompose(coeffs: &[Polynomial], v: usize, params: &Parameters) -> Polynomial {
    let mut terms: BTreeMap<Monomial, Coef> = BTreeMap::new();
    for (k, c) in coeffs.iter().enumerate() {
        for (m, coef) in c.terms() {
            let mut m2 = m.clone();
            m2[v] = k as u16;
            terms.insert(m2, coef.clone());
        }
    }
    Polynomial::from_terms(params, terms)
}

/// Content of `f` with respect to variable `v`: gcd of its coefficients.
fn content_wrt(f: &Polynomial, v: usize) -> Polynomial {
    let coeffs = decompose(f, v);
    let mut g = Polynomial::zero(f.params());
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = poly_gcd(&g, c);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

/// Pseudo-remainder of `f` by `g` in variable `v`.
fn pseudo_rem(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    let params = f.params().clone();
    let dg = g.degree_in(v);
    let g_coeffs = decompose(g, v);
    let lc_g = g_coeffs[dg as usize].clone();
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let r_coeffs = decompose(&r, v);
        let lc_r = r_coeffs[dr as usize].clone();
        // r <- lc_g * r - lc_r * x^(dr-dg) * g
        let mut shift_terms: BTreeMap<Monomial, Coef> = BTreeMap::new();
        let mut mono = vec![0u16; params.arity()];
        mono[v] = dr - dg;
        shift_terms.insert(mono, Coef::one());
        let shift = Polynomial::from_terms(&params, shift_terms);
        r = r.mul(&lc_g).sub(&g.mul(&shift).mul(&lc_r));
    }
    r
}

/// Gcd, returned as a monic polynomial (or zero when both inputs are zero).
pub fn poly_gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(f.params());
    }
    let v = main_var(f)
        .into_iter()
        .chain(main_var(g))
        .max()
        .expect("nonconstant polynomials have a main variable");
    if f.degree_in(v) == 0 || g.degree_in(v) == 0 {
        // One of them does not involve the top variable: gcd divides contents.
        let (with_v, without_v) = if f.degree_in(v) == 0 { (g, f) } else { (f, g) };
        let cont = content_wrt(with_v, v);
        return poly_gcd(&cont, without_v);
    }
    let cont_f = content_wrt(f, v);
    let cont_g = content_wrt(g, v);
    let c = poly_gcd(&cont_f, &cont_g);
    let mut a = poly_div_exact(f, &cont_f).expect("content divides");
    let mut b = poly_div_exact(g, &cont_g).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return b.mul(&c).monic();
        }
        if r.degree_in(v) == 0 {
            return c.monic();
        }
        let cont_r = content_wrt(&r, v);
        a = b;
        b = poly_div_exact(&r, &cont_r).expect("content divides");
    }
}

/// Squarefree part: product of the distinct irreducible factors, monic.
pub fn squarefree_part(f: &Polynomial) -> Polynomial {
    if f.is_zero() || f.is_constant() {
        return f.monic();
    }
    let mut g = f.clone();
    for v in 0..f.params().arity() {
        let d = f.derivative(v);
        if !d.is_zero() {
            g = poly_gcd(&g, &d);
        }
        if g.is_constant() {
            break;
        }
    }
    if g.is_constant() {
        return f.monic();
    }
    poly_div_exact(f, &g).expect("gcd divides").monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Parameters {
        Parameters::new(&["a", "b"])
    }

    #[test]
    fn gcd_univariate() {
        let p = Parameters::new(&["a"]);
        let a = Polynomial::var(&p, "a");
        let one = Polynomial::one(&p);
        let f = a.pow(2).sub(&one); // (a-1)(a+1)
        let g = a.add(&one).mul(&a.add(&Polynomial::from_int(&p, 2)));
        let d = poly_gcd(&f, &g);
        assert_eq!(format!("{}", d), "a+1");
    }

    #[test]
    fn gcd_multivariate() {
        let p = ctx();
        let a = Polynomial::var(&p, "a");
        let b = Polynomial::var(&p, "b");
        let common = a.add(&b); // a+b
        let f = common.mul(&a.sub(&b));
        let g = common.mul(&common);
        let d = poly_gcd(&f, &g);
        assert_eq!(format!("{}", d), "a+b");
        assert!(divides(&d, &f));
        assert!(poly_div_exact(&f, &common).is_some());
    }

    #[test]
    fn squarefree() {
        let p = Parameters::new(&["a"]);
        let a = Polynomial::var(&p, "a");
        let one = Polynomial::one(&p);
        let f = a.pow(2).mul(&a.add(&one)); // a^2 (a+1)
        let sf = squarefree_part(&f);
        assert_eq!(format!("{}", sf), "a^2+a");
    }
}
