//! Construction of the family Gamma(s1,s2,s3): three copies of sl2 acting on
//! the triple tensor product of their standard representations, with the
//! odd-odd bracket built from the invariant symplectic forms eta_i and the
//! identifications phi_i : S^2 C^2 -> sl2.

use super::algebra::{BasisElement, BasisSuperalgebra};
use crate::scalars::{Parameters, Parity, RationalFunction};

/// Letters of the standard representation; `x` is the highest weight vector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Letter {
    X,
    Y,
}

use Letter::{X as LX, Y as LY};

pub const SL2_GENS: [&str; 3] = ["X", "H", "Y"];

/// Index layout: 0..9 the even basis X_i, H_i, Y_i for i = 1..3, then the
/// eight odd monomials in lexicographic order with x < y.
pub fn even_index(copy: usize, gen: usize) -> usize {
    3 * copy + gen
}

pub fn odd_index(l: [Letter; 3]) -> usize {
    let bit = |v: Letter| if v == LX { 0 } else { 1 };
    9 + 4 * bit(l[0]) + 2 * bit(l[1]) + bit(l[2])
}

pub fn odd_letters(idx: usize) -> [Letter; 3] {
    let k = idx - 9;
    let f = |b: usize| if b == 0 { LX } else { LY };
    [f((k >> 2) & 1), f((k >> 1) & 1), f(k & 1)]
}

pub fn odd_name(l: [Letter; 3]) -> String {
    l.iter().map(|&v| if v == LX { 'x' } else { 'y' }).collect()
}

/// eta(x, y) = 1, antisymmetric.
fn eta(v: Letter, w: Letter) -> i64 {
    match (v, w) {
        (LX, LY) => 1,
        (LY, LX) => -1,
        _ => 0,
    }
}

/// phi(x^2) = X, phi(xy) = -H/2, phi(y^2) = -Y, as (generator, coefficient
/// numerator, denominator).
fn phi(v: Letter, w: Letter) -> (usize, i64, i64) {
    match (v, w) {
        (LX, LX) => (0, 1, 1),
        (LY, LY) => (2, -1, 1),
        _ => (1, -1, 2),
    }
}

/// Action of the sl2 generator `gen` (0 = X, 1 = H, 2 = Y) on a letter;
/// returns the resulting letter and integer coefficient, if nonzero.
fn sl2_act(gen: usize, l: Letter) -> Option<(Letter, i64)> {
    match (gen, l) {
        (0, LY) => Some((LX, 1)),
        (0, LX) => None,
        (1, LX) => Some((LX, 1)),
        (1, LY) => Some((LY, -1)),
        (2, LX) => Some((LY, 1)),
        (2, LY) => None,
        _ => unreachable!(),
    }
}

/// Build Gamma(s1,s2,s3) on the canonical 17-element basis. The Jacobi
/// identity holds iff s1+s2+s3 = 0; this constructor does not enforce it.
pub fn build_gamma(s: &[RationalFunction; 3]) -> BasisSuperalgebra {
    let params: Parameters = s[0].params().clone();
    let mut basis = Vec::new();
    for copy in 0..3 {
        for gen in SL2_GENS {
            basis.push(BasisElement::new(&format!("{}{}", gen, copy + 1), Parity::Even));
        }
    }
    for k in 9..17 {
        basis.push(BasisElement::new(&odd_name(odd_letters(k)), Parity::Odd));
    }
    let mut alg = BasisSuperalgebra::new(&params, basis);

    // even-even: three commuting copies of sl2
    for copy in 0..3 {
        let x = even_index(copy, 0);
        let h = even_index(copy, 1);
        let y = even_index(copy, 2);
        alg.set_bracket(h, x, vec![(x, RationalFunction::from_int(&params, 2))]);
        alg.set_bracket(h, y, vec![(y, RationalFunction::from_int(&params, -2))]);
        alg.set_bracket(x, y, vec![(h, RationalFunction::one(&params))]);
    }

    // even-odd: the i-th copy acts on the i-th tensor slot
    for copy in 0..3 {
        for gen in 0..3 {
            let e = even_index(copy, gen);
            for k in 9..17 {
                let letters = odd_letters(k);
                if let Some((nl, c)) = sl2_act(gen, letters[copy]) {
                    let mut out = letters;
                    out[copy] = nl;
                    alg.set_bracket(
                        e,
                        k,
                        vec![(odd_index(out), RationalFunction::from_int(&params, c))],
                    );
                }
            }
        }
    }

    // odd-odd: [v1 v2 v3, w1 w2 w3] = sum_i s_i phi_i(v_i w_i) prod_{j != i} eta_j(v_j, w_j)
    for p in 9..17 {
        for q in p..17 {
            let v = odd_letters(p);
            let w = odd_letters(q);
            let mut terms: Vec<(usize, RationalFunction)> = Vec::new();
            for i in 0..3 {
                let (j, k) = match i {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                let e1 = eta(v[j], w[j]);
                let e2 = eta(v[k], w[k]);
                if e1 == 0 || e2 == 0 {
                    continue;
                }
                let (gen, num, den) = phi(v[i], w[i]);
                let c = s[i]
                    .mul(&RationalFunction::from_ratio(&params, num * e1 * e2, den));
                if !c.is_zero() {
                    terms.push((even_index(i, gen), c));
                }
            }
            // merge duplicate targets
            let mut merged: std::collections::BTreeMap<usize, RationalFunction> =
                std::collections::BTreeMap::new();
            for (k, c) in terms {
                let e = merged
                    .entry(k)
                    .or_insert_with(|| RationalFunction::zero(&params));
                *e = e.add(&c);
            }
            alg.set_bracket(p, q, merged.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
    }
    alg
}

/// A standalone sl2 with [H,X] = 2X, [H,Y] = -2Y, [X,Y] = H.
pub fn build_sl2(params: &Parameters) -> BasisSuperalgebra {
    let basis = vec![
        BasisElement::new("X", Parity::Even),
        BasisElement::new("H", Parity::Even),
        BasisElement::new("Y", Parity::Even),
    ];
    let mut alg = BasisSuperalgebra::new(params, basis);
    alg.set_bracket(1, 0, vec![(0, RationalFunction::from_int(params, 2))]);
    alg.set_bracket(1, 2, vec![(2, RationalFunction::from_int(params, -2))]);
    alg.set_bracket(0, 2, vec![(1, RationalFunction::one(params))]);
    alg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{context_a, SDim};

    #[test]
    fn gamma_dimensions_and_examples() {
        let (p, s) = context_a();
        let g = build_gamma(&s);
        assert_eq!(g.sdim(), SDim::new(9, 8));
        // [xyy, yxy] = s3 Y3
        let b = g.bracket_vec(&g.unit("xyy"), &g.unit("yxy"));
        let y3 = g.index_of("Y3").unwrap();
        assert_eq!(b.iter().count(), 1);
        assert_eq!(b.get(&y3).unwrap(), &s[2]);
        // [X1, Y1] = H1
        let b = g.bracket_vec(&g.unit("X1"), &g.unit("Y1"));
        let h1 = g.index_of("H1").unwrap();
        assert_eq!(b.get(&h1).unwrap(), &RationalFunction::one(&p));
        // [xxx, yyy] = -(s1 H1 + s2 H2 + s3 H3)/2
        let b = g.bracket_vec(&g.unit("xxx"), &g.unit("yyy"));
        for (i, si) in s.iter().enumerate() {
            let h = g.index_of(&format!("H{}", i + 1)).unwrap();
            let expect = si.mul(&RationalFunction::from_ratio(&p, -1, 2));
            assert_eq!(b.get(&h).unwrap(), &expect);
        }
    }

    #[test]
    fn jacobi_holds_iff_sum_zero() {
        let (_, s) = context_a();
        let g = build_gamma(&s);
        assert!(g.check_jacobi().is_empty());
        assert!(g.check_antisymmetry());

        let p = Parameters::none();
        let one = RationalFunction::one(&p);
        let bad = build_gamma(&[one.clone(), one.clone(), one.clone()]);
        let violations = bad.check_jacobi();
        assert!(!violations.is_empty());
        // odd triples are the failing ones
        assert!(violations.iter().any(|v| v.triple.0.len() == 3));
    }

    #[test]
    fn sl2_jacobi() {
        let p = Parameters::none();
        let sl2 = build_sl2(&p);
        assert!(sl2.check_jacobi().is_empty());
    }
}
