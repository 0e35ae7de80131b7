//! Invariant bilinear forms: the (vanishing) Killing form and the analogue
//! obtained by solving the invariance constraints directly.

use super::algebra::BasisSuperalgebra;
use crate::error::AlgebraError;
use crate::scalars::{ExceptionalLocus, Parity, RationalFunction, SparseMatrix, SparseVec};
use std::collections::BTreeMap;

#[derive(Clone)]
pub struct BilinearForm {
    dim: usize,
    parities: Vec<Parity>,
    entries: BTreeMap<(usize, usize), RationalFunction>,
    params: crate::scalars::Parameters,
}

impl BilinearForm {
    pub fn new(alg: &BasisSuperalgebra) -> Self {
        BilinearForm {
            dim: alg.dim(),
            parities: (0..alg.dim()).map(|i| alg.parity(i)).collect(),
            entries: BTreeMap::new(),
            params: alg.params().clone(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> RationalFunction {
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(&self.params))
    }

    pub fn eval(&self, x: &SparseVec<usize>, y: &SparseVec<usize>) -> RationalFunction {
        let mut acc = RationalFunction::zero(&self.params);
        for (i, ci) in x.iter() {
            for (j, cj) in y.iter() {
                let e = self.get(*i, *j);
                if !e.is_zero() {
                    acc = acc.add(&e.mul(ci).mul(cj));
                }
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            *v = v.mul(c);
        }
        out.entries.retain(|_, v| !v.is_zero());
        out
    }

    /// Consistency: vanishing between different parities.
    pub fn is_consistent(&self) -> bool {
        self.entries
            .keys()
            .all(|(i, j)| self.parities[*i] == self.parities[*j])
    }

    /// Supersymmetry: B(u,v) = (-1)^{|u||v|} B(v,u).
    pub fn is_supersymmetric(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let sign = self.parities[i].sign_if_both_odd(self.parities[j]);
                if self.get(i, j) != self.get(j, i).scale_int(sign) {
                    return false;
                }
            }
        }
        true
    }

    /// Associative invariance: B([u,v],w) = B(u,[v,w]) on all basis triples.
    pub fn is_invariant(&self, alg: &BasisSuperalgebra) -> bool {
        let n = self.dim;
        for u in 0..n {
            for v in 0..n {
                let uv = alg.bracket_basis(u, v);
                for w in 0..n {
                    let vw = alg.bracket_basis(v, w);
                    let lhs = self.eval(&uv, &SparseVec::unit(w, &self.params));
                    let rhs = self.eval(&SparseVec::unit(u, &self.params), &vw);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Supertrace form str(ad_x ad_y) on all basis pairs.
pub fn killing_form(alg: &BasisSuperalgebra) -> BilinearForm {
    let n = alg.dim();
    let mut form = BilinearForm::new(alg);
    for i in 0..n {
        for j in 0..n {
            // str(ad_i ad_j) = sum_l (-1)^{|l|} <e_l | [e_i, [e_j, e_l]]>
            let mut acc = RationalFunction::zero(alg.params());
            for l in 0..n {
                let inner = alg.bracket_basis(j, l);
                let outer = alg.bracket_vec(&SparseVec::unit(i, alg.params()), &inner);
                if let Some(c) = outer.get(&l) {
                    let sgn = if alg.parity(l) == Parity::Odd { -1 } else { 1 };
                    acc = acc.add(&c.scale_int(sgn));
                }
            }
            form.set(i, j, acc);
        }
    }
    form
}

/// Solve for consistent, supersymmetric, invariant bilinear forms; assert the
/// solution space is one-dimensional and normalize so B(H1,H1) = 1/s1.
pub fn invariant_form(
    alg: &BasisSuperalgebra,
    s1: &RationalFunction,
) -> Result<(BilinearForm, ExceptionalLocus), AlgebraError> {
    let n = alg.dim();
    let params = alg.params().clone();
    // Unknowns: B_{ij} for i <= j with matching parity; B_{ji} derived by
    // supersymmetry. For odd i = j supersymmetry forces B_{ii} = 0.
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i..n {
            if alg.parity(i) != alg.parity(j) {
                continue;
            }
            if i == j && alg.parity(i) == Parity::Odd {
                continue;
            }
            unknowns.push((i, j));
        }
    }
    let idx_of = |i: usize, j: usize| -> Option<(usize, i64)> {
        // returns unknown index and sign so that B_{ij} = sign * unknown
        if alg.parity(i) != alg.parity(j) {
            return None;
        }
        if i <= j {
            unknowns.binary_search(&(i, j)).ok().map(|p| (p, 1))
        } else {
            let sign = alg.parity(i).sign_if_both_odd(alg.parity(j));
            unknowns.binary_search(&(j, i)).ok().map(|p| (p, sign))
        }
    };

    // Invariance rows: for all (u,v,w): sum_k c_{uv}^k B_{kw} - c_{vw}^k B_{uk} = 0.
    let mut rows: Vec<BTreeMap<usize, RationalFunction>> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let uv = alg.bracket_terms(u, v);
            for w in 0..n {
                let vw = alg.bracket_terms(v, w);
                let mut row: BTreeMap<usize, RationalFunction> = BTreeMap::new();
                for (k, c) in uv {
                    if let Some((p, sgn)) = idx_of(*k, w) {
                        let e = row.entry(p).or_insert_with(|| RationalFunction::zero(&params));
                        *e = e.add(&c.scale_int(sgn));
                    }
                }
                for (k, c) in vw {
                    if let Some((p, sgn)) = idx_of(u, *k) {
                        let e = row.entry(p).or_insert_with(|| RationalFunction::zero(&params));
                        *e = e.sub(&c.scale_int(sgn));
                    }
                }
                row.retain(|_, c| !c.is_zero());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let mut m = SparseMatrix::new(&params, rows.len(), unknowns.len());
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row {
            m.set(r, *c, v.clone());
        }
    }
    let (ns, locus) = m.nullspace();
    if ns.len() != 1 {
        return Err(AlgebraError::FormNotUnique(ns.len()));
    }
    let sol = &ns[0];
    let mut form = BilinearForm::new(alg);
    for (p, (i, j)) in unknowns.iter().enumerate() {
        if sol[p].is_zero() {
            continue;
        }
        form.set(*i, *j, sol[p].clone());
        if i != j {
            let sign = alg.parity(*i).sign_if_both_odd(alg.parity(*j));
            form.set(*j, *i, sol[p].scale_int(sign));
        }
    }
    // Normalize: B(H1,H1) = 1/s1.
    let h1 = alg
        .index_of("H1")
        .ok_or_else(|| AlgebraError::Other("no H1 in basis".into()))?;
    let cur = form.get(h1, h1);
    if cur.is_zero() {
        return Err(AlgebraError::Other("degenerate normalization B(H1,H1) = 0".into()));
    }
    let target = s1
        .inv()
        .map_err(|_| AlgebraError::Other("s1 = 0".into()))?;
    let scale = target.div(&cur).unwrap();
    Ok((form.scale(&scale), locus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::gamma::{build_gamma, build_sl2};
    use crate::scalars::{context_a, Parameters};

    #[test]
    fn killing_vanishes_on_gamma() {
        let (_, s) = context_a();
        let g = build_gamma(&s);
        let k = killing_form(&g);
        assert!(k.is_zero());
    }

    #[test]
    fn killing_of_sl2() {
        let p = Parameters::none();
        let sl2 = build_sl2(&p);
        let k = killing_form(&sl2);
        let h = sl2.index_of("H").unwrap();
        assert_eq!(k.get(h, h), RationalFunction::from_int(&p, 8));
        let x = sl2.index_of("X").unwrap();
        let y = sl2.index_of("Y").unwrap();
        assert_eq!(k.get(x, y), RationalFunction::from_int(&p, 4));
        assert_eq!(k.get(x, x), RationalFunction::zero(&p));
    }

    #[test]
    fn invariant_form_of_gamma() {
        let (p, s) = context_a();
        let g = build_gamma(&s);
        let (b, _) = invariant_form(&g, &s[0]).unwrap();
        assert!(b.is_consistent());
        assert!(b.is_supersymmetric());
        assert!(b.is_invariant(&g));
        for i in 0..3 {
            for j in 0..3 {
                let hi = g.index_of(&format!("H{}", i + 1)).unwrap();
                let hj = g.index_of(&format!("H{}", j + 1)).unwrap();
                let expect = if i == j {
                    s[i].inv().unwrap()
                } else {
                    RationalFunction::zero(&p)
                };
                assert_eq!(b.get(hi, hj), expect, "B(H{},H{})", i + 1, j + 1);
            }
        }
        // B(X1, H2) = 0 and evens pair only with evens
        let x1 = g.index_of("X1").unwrap();
        let h2 = g.index_of("H2").unwrap();
        assert!(b.get(x1, h2).is_zero());
        let xxx = g.index_of("xxx").unwrap();
        assert!(b.get(x1, xxx).is_zero());
    }
}
